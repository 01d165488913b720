#include "gent/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <spdlog/spdlog.h>

#include "gent/errors.hpp"

namespace gent {

namespace {

const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;

}  // namespace

ScalarMin golden_section(const ScalarFn& f, double a, double b, double tol, int max_iter) {
  if (b < a) std::swap(a, b);
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  int evals = 2;
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
    ++evals;
  }
  return f1 <= f2 ? ScalarMin{x1, f1, evals} : ScalarMin{x2, f2, evals};
}

Bracket bracket_by_doubling(const ScalarFn& f, double origin, double h0, double x_max) {
  double h = h0;
  double x_prev = origin;
  double x = origin + h;
  double fx = f(x);
  while (true) {
    const double x_next = origin + 2.0 * h;
    if (x_next > x_max) {
      std::ostringstream os;
      os << "objective kept decreasing up to x = " << x_next;
      throw Error(Errc::BracketFailure, os.str());
    }
    const double f_next = f(x_next);
    spdlog::debug("bracket: x={:.12g} f={:.15g}", x_next, f_next);
    if (f_next > fx) {
      return {x_prev, x_next};
    }
    x_prev = x;
    x = x_next;
    fx = f_next;
    h *= 2.0;
  }
}

namespace {

// Minimizes f(x + t d) over the t range keeping x + t d inside the box.
double line_search(const VectorFn& f, std::vector<double>& x, double fx,
                   const std::vector<double>& d, const std::vector<double>& lower,
                   const std::vector<double>& upper, double tol) {
  double t_lo = -std::numeric_limits<double>::infinity();
  double t_hi = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (d[i] == 0.0) continue;
    const double a = (lower[i] - x[i]) / d[i];
    const double b = (upper[i] - x[i]) / d[i];
    t_lo = std::max(t_lo, std::min(a, b));
    t_hi = std::min(t_hi, std::max(a, b));
  }
  if (!(t_hi > t_lo)) return fx;
  std::vector<double> trial(x.size());
  auto along = [&](double t) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      trial[i] = std::clamp(x[i] + t * d[i], lower[i], upper[i]);
    }
    return f(trial);
  };
  // Endpoints are never probed by golden_section; check them so boundary optima are reachable.
  ScalarMin best = golden_section(along, t_lo, t_hi, tol);
  for (double t : {t_lo, t_hi}) {
    const double ft = along(t);
    if (ft < best.f) best = {t, ft, 0};
  }
  if (best.f < fx) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = std::clamp(x[i] + best.x * d[i], lower[i], upper[i]);
    }
    return best.f;
  }
  return fx;
}

}  // namespace

BoxMin coordinate_descent(const VectorFn& f, std::vector<double> x0,
                          const std::vector<double>& lower, const std::vector<double>& upper,
                          const BoxMinOptions& opts) {
  const std::size_t n = x0.size();
  if (lower.size() != n || upper.size() != n) {
    throw Error(Errc::DimensionMismatch, "box bounds do not match the start point");
  }
  BoxMin out;
  out.x = std::move(x0);
  for (std::size_t i = 0; i < n; ++i) out.x[i] = std::clamp(out.x[i], lower[i], upper[i]);
  out.f = f(out.x);

  std::vector<double> dir(n, 0.0);
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    const std::vector<double> start = out.x;
    const double f_start = out.f;
    for (std::size_t i = 0; i < n; ++i) {
      std::fill(dir.begin(), dir.end(), 0.0);
      dir[i] = 1.0;
      out.f = line_search(f, out.x, out.f, dir, lower, upper, opts.step_tol);
    }
    double step = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dir[i] = out.x[i] - start[i];
      step = std::max(step, std::abs(dir[i]));
    }
    if (step > 0.0) {
      for (double& v : dir) v /= step;
      out.f = line_search(f, out.x, out.f, dir, lower, upper, opts.step_tol);
    }
    out.sweeps = sweep + 1;
    spdlog::debug("sweep {}: f={:.15g} step={:.3g}", out.sweeps, out.f, step);
    if (step < opts.step_tol || f_start - out.f < opts.f_tol * (1.0 + std::abs(out.f))) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace gent
