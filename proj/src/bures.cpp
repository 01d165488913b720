#include "gent/bures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <spdlog/spdlog.h>

#include "gent/errors.hpp"

namespace gent {

namespace {

constexpr double kDetTol = 1e-12;

double fidelity_from_dets(double det_sum, double det_v, double det_vp) {
  if (det_v < 0.25 - kDetTol || det_vp < 0.25 - kDetTol) {
    std::ostringstream os;
    os << "one-mode CM below the uncertainty bound (det = " << std::min(det_v, det_vp) << ")";
    throw Error(Errc::UnphysicalState, os.str());
  }
  const double delta = std::max(0.0, 4.0 * (det_v - 0.25) * (det_vp - 0.25));
  return (std::sqrt(det_sum + delta) + std::sqrt(delta)) / det_sum;
}

}  // namespace

double max_fidelity_closed(double kt) {
  if (!(kt > 0.0) || kt > 0.5) {
    throw Error(Errc::DomainError, "kappa_tilde_minus must lie in (0, 1/2]");
  }
  return 2.0 * kt / ((kt + 0.5) * (kt + 0.5));
}

BuresResult bures_entanglement(const SymmetricState& s) {
  if (!s.is_physical()) {
    throw Error(Errc::UnphysicalState, "state violates the uncertainty relation");
  }
  BuresResult r;
  r.kappa_tilde_minus = s.kappa_tilde_minus();
  if (r.kappa_tilde_minus >= 0.5) return r;
  const double kt = r.kappa_tilde_minus;
  r.f_max = max_fidelity_closed(kt);
  const double root = std::sqrt(2.0 * kt) - 1.0;
  r.e_b = root * root / (2.0 * kt + 1.0);
  r.d_bures = std::sqrt(2.0 * r.e_b);
  return r;
}

double one_mode_fidelity(const OneModeCM& v, const OneModeCM& vp) {
  const double det_sum = (v.sigma_qq + vp.sigma_qq) * (v.sigma_pp + vp.sigma_pp);
  return fidelity_from_dets(det_sum, v.det(), vp.det());
}

double one_mode_fidelity(const Mat2& v, const Mat2& vp) {
  return fidelity_from_dets((v + vp).determinant(), v.determinant(), vp.determinant());
}

FidelitySearchResult numeric_max_fidelity(const SymmetricState& s, const FidelityBudget& budget) {
  const double kt = s.kappa_tilde_minus();
  if (!s.is_physical() || kt >= 0.5) {
    throw Error(Errc::DomainError, "numeric_max_fidelity needs a physical entangled state");
  }
  const double v = std::sqrt((s.b() - s.d_abs()) / (s.b() - s.c()));
  const OneModeCM target1{(s.b() + s.c()) * v, kt};
  const OneModeCM target2{kt, (s.b() + s.d_abs()) / v};

  // x = (alpha', |d'|, ln(u'/v)); beta' = b' - |d'| = 1/(4 alpha') keeps the threshold.
  auto product = [&](const std::vector<double>& x) {
    const double alpha = x[0];
    const double e = x[1];
    const double u = v * std::exp(x[2]);
    const double beta = 0.25 / alpha;
    const double bp = beta + e;
    const OneModeCM img1{(2.0 * bp - alpha) * u, beta / u};
    const OneModeCM img2{alpha * u, (beta + 2.0 * e) / u};
    return one_mode_fidelity(target1, img1) * one_mode_fidelity(target2, img2);
  };
  auto objective = [&](const std::vector<double>& x) { return -product(x); };

  const std::vector<double> lower{1e-4, 0.0, -4.0};
  const std::vector<double> upper{0.5, 2.0 * (s.b() + s.d_abs()) + 2.0, 4.0};

  std::vector<std::array<double, 3>> starts;
  for (double a0 : {0.15, 0.45}) {
    for (double e0 : {0.05, 1.0}) {
      for (double w0 : {-0.5, 0.5}) starts.push_back({a0, e0, w0});
    }
  }
  while (static_cast<int>(starts.size()) < budget.starts) {
    // Extra starts fill the box on a fixed low-discrepancy lattice.
    const double k = static_cast<double>(starts.size());
    const double g1 = std::fmod(0.5 + k * 0.7548776662466927, 1.0);
    const double g2 = std::fmod(0.5 + k * 0.5698402909980532, 1.0);
    const double g3 = std::fmod(0.5 + k * 0.6180339887498949, 1.0);
    starts.push_back({lower[0] + g1 * (upper[0] - lower[0]), g2 * (s.b() + s.d_abs()),
                      -1.0 + 2.0 * g3});
  }
  starts.resize(static_cast<std::size_t>(std::max(budget.starts, 1)));

  std::vector<BoxMin> runs;
  runs.reserve(starts.size());
  FidelitySearchResult out;
  for (const auto& st : starts) {
    runs.push_back(coordinate_descent(objective, {st[0], st[1], st[2]}, lower, upper,
                                      budget.options));
    out.total_sweeps += runs.back().sweeps;
  }
  const auto best = std::min_element(runs.begin(), runs.end(),
                                     [](const BoxMin& a, const BoxMin& b) { return a.f < b.f; });
  out.agreeing_starts = static_cast<int>(std::count_if(runs.begin(), runs.end(), [&](const BoxMin& r) {
    return r.f - best->f <= budget.agreement_tol;
  }));
  spdlog::debug("numeric_max_fidelity: best={:.15g} agreeing={}/{}", -best->f,
                out.agreeing_starts, runs.size());
  if (out.agreeing_starts < std::min<int>(2, static_cast<int>(runs.size()))) {
    std::ostringstream os;
    os << "only " << out.agreeing_starts << " of " << runs.size()
       << " starts reached the best value " << -best->f;
    throw Error(Errc::OptimizerNoConverge, os.str());
  }

  const double alpha = best->x[0];
  const double beta = 0.25 / alpha;
  out.f_star = -best->f;
  out.d_abs = best->x[1];
  out.b = beta + out.d_abs;
  out.c = out.b - alpha;
  out.u = v * std::exp(best->x[2]);
  out.kappa_tilde_minus = std::sqrt((out.b - out.d_abs) * (out.b - out.c));
  return out;
}

}  // namespace gent
