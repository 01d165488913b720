#include "gent/relent.hpp"

#include <cmath>
#include <limits>
#include <vector>
#include <sstream>

#include <spdlog/spdlog.h>

#include "gent/errors.hpp"
#include "gent/minimize.hpp"

namespace gent {

namespace {

constexpr double kPureTol = 1e-12;
constexpr double kBracketStart = 1e-9;
constexpr double kBracketLimit = 1e6;

// x ln x with the x -> 0 limit.
double xlogx(double x) { return x <= kPureTol ? 0.0 : x * std::log(x); }

}  // namespace

double von_neumann_entropy_nu(double nu) {
  if (nu < 0.5 - kPureTol) {
    std::ostringstream os;
    os << "symplectic eigenvalue " << nu << " is below 1/2";
    throw Error(Errc::UnphysicalState, os.str());
  }
  return xlogx(nu + 0.5) - xlogx(nu - 0.5);
}

double von_neumann_entropy(const OneModeCM& v) { return von_neumann_entropy_nu(v.nu()); }

double rel_entropy_one_mode(const OneModeCM& vp, const OneModeCM& v) {
  const double s_n = von_neumann_entropy(v);
  const double nup = vp.nu();
  if (nup < 0.5 - kPureTol) {
    throw Error(Errc::UnphysicalState, "reference state violates the uncertainty relation");
  }
  if (vp == v) return 0.0;
  if (nup - 0.5 <= kPureTol) {
    throw Error(Errc::SupportViolation, "reference state is pure and differs from the state");
  }
  const double x = (v.sigma_qq * vp.sigma_pp + v.sigma_pp * vp.sigma_qq) / nup;
  const double cross =
      0.5 * std::log(nup + 0.5) * (1.0 + x) + 0.5 * std::log(nup - 0.5) * (1.0 - x);
  return cross - s_n;
}

double mode_objective(double x, double kappa_sq, double kt) {
  if (!(x > 0.5)) {
    throw Error(Errc::DomainError, "mode_objective needs x > 1/2");
  }
  const double ratio = (kappa_sq + 4.0 * x * x * kt * kt) / (2.0 * x * kt);
  return 0.5 * std::log(x + 0.5) * (1.0 + ratio) + 0.5 * std::log(x - 0.5) * (1.0 - ratio);
}

ModeMin minimize_mode(double kappa_sq, double kt, double tol) {
  if (!(kt > 0.0) || !(kt < 0.5)) {
    throw Error(Errc::DomainError, "minimize_mode needs 0 < kt < 1/2");
  }
  auto f = [&](double x) { return mode_objective(x, kappa_sq, kt); };
  const Bracket br = bracket_by_doubling(f, 0.5, kBracketStart, kBracketLimit);
  const ScalarMin m = golden_section(f, br.lo, br.hi, tol);
  spdlog::debug("minimize_mode: bracket=[{:.12g}, {:.12g}] x*={:.15g} f={:.15g} evals={}", br.lo,
                br.hi, m.x, m.f, m.evaluations);
  return {m.x, m.f};
}

RelEntResult rel_ent_entanglement(const SymmetricState& s) {
  if (!s.is_physical()) {
    throw Error(Errc::UnphysicalState, "state violates the uncertainty relation");
  }
  const double kp = s.kappa_plus();
  const double km = s.kappa_minus();
  const double kt = s.kappa_tilde_minus();

  RelEntResult r;
  r.s_n1 = von_neumann_entropy(OneModeCM{kp * kp / kt, kt});
  r.s_n2 = von_neumann_entropy(OneModeCM{kt, km * km / kt});
  if (kt >= 0.5) {
    r.x1_star = kp;
    r.x2_star = km;
    return r;
  }
  r.separable = false;
  const ModeMin m1 = minimize_mode(kp * kp, kt);
  const ModeMin m2 = minimize_mode(km * km, kt);
  r.x1_star = m1.x_star;
  r.x2_star = m2.x_star;
  r.q_s1 = m1.value - r.s_n1;
  r.q_s2 = m2.value - r.s_n2;
  r.e_s = r.q_s1 + r.q_s2;
  r.ordering_violated = r.x1_star < r.x2_star;
  return r;
}

RelEntGrid rel_ent_grid(const SymmetricState& s, int points, double x_max) {
  if (!s.is_physical()) {
    throw Error(Errc::UnphysicalState, "state violates the uncertainty relation");
  }
  RelEntGrid g;
  const double kt = s.kappa_tilde_minus();
  if (kt >= 0.5) return g;
  const double kp2 = s.kappa_plus() * s.kappa_plus();
  const double km2 = s.kappa_minus() * s.kappa_minus();
  const double offset = von_neumann_entropy(OneModeCM{kp2 / kt, kt}) +
                        von_neumann_entropy(OneModeCM{kt, km2 / kt});
  std::vector<double> xs(static_cast<std::size_t>(points));
  std::vector<double> f1(xs.size());
  std::vector<double> f2(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = 0.5 + (x_max - 0.5) * static_cast<double>(i + 1) / points;
    f1[i] = mode_objective(xs[i], kp2, kt);
    f2[i] = mode_objective(xs[i], km2, kt);
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double v = f1[i] + f2[j];
      if (v < best) {
        best = v;
        g.x1 = xs[i];
        g.x2 = xs[j];
      }
    }
  }
  g.e_s = best - offset;
  return g;
}

}  // namespace gent
