#pragma once

#include "gent/one_mode.hpp"
#include "gent/standard_forms.hpp"

namespace gent {

struct RelEntResult {
  double e_s = 0;
  double x1_star = 0.5;
  double x2_star = 0.5;
  double q_s1 = 0;
  double q_s2 = 0;
  double s_n1 = 0;
  double s_n2 = 0;
  bool separable = true;
  /// Set when the unconstrained minimizers give x1_star < x2_star.
  bool ordering_violated = false;
};

struct ModeMin {
  double x_star = 0.5;
  double value = 0;
};

/// (nu + 1/2) ln(nu + 1/2) - (nu - 1/2) ln(nu - 1/2), in nats. Throws UnphysicalState.
double von_neumann_entropy(const OneModeCM& v);
double von_neumann_entropy_nu(double nu);

/// S(rho'/rho) = Tr[rho (ln rho - ln rho')] with rho' from vp and rho from v.
/// Throws SupportViolation when rho' is pure and differs from rho.
double rel_entropy_one_mode(const OneModeCM& vp, const OneModeCM& v);

/// Cross-entropy -Tr[rho ln rho'] of one beam-split mode against a threshold
/// separable mode with symplectic eigenvalue x. DomainError for x <= 1/2.
double mode_objective(double x, double kappa_sq, double kt);

/// Global minimum of mode_objective over (1/2, inf): doubling bracket from
/// 1/2 + 1e-9, then golden section to |dx| < tol. Requires 0 < kt < 1/2.
ModeMin minimize_mode(double kappa_sq, double kt, double tol = 1e-10);

/// Gaussian relative entropy of entanglement of a symmetric state. Throws UnphysicalState.
RelEntResult rel_ent_entanglement(const SymmetricState& s);

struct RelEntGrid {
  double e_s = 0;
  double x1 = 0.5;
  double x2 = 0.5;
};

/// Brute-force joint minimum of the two-mode objective over a points x points grid
/// on (1/2, x_max]^2. Zero for separable states.
RelEntGrid rel_ent_grid(const SymmetricState& s, int points = 2000, double x_max = 5.0);

}  // namespace gent
