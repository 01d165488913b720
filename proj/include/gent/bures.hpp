#pragma once

#include "gent/cm_core.hpp"
#include "gent/minimize.hpp"
#include "gent/one_mode.hpp"
#include "gent/standard_forms.hpp"

namespace gent {

struct BuresResult {
  double e_b = 0;
  double f_max = 1;
  double kappa_tilde_minus = 0.5;
  double d_bures = 0;
};

/// 2 kt / (kt + 1/2)^2 for kt in (0, 1/2]; DomainError elsewhere.
double max_fidelity_closed(double kappa_tilde_minus);

/// Closed-form Bures entanglement; zero for separable states. Throws UnphysicalState.
BuresResult bures_entanglement(const SymmetricState& s);

/// Uhlmann fidelity of two undisplaced one-mode Gaussian states:
/// F = (sqrt(D + delta) + sqrt(delta)) / D, D = det(V + V'),
/// delta = 4 (det V - 1/4)(det V' - 1/4). Throws UnphysicalState.
double one_mode_fidelity(const OneModeCM& v, const OneModeCM& vp);
double one_mode_fidelity(const Mat2& v, const Mat2& vp);

struct FidelityBudget {
  int starts = 8;
  BoxMinOptions options{};
  /// Starts whose value lies within this distance of the best count as agreeing.
  double agreement_tol = 1e-6;
};

/// Best separable candidate found by numeric_max_fidelity.
struct FidelitySearchResult {
  double f_star = 0;
  double b = 0;      ///< b' of the separable state
  double c = 0;      ///< c'
  double d_abs = 0;  ///< |d'|
  double u = 1;      ///< equal local scale u' of the separable state
  double kappa_tilde_minus = 0.5;
  int agreeing_starts = 0;
  int total_sweeps = 0;
};

/// Direct maximization of the product of one-mode fidelities between the 50:50
/// images of s (at its form-II scale) and of symmetric, equally scaled states on
/// the separability threshold (b'-|d'|)(b'-c') = 1/4. Search variables are
/// alpha' = b'-c', |d'| and ln(u'/v). Throws DomainError for separable s and
/// OptimizerNoConverge when fewer than two starts agree on the best value.
FidelitySearchResult numeric_max_fidelity(const SymmetricState& s,
                                          const FidelityBudget& budget = {});

}  // namespace gent
