#pragma once

#include <utility>

#include "gent/cm_core.hpp"

namespace gent {

/// Standard form I parameters: V1 = b1 I, V2 = b2 I, C = diag(c, d), with c >= |d|.
struct StandardFormI {
  double b1 = 0.5;
  double b2 = 0.5;
  double c = 0;
  double d = 0;
  /// Set when det C vanishes but C does not; d is then pinned to 0.
  bool singular_cross = false;

  TwoModeCM cm() const { return TwoModeCM::standard(b1, b2, c, d); }
};

/// Symmetric state in standard form: b1 = b2 = b, C = diag(c, -d_abs).
///
/// The constructor enforces c >= d_abs >= 0 and b > c (the closure c = d_abs is
/// admitted so that squeezed vacua and squeezed thermal states are included).
/// Physicality is a separate question, answered by is_physical().
class SymmetricState {
 public:
  SymmetricState(double b, double c, double d_abs);

  double b() const { return b_; }
  double c() const { return c_; }
  double d_abs() const { return d_abs_; }
  double d() const { return -d_abs_; }

  double kappa_plus() const;
  double kappa_minus() const;
  double kappa_tilde_minus() const;

  /// (b + |d|)(b - c) >= 1/4, i.e. kappa_minus >= 1/2.
  bool is_physical() const;
  /// kappa_tilde_minus < 1/2 (for a physical state).
  bool is_entangled() const;

  TwoModeCM cm() const { return TwoModeCM::standard(b_, b_, c_, -d_abs_); }

  /// Reduces a CM with det V1 = det V2 to symmetric standard parameters.
  /// Throws NotSymmetric when |det V1 - det V2| exceeds 1e-9.
  static SymmetricState from_cm(const TwoModeCM& v);

 private:
  double b_;
  double c_;
  double d_abs_;
};

/// A standard-form state locally squeezed by u1, u2 (the scaled standard CM).
struct ScaledState {
  StandardFormI base;
  double u1 = 1;
  double u2 = 1;
};

struct FormII {
  double v = 1;
  TwoModeCM cm;
};

struct FormIIResiduals {
  double r_a = 0;
  double r_b = 0;
};

/// Recovers (b1, b2, c, d) from the four local symplectic invariants.
/// Throws UnphysicalState or BranchAmbiguity.
StandardFormI to_standard_form_I(const TwoModeCM& v);

/// v = sqrt((b - |d|) / (b - c)) and the CM scaled by u1 = u2 = v.
FormII form_II_symmetric(const SymmetricState& s);

/// Left minus right sides of the two equations fixing the form-II squeeze factors.
FormIIResiduals form_II_residuals(double b1, double b2, double c, double d, double v1,
                                  double v2);

TwoModeCM make_scaled_cm(const ScaledState& sc);

/// Symmetric squeezed thermal state: b = (nbar + 1/2) cosh 2r, c = |d| = (nbar + 1/2) sinh 2r.
SymmetricState symmetric_sts(double r, double nbar);

}  // namespace gent
