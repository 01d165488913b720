#include "gent/standard_forms.hpp"

#include <cmath>
#include <sstream>

#include "gent/errors.hpp"

namespace gent {

namespace {

constexpr double kBranchTol = 1e-9;

}  // namespace

SymmetricState::SymmetricState(double b, double c, double d_abs) : b_(b), c_(c), d_abs_(d_abs) {
  if (!(d_abs >= 0.0) || !(c >= d_abs) || !(b > c)) {
    std::ostringstream os;
    os << "symmetric parameters need c >= |d| >= 0 and b > c (got b=" << b << ", c=" << c
       << ", |d|=" << d_abs << ")";
    throw Error(Errc::DomainError, os.str());
  }
}

double SymmetricState::kappa_plus() const { return std::sqrt((b_ - d_abs_) * (b_ + c_)); }
double SymmetricState::kappa_minus() const { return std::sqrt((b_ + d_abs_) * (b_ - c_)); }
double SymmetricState::kappa_tilde_minus() const { return std::sqrt((b_ - d_abs_) * (b_ - c_)); }

bool SymmetricState::is_physical() const { return kappa_minus() >= 0.5 - kKappaTol; }
bool SymmetricState::is_entangled() const { return kappa_tilde_minus() < 0.5 - kKappaTol; }

SymmetricState SymmetricState::from_cm(const TwoModeCM& v) {
  const Invariants4 inv = invariants(v);
  if (std::abs(inv.det_v1 - inv.det_v2) > 1e-9) {
    std::ostringstream os;
    os << "det V1 = " << inv.det_v1 << " differs from det V2 = " << inv.det_v2;
    throw Error(Errc::NotSymmetric, os.str());
  }
  const StandardFormI f = to_standard_form_I(v);
  const double b = 0.5 * (f.b1 + f.b2);
  return SymmetricState(b, f.c, std::abs(f.d));
}

StandardFormI to_standard_form_I(const TwoModeCM& v) {
  const PhysicalityVerdict phys = is_physical(v);
  if (!phys.physical) {
    std::ostringstream os;
    os << "cannot reduce an unphysical CM (kappa_minus = " << phys.kappa_minus << ")";
    throw Error(Errc::UnphysicalState, os.str());
  }
  const Invariants4 inv = invariants(v);
  StandardFormI f;
  f.b1 = std::sqrt(inv.det_v1);
  f.b2 = std::sqrt(inv.det_v2);
  const double bb = f.b1 * f.b2;
  const double gamma = inv.det_c;

  // det V = bb^2 + (cd)^2 - bb (c^2 + d^2), so c^2 + d^2 and c^2 d^2 are known.
  double sum_sq = (bb * bb + gamma * gamma - inv.det_v) / bb;
  const double scale = std::max(1.0, bb);
  if (sum_sq < -kBranchTol * scale) {
    throw Error(Errc::BranchAmbiguity, "c^2 + d^2 came out negative");
  }
  sum_sq = std::max(sum_sq, 0.0);
  double disc = sum_sq * sum_sq - 4.0 * gamma * gamma;
  if (disc < -kBranchTol * scale * scale) {
    throw Error(Errc::BranchAmbiguity, "no real (c^2, d^2) pair reproduces the invariants");
  }
  disc = std::max(disc, 0.0);

  const Mat2 cross = v.blocks().c;
  const bool cross_zero = cross.cwiseAbs().maxCoeff() <= 1e-14 * scale;
  if (std::abs(gamma) <= 1e-14 * scale * scale && !cross_zero) {
    f.singular_cross = true;
    f.c = std::sqrt(sum_sq);
    f.d = 0.0;
    return f;
  }

  const double c_sq = 0.5 * (sum_sq + std::sqrt(disc));
  f.c = std::sqrt(c_sq);
  // d^2 = gamma^2 / c^2 avoids the cancellation in (sum_sq - sqrt(disc)) / 2.
  const double d_abs = c_sq > 0.0 ? std::abs(gamma) / f.c : 0.0;
  f.d = gamma < 0.0 ? -d_abs : d_abs;
  return f;
}

FormII form_II_symmetric(const SymmetricState& s) {
  const double bc = s.b() - s.c();
  if (!(bc > 0.0)) {
    throw Error(Errc::DomainError, "form II needs b - c > 0");
  }
  const double v = std::sqrt((s.b() - s.d_abs()) / bc);
  ScaledState sc{StandardFormI{s.b(), s.b(), s.c(), s.d(), false}, v, v};
  return {v, make_scaled_cm(sc)};
}

FormIIResiduals form_II_residuals(double b1, double b2, double c, double d, double v1,
                                  double v2) {
  const double den1 = 2.0 * b1 - v1;
  const double den2 = 2.0 * b2 - v2;
  if (den1 == 0.0 || den2 == 0.0) {
    throw Error(Errc::SingularDenominator, "2 b_i - v_i vanishes");
  }
  FormIIResiduals r;
  r.r_a = b1 * (v1 * v1 - 1.0) / den1 - b2 * (v2 * v2 - 1.0) / den2;
  const double rhs = c * v1 * v2 - std::abs(d);
  r.r_b = b1 * b2 * (v1 * v1 - 1.0) * (v2 * v2 - 1.0) - rhs * rhs;
  return r;
}

TwoModeCM make_scaled_cm(const ScaledState& sc) {
  const StandardFormI& f = sc.base;
  const double g = std::sqrt(sc.u1 * sc.u2);
  Mat4 v = Mat4::Zero();
  v(0, 0) = f.b1 * sc.u1;
  v(1, 1) = f.b1 / sc.u1;
  v(2, 2) = f.b2 * sc.u2;
  v(3, 3) = f.b2 / sc.u2;
  v(0, 2) = v(2, 0) = f.c * g;
  v(1, 3) = v(3, 1) = f.d / g;
  return TwoModeCM(v);
}

SymmetricState symmetric_sts(double r, double nbar) {
  const double nu = nbar + 0.5;
  const double s = nu * std::sinh(2.0 * r);
  return SymmetricState(nu * std::cosh(2.0 * r), s, s);
}

}  // namespace gent
