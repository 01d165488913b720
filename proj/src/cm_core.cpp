#include "gent/cm_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "gent/errors.hpp"

namespace gent {

TwoModeCM::TwoModeCM(const Mat4& v) : v_(0.5 * (v + v.transpose())) {}

TwoModeCM TwoModeCM::standard(double b1, double b2, double c, double d) {
  Mat4 v = Mat4::Zero();
  v(0, 0) = b1;
  v(1, 1) = b1;
  v(2, 2) = b2;
  v(3, 3) = b2;
  v(0, 2) = v(2, 0) = c;
  v(1, 3) = v(3, 1) = d;
  return TwoModeCM(v);
}

BlockDecomposition TwoModeCM::blocks() const {
  return {v_.block<2, 2>(0, 0), v_.block<2, 2>(2, 2), v_.block<2, 2>(0, 2)};
}

TwoModeCM BlockDecomposition::reassemble() const {
  Mat4 v;
  v.block<2, 2>(0, 0) = v1;
  v.block<2, 2>(2, 2) = v2;
  v.block<2, 2>(0, 2) = c;
  v.block<2, 2>(2, 0) = c.transpose();
  return TwoModeCM(v);
}

Mat4 omega() {
  Mat4 w = Mat4::Zero();
  w(0, 1) = 1;
  w(1, 0) = -1;
  w(2, 3) = 1;
  w(3, 2) = -1;
  return w;
}

Mat4 pt_mirror() { return Eigen::Vector4d(1, 1, 1, -1).asDiagonal(); }

Eigen::Vector2d symplectic_eigenvalues(const Mat4& v) {
  Eigen::SelfAdjointEigenSolver<Mat4> sym(v, Eigen::EigenvaluesOnly);
  if (sym.info() != Eigen::Success || !(sym.eigenvalues().minCoeff() > 0.0)) {
    std::ostringstream os;
    os << "covariance matrix is not positive definite (smallest eigenvalue "
       << sym.eigenvalues().minCoeff() << ")";
    throw Error(Errc::NonPositiveDefinite, os.str());
  }

  Eigen::EigenSolver<Mat4> es(omega() * v, false);
  if (es.info() != Eigen::Success) {
    throw Error(Errc::NumericalDegeneracy, "eigensolve of Omega V did not converge");
  }
  const Eigen::Vector4cd ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();

  std::array<double, 4> im{};
  for (int k = 0; k < 4; ++k) {
    if (std::abs(ev(k).real()) > kPairTol * scale) {
      std::ostringstream os;
      os << "eigenvalue " << ev(k) << " of Omega V is not purely imaginary";
      throw Error(Errc::NumericalDegeneracy, os.str());
    }
    im[k] = ev(k).imag();
  }
  std::sort(im.begin(), im.end());
  if (std::abs(im[0] + im[3]) > kPairTol * scale ||
      std::abs(im[1] + im[2]) > kPairTol * scale || im[2] <= 0.0) {
    throw Error(Errc::NumericalDegeneracy, "eigenvalues of Omega V do not form +-i pairs");
  }
  // Average each conjugate pair to cancel first-order eigensolver noise.
  return {0.5 * (im[3] - im[0]), 0.5 * (im[2] - im[1])};
}

SymplecticSpectrum symplectic_spectrum(const TwoModeCM& v) {
  const Eigen::Vector2d k = symplectic_eigenvalues(v.matrix());
  const Mat4 lam = pt_mirror();
  const Eigen::Vector2d kt = symplectic_eigenvalues(lam * v.matrix() * lam);
  return {k(0), k(1), kt(0), kt(1)};
}

TwoModeCM partial_transpose(const TwoModeCM& v) {
  const Mat4 lam = pt_mirror();
  return TwoModeCM(lam * v.matrix() * lam);
}

double uncertainty_determinant(const TwoModeCM& v) {
  const Invariants4 inv = invariants(v);
  return inv.det_v - 0.25 * (inv.det_v1 + inv.det_v2 + 2.0 * inv.det_c) + 1.0 / 16.0;
}

PhysicalityVerdict is_physical(const TwoModeCM& v) {
  PhysicalityVerdict out;
  out.uncertainty_det = uncertainty_determinant(v);
  try {
    out.kappa_minus = symplectic_eigenvalues(v.matrix())(1);
  } catch (const Error&) {
    out.kappa_minus = 0.0;
    out.physical = false;
    return out;
  }
  out.physical = out.kappa_minus >= 0.5 - kKappaTol;
  return out;
}

SeparabilityVerdict is_separable(const TwoModeCM& v) {
  const PhysicalityVerdict phys = is_physical(v);
  if (!phys.physical) {
    std::ostringstream os;
    os << "state violates the uncertainty relation (kappa_minus = " << phys.kappa_minus << ")";
    throw Error(Errc::UnphysicalState, os.str());
  }
  const Invariants4 inv = invariants(v);
  SeparabilityVerdict out;
  out.kappa_tilde_minus = symplectic_spectrum(v).kappa_tilde_minus;
  out.simon_det =
      inv.det_v - 0.25 * (inv.det_v1 + inv.det_v2 + 2.0 * std::abs(inv.det_c)) + 1.0 / 16.0;
  out.separable = out.kappa_tilde_minus >= 0.5 - kKappaTol;
  return out;
}

Invariants4 invariants(const TwoModeCM& v) {
  const BlockDecomposition b = v.blocks();
  return {b.v1.determinant(), b.v2.determinant(), b.c.determinant(), v.matrix().determinant()};
}

}  // namespace gent
