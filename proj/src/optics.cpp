#include "gent/optics.hpp"

#include <cmath>

#include "gent/errors.hpp"

namespace gent {

Mat4 bs_symplectic(const BeamSplitterParams& p) {
  const double c = std::cos(0.5 * p.theta);
  const double s = std::sin(0.5 * p.theta);
  Mat2 rot;
  rot << std::cos(p.phi), -std::sin(p.phi), std::sin(p.phi), std::cos(p.phi);
  Mat4 m;
  m.block<2, 2>(0, 0) = c * Mat2::Identity();
  m.block<2, 2>(2, 2) = c * Mat2::Identity();
  m.block<2, 2>(0, 2) = -s * rot;
  m.block<2, 2>(2, 0) = s * rot.transpose();
  return m;
}

TwoModeCM transform_cm(const TwoModeCM& v, const Mat4& m) {
  const Mat4 w = omega();
  const double dev = (m.transpose() * w * m - w).cwiseAbs().maxCoeff();
  if (dev > 1e-8) {
    throw Error(Errc::NotSymplectic,
                "transformation violates M^T Omega M = Omega by " + std::to_string(dev));
  }
  return TwoModeCM(m.transpose() * v.matrix() * m);
}

std::array<double, 4> diagonalize_symmetric(const SymmetricState& s, double u) {
  if (!(u > 0.0)) {
    throw Error(Errc::DomainError, "scale u must be positive");
  }
  return {(s.b() + s.c()) * u, (s.b() - s.d_abs()) / u, (s.b() - s.c()) * u,
          (s.b() + s.d_abs()) / u};
}

}  // namespace gent
