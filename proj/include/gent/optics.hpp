#pragma once

#include <array>

#include "gent/cm_core.hpp"
#include "gent/standard_forms.hpp"

namespace gent {

struct BeamSplitterParams {
  double theta = 0;  ///< [0, pi]
  double phi = 0;    ///< (-pi, pi]
};

/// Heisenberg matrix of the mixing gate B(theta, phi), orthogonal and symplectic:
/// [[c I, -s R(phi)], [s R(phi)^T, c I]] with c = cos(theta/2), s = sin(theta/2).
Mat4 bs_symplectic(const BeamSplitterParams& p);

/// M^T V M. Throws NotSymplectic when |M^T Omega M - Omega| > 1e-8.
TwoModeCM transform_cm(const TwoModeCM& v, const Mat4& m);

/// Closed-form diagonal of the 50:50 image of a symmetric state scaled by u on both modes:
/// ((b+c)u, (b-|d|)/u, (b-c)u, (b+|d|)/u).
std::array<double, 4> diagonalize_symmetric(const SymmetricState& s, double u);

}  // namespace gent
