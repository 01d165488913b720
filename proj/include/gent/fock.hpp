#pragma once

// Truncated number-basis representation of Gaussian states, used as a brute-force
// reference for the covariance-matrix formulas. Two-mode index: k1 * N + k2.

#include <complex>
#include <optional>
#include <variant>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "gent/cm_core.hpp"
#include "gent/one_mode.hpp"

namespace gent {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using SpCMatrix = Eigen::SparseMatrix<cplx>;

/// matrix = vectors * diag(weights) * vectors^dagger, with weights known exactly.
struct SpectralFactors {
  CMatrix vectors;
  Eigen::VectorXd weights;
};

struct FockOperator {
  CMatrix matrix;
  int dim_per_mode = 0;
  int modes = 1;
  /// 1 - Re Tr(matrix); truncation is never renormalized away.
  double trace_deficit = 0;
  /// Largest |U^dagger U - I| over the gates applied, restricted to the kept space.
  double unitarity_deviation = 0;
  /// Present for states built from thermal weights by gates; enables exact logarithms.
  std::optional<SpectralFactors> factors;

  int dim() const { return static_cast<int>(matrix.rows()); }
};

namespace gate {

/// exp((r a^2 - r a^dagger^2) / 2) on one mode: q -> e^{-r} q, p -> e^{r} p.
struct Squeeze {
  int mode = 0;
  double r = 0;
};

/// exp(-i phi a^dagger a) on one mode.
struct Rotate {
  int mode = 0;
  double phi = 0;
};

/// exp[-(theta/2)(e^{i phi} a1^dagger a2 - e^{-i phi} a1 a2^dagger)]; its Heisenberg
/// matrix is bs_symplectic({theta, phi}).
struct BeamSplitter {
  double theta = 0;
  double phi = 0;
};

/// Passive two-mode gate whose Heisenberg matrix is the orthogonal symplectic o.
struct Passive {
  Mat4 o = Mat4::Identity();
};

}  // namespace gate

using Gate = std::variant<gate::Squeeze, gate::Rotate, gate::BeamSplitter, gate::Passive>;

/// Thermal state with symplectic eigenvalue nu (mean photon number nu - 1/2), not renormalized.
FockOperator thermal_state(double nu, int n);

/// Product of two thermal states, mode 1 with nu1 and mode 2 with nu2.
FockOperator thermal_product(double nu1, double nu2, int n);

/// Truncated unitary of a gate; single-mode gates need modes == 1 or a valid mode index.
SpCMatrix gate_unitary(const Gate& g, int n, int modes);

/// U rho U^dagger. Throws DimensionMismatch.
FockOperator apply_gate(const FockOperator& state, const Gate& g);

/// Two-mode (4x4) or one-mode (2x2) covariance matrix of a truncated state.
struct FockMoments {
  Eigen::MatrixXd cm;
  bool truncation_warning = false;
};
FockMoments moments_from_fock(const FockOperator& state);

enum class FidelityRoute {
  /// (sum of singular values of sqrt(rho) sqrt(rho'))^2; small eigenvalues stay accurate.
  SingularValues,
  /// (Tr sqrt(sqrt(rho) rho' sqrt(rho)))^2 from eigenvalues floored at zero.
  Eigenvalues,
};

double fidelity_fock(const FockOperator& rho, const FockOperator& rhop,
                     FidelityRoute route = FidelityRoute::SingularValues);

/// Tr[rho (ln rho - ln rho')]. Throws SupportViolation or DimensionMismatch.
double rel_entropy_fock(const FockOperator& rhop, const FockOperator& rho);

/// -sum lambda ln lambda over eigenvalues above 1e-15.
double entropy_fock(const FockOperator& rho);

double purity_fock(const FockOperator& rho);

struct WilliamsonFactors {
  Mat4 s;
  Eigen::Vector4d d;  ///< (kappa_plus, kappa_plus, kappa_minus, kappa_minus)
};

/// V = S diag(d) S^T with S symplectic. Throws NonPositiveDefinite or DecompositionFailure.
WilliamsonFactors williamson(const Mat4& v);

/// S = o1 * diag(z1, 1/z1, z2, 1/z2) * o2 with o1, o2 orthogonal symplectic.
struct EulerFactors {
  Mat4 o1;
  Eigen::Vector2d z;
  Mat4 o2;
};
EulerFactors euler_decompose(const Mat4& s);

/// Builds the state with covariance matrix v from a thermal product and gates.
/// The construction runs at n + pad levels per mode and is cut to n at the end.
/// Throws UnphysicalState or DecompositionFailure.
FockOperator gaussian_state_from_cm(const TwoModeCM& v, int n, int pad = 4);
FockOperator gaussian_state_from_cm(const OneModeCM& v, int n, int pad = 8);
FockOperator gaussian_state_from_cm(const Mat2& v, int n, int pad = 8);

/// Tensor product of two single-mode operators (factors carried when both have them).
FockOperator tensor(const FockOperator& a, const FockOperator& b);

}  // namespace gent
