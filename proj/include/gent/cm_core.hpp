#pragma once

// Two-mode covariance matrices (hbar = 1, vacuum = I/2), ordering (q1, p1, q2, p2).

#include <Eigen/Dense>

namespace gent {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;

/// Physicality and separability thresholds on symplectic eigenvalues.
inline constexpr double kKappaTol = 1e-12;

/// Tolerance on the +-i pairing of the eigenvalues of Omega V.
inline constexpr double kPairTol = 1e-10;

struct BlockDecomposition;

class TwoModeCM {
 public:
  TwoModeCM() : v_(Mat4::Identity() * 0.5) {}

  /// Stores (v + v^T) / 2, so the stored matrix is symmetric exactly.
  explicit TwoModeCM(const Mat4& v);

  /// Standard form I: V1 = b1 I, V2 = b2 I, C = diag(c, d).
  static TwoModeCM standard(double b1, double b2, double c, double d);

  const Mat4& matrix() const { return v_; }
  double operator()(int i, int j) const { return v_(i, j); }

  BlockDecomposition blocks() const;

  bool operator==(const TwoModeCM& other) const { return v_ == other.v_; }

 private:
  Mat4 v_;
};

struct BlockDecomposition {
  Mat2 v1;
  Mat2 v2;
  Mat2 c;

  TwoModeCM reassemble() const;
};

struct SymplecticSpectrum {
  double kappa_plus = 0.5;
  double kappa_minus = 0.5;
  double kappa_tilde_plus = 0.5;
  double kappa_tilde_minus = 0.5;
};

struct Invariants4 {
  double det_v1 = 0;
  double det_v2 = 0;
  double det_c = 0;
  double det_v = 0;
};

struct PhysicalityVerdict {
  bool physical = false;
  double kappa_minus = 0;
  /// det(V + i Omega / 2), the Robertson-Schroedinger determinant.
  double uncertainty_det = 0;
};

struct SeparabilityVerdict {
  bool separable = false;
  double kappa_tilde_minus = 0;
  /// det(V~ + i Omega / 2) with |det C| in place of det C.
  double simon_det = 0;
};

/// block-diag(J, J), J = [[0, 1], [-1, 0]].
Mat4 omega();

/// Lambda = diag(1, 1, 1, -1): mirrors the momentum of mode 2.
Mat4 pt_mirror();

/// Symplectic spectrum of V and of its partial transpose, from a dense eigensolve
/// of Omega V. Throws NonPositiveDefinite or NumericalDegeneracy.
SymplecticSpectrum symplectic_spectrum(const TwoModeCM& v);

/// The symplectic eigenvalues of a single 4x4 CM only (no partial transpose).
Eigen::Vector2d symplectic_eigenvalues(const Mat4& v);

TwoModeCM partial_transpose(const TwoModeCM& v);

PhysicalityVerdict is_physical(const TwoModeCM& v);

/// Throws UnphysicalState when the input violates the uncertainty relation.
SeparabilityVerdict is_separable(const TwoModeCM& v);

Invariants4 invariants(const TwoModeCM& v);

/// det V - (det V1 + det V2 + 2 det C) / 4 + 1/16.
double uncertainty_determinant(const TwoModeCM& v);

}  // namespace gent
