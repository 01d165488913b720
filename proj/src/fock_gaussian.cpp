#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "gent/errors.hpp"
#include "gent/fock.hpp"

namespace gent {

namespace {

constexpr double kSymplecticTol = 1e-7;

double symplectic_defect(const Mat4& s) {
  const Mat4 w = omega();
  return (s.transpose() * w * s - w).cwiseAbs().maxCoeff();
}

void check_symplectic(const Mat4& s, const char* what) {
  const double dev = symplectic_defect(s);
  if (dev > kSymplecticTol) {
    std::ostringstream os;
    os << what << " is not symplectic (deviation " << dev << ")";
    throw Error(Errc::DecompositionFailure, os.str());
  }
}

// Rows of a two-mode operator on nw levels that survive a cut to n levels.
std::vector<int> kept_rows(int n, int nw, int modes) {
  std::vector<int> rows;
  if (modes == 1) {
    for (int k = 0; k < n; ++k) rows.push_back(k);
    return rows;
  }
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = 0; k2 < n; ++k2) rows.push_back(k1 * nw + k2);
  }
  return rows;
}

FockOperator assemble(const SpCMatrix& u, const SpectralFactors& thermal, int n, int nw,
                      int modes) {
  const CMatrix full = CMatrix(u) * thermal.vectors;
  const std::vector<int> rows = kept_rows(n, nw, modes);
  SpectralFactors f;
  f.weights = thermal.weights;
  f.vectors.resize(static_cast<Eigen::Index>(rows.size()), full.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    f.vectors.row(static_cast<Eigen::Index>(i)) = full.row(rows[i]);
  }

  // Columns with negligible weight do not change the matrix.
  const double cut = 1e-20 * f.weights.maxCoeff();
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < f.weights.size(); ++j) {
    if (f.weights(j) > cut) cols.push_back(j);
  }
  CMatrix scaled(f.vectors.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    scaled.col(static_cast<Eigen::Index>(c)) = f.vectors.col(cols[c]) * std::sqrt(f.weights(cols[c]));
  }

  FockOperator out;
  out.dim_per_mode = n;
  out.modes = modes;
  out.matrix = scaled * scaled.adjoint();
  out.trace_deficit = 1.0 - out.matrix.trace().real();
  out.factors = std::move(f);
  return out;
}

}  // namespace

WilliamsonFactors williamson(const Mat4& v) {
  Eigen::SelfAdjointEigenSolver<Mat4> sym(v);
  if (sym.info() != Eigen::Success || !(sym.eigenvalues().minCoeff() > 0.0)) {
    throw Error(Errc::NonPositiveDefinite, "Williamson decomposition needs V > 0");
  }
  const Eigen::Vector4d ev = sym.eigenvalues();
  const Mat4 half = sym.eigenvectors() * ev.cwiseSqrt().asDiagonal() * sym.eigenvectors().transpose();
  const Mat4 inv_half =
      sym.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() * sym.eigenvectors().transpose();

  // i V^{-1/2} Omega V^{-1/2} is Hermitian with eigenvalues +-1/kappa.
  const Mat4 a = inv_half * omega() * inv_half;
  const Eigen::Matrix4cd h = std::complex<double>(0.0, 1.0) * a.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
  Mat4 o;
  WilliamsonFactors out;
  // Ascending order: indices 2, 3 hold 1/kappa_plus <= 1/kappa_minus.
  for (int k = 0; k < 2; ++k) {
    const double lam = es.eigenvalues()(2 + k);
    if (!(lam > 0.0)) throw Error(Errc::DecompositionFailure, "missing positive eigenvalue");
    const Eigen::Vector4cd w = es.eigenvectors().col(2 + k);
    o.col(2 * k) = std::sqrt(2.0) * w.imag();
    o.col(2 * k + 1) = std::sqrt(2.0) * w.real();
    out.d(2 * k) = out.d(2 * k + 1) = 1.0 / lam;
  }
  out.s = half * o * out.d.cwiseSqrt().cwiseInverse().asDiagonal();
  check_symplectic(out.s, "Williamson factor S");
  return out;
}

EulerFactors euler_decompose(const Mat4& s) {
  check_symplectic(s, "input");
  Eigen::SelfAdjointEigenSolver<Mat4> es(s * s.transpose());
  const Eigen::Vector4d root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Mat4 p = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
  const Mat4 p_inv = es.eigenvectors() * root.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
  const Mat4 q = p_inv * s;

  const Mat4 wt = omega().transpose();
  Mat4 o;
  o.col(0) = es.eigenvectors().col(3);
  o.col(1) = wt * o.col(0);
  const Mat4 rest = Mat4::Identity() - o.col(0) * o.col(0).transpose() - o.col(1) * o.col(1).transpose();
  Eigen::SelfAdjointEigenSolver<Mat4> es2(rest * p * rest);
  o.col(2) = es2.eigenvectors().col(3);
  o.col(3) = wt * o.col(2);

  EulerFactors out;
  out.o1 = o;
  out.o2 = o.transpose() * q;
  out.z = {o.col(0).dot(p * o.col(0)), o.col(2).dot(p * o.col(2))};
  const Eigen::Vector4d zd(out.z(0), 1.0 / out.z(0), out.z(1), 1.0 / out.z(1));
  const double err = (out.o1 * zd.asDiagonal() * out.o2 - s).cwiseAbs().maxCoeff();
  if (err > kSymplecticTol * std::max(1.0, s.cwiseAbs().maxCoeff())) {
    std::ostringstream os;
    os << "Euler factors reproduce S only to " << err;
    throw Error(Errc::DecompositionFailure, os.str());
  }
  check_symplectic(out.o1, "left passive factor");
  check_symplectic(out.o2, "right passive factor");
  return out;
}

FockOperator gaussian_state_from_cm(const TwoModeCM& v, int n, int pad) {
  const PhysicalityVerdict phys = is_physical(v);
  if (!phys.physical) {
    throw Error(Errc::UnphysicalState, "cannot build a state from an unphysical CM");
  }
  const WilliamsonFactors wf = williamson(v.matrix());
  const EulerFactors ef = euler_decompose(wf.s);
  const int nw = n + std::max(pad, 0);
  const FockOperator th = thermal_product(wf.d(0), wf.d(2), nw);
  const SpCMatrix u = gate_unitary(gate::Passive{ef.o1}, nw, 2) *
                      gate_unitary(gate::Squeeze{0, -std::log(ef.z(0))}, nw, 2) *
                      gate_unitary(gate::Squeeze{1, -std::log(ef.z(1))}, nw, 2) *
                      gate_unitary(gate::Passive{ef.o2}, nw, 2);
  return assemble(u, *th.factors, n, nw, 2);
}

FockOperator gaussian_state_from_cm(const Mat2& v, int n, int pad) {
  const Mat2 vs = 0.5 * (v + v.transpose());
  const double det = vs.determinant();
  if (!(vs(0, 0) > 0.0) || det < 0.25 - 1e-12) {
    throw Error(Errc::UnphysicalState, "cannot build a state from an unphysical CM");
  }
  const double nu = std::sqrt(det);
  // V / nu is symmetric symplectic: R diag(z, 1/z) R^T with z >= 1.
  Eigen::SelfAdjointEigenSolver<Mat2> es(vs / nu);
  const Eigen::Vector2d o1 = es.eigenvectors().col(1);
  const double z = std::sqrt(std::max(es.eigenvalues()(1), 1.0));
  const double psi = std::atan2(o1(1), o1(0));
  const int nw = n + std::max(pad, 0);
  const FockOperator th = thermal_state(nu, nw);
  const SpCMatrix u = gate_unitary(gate::Rotate{0, -psi}, nw, 1) *
                      gate_unitary(gate::Squeeze{0, -std::log(z)}, nw, 1) *
                      gate_unitary(gate::Rotate{0, psi}, nw, 1);
  return assemble(u, *th.factors, n, nw, 1);
}

FockOperator gaussian_state_from_cm(const OneModeCM& v, int n, int pad) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = v.sigma_qq;
  m(1, 1) = v.sigma_pp;
  return gaussian_state_from_cm(m, n, pad);
}

}  // namespace gent
