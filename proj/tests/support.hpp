#pragma once

// Generators and independent reference computations shared by the tests.

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "gent/cm_core.hpp"
#include "gent/fock.hpp"
#include "gent/standard_forms.hpp"

namespace gent::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Closed-form spectra of a symmetric standard-form state (b, c, |d|).
struct Kappas {
  double plus, minus, tilde_plus, tilde_minus;
};
inline Kappas kappas(double b, double c, double d_abs) {
  return {std::sqrt((b - d_abs) * (b + c)), std::sqrt((b + d_abs) * (b - c)),
          std::sqrt((b + d_abs) * (b + c)), std::sqrt((b - d_abs) * (b - c))};
}

/// Random symmetric state with b in [b_lo, b_hi]. alpha = b - c and
/// beta = b - |d| are drawn with alpha <= beta <= b and kappa_minus > 1/2 + margin.
inline SymmetricState random_symmetric(Rng& rng, bool entangled, double b_lo = 0.5,
                                       double b_hi = 3.0, double margin = 1e-6) {
  while (true) {
    const double b = uniform(rng, b_lo, b_hi);
    double alpha = uniform(rng, 0.0, b);
    double beta = uniform(rng, 0.0, b);
    if (alpha > beta) std::swap(alpha, beta);
    if (!(alpha > 1e-9)) continue;
    if ((2.0 * b - beta) * alpha < std::pow(0.5 + margin, 2)) continue;
    const bool ent = alpha * beta < 0.25;
    if (ent != entangled) continue;
    if (entangled && alpha * beta > std::pow(0.5 - margin, 2)) continue;
    return SymmetricState(b, b - alpha, b - beta);
  }
}

inline Mat2 rot2(double t) {
  Mat2 r;
  r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return r;
}

/// rotation * squeeze * rotation on each mode.
inline Mat4 random_local_symplectic(Rng& rng, double max_r = 1.0) {
  Mat4 s = Mat4::Zero();
  for (int m = 0; m < 2; ++m) {
    const double r = uniform(rng, -max_r, max_r);
    Mat2 sq = Mat2::Zero();
    sq(0, 0) = std::exp(r);
    sq(1, 1) = std::exp(-r);
    s.block<2, 2>(2 * m, 2 * m) =
        rot2(uniform(rng, -M_PI, M_PI)) * sq * rot2(uniform(rng, -M_PI, M_PI));
  }
  return s;
}

/// Smallest eigenvalue of the Hermitian matrix V + i Omega / 2 (>= 0 iff physical).
inline double robertson_margin(const Mat4& v) {
  const Eigen::Matrix4cd h =
      v.cast<std::complex<double>>() + std::complex<double>(0.0, 0.5) * omega().cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// Random physical standard form I with b1, b2 in [0.5, 3].
inline StandardFormI random_standard_form(Rng& rng) {
  while (true) {
    StandardFormI f;
    f.b1 = uniform(rng, 0.5, 3.0);
    f.b2 = uniform(rng, 0.5, 3.0);
    const double cmax = std::sqrt(f.b1 * f.b2);
    f.c = uniform(rng, 0.0, cmax);
    f.d = uniform(rng, -f.c, f.c);
    if (robertson_margin(f.cm().matrix()) > 1e-6) return f;
  }
}

/// Random physical two-mode CM: standard form conjugated by local symplectics.
inline TwoModeCM random_physical_cm(Rng& rng, double max_r = 1.0) {
  const Mat4 s = random_local_symplectic(rng, max_r);
  return TwoModeCM(s * random_standard_form(rng).cm().matrix() * s.transpose());
}

/// S(sigma || rho) = Tr[rho (ln rho - ln sigma)] for two-mode Gaussian states, from the
/// Williamson form of the reference: -ln sigma = sum_k [ln(nu_k + 1/2) + beta_k (n_k)]
/// with n_k the thermal-mode number operator and beta_k = ln((nu_k + 1/2) / (nu_k - 1/2)).
inline double gaussian_rel_entropy(const Mat4& sigma, const Mat4& rho) {
  auto g = [](double nu) {
    const double lo = nu - 0.5;
    return (nu + 0.5) * std::log(nu + 0.5) - (lo > 1e-300 ? lo * std::log(lo) : 0.0);
  };
  const WilliamsonFactors ws = williamson(sigma);
  const Mat4 sinv = ws.s.inverse();
  const Mat4 t = sinv * rho * sinv.transpose();
  const Eigen::Vector2d nu_rho = symplectic_eigenvalues(rho);
  double cross = 0.0;
  for (int k = 0; k < 2; ++k) {
    const double nu = ws.d(2 * k);
    const double n_k = 0.5 * (t(2 * k, 2 * k) + t(2 * k + 1, 2 * k + 1)) - 0.5;
    cross += std::log(nu + 0.5) + std::log((nu + 0.5) / (nu - 0.5)) * n_k;
  }
  return cross - g(nu_rho(0)) - g(nu_rho(1));
}

}  // namespace gent::testing
