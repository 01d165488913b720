#include <doctest.h>

#include "gent/bures.hpp"
#include "gent/errors.hpp"
#include "gent/fock.hpp"
#include "gent/optics.hpp"
#include "gent/relent.hpp"
#include "support.hpp"

using namespace gent;
using namespace gent::testing;

namespace {

TwoModeCM tmsv_cm(double r) {
  const double b = 0.5 * std::cosh(2 * r), c = 0.5 * std::sinh(2 * r);
  return TwoModeCM::standard(b, b, c, -c);
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("thermal states") {
  const FockOperator vac = thermal_state(0.5, 10);
  CHECK(vac.matrix(0, 0) == 1.0);
  CHECK(vac.matrix.cwiseAbs().sum() == 1.0);
  CHECK(vac.trace_deficit == 0.0);

  const FockOperator th = thermal_state(1.0, 60);
  CHECK(th.trace_deficit < 1e-10);
  CHECK(th.trace_deficit >= -1e-15);
  const FockMoments m = moments_from_fock(th);
  CHECK(std::abs(m.cm(0, 0) - 1) < 1e-9);
  CHECK(std::abs(m.cm(1, 1) - 1) < 1e-9);
  CHECK(std::abs(m.cm(0, 1)) < 1e-12);
  CHECK_FALSE(m.truncation_warning);

  const FockMoments v = moments_from_fock(thermal_state(0.5, 5));
  CHECK(max_abs(v.cm - 0.5 * Eigen::Matrix2d::Identity()) < 1e-15);
}

TEST_CASE("gates") {
  const FockOperator rho = gaussian_state_from_cm(tmsv_cm(0.3), 20);
  const FockOperator same = apply_gate(rho, gate::BeamSplitter{0, 0.4});
  CHECK((same.matrix - rho.matrix).cwiseAbs().maxCoeff() < 1e-12);

  const FockOperator sq = thermal_state(0.8, 60);
  const FockOperator back = apply_gate(apply_gate(sq, gate::Squeeze{0, 0.3}), gate::Squeeze{0, -0.3});
  // Truncation only touches the edge of the kept space.
  CHECK((back.matrix - sq.matrix).topLeftCorner(15, 15).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(apply_gate(sq, gate::BeamSplitter{1, 0}), Error);
  CHECK_THROWS_AS(apply_gate(rho, gate::Squeeze{2, 0.1}), Error);
}

TEST_CASE("gate Heisenberg matrices match the symplectic conventions") {
  const FockOperator in = tensor(gaussian_state_from_cm(OneModeCM{0.9, 0.6}, 25),
                                 gaussian_state_from_cm(OneModeCM{0.55, 0.7}, 25));
  const Mat4 v = moments_from_fock(in).cm;
  REQUIRE(max_abs(v - Eigen::Vector4d(0.9, 0.6, 0.55, 0.7).asDiagonal().toDenseMatrix()) < 1e-10);

  SUBCASE("beam splitter") {
    const Mat4 m = bs_symplectic({1.1, 0.7});
    const Mat4 out = moments_from_fock(apply_gate(in, gate::BeamSplitter{1.1, 0.7})).cm;
    CHECK(max_abs(out - m * v * m.transpose()) < 1e-8);
  }
  SUBCASE("rotation and squeeze") {
    const double phi = 0.4, r = 0.2;
    Mat4 a = Mat4::Identity();
    a.block<2, 2>(0, 0) << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
    a(2, 2) = std::exp(-r);
    a(3, 3) = std::exp(r);
    const FockOperator out = apply_gate(apply_gate(in, gate::Rotate{0, phi}), gate::Squeeze{1, r});
    CHECK(max_abs(moments_from_fock(out).cm - a * v * a.transpose()) < 1e-8);
  }
}

TEST_CASE("50:50 beam splitter disentangles a two-mode squeezed vacuum") {
  const FockOperator rho = gaussian_state_from_cm(tmsv_cm(0.2), 25);
  // B^dagger rho B has CM M^T V M, the diagonalized form.
  const FockOperator out = apply_gate(rho, gate::BeamSplitter{-M_PI / 2, 0});
  const Mat4 cm = moments_from_fock(out).cm;
  CHECK(std::abs(cm(0, 2)) < 1e-6);
  CHECK(std::abs(cm(1, 3)) < 1e-6);
  CHECK(std::abs(cm(0, 0) - std::exp(0.4) / 2) < 1e-6);
  CHECK(std::abs(cm(1, 1) - std::exp(-0.4) / 2) < 1e-6);
}

TEST_CASE("Williamson and Euler factors") {
  Rng rng(61);
  const Mat4 w = omega();
  for (int t = 0; t < 200; ++t) {
    const Mat4 v = random_physical_cm(rng).matrix();
    const WilliamsonFactors f = williamson(v);
    REQUIRE((f.s.transpose() * w * f.s - w).cwiseAbs().maxCoeff() < 1e-9);
    REQUIRE((f.s * f.d.asDiagonal() * f.s.transpose() - v).cwiseAbs().maxCoeff() < 1e-9 * v.norm());
    const Eigen::Vector2d k = symplectic_eigenvalues(v);
    REQUIRE(std::abs(f.d(0) - k(0)) < 1e-9);
    REQUIRE(std::abs(f.d(2) - k(1)) < 1e-9);
    const EulerFactors e = euler_decompose(f.s);
    REQUIRE((e.o1.transpose() * e.o1 - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-9);
    REQUIRE((e.o2.transpose() * e.o2 - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-9);
  }
  const WilliamsonFactors vac = williamson(Mat4::Identity() * 0.5);
  CHECK(vac.d.isApprox(Eigen::Vector4d::Constant(0.5)));
  Mat4 bad = Mat4::Identity();
  bad(0, 0) = -1;
  CHECK_THROWS_AS(williamson(bad), Error);
}

TEST_CASE("Gaussian states from covariance matrices") {
  const FockOperator th = gaussian_state_from_cm(OneModeCM{0.9, 0.9}, 40);
  CHECK((th.matrix - thermal_state(0.9, 40).matrix).cwiseAbs().maxCoeff() < 1e-12);

  const TwoModeCM v = TwoModeCM::standard(1, 1, 0.8, -0.6);
  const FockOperator rho = gaussian_state_from_cm(v, 30);
  CHECK(max_abs(moments_from_fock(rho).cm - v.matrix()) < 1e-5);

  const FockOperator pure = gaussian_state_from_cm(tmsv_cm(0.4), 30);
  CHECK(std::abs(purity_fock(pure) - 1) < 1e-6);
  CHECK(std::abs(entropy_fock(pure)) < 1e-6);

  CHECK_THROWS_AS(gaussian_state_from_cm(TwoModeCM::standard(0.5, 0.5, 0.4, 0), 10), Error);
}

TEST_CASE("property: moments round trip on random CMs") {
  Rng rng(62);
  for (int t = 0; t < 50; ++t) {
    // Mild states so that 20 levels per mode hold the state.
    StandardFormI f;
    do {
      f.b1 = uniform(rng, 0.5, 0.9);
      f.b2 = uniform(rng, 0.5, 0.9);
      f.c = uniform(rng, 0, 0.4);
      f.d = uniform(rng, -f.c, f.c);
    } while (robertson_margin(f.cm().matrix()) < 1e-4);
    const Mat4 s = random_local_symplectic(rng, 0.2);
    const TwoModeCM v(s * f.cm().matrix() * s.transpose());
    const FockOperator rho = gaussian_state_from_cm(v, 20);
    REQUIRE(rho.trace_deficit < 1e-7);
    REQUIRE(max_abs(moments_from_fock(rho).cm - v.matrix()) < 1e-5);
  }
}

TEST_CASE("fidelity") {
  const FockOperator a = gaussian_state_from_cm(OneModeCM{1.2, 0.7}, 60);
  CHECK(std::abs(fidelity_fock(a, a) - 1) < 1e-10);
  CHECK(std::abs(fidelity_fock(a, a, FidelityRoute::Eigenvalues) - 1) < 1e-6);
  const double vt = fidelity_fock(thermal_state(0.5, 60), thermal_state(1.0, 60));
  CHECK(std::abs(vt - 2.0 / 3) < 1e-8);

  // Pure states: fidelity is the squared overlap.
  const FockOperator p = gaussian_state_from_cm(OneModeCM{0.8, 0.3125}, 60);
  const FockOperator q = gaussian_state_from_cm(OneModeCM{0.35, 0.25 / 0.35}, 60);
  const Eigen::SelfAdjointEigenSolver<CMatrix> ep(p.matrix), eq(q.matrix);
  const cplx ov = ep.eigenvectors().col(59).dot(eq.eigenvectors().col(59));
  CHECK(std::abs(fidelity_fock(p, q) - std::norm(ov)) < 1e-9);

  CHECK_THROWS_AS(fidelity_fock(thermal_state(1, 10), thermal_state(1, 12)), Error);
}

TEST_CASE("relative entropy and entropy") {
  const FockOperator a = gaussian_state_from_cm(OneModeCM{1.1, 0.8}, 60);
  CHECK(std::abs(rel_entropy_fock(a, a)) < 1e-10);
  const double r = rel_entropy_fock(thermal_state(1.0, 60), thermal_state(0.6, 60));
  CHECK(std::abs(r - rel_entropy_one_mode({1, 1}, {0.6, 0.6})) < 1e-7);
  try {
    rel_entropy_fock(thermal_state(0.5, 60), thermal_state(1.0, 60));
    FAIL("expected SupportViolation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SupportViolation);
  }

  CHECK(std::abs(entropy_fock(gaussian_state_from_cm(tmsv_cm(0.3), 20))) < 1e-9);
  CHECK(std::abs(entropy_fock(thermal_state(1, 60)) - 0.9547712524422) < 1e-8);
  const FockOperator sts = apply_gate(thermal_state(0.8, 60), gate::Squeeze{0, 0.25});
  CHECK(std::abs(entropy_fock(sts) - von_neumann_entropy_nu(0.8)) < 1e-7);
}

TEST_CASE("property: multiplicativity, additivity and common-unitary invariance") {
  const int n = 20;
  const OneModeCM a1{0.7, 0.5}, a2{0.6, 0.65};
  const OneModeCM b1{0.55, 0.75}, b2{0.8, 0.7};
  const FockOperator rho1 = gaussian_state_from_cm(a1, n), rho2 = gaussian_state_from_cm(a2, n);
  const FockOperator sig1 = gaussian_state_from_cm(b1, n), sig2 = gaussian_state_from_cm(b2, n);
  const FockOperator rho = tensor(rho1, rho2), sig = tensor(sig1, sig2);

  const double f = fidelity_fock(rho, sig);
  CHECK(std::abs(f - fidelity_fock(rho1, sig1) * fidelity_fock(rho2, sig2)) < 1e-7);
  CHECK(std::abs(f - one_mode_fidelity(a1, b1) * one_mode_fidelity(a2, b2)) < 1e-7);

  const double s = rel_entropy_fock(sig, rho);
  CHECK(std::abs(s - rel_entropy_fock(sig1, rho1) - rel_entropy_fock(sig2, rho2)) < 1e-7);

  const gate::BeamSplitter bs{0.9, 0.3};
  CHECK(std::abs(fidelity_fock(apply_gate(rho, bs), apply_gate(sig, bs)) - f) < 1e-6);
  CHECK(std::abs(rel_entropy_fock(apply_gate(sig, bs), apply_gate(rho, bs)) - s) < 1e-6);
}

TEST_CASE("property: doubling the truncation leaves oracle values unchanged") {
  const OneModeCM a{0.9, 0.6}, b{0.7, 0.8};
  const double f30 = fidelity_fock(gaussian_state_from_cm(a, 30), gaussian_state_from_cm(b, 30));
  const double f60 = fidelity_fock(gaussian_state_from_cm(a, 60), gaussian_state_from_cm(b, 60));
  CHECK(std::abs(f30 - f60) < 1e-8);
  const double e30 = entropy_fock(gaussian_state_from_cm(a, 30));
  const double e60 = entropy_fock(gaussian_state_from_cm(a, 60));
  CHECK(std::abs(e30 - e60) < 1e-8);
}
