#include "gent/fock.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>
#include <spdlog/spdlog.h>

#include "gent/errors.hpp"

namespace gent {

namespace {

using Triplet = Eigen::Triplet<cplx>;
constexpr cplx kI{0.0, 1.0};

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::DimensionMismatch, what);
}

SpCMatrix identity(int n) {
  SpCMatrix id(n, n);
  id.setIdentity();
  return id;
}

SpCMatrix kron(const SpCMatrix& a, const SpCMatrix& b) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka) {
    for (SpCMatrix::InnerIterator ia(a, ka); ia; ++ia) {
      for (int kb = 0; kb < b.outerSize(); ++kb) {
        for (SpCMatrix::InnerIterator ib(b, kb); ib; ++ib) {
          t.emplace_back(static_cast<int>(ia.row() * b.rows() + ib.row()),
                         static_cast<int>(ia.col() * b.cols() + ib.col()), ia.value() * ib.value());
        }
      }
    }
  }
  SpCMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

CMatrix kron_dense(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

SpCMatrix squeeze_unitary(double r, int n) {
  const int m = 2 * n + 60;
  Eigen::MatrixXd a2 = Eigen::MatrixXd::Zero(m, m);
  for (int k = 2; k < m; ++k) a2(k - 2, k) = std::sqrt(static_cast<double>(k) * (k - 1));
  const Eigen::MatrixXd gen = 0.5 * r * (a2 - a2.transpose());
  const Eigen::MatrixXd u = gen.exp();
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i) {
    for (int j = (i % 2); j < n; j += 2) t.emplace_back(i, j, u(i, j));
  }
  SpCMatrix out(n, n);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

SpCMatrix rotation_unitary(double phi, int n) {
  SpCMatrix out(n, n);
  out.reserve(Eigen::VectorXi::Constant(n, 1));
  for (int k = 0; k < n; ++k) out.insert(k, k) = std::exp(-kI * phi * static_cast<double>(k));
  return out;
}

// exp(-i sum h_ij a_i^dagger a_j), exact inside every total-photon sector.
SpCMatrix passive_unitary(const Eigen::Matrix2cd& h, int n) {
  std::vector<Triplet> t;
  for (int tot = 0; tot <= 2 * n - 2; ++tot) {
    const int size = tot + 1;
    CMatrix g = CMatrix::Zero(size, size);
    for (int k = 0; k <= tot; ++k) {
      g(k, k) = h(0, 0) * static_cast<double>(k) + h(1, 1) * static_cast<double>(tot - k);
      if (k < tot) g(k + 1, k) += h(0, 1) * std::sqrt(static_cast<double>(k + 1) * (tot - k));
      if (k > 0) g(k - 1, k) += h(1, 0) * std::sqrt(static_cast<double>(k) * (tot - k + 1));
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(g);
    const Eigen::VectorXcd phase =
        (-kI * es.eigenvalues().cast<cplx>()).array().exp().matrix();
    const CMatrix u = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
    for (int k = 0; k <= tot; ++k) {
      if (k >= n || tot - k >= n) continue;
      for (int l = 0; l <= tot; ++l) {
        if (l >= n || tot - l >= n) continue;
        t.emplace_back(k * n + (tot - k), l * n + (tot - l), u(k, l));
      }
    }
  }
  SpCMatrix out(n * n, n * n);
  out.setFromTriplets(t.begin(), t.end());
  out.prune(cplx(0.0, 0.0), 0.0);
  return out;
}

// Generator h with exp(-i h) = u for the mode-operator map a -> u a.
Eigen::Matrix2cd generator_of(const Mat4& o) {
  Eigen::Matrix2cd u;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) u(i, j) = cplx(o(2 * i, 2 * j), o(2 * i + 1, 2 * j));
  }
  Eigen::ComplexSchur<Eigen::Matrix2cd> schur(u);
  const Eigen::Matrix2cd q = schur.matrixU();
  Eigen::Vector2d theta;
  for (int k = 0; k < 2; ++k) theta(k) = std::arg(schur.matrixT()(k, k));
  return -(q * theta.cast<cplx>().asDiagonal() * q.adjoint());
}

SpCMatrix embed(const SpCMatrix& u, int mode, int n, int modes) {
  if (modes == 1) {
    require(mode == 0, "single-mode state has only mode 0");
    return u;
  }
  require(mode == 0 || mode == 1, "mode index must be 0 or 1");
  return mode == 0 ? kron(u, identity(n)) : kron(identity(n), u);
}

double trace_deficit_of(const CMatrix& m) { return 1.0 - m.trace().real(); }

// ---- block structure ----------------------------------------------------------

int parity_of(int index, int n, int modes) {
  return modes == 1 ? index % 2 : (index / n + index % n) % 2;
}

std::vector<std::vector<int>> parity_blocks(int n, int modes, int dim) {
  std::vector<std::vector<int>> blocks(2);
  for (int i = 0; i < dim; ++i) blocks[static_cast<std::size_t>(parity_of(i, n, modes))].push_back(i);
  return blocks;
}

bool respects_blocks(const FockOperator& op) {
  const CMatrix& m = op.matrix;
  const double scale = m.cwiseAbs().maxCoeff();
  const double tol = 1e-14 * std::max(scale, 1e-300);
  for (int j = 0; j < m.cols(); ++j) {
    for (int i = 0; i < m.rows(); ++i) {
      if (parity_of(i, op.dim_per_mode, op.modes) != parity_of(j, op.dim_per_mode, op.modes) &&
          std::abs(m(i, j)) > tol) {
        return false;
      }
    }
  }
  return true;
}

bool is_real(const CMatrix& m) {
  const double scale = m.cwiseAbs().maxCoeff();
  return m.imag().cwiseAbs().maxCoeff() <= 1e-15 * std::max(scale, 1e-300);
}

// Index sets on which both operators are block diagonal.
std::vector<std::vector<int>> common_blocks(const FockOperator& a, const FockOperator* b) {
  const bool split = respects_blocks(a) && (b == nullptr || respects_blocks(*b));
  if (split) return parity_blocks(a.dim_per_mode, a.modes, a.dim());
  std::vector<int> all(static_cast<std::size_t>(a.dim()));
  for (int i = 0; i < a.dim(); ++i) all[static_cast<std::size_t>(i)] = i;
  return {all};
}

template <class Mat>
Mat extract(const CMatrix& m, const std::vector<int>& idx) {
  const auto k = static_cast<Eigen::Index>(idx.size());
  Mat out(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < k; ++i) {
      const cplx v = m(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
      if constexpr (std::is_same_v<typename Mat::Scalar, double>) {
        out(i, j) = v.real();
      } else {
        out(i, j) = v;
      }
    }
  }
  return out;
}

template <class Mat>
Mat psd_sqrt(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

template <class Mat>
double block_root_fidelity(const Mat& a, const Mat& b, FidelityRoute route) {
  const Mat sa = psd_sqrt(a);
  if (route == FidelityRoute::SingularValues) {
    const Mat prod = sa * psd_sqrt(b);
    Eigen::BDCSVD<Mat> svd(prod);
    return svd.singularValues().sum();
  }
  const Mat inner = sa * b * sa;
  Eigen::SelfAdjointEigenSolver<Mat> es(inner, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
}

template <class Mat>
double block_entropy(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 1e-15) s -= l * std::log(l);
  }
  return s;
}

// ---- moments --------------------------------------------------------------------

struct ModeOps {
  SpCMatrix q;     // (a + a^dagger) / sqrt 2
  SpCMatrix p;     // (a - a^dagger) / (sqrt 2 i)
  SpCMatrix qq;    // q^2 with exact truncated elements
  SpCMatrix pp;    // p^2
  SpCMatrix qp_s;  // (qp + pq) / 2
};

ModeOps mode_ops(int n) {
  std::vector<Triplet> ta, ta2, tn;
  for (int k = 1; k < n; ++k) ta.emplace_back(k - 1, k, std::sqrt(static_cast<double>(k)));
  for (int k = 2; k < n; ++k) {
    ta2.emplace_back(k - 2, k, std::sqrt(static_cast<double>(k) * (k - 1)));
  }
  for (int k = 0; k < n; ++k) tn.emplace_back(k, k, static_cast<double>(2 * k + 1));
  SpCMatrix a(n, n), a2(n, n), sym(n, n);
  a.setFromTriplets(ta.begin(), ta.end());
  a2.setFromTriplets(ta2.begin(), ta2.end());
  sym.setFromTriplets(tn.begin(), tn.end());  // a a^dagger + a^dagger a
  const SpCMatrix ad = a.adjoint();
  const SpCMatrix a2d = a2.adjoint();
  const double rt2 = std::sqrt(2.0);
  ModeOps ops;
  ops.q = (a + ad) / rt2;
  ops.p = (a - ad) / (rt2 * kI);
  ops.qq = 0.5 * (a2 + a2d + sym);
  ops.pp = 0.5 * (sym - a2 - a2d);
  ops.qp_s = (a2 - a2d) / (2.0 * kI);
  return ops;
}

double expect(const CMatrix& rho, const SpCMatrix& x) {
  cplx s = 0.0;
  for (int k = 0; k < x.outerSize(); ++k) {
    for (SpCMatrix::InnerIterator it(x, k); it; ++it) s += it.value() * rho(it.col(), it.row());
  }
  return s.real();
}

}  // namespace

FockOperator thermal_state(double nu, int n) {
  if (n < 2) throw Error(Errc::DimensionMismatch, "truncation needs at least 2 levels");
  if (nu < 0.5 - 1e-12) throw Error(Errc::UnphysicalState, "thermal nu below 1/2");
  const double nbar = std::max(nu - 0.5, 0.0);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  if (nbar == 0.0) {
    w(0) = 1.0;
  } else {
    const double ratio = nbar / (nbar + 1.0);
    double p = 1.0 / (nbar + 1.0);
    for (int k = 0; k < n; ++k) {
      w(k) = p;
      p *= ratio;
    }
  }
  FockOperator out;
  out.dim_per_mode = n;
  out.modes = 1;
  out.matrix = w.cast<cplx>().asDiagonal();
  out.trace_deficit = trace_deficit_of(out.matrix);
  out.factors = SpectralFactors{CMatrix::Identity(n, n), w};
  return out;
}

FockOperator tensor(const FockOperator& a, const FockOperator& b) {
  require(a.modes == 1 && b.modes == 1, "tensor expects two single-mode operators");
  require(a.dim_per_mode == b.dim_per_mode, "tensor factors need equal truncation");
  FockOperator out;
  out.dim_per_mode = a.dim_per_mode;
  out.modes = 2;
  out.matrix = kron_dense(a.matrix, b.matrix);
  out.trace_deficit = trace_deficit_of(out.matrix);
  out.unitarity_deviation = std::max(a.unitarity_deviation, b.unitarity_deviation);
  if (a.factors && b.factors) {
    SpectralFactors f;
    f.vectors = kron_dense(a.factors->vectors, b.factors->vectors);
    f.weights.resize(a.factors->weights.size() * b.factors->weights.size());
    for (Eigen::Index i = 0; i < a.factors->weights.size(); ++i) {
      f.weights.segment(i * b.factors->weights.size(), b.factors->weights.size()) =
          a.factors->weights(i) * b.factors->weights;
    }
    out.factors = std::move(f);
  }
  return out;
}

FockOperator thermal_product(double nu1, double nu2, int n) {
  return tensor(thermal_state(nu1, n), thermal_state(nu2, n));
}

SpCMatrix gate_unitary(const Gate& g, int n, int modes) {
  require(modes == 1 || modes == 2, "only one- and two-mode operators are supported");
  return std::visit(
      [&](const auto& gt) -> SpCMatrix {
        using T = std::decay_t<decltype(gt)>;
        if constexpr (std::is_same_v<T, gate::Squeeze>) {
          return embed(squeeze_unitary(gt.r, n), gt.mode, n, modes);
        } else if constexpr (std::is_same_v<T, gate::Rotate>) {
          return embed(rotation_unitary(gt.phi, n), gt.mode, n, modes);
        } else if constexpr (std::is_same_v<T, gate::BeamSplitter>) {
          require(modes == 2, "beam splitter needs a two-mode operator");
          Eigen::Matrix2cd h = Eigen::Matrix2cd::Zero();
          h(0, 1) = -kI * 0.5 * gt.theta * std::exp(kI * gt.phi);
          h(1, 0) = std::conj(h(0, 1));
          return passive_unitary(h, n);
        } else {
          require(modes == 2, "passive two-mode gate needs a two-mode operator");
          return passive_unitary(generator_of(gt.o), n);
        }
      },
      g);
}

FockOperator apply_gate(const FockOperator& state, const Gate& g) {
  const int n = state.dim_per_mode;
  const int expected = state.modes == 1 ? n : n * n;
  require(state.dim() == expected, "operator size does not match its truncation");
  const SpCMatrix u = gate_unitary(g, n, state.modes);

  FockOperator out;
  out.dim_per_mode = n;
  out.modes = state.modes;
  const CMatrix um = u * state.matrix;
  out.matrix = (u * um.adjoint()).adjoint();
  out.matrix = 0.5 * (out.matrix + out.matrix.adjoint()).eval();
  out.trace_deficit = trace_deficit_of(out.matrix);
  const SpCMatrix gram = SpCMatrix(u.adjoint()) * u - identity(expected);
  double dev = 0.0;
  for (int k = 0; k < gram.outerSize(); ++k) {
    for (SpCMatrix::InnerIterator it(gram, k); it; ++it) dev = std::max(dev, std::abs(it.value()));
  }
  out.unitarity_deviation = std::max(state.unitarity_deviation, dev);
  if (state.factors) {
    out.factors = SpectralFactors{u * state.factors->vectors, state.factors->weights};
  }
  return out;
}

FockMoments moments_from_fock(const FockOperator& state) {
  const int n = state.dim_per_mode;
  const ModeOps ops = mode_ops(n);
  FockMoments out;
  out.truncation_warning = state.trace_deficit > 1e-8;
  if (out.truncation_warning) {
    spdlog::warn("TruncationWarning: trace deficit {:.3g} exceeds 1e-8", state.trace_deficit);
  }
  const CMatrix& rho = state.matrix;
  if (state.modes == 1) {
    require(state.dim() == n, "operator size does not match its truncation");
    out.cm.resize(2, 2);
    out.cm(0, 0) = expect(rho, ops.qq);
    out.cm(1, 1) = expect(rho, ops.pp);
    out.cm(0, 1) = out.cm(1, 0) = expect(rho, ops.qp_s);
    return out;
  }
  require(state.dim() == n * n, "operator size does not match its truncation");
  const SpCMatrix id = identity(n);
  const SpCMatrix quad[2][2] = {{kron(ops.q, id), kron(ops.p, id)},
                                {kron(id, ops.q), kron(id, ops.p)}};
  out.cm.resize(4, 4);
  for (int m = 0; m < 2; ++m) {
    auto local = [&](const SpCMatrix& x) { return m == 0 ? kron(x, id) : kron(id, x); };
    out.cm(2 * m, 2 * m) = expect(rho, local(ops.qq));
    out.cm(2 * m + 1, 2 * m + 1) = expect(rho, local(ops.pp));
    out.cm(2 * m, 2 * m + 1) = out.cm(2 * m + 1, 2 * m) = expect(rho, local(ops.qp_s));
  }
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const SpCMatrix prod = quad[0][i] * quad[1][j];
      out.cm(i, 2 + j) = out.cm(2 + j, i) = expect(rho, prod);
    }
  }
  return out;
}

double fidelity_fock(const FockOperator& rho, const FockOperator& rhop, FidelityRoute route) {
  require(rho.dim() == rhop.dim() && rho.modes == rhop.modes &&
              rho.dim_per_mode == rhop.dim_per_mode,
          "fidelity needs operators of equal size");
  const bool real = is_real(rho.matrix) && is_real(rhop.matrix);
  double root = 0.0;
  for (const auto& idx : common_blocks(rho, &rhop)) {
    if (real) {
      root += block_root_fidelity(extract<Eigen::MatrixXd>(rho.matrix, idx),
                                  extract<Eigen::MatrixXd>(rhop.matrix, idx), route);
    } else {
      root += block_root_fidelity(extract<CMatrix>(rho.matrix, idx),
                                  extract<CMatrix>(rhop.matrix, idx), route);
    }
  }
  return root * root;
}

double entropy_fock(const FockOperator& rho) {
  const bool real = is_real(rho.matrix);
  double s = 0.0;
  for (const auto& idx : common_blocks(rho, nullptr)) {
    s += real ? block_entropy(extract<Eigen::MatrixXd>(rho.matrix, idx))
              : block_entropy(extract<CMatrix>(rho.matrix, idx));
  }
  return s;
}

double purity_fock(const FockOperator& rho) { return rho.matrix.squaredNorm(); }

double rel_entropy_fock(const FockOperator& rhop, const FockOperator& rho) {
  require(rho.dim() == rhop.dim() && rho.modes == rhop.modes &&
              rho.dim_per_mode == rhop.dim_per_mode,
          "relative entropy needs operators of equal size");
  constexpr double kPopTol = 1e-12;
  double cross = 0.0;  // Tr[rho ln rho']
  auto accumulate = [&](double weight, double pop, bool zero) {
    if (zero) {
      if (pop > kPopTol) {
        std::ostringstream os;
        os << "state has population " << pop << " outside the reference support";
        throw Error(Errc::SupportViolation, os.str());
      }
      return;
    }
    cross += pop * std::log(weight);
  };
  if (rhop.factors) {
    const CMatrix& w = rhop.factors->vectors;
    const CMatrix rw = rho.matrix * w;
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      const double pop = w.col(j).dot(rw.col(j)).real();
      const double weight = rhop.factors->weights(j);
      accumulate(weight, pop, !(weight > 1e-300));
    }
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rhop.matrix);
    const CMatrix rv = rho.matrix * es.eigenvectors();
    for (Eigen::Index j = 0; j < rv.cols(); ++j) {
      const double pop = es.eigenvectors().col(j).dot(rv.col(j)).real();
      const double mu = es.eigenvalues()(j);
      accumulate(mu, pop, mu <= 1e-13);
    }
  }
  return -entropy_fock(rho) - cross;
}

}  // namespace gent
