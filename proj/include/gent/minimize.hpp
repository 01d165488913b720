#pragma once

#include <functional>
#include <vector>

namespace gent {

using ScalarFn = std::function<double(double)>;
using VectorFn = std::function<double(const std::vector<double>&)>;

struct ScalarMin {
  double x = 0;
  double f = 0;
  int evaluations = 0;
};

/// Golden-section search for a minimum of f inside (a, b); stops when the
/// bracket is narrower than tol. Endpoints are never evaluated.
ScalarMin golden_section(const ScalarFn& f, double a, double b, double tol, int max_iter = 400);

struct Bracket {
  double lo = 0;
  double hi = 0;
};

/// Walks x_k = origin + h0 * 2^k until f increases, returning an interval that
/// contains a local minimum. Throws BracketFailure once x_k passes x_max.
Bracket bracket_by_doubling(const ScalarFn& f, double origin, double h0, double x_max);

struct BoxMinOptions {
  double step_tol = 1e-9;
  double f_tol = 1e-15;
  int max_sweeps = 2000;
};

struct BoxMin {
  std::vector<double> x;
  double f = 0;
  int sweeps = 0;
  bool converged = false;
};

/// Coordinate descent with golden-section line searches over the box [lower, upper],
/// followed after each sweep by a line search along the sweep's net displacement.
BoxMin coordinate_descent(const VectorFn& f, std::vector<double> x0,
                          const std::vector<double>& lower, const std::vector<double>& upper,
                          const BoxMinOptions& opts = {});

}  // namespace gent
