#pragma once

#include <cmath>

namespace gent {

/// Diagonal single-mode CM diag(sigma_qq, sigma_pp).
struct OneModeCM {
  double sigma_qq = 0.5;
  double sigma_pp = 0.5;

  double det() const { return sigma_qq * sigma_pp; }
  /// Symplectic eigenvalue sqrt(det).
  double nu() const { return std::sqrt(det()); }

  bool operator==(const OneModeCM&) const = default;
};

}  // namespace gent
