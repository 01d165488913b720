#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gent {

enum class Errc {
  NonPositiveDefinite,
  NumericalDegeneracy,
  UnphysicalState,
  BranchAmbiguity,
  DomainError,
  SingularDenominator,
  NotSymplectic,
  NotSymmetric,
  OptimizerNoConverge,
  BracketFailure,
  SupportViolation,
  DimensionMismatch,
  DecompositionFailure,
  ParseError,
};

std::string_view to_string(Errc code) noexcept;

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NonPositiveDefinite: return "NonPositiveDefinite";
    case Errc::NumericalDegeneracy: return "NumericalDegeneracy";
    case Errc::UnphysicalState: return "UnphysicalState";
    case Errc::BranchAmbiguity: return "BranchAmbiguity";
    case Errc::DomainError: return "DomainError";
    case Errc::SingularDenominator: return "SingularDenominator";
    case Errc::NotSymplectic: return "NotSymplectic";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::OptimizerNoConverge: return "OptimizerNoConverge";
    case Errc::BracketFailure: return "BracketFailure";
    case Errc::SupportViolation: return "SupportViolation";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DecompositionFailure: return "DecompositionFailure";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace gent
