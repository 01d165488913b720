#pragma once

#include <string>

#include "gent/cm_core.hpp"

namespace gent {

/// Parses {"v": [[...] x4]} (row-major, ordering q1, p1, q2, p2). Asymmetry above
/// 1e-9 is rejected; the accepted matrix is symmetrized. Throws ParseError.
TwoModeCM parse_cm_json(const std::string& text);
TwoModeCM load_cm_json(const std::string& path);

std::string cm_to_json(const TwoModeCM& v);

}  // namespace gent
