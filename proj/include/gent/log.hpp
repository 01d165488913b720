#pragma once

#include <string_view>

namespace gent {

/// Sets the library log level from GENT_LOG (error, warn, info, debug); logs go to stderr.
void init_logging_from_env();

/// Explicit override; unknown names leave the level unchanged and return false.
bool set_log_level(std::string_view name);

}  // namespace gent
