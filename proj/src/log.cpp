#include "gent/log.hpp"

#include <cstdlib>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace gent {

namespace {

void ensure_stderr_logger() {
  static const bool installed = [] {
    auto logger = spdlog::stderr_color_mt("gent");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    return true;
  }();
  (void)installed;
}

}  // namespace

bool set_log_level(std::string_view name) {
  ensure_stderr_logger();
  if (name == "error") {
    spdlog::set_level(spdlog::level::err);
  } else if (name == "warn") {
    spdlog::set_level(spdlog::level::warn);
  } else if (name == "info") {
    spdlog::set_level(spdlog::level::info);
  } else if (name == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else {
    return false;
  }
  return true;
}

void init_logging_from_env() {
  ensure_stderr_logger();
  if (const char* env = std::getenv("GENT_LOG")) {
    if (!set_log_level(env)) spdlog::warn("ignoring unknown GENT_LOG value '{}'", env);
  }
}

}  // namespace gent
