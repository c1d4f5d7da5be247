#pragma once

#include <cstdlib>
#include <optional>
#include <string>

#include "momentkit/common.hpp"

namespace momentkit {

namespace detail {

inline std::optional<double> parse_env_tolerance() {
  const char* raw = std::getenv("MOMENTKIT_TOL");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v > 0.0)) {
    throw FormatError(std::string("MOMENTKIT_TOL must be a positive number, got '") +
                      raw + "'");
  }
  return v;
}

}  // namespace detail

/// Verification tolerance: the MOMENTKIT_TOL environment variable, when set,
/// overrides the per-check default.  Read once per process.
inline double verification_tolerance(double fallback) {
  static const std::optional<double> env = detail::parse_env_tolerance();
  return env ? *env : fallback;
}

}  // namespace momentkit
