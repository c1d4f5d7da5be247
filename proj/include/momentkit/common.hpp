#pragma once

#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace momentkit {

using Complex = std::complex<double>;

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Evaluation point was within the guard distance of the cut [1, inf).
struct SlitViolationError : Error {
  SlitViolationError(Complex point, double distance)
      : Error("point (" + std::to_string(point.real()) + "," +
              std::to_string(point.imag()) +
              ") is within the guard distance of the cut [1,inf); distance=" +
              std::to_string(distance)),
        point(point),
        distance(distance) {}
  Complex point;
  double distance;
};

/// A numerical integration did not reach the requested accuracy.
/// `attained` carries the error estimate that was actually achieved.
struct QuadratureError : Error {
  QuadratureError(const std::string& what, double attained, double requested)
      : Error(what + " (attained error estimate " + std::to_string(attained) +
              ", requested " + std::to_string(requested) + ")"),
        attained(attained),
        requested(requested) {}
  double attained;
  double requested;
};

/// A closed-form expression was requested at a parameter combination where
/// its denominator vanishes.
struct DegeneratePointError : Error {
  using Error::Error;
};

/// A partial-sum evaluation could not certify the requested accuracy
/// within the given term budget.
struct InsufficientBudgetError : Error {
  InsufficientBudgetError(const std::string& what, double attained_bound)
      : Error(what + " (attained tail bound " + std::to_string(attained_bound) +
              ")"),
        attained_bound(attained_bound) {}
  double attained_bound;
};

/// Malformed textual input (sequence files, measure files, grid tokens, ...).
struct FormatError : Error {
  using Error::Error;
};

/// Value printed with 17 significant digits; round-trips IEEE doubles.
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string fmt_complex(Complex z) {
  return fmt17(z.real()) + "," + fmt17(z.imag());
}

}  // namespace momentkit
