#pragma once

#include <algorithm>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "momentkit/common.hpp"
#include "momentkit/measure.hpp"
#include "momentkit/rational.hpp"

namespace momentkit {

/// One sequence term: exact rational or double, depending on how the
/// sequence was produced.
class Scalar {
 public:
  Scalar(Rational r) : v_(std::move(r)) {}
  Scalar(double d) : v_(d) {}

  bool exact() const { return std::holds_alternative<Rational>(v_); }

  const Rational& rational() const {
    if (!exact()) throw std::logic_error("scalar is not exact");
    return std::get<Rational>(v_);
  }

  double value() const {
    return exact() ? to_double(std::get<Rational>(v_)) : std::get<double>(v_);
  }

 private:
  std::variant<Rational, double> v_;
};

/// A finite prefix (a_0, ..., a_{n-1}) of a real sequence.  All terms share
/// one arithmetic mode: exact rational or floating point.  Candidate
/// generating-function coefficient sequences have a_0 = 1 and all terms
/// >= 0; quotient sequences may break both, so neither is enforced here.
class MomentSequence {
 public:
  static MomentSequence from_rationals(std::vector<Rational> terms) {
    if (terms.empty()) throw std::invalid_argument("sequence needs >= 1 term");
    MomentSequence s;
    s.v_ = std::move(terms);
    return s;
  }

  static MomentSequence from_doubles(std::vector<double> terms) {
    if (terms.empty()) throw std::invalid_argument("sequence needs >= 1 term");
    for (double t : terms)
      if (!std::isfinite(t))
        throw std::invalid_argument("sequence terms must be finite");
    MomentSequence s;
    s.v_ = std::move(terms);
    return s;
  }

  bool exact() const { return std::holds_alternative<std::vector<Rational>>(v_); }
  std::size_t size() const {
    return exact() ? std::get<std::vector<Rational>>(v_).size()
                   : std::get<std::vector<double>>(v_).size();
  }

  Scalar term(std::size_t k) const {
    check_index(k);
    if (exact()) return Scalar(std::get<std::vector<Rational>>(v_)[k]);
    return Scalar(std::get<std::vector<double>>(v_)[k]);
  }

  double term_d(std::size_t k) const {
    check_index(k);
    if (exact()) return to_double(std::get<std::vector<Rational>>(v_)[k]);
    return std::get<std::vector<double>>(v_)[k];
  }

  const std::vector<Rational>& rationals() const {
    if (!exact()) throw std::logic_error("sequence is floating point");
    return std::get<std::vector<Rational>>(v_);
  }

  std::vector<double> doubles() const {
    std::vector<double> out(size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = term_d(k);
    return out;
  }

  MomentSequence to_floating() const {
    return from_doubles(doubles());
  }

  MomentSequence prefix(std::size_t count) const {
    if (count == 0 || count > size())
      throw std::invalid_argument("bad prefix length");
    if (exact()) {
      const auto& v = std::get<std::vector<Rational>>(v_);
      return from_rationals({v.begin(), v.begin() + static_cast<long>(count)});
    }
    const auto& v = std::get<std::vector<double>>(v_);
    return from_doubles({v.begin(), v.begin() + static_cast<long>(count)});
  }

  /// a_0 = 1 and every term >= 0 (up to 1e-9 in floating mode, where a_0
  /// typically comes out of quadrature).
  bool is_candidate() const {
    if (exact()) {
      const auto& v = std::get<std::vector<Rational>>(v_);
      if (v[0] != 1) return false;
      return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r >= 0; });
    }
    const auto& v = std::get<std::vector<double>>(v_);
    if (std::abs(v[0] - 1.0) > 1e-9) return false;
    return std::all_of(v.begin(), v.end(), [](double t) { return t >= -1e-15; });
  }

  double max_abs() const {
    double m = 0.0;
    for (std::size_t k = 0; k < size(); ++k) m = std::max(m, std::abs(term_d(k)));
    return m;
  }

  /// One term per line: "p/q" in exact mode, 17-digit decimals otherwise.
  void write(std::ostream& os) const {
    if (exact())
      for (const auto& r : std::get<std::vector<Rational>>(v_))
        os << format_rational(r) << "\n";
    else
      for (double d : std::get<std::vector<double>>(v_)) os << fmt17(d) << "\n";
  }

  /// Reads one scalar per line (blank lines and '#' comments skipped).  The
  /// sequence is exact iff every line parses as an integer or a fraction;
  /// any decimal point or exponent switches the whole sequence to floating.
  static MomentSequence read(std::istream& is) {
    std::vector<std::string> tokens;
    bool all_exact = true;
    std::string line;
    while (std::getline(is, line)) {
      std::string_view sv(line);
      while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.back())))
        sv.remove_suffix(1);
      while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.front())))
        sv.remove_prefix(1);
      if (sv.empty() || sv.front() == '#') continue;
      tokens.emplace_back(sv);
      if (sv.find_first_of(".eE") != std::string_view::npos) all_exact = false;
    }
    if (tokens.empty()) throw FormatError("sequence file has no terms");
    if (all_exact) {
      std::vector<Rational> terms;
      terms.reserve(tokens.size());
      for (const auto& t : tokens) terms.push_back(parse_rational(t));
      return from_rationals(std::move(terms));
    }
    std::vector<double> terms;
    terms.reserve(tokens.size());
    for (const auto& t : tokens) {
      char* end = nullptr;
      double v = std::strtod(t.c_str(), &end);
      if (end == t.c_str() || *end != '\0')
        throw FormatError("bad sequence term '" + t + "'");
      terms.push_back(v);
    }
    return from_doubles(std::move(terms));
  }

 private:
  MomentSequence() = default;

  void check_index(std::size_t k) const {
    if (k >= size()) throw std::out_of_range("sequence index out of range");
  }

  std::variant<std::vector<Rational>, std::vector<double>> v_;
};

/// n-th forward difference at index k:
///   D^0 a_k = a_k,   D^n a_k = D^{n-1} a_k - D^{n-1} a_{k+1}.
/// Needs k + n < length.  O(n^2) in the window length; exactness follows
/// the sequence mode.
inline Scalar forward_difference(const MomentSequence& seq, int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("order and index must be >= 0");
  if (static_cast<std::size_t>(k) + static_cast<std::size_t>(n) >= seq.size())
    throw std::out_of_range("forward difference needs k + n < sequence length");
  if (seq.exact()) {
    const auto& a = seq.rationals();
    std::vector<Rational> w(a.begin() + k, a.begin() + k + n + 1);
    for (int round = 0; round < n; ++round)
      for (std::size_t i = 0; i + 1 < w.size() - static_cast<std::size_t>(round); ++i)
        w[i] = w[i] - w[i + 1];
    return Scalar(w[0]);
  }
  std::vector<double> w(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) w[static_cast<std::size_t>(i)] = seq.term_d(k + i);
  for (int round = 0; round < n; ++round)
    for (std::size_t i = 0; i + 1 < w.size() - static_cast<std::size_t>(round); ++i)
      w[i] = w[i] - w[i + 1];
  return Scalar(w[0]);
}

struct CMViolation {
  int order = 0;
  int index = 0;
  double value = 0.0;
};

/// Result of a finite-order complete-monotonicity check.
struct CMReport {
  int max_order = 0;
  double base_tolerance = 0.0;
  double min_difference = std::numeric_limits<double>::infinity();
  std::optional<CMViolation> first_violation;
  bool passed = false;
};

/// Checks D^n a_k >= 0 for all 0 <= n <= max_order, 0 <= k <= len-1-n.
/// Exact sequences are compared against zero exactly (tolerance must be 0);
/// floating sequences use the order-scaled threshold
///   eps_n = tolerance * 2^n * max_k |a_k|
/// which tracks the 2^n cancellation amplification of the difference table.
inline CMReport is_completely_monotone(const MomentSequence& seq, int max_order,
                                       double tolerance) {
  if (max_order < 0) throw std::invalid_argument("max_order must be >= 0");
  if (static_cast<std::size_t>(max_order) >= seq.size())
    throw std::invalid_argument("max_order must be below the sequence length");
  if (!(tolerance >= 0.0))
    throw std::invalid_argument("tolerance must be >= 0");
  if (seq.exact() && tolerance != 0.0)
    throw std::invalid_argument("exact sequences take tolerance 0");

  CMReport report;
  report.max_order = max_order;
  report.base_tolerance = tolerance;
  report.passed = true;

  if (seq.exact()) {
    // Build the difference table row by row; row n holds D^n a_k for all k.
    std::vector<Rational> row = seq.rationals();
    for (int n = 0; n <= max_order; ++n) {
      for (std::size_t k = 0; k < row.size(); ++k) {
        double v = to_double(row[k]);
        report.min_difference = std::min(report.min_difference, v);
        if (row[k] < 0 && !report.first_violation) {
          report.first_violation = CMViolation{n, static_cast<int>(k), v};
          report.passed = false;
        }
      }
      if (report.first_violation) break;
      for (std::size_t k = 0; k + 1 < row.size(); ++k) row[k] = row[k] - row[k + 1];
      row.pop_back();
    }
    return report;
  }

  std::vector<double> row = seq.doubles();
  const double scale = seq.max_abs();
  double threshold = tolerance * scale;  // 2^0 at order zero
  for (int n = 0; n <= max_order; ++n) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      report.min_difference = std::min(report.min_difference, row[k]);
      if (row[k] < -threshold && !report.first_violation) {
        report.first_violation = CMViolation{n, static_cast<int>(k), row[k]};
        report.passed = false;
      }
    }
    if (report.first_violation) break;
    for (std::size_t k = 0; k + 1 < row.size(); ++k) row[k] = row[k] - row[k + 1];
    row.pop_back();
    threshold *= 2.0;
  }
  return report;
}

/// First `count` moments of a measure.  Exact when the measure's moments
/// are exactly representable (atoms, uniform / power densities); quadrature
/// with absolute error <= tol per term otherwise.
inline MomentSequence moments_of(const Measure& mu, int count, double tol = 1e-12) {
  if (count < 1) throw std::invalid_argument("need at least one moment");
  if (mu.exact_moments_available()) {
    std::vector<Rational> terms;
    terms.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) terms.push_back(mu.moment_exact(k));
    return MomentSequence::from_rationals(std::move(terms));
  }
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) terms.push_back(mu.moment_numeric(k, tol));
  return MomentSequence::from_doubles(std::move(terms));
}

}  // namespace momentkit
