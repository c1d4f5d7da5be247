#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "momentkit/common.hpp"

namespace momentkit {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// r^e with exact integer exponentiation of numerator and denominator.
inline Rational rat_pow(const Rational& r, unsigned e) {
  using boost::multiprecision::pow;
  if (e == 0) return Rational(1);
  Integer num = pow(numerator(r), e);
  Integer den = pow(denominator(r), e);
  return Rational(num, den);
}

inline Integer factorial(unsigned n) {
  Integer f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Exact binomial coefficient C(n, k).
inline Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Integer c = 1;
  for (unsigned i = 0; i < k; ++i) {
    c *= n - i;
    c /= i + 1;
  }
  return c;
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Decimal literal with optional fraction part and exponent -> exact rational.
inline Rational parse_decimal(std::string_view s, std::string_view original) {
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  long long exp10 = 0;
  if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
    std::string_view es = s.substr(epos + 1);
    s = s.substr(0, epos);
    bool eneg = false;
    if (!es.empty() && (es[0] == '+' || es[0] == '-')) {
      eneg = es[0] == '-';
      es.remove_prefix(1);
    }
    if (!all_digits(es) || es.size() > 6)
      throw FormatError("bad exponent in number '" + std::string(original) + "'");
    for (char c : es) exp10 = exp10 * 10 + (c - '0');
    if (eneg) exp10 = -exp10;
  }
  std::string digits;
  long long frac_digits = 0;
  bool seen_dot = false;
  for (char c : s) {
    if (c == '.') {
      if (seen_dot)
        throw FormatError("bad number '" + std::string(original) + "'");
      seen_dot = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw FormatError("bad number '" + std::string(original) + "'");
    digits.push_back(c);
    if (seen_dot) ++frac_digits;
  }
  if (digits.empty())
    throw FormatError("bad number '" + std::string(original) + "'");
  // strip leading zeros: cpp_int's string constructor treats them as octal
  if (auto nz = digits.find_first_not_of('0'); nz == std::string::npos)
    digits = "0";
  else
    digits.erase(0, nz);
  Integer mantissa(digits);
  if (negative) mantissa = -mantissa;
  long long net = exp10 - frac_digits;
  Rational value(mantissa);
  if (net > 0) {
    value *= Rational(boost::multiprecision::pow(Integer(10), static_cast<unsigned>(net)));
  } else if (net < 0) {
    value /= Rational(boost::multiprecision::pow(Integer(10), static_cast<unsigned>(-net)));
  }
  return value;
}

}  // namespace detail

/// Parses "p/q", an integer, or a decimal (with optional exponent) into an
/// exact rational.  The decimal form is converted exactly, so "0.3" -> 3/10.
inline Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw FormatError("empty number");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    Rational n = detail::parse_decimal(num, text);
    Rational d = detail::parse_decimal(den, text);
    if (d == 0) throw FormatError("zero denominator in '" + std::string(text) + "'");
    return n / d;
  }
  return detail::parse_decimal(s, text);
}

/// "p/q" for non-integers, plain integer otherwise.
inline std::string format_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

/// The exact rational value of an IEEE double (every finite double is rational).
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw FormatError("cannot convert non-finite value to rational");
  return Rational(x);
}

}  // namespace momentkit
