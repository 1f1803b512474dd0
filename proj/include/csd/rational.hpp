#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace csd {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number. Always stored reduced with positive denominator.
using Rational = boost::multiprecision::cpp_rational;

/// A degree value: an exact rational that is meant to lie in (0, 1].
/// Alias rather than a wrapper so that arithmetic stays ordinary; the
/// producers in degrees.hpp enforce the range.
using Degree = Rational;

inline bool is_degree_value(const Rational& r) { return r > 0 && r <= 1; }

/// Checked constructor for values that must be degrees.
inline Degree as_degree(Rational r) {
  if (!is_degree_value(r))
    throw std::logic_error("degree value outside (0,1]: " + r.str());
  return r;
}

inline Rational rational(long long num, long long den) {
  return Rational(BigInt(num), BigInt(den));
}

/// "41/49", or just "1" for integers.
inline std::string fraction_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Six significant digits, for human tables only. Never used in JSON.
inline std::string decimal_approx(const Rational& r, int significant = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant, r.convert_to<double>());
  return buf;
}

/// Parses "a/b" or "a" into an exact rational. Throws std::invalid_argument.
inline Rational parse_fraction(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a fraction: '" + text + "'");
  }
}

}  // namespace csd
