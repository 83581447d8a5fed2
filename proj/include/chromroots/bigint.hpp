#pragma once

// Exact integer and rational arithmetic used throughout the library.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace chromroots {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_decimal(const BigInt& v) { return v.str(); }

/// "num/den", or "num" when the denominator is 1.
inline std::string to_fraction_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_fraction(const std::string& text);

/// Natural logarithm of a positive integer of any size.
double log_abs(const BigInt& v);

}  // namespace chromroots
