#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace negprob {

// Exact arithmetic throughout the library. Values are kept canonical
// (gcd-reduced, positive denominator) by gmpxx after every operation.
using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "n", "n/d", with optional sign on n. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// Always "num/den", e.g. "2/1", "-1/16".
std::string to_string(const Rational& value);

// Rounded decimal rendering with `digits` fractional digits (display only).
std::string to_decimal(const Rational& value, int digits);

inline Rational abs_value(const Rational& value) {
  Rational r = value;
  if (sgn(r) < 0) r = -r;
  return r;
}

}  // namespace negprob
