#pragma once

// Arbitrary precision integers and rationals. Both are thin aliases over
// GMP's C++ classes; mpq_class keeps values canonical (lowest terms,
// positive denominator) after every arithmetic operation.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace eisenprod {

using Integer = mpz_class;
using Rational = mpq_class;

/// "p/q", or "p" when q == 1.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

/// Accepts "p", "-p", "p/q"; the result is canonicalized.
Rational parse_rational(std::string_view text);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

Integer pow(const Integer& base, unsigned long exp);
Rational pow(const Rational& base, unsigned long exp);

}  // namespace eisenprod
