#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ssf {

// Exact scalars. mpq_class keeps values canonical (lowest terms, positive
// denominator) as long as they are built through the helpers below.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);

// Accepts "p", "p/q", "-p/q". Throws Error(invalid_input) on anything else.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);
Rational abs(const Rational& value);

// base^exp for a non-negative exponent.
Rational pow(const Rational& base, unsigned long exp);

}  // namespace ssf
