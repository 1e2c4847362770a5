#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace macm {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exact power with a signed exponent. Throws ZeroDenominator for 0^(-k).
Rational pow(const Rational& base, long exponent);
Integer pow(const Integer& base, unsigned long exponent);

Rational abs(const Rational& x);

/// Canonical "num/den" (or "num" when den == 1).
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

/// Parses "3", "-3/4", "0.25" into an exact rational.
Rational parse_rational(std::string_view text);

double to_double(const Rational& x);

/// Smallest integer >= x.
Integer ceil(const Rational& x);

}  // namespace macm
