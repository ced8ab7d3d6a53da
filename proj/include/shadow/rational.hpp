#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace shadow {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q" or "p" (base 10) into a canonical rational. Throws
/// BadParams on malformed input or zero denominator.
Rational parse_rational(const std::string& s);

/// Renders as "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

bool is_integral(const Rational& r);

/// Nearest rational p/D to x with denominator dividing D (D >= 2).
/// |result - x| <= 1/(2D). x must be finite.
Rational rationalize_double(double x, const Integer& denominator_bound);

/// Default denominator bound 2^64 used wherever continuous data enters
/// the exact pipeline.
Integer default_denominator_bound();

/// Rational bounds on sqrt(x) for x >= 0 with relative error <= 2^-bits.
/// sqrt_lower(x) <= sqrt(x) <= sqrt_upper(x), both exact rationals.
Rational sqrt_lower(const Rational& x, unsigned bits = 72);
Rational sqrt_upper(const Rational& x, unsigned bits = 72);

/// sqrt(x) when x is a perfect square of a rational; nullopt otherwise.
std::optional<Rational> exact_sqrt(const Rational& x);

/// Rounds x to a rational with denominator <= D, biased down/up.
Rational round_down_to_denominator(const Rational& x, const Integer& D);
Rational round_up_to_denominator(const Rational& x, const Integer& D);

}  // namespace shadow
