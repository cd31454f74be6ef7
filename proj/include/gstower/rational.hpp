#ifndef GSTOWER_RATIONAL_HPP
#define GSTOWER_RATIONAL_HPP

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace gstower
{

// Arbitrary precision integers and rationals. mpq_class keeps values in
// lowest terms with a positive denominator as long as every value is
// produced through its arithmetic operators or through parse_rational.
using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "p/q", "p", and finite decimals such as "-68.3636" or "5e-4".
// Throws FixtureError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

// Always "p/q", also for integers ("4/1"), so output is uniform.
std::string to_string(const Rational &q);

// Decimal rendering with `digits` digits after the point, rounded toward
// +inf (up) or -inf (down).
std::string to_decimal_up(const Rational &q, int digits);
std::string to_decimal_down(const Rational &q, int digits);

// Rounds toward +inf keeping `significant` significant digits.
std::string to_significant_up(const Rational &q, int significant);

Rational pow(const Rational &base, long exponent);

Integer floor(const Rational &q);
Integer ceil(const Rational &q);

inline bool is_integer(const Rational &q)
{
    return q.get_den() == 1;
}

} // namespace gstower

#endif
