#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace freearr {

using Integer = mpz_class;
/// mpq_class keeps gcd(|num|, den) = 1 and den >= 1 after canonicalize().
using Rational = mpq_class;

using IntVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// Parses "123", "-7" or "p/q" (q != 0). Throws ParseError otherwise.
Rational parse_rational(std::string_view text);

/// Decimal "p" when the denominator is 1, "p/q" otherwise.
std::string format_rational(const Rational& value);

std::size_t bit_length(const Integer& value);

/// Divides by the gcd of the entries and makes the first nonzero entry positive.
/// A zero vector is returned unchanged.
void make_primitive(IntVector& values);

/// Smallest common multiple of denominators times the vector, then primitive.
IntVector primitive_integer_vector(const RationalVector& values);

/// Best rational approximation with denominator <= max_denominator (continued fractions).
Rational rationalize(double value, long max_denominator);

}  // namespace freearr
