#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace evac {

/// Exact rational number. Every cost, capacity, supply, time and flow amount
/// in the library is carried in this type.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Parses "p/q", "-7", "2.375" or "1e-2" into an exact rational.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Reduced "p/q"; integers are printed without a denominator.
std::string to_string(const Rational& value);

Integer numerator_of(const Rational& value);
Integer denominator_of(const Rational& value);

bool is_integral(const Rational& value);

/// Largest rational g such that a/g and b/g are both integers.
/// gcd(0, b) = |b|; gcd(0, 0) = 0.
Rational rational_gcd(const Rational& a, const Rational& b);

/// Converts an integral rational to int64, throwing std::overflow_error when
/// it is not integral or out of range.
std::int64_t to_int64(const Rational& value);

}  // namespace evac
