#include "evac/rational.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace evac {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("malformed integer");
  Integer value{std::string(s)};
  return negative ? Integer(-value) : value;
}

Integer pow10(long exponent) {
  Integer result = 1;
  for (long i = 0; i < exponent; ++i) result *= 10;
  return result;
}

// Decimal literal with optional fraction and exponent, converted exactly.
Rational parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    Integer parsed = parse_integer(exp_part);
    if (parsed > 4096 || parsed < -4096) throw std::invalid_argument("exponent out of range");
    exponent = parsed.convert_to<long>();
    s = s.substr(0, e);
  }
  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) throw std::invalid_argument("empty number");
  if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part))) {
    throw std::invalid_argument("malformed decimal");
  }
  std::string digits = std::string(int_part) + std::string(frac_part);
  Integer mantissa(digits.empty() ? std::string("0") : digits);
  exponent -= static_cast<long>(frac_part.size());
  Rational value = exponent >= 0 ? Rational(mantissa * pow10(exponent))
                                 : Rational(mantissa, pow10(-exponent));
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  }
  return parse_decimal(text);
}

std::string to_string(const Rational& value) { return value.str(); }

Integer numerator_of(const Rational& value) { return boost::multiprecision::numerator(value); }

Integer denominator_of(const Rational& value) { return boost::multiprecision::denominator(value); }

bool is_integral(const Rational& value) { return denominator_of(value) == 1; }

Rational rational_gcd(const Rational& a, const Rational& b) {
  if (a == 0) return abs(b);
  if (b == 0) return abs(a);
  // gcd(p/q, r/s) = gcd(p*s, r*q) / (q*s)
  Integer p = numerator_of(a), q = denominator_of(a);
  Integer r = numerator_of(b), s = denominator_of(b);
  Integer g = boost::multiprecision::gcd(Integer(abs(p * s)), Integer(abs(r * q)));
  return Rational(g, q * s);
}

std::int64_t to_int64(const Rational& value) {
  if (!is_integral(value)) throw std::overflow_error("value is not integral: " + to_string(value));
  Integer n = numerator_of(value);
  if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("value out of int64 range: " + to_string(value));
  }
  return n.convert_to<std::int64_t>();
}

}  // namespace evac
