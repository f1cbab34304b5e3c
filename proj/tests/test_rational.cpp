#include "evac/rational.hpp"

#include <gtest/gtest.h>

using evac::Rational;

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(evac::parse_rational("9/2"), Rational(9, 2));
  EXPECT_EQ(evac::parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_EQ(evac::parse_rational("17"), Rational(17));
  EXPECT_EQ(evac::parse_rational("2.375"), Rational(19, 8));
  EXPECT_EQ(evac::parse_rational("-0.1"), Rational(-1, 10));
  EXPECT_EQ(evac::parse_rational("1e-2"), Rational(1, 100));
  EXPECT_EQ(evac::parse_rational("2.5E1"), Rational(25));
}

TEST(Rational, RejectsMalformedText) {
  EXPECT_THROW(evac::parse_rational(""), std::invalid_argument);
  EXPECT_THROW(evac::parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(evac::parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(evac::parse_rational("1/2/3"), std::invalid_argument);
}

TEST(Rational, PrintsReduced) {
  EXPECT_EQ(evac::to_string(Rational(10, 4)), "5/2");
  EXPECT_EQ(evac::to_string(Rational(8, 4)), "2");
  EXPECT_EQ(evac::to_string(Rational(0)), "0");
  EXPECT_EQ(evac::to_string(Rational(-1, 3)), "-1/3");
}

TEST(Rational, Gcd) {
  EXPECT_EQ(evac::rational_gcd(Rational(9, 2), Rational(3)), Rational(3, 2));
  EXPECT_EQ(evac::rational_gcd(Rational(9, 2), Rational(1)), Rational(1, 2));
  EXPECT_EQ(evac::rational_gcd(Rational(0), Rational(4, 3)), Rational(4, 3));
  EXPECT_EQ(evac::rational_gcd(Rational(0), Rational(0)), Rational(0));
  EXPECT_EQ(evac::rational_gcd(Rational(2, 3), Rational(1, 2)), Rational(1, 6));
}

TEST(Rational, ToInt64) {
  EXPECT_EQ(evac::to_int64(Rational(-42)), -42);
  EXPECT_THROW(evac::to_int64(Rational(1, 2)), std::overflow_error);
  EXPECT_THROW(evac::to_int64(Rational(evac::Integer(1) << 70)), std::overflow_error);
}
