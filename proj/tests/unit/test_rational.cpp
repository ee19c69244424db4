#include <gtest/gtest.h>

#include "negprob/rational.hpp"

using namespace negprob;

TEST(Rational, ParsesIntegersAndFractions) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-1/16"), Rational(-1, 16));
  EXPECT_EQ(parse_rational("4/8"), Rational(1, 2));
  EXPECT_EQ(parse_rational("+2/3"), Rational(2, 3));
}

TEST(Rational, RejectsMalformedText) {
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/2/3"), std::invalid_argument);
  EXPECT_THROW(parse_rational("0.5"), std::invalid_argument);
}

TEST(Rational, PrintsNumOverDen) {
  EXPECT_EQ(to_string(Rational(2)), "2/1");
  EXPECT_EQ(to_string(Rational(-1, 16)), "-1/16");
  EXPECT_EQ(to_string(Rational(0)), "0/1");
}

TEST(Rational, DecimalRounding) {
  EXPECT_EQ(to_decimal(Rational(7, 3), 2), "2.33");
  EXPECT_EQ(to_decimal(Rational(12, 5), 1), "2.4");
  EXPECT_EQ(to_decimal(Rational(32, 11), 4), "2.9091");
  EXPECT_EQ(to_decimal(Rational(-1, 16), 3), "-0.063");
  EXPECT_EQ(to_decimal(Rational(5), 0), "5");
}

TEST(Rational, RoundTripsThroughText) {
  for (int n = -20; n <= 20; ++n)
    for (int d = 1; d <= 12; ++d) {
      Rational v(n, d);
      v.canonicalize();
      EXPECT_EQ(parse_rational(to_string(v)), v);
    }
}
