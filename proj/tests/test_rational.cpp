#include "doctest.h"
#include "gsmds/rational.hpp"

using gsmds::Rational;

TEST_CASE("rational arithmetic is exact and normalized") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(3) * Rational(1, 3) == Rational(1));
    CHECK(Rational(7, 2) - Rational(1, 2) == Rational(3));
    CHECK(Rational(1) / Rational(4) == Rational(1, 4));
    CHECK(Rational(-6, 4) == Rational(-3, 2));
    CHECK(Rational(0, 5) == Rational(0));
    CHECK(Rational(1, 3) < Rational(1, 2));
}

TEST_CASE("division by zero throws") {
    CHECK_THROWS_AS(Rational(1) / Rational(0), gsmds::rational_error);
    CHECK_THROWS_AS(Rational(1, 0), gsmds::rational_error);
}

TEST_CASE("parse handles integers, decimals, fractions and separators") {
    CHECK(Rational::parse("61") == Rational(61));
    CHECK(Rational::parse("-3") == Rational(-3));
    CHECK(Rational::parse("2.5") == Rational(5, 2));
    CHECK(Rational::parse(".3") == Rational(3, 10));
    CHECK(Rational::parse("1/2") == Rational(1, 2));
    CHECK(Rational::parse("1,000") == Rational(1000));
    CHECK(Rational::parse("24%") == Rational(24));
    CHECK(Rational::parse("$1200") == Rational(1200));
    CHECK(Rational::parse(" 190 ") == Rational(190));
    CHECK_FALSE(Rational::parse("kiwi").has_value());
    CHECK_FALSE(Rational::parse("").has_value());
    CHECK_FALSE(Rational::parse("1/0").has_value());
    CHECK_FALSE(Rational::parse("1.2.3").has_value());
}

TEST_CASE("str renders integers plainly and fractions as a/b") {
    CHECK(Rational(61).str() == "61");
    CHECK(Rational(3, 10).str() == "3/10");
    CHECK(Rational(-5, 2).str() == "-5/2");
}
