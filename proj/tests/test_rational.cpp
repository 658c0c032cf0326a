#include <gtest/gtest.h>

#include <cmath>

#include "prudentia/error.hpp"
#include "prudentia/rational.hpp"

using namespace prudentia;

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
    EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
    EXPECT_EQ(parse_rational("-6/8"), Rational(-3, 4));
    EXPECT_EQ(parse_rational("7"), Rational(7));
    EXPECT_EQ(parse_rational("-0.25"), Rational(-1, 4));
    EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
    EXPECT_EQ(parse_rational(" +2 "), Rational(2));
}

TEST(Rational, RejectsMalformedLiterals) {
    for (const char* bad : {"", "abc", "1/0", "1.2/3", "1.", "--1", "1.x"})
        EXPECT_THROW(parse_rational(bad), ParseError) << bad;
}

TEST(Rational, CanonicalText) {
    EXPECT_EQ(to_string(frac(4, 6)), "2/3");
    EXPECT_EQ(to_string(Rational(-5)), "-5");
    EXPECT_EQ(to_string(parse_rational(to_string(Rational(-22, 7)))), "-22/7");
}

TEST(Rational, DoubleConversionIsExact) {
    for (double d : {0.1, -3.75, std::log(1.05), 1e-300, 12345.678}) {
        const Rational q = from_double(d);
        EXPECT_EQ(to_double(q), d);
        EXPECT_EQ(q.get_den() & (q.get_den() - 1), 0) << "dyadic denominator expected";
    }
}

TEST(Rational, VectorArithmetic) {
    const Vector a{1, 2, 3}, b{Rational(1, 2), -1, 0};
    EXPECT_EQ(dot(a, b), Rational(-3, 2));
    EXPECT_EQ(add(a, b), (Vector{Rational(3, 2), 1, 3}));
    EXPECT_EQ(subtract(a, b), (Vector{Rational(1, 2), 3, 3}));
    EXPECT_EQ(negate(a), (Vector{-1, -2, -3}));
    EXPECT_TRUE(is_zero(zeros(4)));
    EXPECT_FALSE(is_zero(b));
}

TEST(Rational, PrimitiveIntegerKeepsDirection) {
    EXPECT_EQ(primitive_integer({Rational(1, 2), Rational(1, 4), 0}), (Vector{2, 1, 0}));
    EXPECT_EQ(primitive_integer({-6, 9, 3}), (Vector{-2, 3, 1}));
    EXPECT_EQ(primitive_integer(zeros(2)), zeros(2));
    EXPECT_EQ(common_denominator({Rational(1, 6), Rational(3, 4)}), 12);
}

TEST(Rational, NormalizeLeading) {
    EXPECT_EQ(normalize_leading({0, -3, 6}), (Vector{0, -1, 2}));
    EXPECT_EQ(normalize_leading({Rational(1, 2), 1}), (Vector{1, 2}));
    EXPECT_EQ(normalize_leading(zeros(3)), zeros(3));
}
