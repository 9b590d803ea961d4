#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace nilcps;
using nilcps::testing::Gen;

TEST(Rational, ParsesFractionsAndIntegers) {
    EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
    EXPECT_EQ(parse_rational("-7"), Rational(-7));
    EXPECT_EQ(to_string(parse_rational("-4/6")), "-2/3");
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
}

TEST(Rational, RationalPowerIsExactOrThrows) {
    EXPECT_EQ(rational_power(Rational(8), Rational(2, 3)), Rational(4));
    EXPECT_EQ(rational_power(Rational(1, 4), Rational(1, 2)), Rational(1, 2));
    EXPECT_THROW(rational_power(Rational(2), Rational(1, 2)), std::domain_error);
}

TEST(Quadratic, StarOfOnePlusRootTwo) {
    auto x = ExactScalar::quadratic(2, 1, 1);
    EXPECT_EQ(x.star(), ExactScalar::quadratic(2, 1, -1));
    // unit: (1+sqrt2)(1-sqrt2) = -1
    EXPECT_EQ(x * x.star(), ExactScalar(-1));
}

TEST(Quadratic, SignMatchesDouble) {
    // 99/70 is a convergent of sqrt2, so the difference is tiny
    auto d = ExactScalar::quadratic(2, Rational(-99, 70), 1);
    EXPECT_EQ(d.sign(), (std::sqrt(2.0) - 99.0 / 70.0) > 0 ? 1 : -1);
    auto e = ExactScalar::quadratic(2, Rational(-577, 408), 1);
    EXPECT_EQ(e.sign(), -1);  // 577/408 > sqrt2 by about 2e-6
    EXPECT_TRUE((e - e).is_zero());
}

TEST(Quadratic, MixingDistinctFieldsThrows) {
    auto a = ExactScalar::quadratic(2, 0, 1);
    auto b = ExactScalar::quadratic(3, 0, 1);
    EXPECT_THROW(a + b, FieldMismatch);
    EXPECT_NO_THROW(a + ExactScalar(Rational(1, 3)));
}

TEST(Quadratic, FieldAxiomsOnRandomElements) {
    Gen g(11);
    for (int i = 0; i < 500; ++i) {
        auto a = g.sqrt2(), b = g.sqrt2(), c = g.sqrt2();
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a * b).star(), a.star() * b.star());
        if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), ExactScalar(1));
        EXPECT_NEAR(a.to_double() * b.to_double(), (a * b).to_double(), 1e-9);
    }
}

TEST(Approx, EnclosesTheExactValue) {
    Gen g(12);
    for (int i = 0; i < 500; ++i) {
        auto a = g.sqrt2(), b = g.sqrt2();
        auto p = a.approx() * b.approx() - a.approx();
        double exact = (a * b - a).to_double();
        EXPECT_LE(std::abs(p.v - exact), p.e + 1e-12);
        if (p.certain_sign() != 0) EXPECT_EQ(p.certain_sign(), (a * b - a).sign());
    }
}

TEST(Cubic, ConjugationHasOrderThree) {
    auto s = nilcps::testing::bundled("cubic-plane");
    const Field* F = s.field;
    ASSERT_EQ(F->degree(), 3);
    ExactScalar alpha(F, 0, 1);
    EXPECT_EQ(alpha.conj(3), alpha);
    EXPECT_NE(alpha.conj(1), alpha);
    EXPECT_NEAR(alpha.conj(1).to_double(), F->embedding(1), 1e-12);
    // x^3 - 3x + 1: product of the roots is -1, their sum 0
    auto norm = alpha * alpha.conj(1) * alpha.conj(2);
    EXPECT_EQ(norm, ExactScalar(-1));
    EXPECT_EQ(alpha + alpha.conj(1) + alpha.conj(2), ExactScalar(0));
}

TEST(Cubic, InverseAndOrder) {
    auto s = nilcps::testing::bundled("cubic-plane");
    Gen g(13);
    for (int i = 0; i < 200; ++i) {
        ExactScalar x(s.field, g.rational(), g.rational(), g.rational());
        if (x.is_zero()) continue;
        EXPECT_EQ(x * x.inverse(), ExactScalar(1));
        EXPECT_EQ(x.sign() > 0, x.to_double() > 0);
    }
}
