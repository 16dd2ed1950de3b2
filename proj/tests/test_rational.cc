//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file test_rational.cc
//---------------------------------------------------------------------------//
#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "tent/Check.hh"
#include "tent/Rational.hh"

using namespace tent;

TEST(Rational, ReducesAndNormalizesSign)
{
    Rational r{6, -8};
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 4);
    EXPECT_EQ(Rational(0, -5), Rational{0});
    EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, Arithmetic)
{
    Rational a{1, 3}, b{1, 6};
    EXPECT_EQ(a + b, Rational(1, 2));
    EXPECT_EQ(a - b, Rational(1, 6));
    EXPECT_EQ(a * b, Rational(1, 18));
    EXPECT_EQ(a / b, Rational{2});
    EXPECT_EQ(-a, Rational(-1, 3));
    EXPECT_TRUE(b < a);
    EXPECT_TRUE(Rational(-1, 2) < Rational{0});
    EXPECT_THROW(a / Rational{0}, std::exception);
}

TEST(Rational, OverflowThrows)
{
    Rational big{std::numeric_limits<std::int64_t>::max()};
    EXPECT_THROW(big + Rational{1}, std::overflow_error);
    EXPECT_THROW(big * Rational{2}, std::overflow_error);
}

TEST(Rational, Parse)
{
    EXPECT_EQ(Rational::parse("-1/2"), Rational(-1, 2));
    EXPECT_EQ(Rational::parse("0.75"), Rational(3, 4));
    EXPECT_EQ(Rational::parse(" 3 "), Rational{3});
    EXPECT_EQ(Rational::parse("1e-2"), Rational(1, 100));
    EXPECT_THROW(Rational::parse("abc"), InputError);
    EXPECT_THROW(Rational::parse("1/0"), InputError);
    EXPECT_EQ(Rational(-1, 2).to_string(), "-1/2");
    EXPECT_EQ(Rational{4}.to_string(), "4");
}

TEST(Rational, FromDouble)
{
    EXPECT_EQ(Rational::from_double(0.375), Rational(3, 8));
    EXPECT_EQ(Rational::from_double(-2), Rational{-2});
    EXPECT_THROW(Rational::from_double(std::nan("")), InputError);
}

TEST(Exponent, InfinityAndOrdering)
{
    Exponent inf = Exponent::infinity();
    EXPECT_TRUE(inf.is_infinite());
    EXPECT_TRUE(std::isinf(inf.value()));
    EXPECT_TRUE(Exponent{2} < inf);
    EXPECT_TRUE(Exponent{1} < Exponent{2});
    EXPECT_EQ(Exponent::parse("inf"), inf);
    EXPECT_EQ(Exponent::parse("4/3").value(), 4.0 / 3);
    EXPECT_EQ(inf.to_string(), "inf");
    EXPECT_THROW(Exponent::parse("0"), InputError);
    EXPECT_THROW(Exponent::parse("-2"), InputError);
}

TEST(Exponent, ConjugateAndHolder)
{
    EXPECT_EQ(Exponent{2}.conjugate(), Exponent{2});
    EXPECT_EQ(Exponent{4}.conjugate(), Exponent::parse("4/3"));
    EXPECT_EQ(Exponent{1}.conjugate(), Exponent::infinity());
    EXPECT_EQ(Exponent::infinity().conjugate(), Exponent{1});
    EXPECT_THROW(Exponent::parse("1/2").conjugate(), InputError);

    // 1/e = 1/3 + 1/6 = 1/2
    EXPECT_EQ(holder_sum(Exponent{3}, Exponent{6}), Exponent{2});
    EXPECT_EQ(holder_sum(Exponent{2}, Exponent::infinity()), Exponent{2});
}

TEST(Exponent, ScaledDown)
{
    EXPECT_EQ(Exponent{2}.scaled_down(Rational(1, 2)), Exponent{4});
    EXPECT_EQ(Exponent::infinity().scaled_down(Rational(1, 3)),
              Exponent::infinity());
    EXPECT_EQ(Exponent{3}.scaled_down(Rational(3, 2)), Exponent{2});
}
