//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file test_geometry.cc
//---------------------------------------------------------------------------//
#include <gtest/gtest.h>

#include <cmath>

#include "tent/Geometry.hh"
#include "tent/Random.hh"

using namespace tent;

TEST(Torus, DistanceWraps)
{
    EXPECT_NEAR(
        torus_distance(BoundaryPoint{0.05}, BoundaryPoint{0.95}), 0.1, 1e-15);
    EXPECT_NEAR(
        torus_distance(BoundaryPoint{0.2}, BoundaryPoint{0.5}), 0.3, 1e-15);
    // Planar: wrapped offsets 0.1 and 0.2
    EXPECT_NEAR(torus_distance(BoundaryPoint{0.95, 0.1},
                               BoundaryPoint{0.05, 0.9}),
                std::hypot(0.1, 0.2),
                1e-15);
    EXPECT_DOUBLE_EQ(BoundaryPoint{-0.25}[0], 0.75);
    EXPECT_DOUBLE_EQ(BoundaryPoint{0.9}.shifted(0.3)[0], 0.2);
}

TEST(Whitney, ConsistencyIsEnforced)
{
    EXPECT_NO_THROW(WhitneyParams(0.25, 2));
    EXPECT_THROW(WhitneyParams(0.5, 2), InputError);  // a1 = 1/a2
    EXPECT_THROW(WhitneyParams(0.1, 1), InputError);
    EXPECT_THROW(WhitneyParams(0, 2), InputError);
    EXPECT_THROW((BoxParams{0.1, 1}.validate()), InputError);
}

TEST(Whitney, DerivedParametersAtDefaults)
{
    // Hand-evaluated at (a1, a2) = (1/4, 2)
    DerivedParams d = derive_params(WhitneyParams{});
    double const s2 = std::sqrt(2.0);
    double const r2 = std::pow(2.0, 0.25);
    EXPECT_DOUBLE_EQ(d.alpha0, 0.375);
    EXPECT_DOUBLE_EQ(d.alphaC, 2.5);
    EXPECT_DOUBLE_EQ(d.alphaT, 2.125);
    EXPECT_DOUBLE_EQ(d.alphaStarUpper, 2.25);
    EXPECT_DOUBLE_EQ(d.alphaStarLower, 0.25);
    EXPECT_NEAR(d.star.a1, 0.25 / (1 + s2), 1e-15);
    EXPECT_NEAR(d.star.a2, s2, 1e-15);
    EXPECT_NEAR(d.doubleStar.a1, 0.25 / (2 * (1 + s2) * r2), 1e-15);
    EXPECT_NEAR(d.doubleStar.a2, r2, 1e-15);
    EXPECT_DOUBLE_EQ(d.max_aperture(), 2.5);
}

TEST(Whitney, DerivedChainOnRandomPairs)
{
    Random rng = Random::stream(5, 0);
    for (int i = 0; i < 1000; ++i)
    {
        double a2 = rng.log_uniform(1.001, 50);
        double a1 = (0.001 + 0.998 * rng.uniform()) / a2;
        WhitneyParams w{a1, a2};
        DerivedParams d = derive_params(w);
        ASSERT_TRUE(derived_chain_holds(d, w)) << a1 << " " << a2;
        // Independent restatement of the chain
        EXPECT_LT(0, d.doubleStar.a1);
        EXPECT_LT(d.doubleStar.a1, d.star.a1);
        EXPECT_LT(d.star.a1, a1);
        EXPECT_LT(a1, 1 / a2);
        EXPECT_LT(1 / a2, 1 / d.star.a2);
        EXPECT_LT(1 / d.star.a2, 1 / d.doubleStar.a2);
        EXPECT_LT(1 / d.doubleStar.a2, 1);
    }
}

TEST(Predicates, BoundariesAreStrict)
{
    Point p{BoundaryPoint{0.5}, 0.1};
    EXPECT_TRUE(cone_contains(BoundaryPoint{0.55}, p, 1));
    EXPECT_FALSE(cone_contains(BoundaryPoint{0.625}, p, 1.25));  // d = a t
    Ball ball{BoundaryPoint{0.5}, 0.25};
    // reach = 0.05 + 0.1 = 0.15 < 0.25
    EXPECT_TRUE(tent_contains(ball, Point{BoundaryPoint{0.55}, 0.1}, 1));
    // reach = 0.125 + 0.125 exactly equals the radius
    Point edge{BoundaryPoint{0.625}, 0.125};
    EXPECT_FALSE(tent_contains(ball, edge, 1, false));
    EXPECT_TRUE(tent_contains(ball, edge, 1, true));
    EXPECT_THROW(tent_contains(Ball{BoundaryPoint{0.5}, 0.6}, p, 1),
                 InputError);
    EXPECT_TRUE(ball_contains(ball, BoundaryPoint{0.3}));
    EXPECT_FALSE(ball_contains(ball, BoundaryPoint{0.75}));
}

TEST(Predicates, WhitneyBox)
{
    Point c{BoundaryPoint{0.5}, 0.1};
    BoxParams box{0.25, 2};
    EXPECT_TRUE(whitney_box_contains(c, Point{BoundaryPoint{0.52}, 0.15}, box));
    EXPECT_FALSE(whitney_box_contains(c, Point{BoundaryPoint{0.53}, 0.1}, box));
    EXPECT_FALSE(whitney_box_contains(c, Point{BoundaryPoint{0.5}, 0.2}, box));
    EXPECT_FALSE(whitney_box_contains(c, Point{BoundaryPoint{0.5}, 0.05}, box));
}

TEST(Inclusions, AllHoldInBothDimensions)
{
    for (int dim : {1, 2})
    {
        CheckList list = check_inclusion_suite(WhitneyParams{}, 20000, 3, dim);
        EXPECT_EQ(list.size(), 11u);
        for (auto const& r : list)
        {
            EXPECT_TRUE(r.passed) << r.name << ": " << r.witness;
            EXPECT_FALSE(r.anchor.empty());
        }
    }
}

TEST(Inclusions, OtherParameters)
{
    for (auto [a1, a2] : {std::pair{0.1, 3.0}, std::pair{0.6, 1.5}})
    {
        for (auto const& r :
             check_inclusion_suite(WhitneyParams{a1, a2}, 5000, 9, 1))
            EXPECT_TRUE(r.passed) << r.name << ": " << r.witness;
    }
}

TEST(Inclusions, RejectsBadArguments)
{
    EXPECT_THROW(check_inclusion_suite(WhitneyParams{}, 0, 1, 1), InputError);
    EXPECT_THROW(check_inclusion_suite(WhitneyParams{}, 10, 1, 3), InputError);
}

TEST(Random, StreamsAreReproducible)
{
    Random a = Random::stream(42, 1);
    Random b = Random::stream(42, 1);
    Random c = Random::stream(42, 2);
    double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_NE(x, c.uniform());
    for (int i = 0; i < 1000; ++i)
    {
        double u = a.uniform();
        EXPECT_GE(u, 0);
        EXPECT_LT(u, 1);
        double l = a.log_uniform(0.01, 1);
        EXPECT_GE(l, 0.01);
        EXPECT_LT(l, 1);
        EXPECT_LT(a.below(7), 7u);
    }
}
