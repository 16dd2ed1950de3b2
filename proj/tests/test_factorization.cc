//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file test_factorization.cc
//---------------------------------------------------------------------------//
#include <gtest/gtest.h>

#include <cmath>

#include "tent/Factorization.hh"
#include "tent/Random.hh"

using namespace tent;

namespace
{
GridSpec const grid{1, 64, 24, 1.0 / 128, 1.0 / 8};

GridFunction corpus(Generator gen, std::uint64_t seed, GridSpec const& g = grid)
{
    CorpusShape shape = CorpusShape::for_grid(g, BoxParams{0.25, 2});
    return random_function(g, gen, seed, shape).abs();
}

void expect_zero_off_support(Factorization const& fac, GridFunction const& u)
{
    for (auto const& f : fac.factors)
        for (std::size_t i = 0; i < u.values().size(); ++i)
            if (u.values()[i] == 0)
                EXPECT_EQ(f.values()[i], 0) << fac.construction;
}
}  // namespace

TEST(Holder, Triplet)
{
    HolderTriplet h{Exponent{3}, Exponent{6}, Exponent{2}};
    EXPECT_EQ(h.first_share(), Rational(2, 3));
    EXPECT_TRUE(HolderTriplet::holds(Exponent::infinity(),
                                     Exponent::infinity(),
                                     Exponent::infinity()));
    EXPECT_EQ((HolderTriplet{Exponent::infinity(),
                             Exponent::infinity(),
                             Exponent::infinity()}
                   .first_share()),
              Rational{1});
    EXPECT_THROW(HolderTriplet(Exponent{2}, Exponent{2}, Exponent{2}),
                 InputError);
}

TEST(Holder, RelationNamesTheFailingCoordinate)
{
    NormSpec s0 = NormSpec::parse("2,2,2,0");
    NormSpec s1 = NormSpec::parse("4,4,4,-1/2");
    NormSpec s2 = NormSpec::parse("4,4,4,1/2");
    EXPECT_NO_THROW(check_holder_relation(s0, s1, s2));

    auto message = [&](NormSpec a, NormSpec b) {
        try
        {
            check_holder_relation(s0, a, b);
        }
        catch (InputError const& e)
        {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(message(NormSpec::parse("4,3,4,0"), s2).find("in q"),
              std::string::npos);
    EXPECT_NE(message(s1, NormSpec::parse("4,4,4,0")).find("in beta"),
              std::string::npos);
    EXPECT_NE(message(s1, NormSpec::parse("4,4,none,1/2")).find("in r"),
              std::string::npos);
    EXPECT_NE(message(NormSpec::parse("3,4,4,-1/2"), s2).find("in p"),
              std::string::npos);
}

TEST(PowerSplit, ProductRecoversInput)
{
    GridFunction u = corpus(Generator::lognormal_noise, 3);
    for (Rational theta : {Rational{0}, Rational(1, 3), Rational{1}})
    {
        auto [a, b] = power_split(u, theta);
        GridFunction p = a * b;
        for (std::size_t i = 0; i < u.values().size(); ++i)
            EXPECT_NEAR(p.values()[i], u.values()[i], 1e-14 * u.values()[i]);
    }
    EXPECT_THROW(power_split(u, Rational(3, 2)), InputError);
    EXPECT_THROW(power_split(-1.0 * u, Rational(1, 2)), InputError);
}

TEST(F1, ReconstructsAndScales)
{
    NormSpec s0 = NormSpec::parse("2,2,2,-1/2");
    for (auto gen : {Generator::smooth_bump_mix,
                     Generator::slab,
                     Generator::tent_indicator,
                     Generator::lognormal_noise})
    {
        GridFunction u = corpus(gen, 11);
        Factorization fac = factorize_F1(u, s0);
        ASSERT_EQ(fac.factors.size(), 2u);
        EXPECT_EQ(fac.targets[0].to_string(), "2,2,inf,-1/2");
        EXPECT_EQ(fac.targets[1].to_string(), "inf,inf,2,0");
        EXPECT_LE(fac.reconstruction_error, 1e-13 * u.max_abs());
        expect_zero_off_support(fac, u);
        EXPECT_NEAR(fac.source_norm, tent_norm(u, s0), 1e-15);
        EXPECT_NEAR(fac.constant(),
                    fac.norms[0] * fac.norms[1] / fac.source_norm,
                    1e-12);
        EXPECT_TRUE(std::isfinite(fac.constant()));

        // v scales with u; w does not
        Factorization twice = factorize_F1(3.0 * u, s0);
        for (std::size_t i = 0; i < u.values().size(); ++i)
        {
            EXPECT_NEAR(twice.factors[0].values()[i],
                        3 * fac.factors[0].values()[i],
                        1e-12 * (1 + fac.factors[0].values()[i]));
            EXPECT_NEAR(twice.factors[1].values()[i],
                        fac.factors[1].values()[i],
                        1e-12);
        }
        EXPECT_NEAR(twice.constant(), fac.constant(), 1e-10);
    }
}

TEST(F1, RejectsBadInput)
{
    GridFunction u = corpus(Generator::smooth_bump_mix, 2);
    EXPECT_THROW(factorize_F1(-1.0 * u, NormSpec::parse("2,2,2,0")),
                 InputError);
    EXPECT_THROW(factorize_F1(u, NormSpec::parse("2,2,none,0")), InputError);
}

TEST(F2, PositiveConicalFunctional)
{
    NormSpec s0 = NormSpec::parse("2,2,2,0");
    GridFunction u = corpus(Generator::lognormal_noise, 5);
    Factorization fac = factorize_F2(u, s0);
    EXPECT_EQ(fac.targets[0].to_string(), "2,inf,inf,0");
    EXPECT_EQ(fac.targets[1].to_string(), "inf,2,2,0");
    EXPECT_LE(fac.reconstruction_error, 1e-13 * u.max_abs());
    expect_zero_off_support(fac, u);

    EXPECT_THROW(factorize_F2(u, s0, Rational{2}), InputError);
    EXPECT_NO_THROW(factorize_F2(u, s0, Rational(1, 3)));
}

TEST(F2, TentIndicatorHasVanishingConicalFunctional)
{
    GridFunction u = corpus(Generator::tent_indicator, 5);
    EXPECT_THROW(factorize_F2(u, NormSpec::parse("2,2,2,0")), InputError);
}

TEST(F2, InfiniteOuterExponent)
{
    GridFunction u = corpus(Generator::tent_indicator, 6);
    Factorization fac = factorize_F2(u, NormSpec::parse("inf,2,2,0"));
    EXPECT_EQ(fac.factors[0].values(), u.support().values());
    EXPECT_EQ(fac.factors[1].values(), u.values());
}

TEST(F3, ThreeFactors)
{
    NormSpec s0 = NormSpec::parse("4,2,1,-1/2");
    GridFunction u = corpus(Generator::smooth_bump_mix, 7);
    Factorization fac = factorize_F3(u, s0);
    ASSERT_EQ(fac.factors.size(), 3u);
    EXPECT_EQ(fac.targets[0].to_string(), "4,inf,inf,-1/2");
    EXPECT_EQ(fac.targets[1].to_string(), "inf,2,inf,0");
    EXPECT_EQ(fac.targets[2].to_string(), "inf,inf,1,0");
    EXPECT_LE(fac.reconstruction_error, 1e-13 * u.max_abs());
    expect_zero_off_support(fac, u);
}

TEST(General, SymmetricSplitIsSquareRoot)
{
    // Halving every exponent: both factors are sqrt(u) and the norm product
    // equals the source norm by the power identity
    NormSpec s0 = NormSpec::parse("2,2,2,0");
    NormSpec s1 = NormSpec::parse("4,4,4,0");
    GridFunction u = corpus(Generator::smooth_bump_mix, 8);
    Factorization fac = factorize_general(u, s0, s1, s1);
    for (auto const& f : fac.factors)
        for (std::size_t i = 0; i < u.values().size(); ++i)
            EXPECT_NEAR(f.values()[i], std::sqrt(u.values()[i]), 1e-12);
    EXPECT_NEAR(fac.constant(), 1, 1e-10);
    EXPECT_NEAR(general_ratio(fac.factors[0], fac.factors[1], s0, s1, s1),
                1,
                1e-10);
}

TEST(General, WeightedSplit)
{
    NormSpec s0 = NormSpec::parse("2,2,2,0");
    NormSpec s1 = NormSpec::parse("3,4,6,-1/2");
    NormSpec s2 = NormSpec::parse("6,4,3,1/2");
    GridFunction u = corpus(Generator::smooth_bump_mix, 9);
    Factorization fac = factorize_general(u, s0, s1, s2);
    EXPECT_LE(fac.reconstruction_error, 1e-13 * u.max_abs());
    expect_zero_off_support(fac, u);
    EXPECT_GT(fac.constant(), 0);
    EXPECT_THROW(factorize_general(u, s0, s1, s1), InputError);
}

TEST(Covering, CountsAndCoverage)
{
    WhitneyParams w;
    DerivedParams d = derive_params(w);
    CoveringPlan line{w.box(), d.doubleStar, 1};
    CoveringPlan plane{w.box(), d.doubleStar, 2};
    EXPECT_EQ(line.count(), 106u);
    EXPECT_EQ(plane.count(), 1568u);

    Random rng = Random::stream(12, 0);
    for (auto const* plan : {&line, &plane})
    {
        int dim = plan == &line ? 1 : 2;
        Point p{dim == 1 ? BoundaryPoint{0.4} : BoundaryPoint{0.4, 0.6}, 0.01};
        auto centers = plan->centers(p);
        ASSERT_EQ(centers.size(), plan->count());
        for (int i = 0; i < 3000; ++i)
        {
            // Uniform point of the large box
            double t = p.t * std::exp(rng.uniform(-1, 1) * std::log(w.alpha2()));
            double r = w.alpha1() * p.t;
            BoundaryPoint y = p.y;
            do
            {
                y = dim == 1 ? p.y.shifted(rng.uniform(-r, r))
                             : p.y.shifted(rng.uniform(-r, r),
                                           rng.uniform(-r, r));
            } while (!(torus_distance(y, p.y) < r));
            Point x{y, t};
            if (!whitney_box_contains(p, x, w.box()))
                continue;
            bool covered = false;
            for (auto const& c : centers)
                covered = covered || whitney_box_contains(c, x, d.doubleStar);
            EXPECT_TRUE(covered) << "t=" << t;
        }
    }
}

TEST(Multiplication, BoxHolderAndRatios)
{
    GridFunction f = corpus(Generator::smooth_bump_mix, 20);
    GridFunction g = corpus(Generator::lognormal_noise, 21);
    GridFunction h = corpus(Generator::slab, 22);
    BoxParams box{0.25, 2};
    for (auto r : {Exponent{1}, Exponent{2}, Exponent::infinity()})
    {
        CheckResult c = check_box_holder(f, g, h, r, box);
        EXPECT_TRUE(c.passed) << c.witness;
    }
    NormSpec s0 = NormSpec::parse("2,2,2,0");
    double m2 = m2_ratio(f, g, h, s0);
    EXPECT_GT(m2, 0);
    EXPECT_TRUE(std::isfinite(m2));

    EXPECT_NEAR(m1_ratio(f, g, Exponent{2}, Exponent{2}, 1),
                tent_norm(f * g, NormSpec::parse("2,2,none,0"))
                    / (tent_norm(f, NormSpec::parse("2,inf,none,0"))
                       * tent_norm(g, NormSpec::parse("inf,2,none,0"))),
                1e-12);
}
