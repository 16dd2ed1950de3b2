//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file test_grid.cc
//---------------------------------------------------------------------------//
#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "tent/Grid.hh"
#include "tent/Random.hh"

using namespace tent;

namespace
{
GridSpec small_line()
{
    return GridSpec{1, 64, 16, 1.0 / 64, 1.0 / 8};
}

GridFunction noise(GridSpec const& spec, std::uint64_t seed)
{
    Random rng = Random::stream(seed, 0);
    GridFunction f{spec};
    for (auto& v : f.values())
        v = rng.uniform(-1, 1);
    return f;
}

// Count of grid points strictly inside the ball around boundary index 0
std::size_t brute_count(GridSpec const& spec, double radius)
{
    std::size_t n = 0;
    for (std::size_t b = 0; b < spec.boundary_size(); ++b)
        n += torus_distance(spec.boundary_point(b), spec.boundary_point(0))
             < radius;
    return n;
}
}  // namespace

TEST(GridSpec, Validation)
{
    EXPECT_THROW(GridSpec(3, 8, 4, 0.1, 0.2), InputError);
    EXPECT_THROW(GridSpec(1, 1, 4, 0.1, 0.2), InputError);
    EXPECT_THROW(GridSpec(1, 8, 1, 0.1, 0.2), InputError);
    EXPECT_THROW(GridSpec(1, 8, 4, 0.2, 0.1), InputError);
    EXPECT_THROW(GridSpec(1, 8, 4, 0, 0.1), InputError);
}

TEST(GridSpec, HeightsAndCells)
{
    GridSpec g = small_line();
    double rho = std::pow(8.0, 1.0 / 15);
    for (int k = 0; k < g.levels(); ++k)
        EXPECT_NEAR(g.height(k), std::pow(rho, k) / 64, 1e-15);
    EXPECT_NEAR(g.height(g.levels() - 1), 0.125, 1e-15);
    EXPECT_DOUBLE_EQ(g.boundary_point(3)[0], 3.5 / 64);
    EXPECT_EQ(g.index(5, 2), 2u * 64 + 5);

    GridSpec p{2, 8, 4, 0.01, 0.1};
    EXPECT_EQ(p.boundary_size(), 64u);
    EXPECT_EQ(p.boundary_index(3, 2), 19u);
    EXPECT_DOUBLE_EQ(p.boundary_point(19)[0], 3.5 / 8);
    EXPECT_DOUBLE_EQ(p.boundary_point(19)[1], 2.5 / 8);
    EXPECT_DOUBLE_EQ(p.boundary_cell(), 1.0 / 64);
}

TEST(GridSpec, RefinementSubdividesCells)
{
    GridSpec g = small_line();
    GridSpec f = g.refined();
    EXPECT_EQ(f.ny(), 128);
    EXPECT_EQ(f.levels(), 32);
    double q = std::exp(g.log_rho() / 4);
    EXPECT_NEAR(f.log_rho(), g.log_rho() / 2, 1e-14);
    for (int k = 0; k < g.levels(); ++k)
    {
        EXPECT_NEAR(f.height(2 * k), g.height(k) / q, 1e-14);
        EXPECT_NEAR(f.height(2 * k + 1), g.height(k) * q, 1e-14);
    }
}

TEST(GridSpec, TorusSafety)
{
    GridSpec g = small_line();
    EXPECT_NO_THROW(g.check_torus_safe(3.9));
    EXPECT_THROW(g.check_torus_safe(4), InputError);
}

TEST(GridFunction, Operations)
{
    GridSpec g = small_line();
    GridFunction f = noise(g, 1);
    GridFunction a = f.abs();
    for (std::size_t i = 0; i < f.values().size(); ++i)
        EXPECT_EQ(a.values()[i], std::fabs(f.values()[i]));

    GridFunction w = f.weighted(-1);
    EXPECT_DOUBLE_EQ(w(4, 3), f(4, 3) * g.height(3));

    GridFunction t = f.translated(5);
    EXPECT_EQ(t(7, 2), f(2, 2));
    EXPECT_EQ(t(1, 2), f(60, 2));

    GridFunction z{g};
    z(3, 3) = -2;
    EXPECT_EQ(z.support().values()[g.index(3, 3)], 1);
    EXPECT_EQ(z.support().values()[g.index(4, 3)], 0);
    EXPECT_FALSE(z.is_zero());
    EXPECT_EQ(z.max_abs(), 2);
    EXPECT_THROW(f * GridFunction{small_line().refined()}, InputError);
}

TEST(GridFunction, PlanarTranslation)
{
    GridSpec g{2, 8, 4, 0.01, 0.1};
    GridFunction f = noise(g, 2);
    GridFunction t = f.translated(3, -1);
    EXPECT_EQ(t(g.boundary_index(4, 1), 2), f(g.boundary_index(1, 2), 2));
}

TEST(CellMeasure, TotalsMatchClosedForms)
{
    GridSpec g = small_line();
    GridFunction one{g, 1.0};
    auto everywhere = [](Point const&) { return true; };

    // dy dt / t: each level carries ln(rho)
    CellMeasure over_t{g, CellMeasure::Kind::dydt_over_t};
    EXPECT_NEAR(integrate_region(one, everywhere, over_t),
                g.levels() * g.log_rho(),
                1e-13);

    // dy dt: sum of t_k ln(rho), a geometric series
    CellMeasure flat{g, CellMeasure::Kind::dydt};
    double rho = std::exp(g.log_rho());
    double series = g.t_min() * (std::pow(rho, g.levels()) - 1) / (rho - 1)
                    * g.log_rho();
    EXPECT_NEAR(integrate_region(one, everywhere, flat), series, 1e-14);

    // dy dt t^{-beta-1} with beta = -1 is dy dt
    CellMeasure weighted{g, CellMeasure::Kind::dydt_weighted, -1};
    for (int k = 0; k < g.levels(); ++k)
        EXPECT_NEAR(weighted.level_weight(k), flat.level_weight(k), 1e-16);

    // dy dt / t^2 on a line
    CellMeasure cone{g, CellMeasure::Kind::dydt_over_tn1};
    EXPECT_NEAR(cone.level_weight(2),
                g.log_rho() / g.height(2) / g.ny(),
                1e-14);
}

TEST(Stencil, CountsMatchBruteForce)
{
    Random rng = Random::stream(3, 0);
    for (GridSpec g : {GridSpec{1, 97, 2, 0.01, 0.1},
                       GridSpec{2, 24, 2, 0.01, 0.1},
                       GridSpec{2, 25, 2, 0.01, 0.1}})
    {
        for (int i = 0; i < 200; ++i)
        {
            double r = rng.uniform(0, 0.8);
            Stencil s = Stencil::open_ball(g, r);
            EXPECT_EQ(s.count(), brute_count(g, r)) << "r=" << r;
        }
    }
}

TEST(PrefixTable, QueriesMatchDirectSums)
{
    Random rng = Random::stream(4, 0);
    for (GridSpec g : {small_line(), GridSpec{2, 16, 6, 0.02, 0.1}})
    {
        GridFunction f = noise(g, 5).abs();
        CellMeasure m{g, CellMeasure::Kind::dydt_over_t};
        PrefixTable table{f, &m};
        RangeMaxTable maxima{f};
        for (int i = 0; i < 5000; ++i)
        {
            int k = static_cast<int>(rng.below(g.levels()));
            std::size_t b = rng.below(g.boundary_size());
            double r = rng.uniform(0, 0.7);
            Stencil s = Stencil::open_ball(g, r);
            long double direct = 0;
            double mx = 0;
            for (std::size_t c = 0; c < g.boundary_size(); ++c)
            {
                if (torus_distance(g.boundary_point(c), g.boundary_point(b))
                    < r)
                {
                    direct += f(c, k) * m.level_weight(k);
                    mx = std::max(mx, f(c, k));
                }
            }
            double fast = static_cast<double>(table.sum(k, b, s));
            EXPECT_NEAR(fast,
                        static_cast<double>(direct),
                        1e-12 * std::max(1.0, static_cast<double>(direct)));
            if (!s.empty())
                EXPECT_EQ(maxima.max(k, b, s), mx);
        }
    }
}

TEST(PrefixTable, AccumulateMatchesPointQueries)
{
    GridSpec g{2, 12, 4, 0.02, 0.1};
    GridFunction f = noise(g, 6).abs();
    PrefixTable table{f};
    RangeMaxTable maxima{f};
    Stencil s = Stencil::open_ball(g, 0.2);
    std::vector<long double> acc(g.boundary_size(), 0.0L);
    std::vector<double> macc(g.boundary_size(), 0.0);
    table.accumulate(1, s, acc);
    maxima.accumulate(1, s, macc);
    for (std::size_t b = 0; b < g.boundary_size(); ++b)
    {
        EXPECT_NEAR(static_cast<double>(acc[b]),
                    static_cast<double>(table.sum(1, b, s)),
                    1e-14);
        EXPECT_EQ(macc[b], maxima.max(1, b, s));
    }
}

TEST(BoxLevels, StrictHeightRange)
{
    GridSpec g = small_line();
    for (int k = 0; k < g.levels(); ++k)
    {
        LevelRange r = box_levels(g, k, 2);
        double t = g.height(k);
        for (int j = r.lo - 3; j <= r.hi + 3; ++j)
        {
            bool inside = g.height(j) > t / 2 && g.height(j) < 2 * t;
            EXPECT_EQ(inside, j >= r.lo && j <= r.hi) << k << " " << j;
        }
    }
}

TEST(BoxLevels, SupportMargin)
{
    GridSpec g = small_line();
    GridFunction f{g};
    f(0, 8) = 1;
    EXPECT_NO_THROW(check_support_margin(f, BoxParams{0.25, 2}));
    f(0, 0) = 1;
    EXPECT_THROW(check_support_margin(f, BoxParams{0.25, 2}),
                 SupportMarginError);
}

TEST(Corpus, DeterministicAndInsideTheBand)
{
    GridSpec g{1, 128, 32, 1.0 / 128, 1.0 / 8};
    CorpusShape shape = CorpusShape::for_grid(g, BoxParams{0.25, 2});
    EXPECT_NEAR(shape.band_lo, 2.0 / 128, 1e-15);
    EXPECT_NEAR(shape.band_hi, 1.0 / 16, 1e-15);
    for (auto gen : {Generator::smooth_bump_mix,
                     Generator::slab,
                     Generator::tent_indicator,
                     Generator::lognormal_noise})
    {
        GridFunction a = random_function(g, gen, 17, shape);
        GridFunction b = random_function(g, gen, 17, shape);
        EXPECT_EQ(a.values(), b.values());
        EXPECT_FALSE(a.is_zero()) << to_string(gen);
        EXPECT_NO_THROW(check_support_margin(a, shape.box));
        for (int k = 0; k < g.levels(); ++k)
        {
            double t = g.height(k);
            if (t < shape.band_lo || t > shape.band_hi)
            {
                for (std::size_t c = 0; c < g.boundary_size(); ++c)
                    EXPECT_EQ(a(c, k), 0);
            }
        }
        EXPECT_EQ(to_generator(to_string(gen)), gen);
    }
    EXPECT_THROW(to_generator("nope"), InputError);
}

TEST(GridIO, RoundTripIsExact)
{
    for (GridSpec g : {small_line(), GridSpec{2, 6, 3, 0.02, 0.1}})
    {
        GridFunction f = noise(g, 8);
        std::stringstream ss;
        write_grid(ss, f, "manifest text");
        GridFunction back = read_grid(ss);
        EXPECT_EQ(back.spec(), g);
        EXPECT_EQ(back.values(), f.values());
    }
}

TEST(GridIO, RejectsMalformedInput)
{
    auto read = [](std::string const& text) {
        std::istringstream is(text);
        return read_grid(is);
    };
    EXPECT_THROW(read(""), InputError);
    EXPECT_THROW(read("1,2,2,0.1\n"), InputError);
    // Too few cells
    EXPECT_THROW(read("1,2,2,0.1,0.2\n0,0,1\n"), InputError);
    // Out of range index
    EXPECT_THROW(read("1,2,2,0.1,0.2\n0,0,1\n1,0,1\n2,1,1\n1,1,1\n"),
                 InputError);
    // Duplicate cell
    EXPECT_THROW(read("1,2,2,0.1,0.2\n0,0,1\n0,0,1\n0,1,1\n1,1,1\n"),
                 InputError);
    EXPECT_NO_THROW(read("1,2,2,0.1,0.2\n0,0,1\n1,0,1\n0,1,1\n1,1,1\n"));
}
