//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file test_functionals.cc
//! \brief Fast functionals against cell-by-cell sums written out here
//---------------------------------------------------------------------------//
#include <gtest/gtest.h>

#include <cmath>

#include "tent/Functionals.hh"
#include "tent/Harness.hh"
#include "tent/Random.hh"

using namespace tent;

namespace
{
// Random non-negative samples on levels whose Whitney boxes stay in the grid
GridFunction interior_noise(GridSpec const& g, BoxParams box, std::uint64_t seed)
{
    Random rng = Random::stream(seed, 0);
    GridFunction f{g};
    for (int k = 0; k < g.levels(); ++k)
    {
        double t = g.height(k);
        if (t / box.a2 <= g.t_min() * std::exp(g.log_rho() / 2)
            || t * box.a2 >= g.t_max() / std::exp(g.log_rho() / 2))
            continue;
        for (std::size_t b = 0; b < g.boundary_size(); ++b)
            f(b, k) = rng.uniform() < 0.3 ? 0 : rng.uniform(0, 2);
    }
    EXPECT_FALSE(f.is_zero());
    return f;
}

double cell_volume(GridSpec const& g, int k)
{
    return g.boundary_cell() * g.height(k) * g.log_rho();
}

double oracle_whitney(GridFunction const& f, double r, BoxParams box,
                      std::size_t b, int k)
{
    GridSpec const& g = f.spec();
    Point c = g.cell_center(b, k);
    double num = 0;
    for (int j = 0; j < g.levels(); ++j)
        for (std::size_t e = 0; e < g.boundary_size(); ++e)
            if (whitney_box_contains(c, g.cell_center(e, j), box))
                num += std::pow(f(e, j), r) * cell_volume(g, j);
    // Box volume with levels beyond the grid counted as if present
    std::size_t points = 0;
    for (std::size_t e = 0; e < g.boundary_size(); ++e)
        points += torus_distance(g.boundary_point(e), c.y) < box.a1 * c.t;
    double heights = 0;
    for (int j = -g.levels(); j < 2 * g.levels(); ++j)
    {
        double s = g.height(j);
        if (s > c.t / box.a2 && s < box.a2 * c.t)
            heights += s;
    }
    double den = points * g.boundary_cell() * g.log_rho() * heights;
    return std::pow(num / den, 1 / r);
}

double oracle_conical(GridFunction const& g, double q, double a,
                      BoundaryPoint const& x)
{
    GridSpec const& s = g.spec();
    double sum = 0;
    for (int k = 0; k < s.levels(); ++k)
        for (std::size_t b = 0; b < s.boundary_size(); ++b)
            if (cone_contains(x, s.cell_center(b, k), a))
                sum += std::pow(std::fabs(g(b, k)), q) * cell_volume(s, k)
                       / std::pow(s.height(k), s.dim() + 1);
    return std::pow(sum, 1 / q);
}

double oracle_nontangential(GridFunction const& g, double a,
                            BoundaryPoint const& x)
{
    GridSpec const& s = g.spec();
    double m = 0;
    for (int k = 0; k < s.levels(); ++k)
        for (std::size_t b = 0; b < s.boundary_size(); ++b)
            if (cone_contains(x, s.cell_center(b, k), a))
                m = std::max(m, std::fabs(g(b, k)));
    return m;
}

// Powered Carleson averages over every ball dy 2^j <= 1/4
std::vector<std::pair<Ball, double>>
oracle_ball_values(GridFunction const& g, double q, double a)
{
    GridSpec const& s = g.spec();
    std::vector<std::pair<Ball, double>> out;
    double unit = s.dim() == 1 ? 2 : M_PI;
    for (double r = s.dy(); r <= 0.25; r *= 2)
    {
        for (std::size_t c = 0; c < s.boundary_size(); ++c)
        {
            Ball ball{s.boundary_point(c), r};
            double sum = 0;
            for (int k = 0; k < s.levels(); ++k)
                for (std::size_t b = 0; b < s.boundary_size(); ++b)
                    if (tent_contains(ball, s.cell_center(b, k), a))
                        sum += std::pow(std::fabs(g(b, k)), q)
                               * cell_volume(s, k) / s.height(k);
            out.emplace_back(ball, sum / (unit * std::pow(r, s.dim())));
        }
    }
    return out;
}

GridSpec const line{1, 32, 12, 1.0 / 64, 1.0 / 8};
GridSpec const plane{2, 12, 10, 1.0 / 96, 1.0 / 8};
}  // namespace

TEST(NormSpec, ParseAndCategory)
{
    NormSpec s = NormSpec::parse("inf,2,none,-1/2");
    EXPECT_TRUE(s.p.is_infinite());
    EXPECT_FALSE(s.has_average());
    EXPECT_EQ(s.beta, Rational(-1, 2));
    EXPECT_EQ(s.category(), Category::B);
    EXPECT_EQ(s.to_string(), "inf,2,none,-1/2");
    EXPECT_EQ(NormSpec::parse("2,2,2,0").category(), Category::A);
    EXPECT_EQ(NormSpec::parse("2,inf,2,0").category(), Category::C);
    EXPECT_EQ(NormSpec::parse("inf,inf,1,0").category(), Category::D);
    EXPECT_EQ(to_char(Category::C), 'C');
    EXPECT_THROW(NormSpec::parse("2,2,2"), InputError);
    EXPECT_THROW(NormSpec::parse("2,x,2,0"), InputError);

    NormSpec q = NormSpec::parse("1/2,4,2,-1").powered(Rational(1, 2));
    EXPECT_EQ(q.to_string(), "1,8,4,-1/2");
    EXPECT_FALSE(NormSpec::parse("1/2,4,2,0").is_banach());
    EXPECT_EQ(NormSpec::parse("3,4,none,0").tau(), Exponent{3});
}

TEST(WhitneyAverage, MatchesBoxSums)
{
    BoxParams box{0.25, 2};
    for (GridSpec g : {line, plane})
    {
        GridFunction f = interior_noise(g, box, 1);
        for (auto text : {"1", "2", "7/2"})
        {
            Exponent re = Exponent::parse(text);
            double r = re.value();
            GridFunction w = whitney_average(f, re, box);
            for (int k = 0; k < g.levels(); k += 3)
                for (std::size_t b = 0; b < g.boundary_size(); b += 5)
                    EXPECT_NEAR(w(b, k),
                                oracle_whitney(f, r, box, b, k),
                                1e-12 * (1 + w(b, k)))
                        << "r=" << r << " b=" << b << " k=" << k;
        }
        GridFunction wmax = whitney_average(f, Exponent::infinity(), box);
        for (int k = 0; k < g.levels(); ++k)
        {
            for (std::size_t b = 0; b < g.boundary_size(); b += 3)
            {
                double m = 0;
                for (int j = 0; j < g.levels(); ++j)
                    for (std::size_t e = 0; e < g.boundary_size(); ++e)
                        if (whitney_box_contains(
                                g.cell_center(b, k), g.cell_center(e, j), box))
                            m = std::max(m, f(e, j));
                EXPECT_EQ(wmax(b, k), m);
            }
        }
    }
}

TEST(WhitneyAverage, RejectsSupportAtTheEdge)
{
    GridFunction f{line};
    f(0, 0) = 1;
    EXPECT_THROW(whitney_average(f, Exponent{2}, BoxParams{0.25, 2}),
                 SupportMarginError);
}

TEST(Conical, MatchesConeSums)
{
    for (GridSpec g : {line, plane})
    {
        GridFunction f = interior_noise(g, BoxParams{0.25, 2}, 2);
        for (double a : {0.5, 1.0, 2.0})
        {
            for (double q : {1.0, 2.0})
            {
                Exponent qe{static_cast<std::int64_t>(q)};
                BoundaryFunction fast = conical_A(f, qe, a);
                for (std::size_t b = 0; b < g.boundary_size(); b += 7)
                {
                    double o = oracle_conical(f, q, a, g.boundary_point(b));
                    EXPECT_NEAR(fast[b], o, 1e-12 * (1 + o));
                    EXPECT_NEAR(conical_A(f, qe, a, g.boundary_point(b)),
                                o,
                                1e-12 * (1 + o));
                }
            }
            BoundaryFunction n = nontangential_N(f, a);
            for (std::size_t b = 0; b < g.boundary_size(); b += 5)
                EXPECT_EQ(n[b], oracle_nontangential(f, a, g.boundary_point(b)));
            // Off-grid boundary point
            BoundaryPoint x = g.dim() == 1 ? BoundaryPoint{0.3141}
                                           : BoundaryPoint{0.3141, 0.777};
            EXPECT_EQ(nontangential_N(f, a, x), oracle_nontangential(f, a, x));
        }
    }
}

TEST(Carleson, MatchesTentSums)
{
    for (GridSpec g : {line, plane})
    {
        GridFunction f = interior_noise(g, BoxParams{0.25, 2}, 3);
        for (double a : {0.5, 1.0})
        {
            auto balls = oracle_ball_values(f, 2, a);
            double global = 0;
            for (auto const& [ball, v] : balls)
                global = std::max(global, v);
            EXPECT_NEAR(classical_norm(f, Exponent::infinity(), Exponent{2}, a),
                        std::sqrt(global),
                        1e-12);

            // Family radii are lattice distances, so membership of grid
            // points is decided on integer offsets
            BoundaryFunction c = carleson_C(f, Exponent{2}, a);
            std::size_t const nb = g.boundary_size();
            for (std::size_t b = 0; b < nb; b += 5)
            {
                double m = 0;
                for (std::size_t i = 0; i < balls.size(); ++i)
                {
                    std::size_t center = i % nb;
                    long steps = std::lround(balls[i].first.radius / g.dy());
                    long d2 = 0;
                    for (int axis = 0; axis < g.dim(); ++axis)
                    {
                        long u = axis == 0 ? long(center % g.ny()) - long(b % g.ny())
                                           : long(center / g.ny()) - long(b / g.ny());
                        u = std::labs(u);
                        u = std::min(u, g.ny() - u);
                        d2 += u * u;
                    }
                    if (d2 < steps * steps)
                        m = std::max(m, balls[i].second);
                }
                EXPECT_NEAR(c[b], std::sqrt(m), 1e-12);
            }
            // Arbitrary points away from ties
            Random rng = Random::stream(7, 0);
            for (int i = 0; i < 10; ++i)
            {
                BoundaryPoint x = g.dim() == 1
                                      ? BoundaryPoint{rng.uniform()}
                                      : BoundaryPoint{rng.uniform(), rng.uniform()};
                double m = 0;
                for (auto const& [ball, v] : balls)
                    if (ball_contains(ball, x))
                        m = std::max(m, v);
                EXPECT_NEAR(carleson_C(f, Exponent{2}, a, x), std::sqrt(m), 1e-12);
            }
        }
    }
}

TEST(Carleson, BallFamily)
{
    BallFamily fam{line};
    ASSERT_EQ(fam.radii().size(), 4u);  // 1/32 .. 1/4
    EXPECT_DOUBLE_EQ(fam.radii().back(), 0.25);
    EXPECT_DOUBLE_EQ(fam.volume(0), 2.0 / 32);
    EXPECT_DOUBLE_EQ(BallFamily{plane}.volume(1), M_PI / 36);
}

TEST(TentNorm, CategoryDIsWeightedMax)
{
    GridFunction f = interior_noise(line, BoxParams{0.25, 2}, 4);
    double m = 0;
    for (int k = 0; k < line.levels(); ++k)
        for (std::size_t b = 0; b < line.boundary_size(); ++b)
            m = std::max(m, f(b, k) * line.height(k));
    EXPECT_NEAR(tent_norm(f, NormSpec::parse("inf,inf,none,-1")), m, 1e-15);
}

TEST(TentNorm, HomogeneousAndTranslationInvariant)
{
    GridFunction f = interior_noise(line, BoxParams{0.25, 2}, 5);
    for (auto text : {"2,2,2,0", "4,2,1,-1/2", "inf,2,2,-1", "2,inf,3,0",
                      "inf,inf,2,-1", "3,1,none,0"})
    {
        NormSpec s = NormSpec::parse(text);
        double n = tent_norm(f, s);
        EXPECT_GT(n, 0) << text;
        EXPECT_NEAR(tent_norm(-2.5 * f, s), 2.5 * n, 1e-12 * n) << text;
        EXPECT_NEAR(tent_norm(f.translated(11), s), n, 1e-12 * n) << text;
        for (auto theta : {Rational(1, 2), Rational(1, 3)})
        {
            auto check = power_identity_check(f, s, theta);
            EXPECT_TRUE(check.passed) << check.name << " " << check.witness;
        }
    }
    EXPECT_THROW(power_identity_check(f, NormSpec{}, Rational(3, 2)),
                 InputError);
}

TEST(TentNorm, SlabClosedForm)
{
    GridFunction slab = slab_function(slab_fixture_grid());
    double n = tent_norm(slab, NormSpec::parse("2,2,2,0"));
    EXPECT_NEAR(n / slab_closed_form(), 1, 0.03);
    EXPECT_NEAR(slab_closed_form(), std::sqrt(2 * std::log(2.0)), 1e-15);
}

TEST(Boundary, LpAveragesAndMaximal)
{
    BoundaryFunction h(line.boundary_size(), 3.0);
    EXPECT_NEAR(boundary_lp(line, h, Exponent{2}), 3, 1e-14);
    EXPECT_EQ(boundary_lp(line, h, Exponent::infinity()), 3);
    EXPECT_NEAR(ball_average(line, h, BoundaryPoint{0.4}, 0.1), 3, 1e-14);

    Random rng = Random::stream(6, 0);
    for (auto& v : h)
        v = rng.uniform(0, 1);
    double direct = 0;
    for (double v : h)
        direct += v * v / 32;
    EXPECT_NEAR(boundary_lp(line, h, Exponent{2}), std::sqrt(direct), 1e-14);

    // Smallest family ball holds only its center
    BoundaryFunction m = hl_maximal(line, h);
    for (std::size_t b = 0; b < h.size(); ++b)
        EXPECT_GE(m[b], h[b] - 1e-15);

    double mean = 0;
    int count = 0;
    for (std::size_t b = 0; b < h.size(); ++b)
        if (torus_distance(line.boundary_point(b), BoundaryPoint{0.5}) < 0.2)
        {
            mean += h[b];
            ++count;
        }
    EXPECT_NEAR(ball_average(line, h, BoundaryPoint{0.5}, 0.2),
                mean / count,
                1e-14);
    EXPECT_THROW(boundary_lp(plane, h, Exponent{2}), InputError);
}

TEST(Pairing, ConstantFunctions)
{
    GridFunction one{line, 1.0};
    double series = 0;
    for (int k = 0; k < line.levels(); ++k)
        series += line.height(k) * line.log_rho();
    // t^{-beta0-1} = 1 for beta0 = -1
    EXPECT_NEAR(pairing(one, one, -1), series, 1e-14);
    EXPECT_NEAR(pairing(one, one, 0), line.levels() * line.log_rho(), 1e-13);
}
