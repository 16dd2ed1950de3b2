//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file Geometry.cc
//---------------------------------------------------------------------------//
#include "tent/Geometry.hh"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "tent/Random.hh"

namespace tent
{
namespace
{
double wrap(double v)
{
    v -= std::floor(v);
    return v >= 1 ? 0 : v;
}

double axis_distance(double a, double b)
{
    double d = std::fabs(a - b);
    return std::min(d, 1 - d);
}
}  // namespace

//---------------------------------------------------------------------------//
BoundaryPoint::BoundaryPoint(double y) : coords_{wrap(y), 0}, dim_{1} {}

BoundaryPoint::BoundaryPoint(double y, double z)
    : coords_{wrap(y), wrap(z)}, dim_{2}
{
}

BoundaryPoint BoundaryPoint::shifted(double dy, double dz) const
{
    if (dim_ == 1)
        return BoundaryPoint{coords_[0] + dy};
    return BoundaryPoint{coords_[0] + dy, coords_[1] + dz};
}

std::string BoundaryPoint::to_string() const
{
    std::ostringstream os;
    os.precision(17);
    os << coords_[0];
    if (dim_ == 2)
        os << ' ' << coords_[1];
    return os.str();
}

std::string Point::to_string() const
{
    std::ostringstream os;
    os.precision(17);
    os << '(' << y.to_string() << "; " << t << ')';
    return os.str();
}

double torus_distance(BoundaryPoint const& a, BoundaryPoint const& b)
{
    if (a.dim() != b.dim())
    {
        throw InputError("boundary points of different dimensions");
    }
    double d0 = axis_distance(a[0], b[0]);
    if (a.dim() == 1)
        return d0;
    double d1 = axis_distance(a[1], b[1]);
    return std::sqrt(d0 * d0 + d1 * d1);
}

//---------------------------------------------------------------------------//
void BoxParams::validate() const
{
    if (!(a1 > 0) || !(a2 > 1) || !std::isfinite(a1) || !std::isfinite(a2))
    {
        std::ostringstream os;
        os << "Whitney box shape requires a1 > 0 and a2 > 1, got (" << a1
           << ", " << a2 << ")";
        throw InputError(os.str());
    }
}

WhitneyParams::WhitneyParams(double alpha1, double alpha2)
    : alpha1_{alpha1}, alpha2_{alpha2}
{
    if (!(alpha1 > 0 && alpha2 > 1 && alpha1 < 1 / alpha2)
        || !std::isfinite(alpha1) || !std::isfinite(alpha2))
    {
        std::ostringstream os;
        os << "Whitney parameters (" << alpha1 << ", " << alpha2
           << ") are not consistent: need 0 < alpha1 < 1/alpha2 < 1";
        throw InputError(os.str());
    }
}

double DerivedParams::max_aperture() const
{
    return std::max({alphaC, alphaT, alphaStarUpper, wDoubleStar.a2});
}

DerivedParams derive_params(WhitneyParams const& w)
{
    double const a1 = w.alpha1();
    double const a2 = w.alpha2();
    double const root = std::sqrt(a2);
    double const quarter = std::sqrt(root);

    DerivedParams d;
    d.alpha0 = (1 - a1) / a2;
    d.alphaC = a2 + a1 * a2;
    d.alphaT = a2 + a1 / a2;
    d.alphaStarUpper = a2 + a1;
    d.alphaStarLower = 1 / a2 - a1;
    d.star = {a1 / (1 + root), root};
    d.doubleStar = {a1 / (2 * (1 + root) * quarter), quarter};
    d.wStar = {a1 / a2, a2};
    d.wDoubleStar = {a1 * a2, a2};
    return d;
}

bool derived_chain_holds(DerivedParams const& d, WhitneyParams const& w)
{
    double const chain[] = {0,
                            d.doubleStar.a1,
                            d.star.a1,
                            w.alpha1(),
                            1 / w.alpha2(),
                            1 / d.star.a2,
                            1 / d.doubleStar.a2,
                            1};
    // Strictly increasing: no adjacent pair with a >= b
    return std::adjacent_find(std::begin(chain),
                              std::end(chain),
                              [](double a, double b) { return !(a < b); })
           == std::end(chain);
}

//---------------------------------------------------------------------------//
// PREDICATES
//---------------------------------------------------------------------------//
bool cone_contains(BoundaryPoint const& x, Point const& p, double aperture)
{
    return torus_distance(p.y, x) < aperture * p.t;
}

bool tent_contains(Ball const& ball, Point const& p, double aperture, bool closed)
{
    if (!(ball.radius > 0) || ball.radius > 0.5)
    {
        throw InputError("tent base radius must lie in (0, 1/2]");
    }
    double reach = torus_distance(p.y, ball.center) + aperture * p.t;
    return closed ? reach <= ball.radius : reach < ball.radius;
}

bool whitney_box_contains(Point const& center,
                          Point const& p,
                          BoxParams const& params)
{
    return torus_distance(p.y, center.y) < params.a1 * center.t
           && center.t / params.a2 < p.t && p.t < params.a2 * center.t;
}

bool ball_contains(Ball const& ball, BoundaryPoint const& x)
{
    return torus_distance(ball.center, x) < ball.radius;
}

//---------------------------------------------------------------------------//
// INCLUSION SUITE
//---------------------------------------------------------------------------//
namespace
{
//! Random configurations sized to keep every radius under half the torus
class Sampler
{
  public:
    Sampler(Random& rng, int dim, double t_lo, double t_hi)
        : rng_{rng}, dim_{dim}, t_lo_{t_lo}, t_hi_{t_hi}
    {
    }

    BoundaryPoint boundary()
    {
        if (dim_ == 1)
            return BoundaryPoint{rng_.uniform()};
        return BoundaryPoint{rng_.uniform(), rng_.uniform()};
    }

    double height() { return rng_.log_uniform(t_lo_, t_hi_); }

    //! Uniform in the bounding cube of B(y, r)
    BoundaryPoint near(BoundaryPoint const& y, double r)
    {
        if (dim_ == 1)
            return y.shifted(rng_.uniform(-r, r));
        return y.shifted(rng_.uniform(-r, r), rng_.uniform(-r, r));
    }

    //! Height spread log-uniformly around t by factor `spread`
    double around(double t, double spread)
    {
        return t * std::pow(spread, rng_.uniform(-1, 1));
    }

    //! Point in the bounding region of a Whitney box (padded by 5%)
    Point in_box(Point const& c, BoxParams const& b)
    {
        return {near(c.y, 1.05 * b.a1 * c.t), around(c.t, 1.05 * b.a2)};
    }

    double uniform(double lo, double hi) { return rng_.uniform(lo, hi); }

  private:
    Random& rng_;
    int dim_;
    double t_lo_;
    double t_hi_;
};

struct Inclusion
{
    std::string name;
    std::string anchor;
    // Draw a configuration; false when the hypothesis fails
    std::function<bool()> sample;
    std::function<bool()> conclusion;
    std::function<std::string()> witness;
};

CheckResult run_inclusion(Inclusion const& inc, std::int64_t trials)
{
    constexpr int max_attempts = 100000;
    CheckResult result;
    result.name = inc.name;
    result.anchor = inc.anchor;
    std::int64_t violations = 0;
    for (std::int64_t i = 0; i < trials; ++i)
    {
        int attempts = 0;
        while (!inc.sample())
        {
            if (++attempts >= max_attempts)
            {
                throw InputError("hypothesis of '" + inc.name
                                 + "' could not be satisfied by sampling");
            }
        }
        if (!inc.conclusion())
        {
            if (violations == 0)
                result.witness = inc.witness();
            ++violations;
        }
    }
    result.passed = (violations == 0);
    result.constant = static_cast<double>(violations);
    result.tolerance = 0;
    return result;
}
}  // namespace

CheckList check_inclusion_suite(WhitneyParams const& w,
                                std::int64_t trials,
                                std::uint64_t seed,
                                int dim)
{
    if (trials < 1)
    {
        throw InputError("inclusion suite needs at least one trial");
    }
    if (dim != 1 && dim != 2)
    {
        throw InputError("boundary dimension must be 1 or 2");
    }
    DerivedParams const d = derive_params(w);
    BoxParams const base = w.box();
    double const one = 1;

    // Every radius below is bounded by a2^2 * max_aperture * t
    double const t_hi
        = 0.4 / (w.alpha2() * w.alpha2() * (d.max_aperture() + 1));
    double const t_lo = t_hi * 1e-3;

    Random rng = Random::stream(seed, 0);
    Sampler draw{rng, dim, t_lo, t_hi};

    // Shared configuration slots; each inclusion fills the ones it uses
    BoundaryPoint x;
    Point p, q, r;
    Ball ball;

    auto pts = [&](std::initializer_list<Point const*> list) {
        std::string s;
        for (auto const* item : list)
            s += item->to_string() + " ";
        return s;
    };

    std::vector<Inclusion> incs;
    incs.push_back(
        {"W_inner",
         "Whitney box geometry W (inner)",
         [&] {
             q = {draw.boundary(), draw.height()};  // (z,s)
             p = draw.in_box(q, d.wStar);  // (y,t)
             return whitney_box_contains(q, p, d.wStar);
         },
         [&] { return whitney_box_contains(p, q, base); },
         [&] { return "zs=" + q.to_string() + " yt=" + p.to_string(); }});
    incs.push_back(
        {"W_outer",
         "Whitney box geometry W (outer)",
         [&] {
             q = {draw.boundary(), draw.height()};
             p = {draw.near(q.y, 1.1 * w.alpha1() * w.alpha2() * q.t),
                  draw.around(q.t, 1.1 * w.alpha2())};
             return whitney_box_contains(p, q, base);
         },
         [&] { return whitney_box_contains(q, p, d.wDoubleStar); },
         [&] { return "zs=" + q.to_string() + " yt=" + p.to_string(); }});
    incs.push_back(
        {"C1",
         "cone geometry C1",
         [&] {
             x = draw.boundary();
             double s = draw.height();
             q = {draw.near(x, 1.05 * d.alpha0 * s), s};
             p = draw.in_box(q, d.wStar);
             return cone_contains(x, q, d.alpha0)
                    && whitney_box_contains(q, p, d.wStar);
         },
         [&] { return cone_contains(x, p, one); },
         [&] { return "x=" + x.to_string() + " " + pts({&q, &p}); }});
    incs.push_back(
        {"C2",
         "cone geometry C2",
         [&] {
             x = draw.boundary();
             double t = draw.height();
             p = {draw.near(x, 1.05 * t), t};
             q = draw.in_box(p, base);
             return cone_contains(x, p, one)
                    && whitney_box_contains(p, q, base);
         },
         [&] { return cone_contains(x, q, d.alphaC); },
         [&] { return "x=" + x.to_string() + " " + pts({&p, &q}); }});
    incs.push_back(
        {"T1",
         "tent geometry T1",
         [&] {
             ball = {draw.boundary(),
                     draw.uniform(0.2, 1.0) * d.alphaT * w.alpha2() * t_hi};
             double s = draw.uniform(0, ball.radius / d.alphaT);
             if (!(s > 0))
                 return false;
             q = {draw.near(ball.center, ball.radius), s};
             p = draw.in_box(q, d.wStar);
             return tent_contains(ball, q, d.alphaT)
                    && whitney_box_contains(q, p, d.wStar);
         },
         [&] { return tent_contains(ball, p, one); },
         [&] {
             return "ball=(" + ball.center.to_string() + ", "
                    + std::to_string(ball.radius) + ") " + pts({&q, &p});
         }});
    incs.push_back(
        {"T2",
         "tent geometry T2",
         [&] {
             ball = {draw.boundary(),
                     draw.uniform(0.2, 1.0) * w.alpha2() * t_hi};
             double t = draw.uniform(0, ball.radius);
             if (!(t > 0))
                 return false;
             p = {draw.near(ball.center, ball.radius), t};
             q = draw.in_box(p, base);
             return tent_contains(ball, p, one)
                    && whitney_box_contains(p, q, base);
         },
         [&] { return tent_contains(ball, q, d.alpha0); },
         [&] {
             return "ball=(" + ball.center.to_string() + ", "
                    + std::to_string(ball.radius) + ") " + pts({&p, &q});
         }});
    incs.push_back(
        {"nested_star_boxes",
         "star boxes nest inside the base box (F1 construction)",
         [&] {
             p = {draw.boundary(), draw.height()};  // (y,t)
             q = draw.in_box(p, d.star);  // (z,s)
             r = draw.in_box(q, d.star);  // (z0,s0)
             return whitney_box_contains(p, q, d.star)
                    && whitney_box_contains(q, r, d.star);
         },
         [&] { return whitney_box_contains(p, r, base); },
         [&] { return pts({&p, &q, &r}); }});
    incs.push_back(
        {"double_star_in_star",
         "double-star box lies in every star box of its points (F1 "
         "construction)",
         [&] {
             p = {draw.boundary(), draw.height()};
             q = draw.in_box(p, d.doubleStar);
             r = draw.in_box(p, d.doubleStar);
             return whitney_box_contains(p, q, d.doubleStar)
                    && whitney_box_contains(p, r, d.doubleStar);
         },
         [&] { return whitney_box_contains(q, r, d.star); },
         [&] { return pts({&p, &q, &r}); }});
    incs.push_back(
        {"ball_intersection",
         "balls over a Whitney box share B(y,(1/a2-a1)t) (F2 construction)",
         [&] {
             p = {draw.boundary(), draw.height()};
             q = draw.in_box(p, base);
             x = draw.near(p.y, 1.05 * d.alphaStarLower * p.t);
             return whitney_box_contains(p, q, base)
                    && ball_contains({p.y, d.alphaStarLower * p.t}, x);
         },
         [&] { return ball_contains({q.y, q.t}, x); },
         [&] { return "x=" + x.to_string() + " " + pts({&p, &q}); }});
    incs.push_back(
        {"ball_union",
         "balls over a Whitney box lie in B(y,(a2+a1)t) (F2 construction)",
         [&] {
             p = {draw.boundary(), draw.height()};
             q = draw.in_box(p, base);
             x = draw.near(q.y, 1.05 * q.t);
             return whitney_box_contains(p, q, base)
                    && ball_contains({q.y, q.t}, x);
         },
         [&] {
             return ball_contains({p.y, d.alphaStarUpper * p.t}, x);
         },
         [&] { return "x=" + x.to_string() + " " + pts({&p, &q}); }});
    incs.push_back(
        {"cone_ball",
         "balls B(y, a* t) over the cone contain the vertex (F2 "
         "construction)",
         [&] {
             x = draw.boundary();
             double t = draw.height();
             p = {draw.near(x, 1.05 * t), t};
             return cone_contains(x, p, one);
         },
         [&] { return ball_contains({p.y, d.alphaStarUpper * p.t}, x); },
         [&] { return "x=" + x.to_string() + " " + p.to_string(); }});

    CheckList results;
    results.reserve(incs.size());
    for (auto const& inc : incs)
    {
        results.push_back(run_inclusion(inc, trials));
    }
    return results;
}

//---------------------------------------------------------------------------//
}  // namespace tent
