//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file Functionals.cc
//---------------------------------------------------------------------------//
#include "tent/Functionals.hh"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tent/Parallel.hh"

namespace tent
{
namespace
{
//! Auxiliary grid whose levels carry boundary functions
GridSpec boundary_stack_spec(GridSpec const& spec, std::size_t count)
{
    int levels = std::max<int>(2, static_cast<int>(count));
    return GridSpec{spec.dim(), spec.ny(), levels, 1.0, 2.0};
}

GridFunction stack(GridSpec const& spec, BoundaryFunction const& h)
{
    GridFunction out{boundary_stack_spec(spec, 1)};
    for (std::size_t b = 0; b < spec.boundary_size(); ++b)
        out(b, 0) = h[b];
    return out;
}

void require_boundary_size(GridSpec const& spec, BoundaryFunction const& h)
{
    if (h.size() != spec.boundary_size())
        throw InputError("boundary function does not match the grid");
}

GridFunction powered_abs(GridFunction const& g, double q)
{
    return g.map([q](double v) { return std::pow(std::fabs(v), q); });
}
}  // namespace

char to_char(Category c)
{
    return "ABCD"[static_cast<int>(c)];
}

//---------------------------------------------------------------------------//
// NORM SPEC
//---------------------------------------------------------------------------//
Category NormSpec::category() const
{
    bool pi = p.is_infinite();
    bool qi = q.is_infinite();
    if (!pi && !qi)
        return Category::A;
    if (pi && !qi)
        return Category::B;
    if (!pi && qi)
        return Category::C;
    return Category::D;
}

Exponent NormSpec::tau() const
{
    Exponent result = std::min(p, q);
    if (r)
        result = std::min(result, *r);
    return result;
}

NormSpec NormSpec::powered(Rational theta) const
{
    NormSpec result{*this};
    result.p = p.scaled_down(theta);
    result.q = q.scaled_down(theta);
    if (r)
        result.r = r->scaled_down(theta);
    result.beta = beta * theta;
    return result;
}

std::string NormSpec::to_string() const
{
    return p.to_string() + "," + q.to_string() + ","
           + (r ? r->to_string() : std::string("none")) + ","
           + beta.to_string();
}

NormSpec NormSpec::parse(std::string const& text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        parts.push_back(item);
    if (parts.size() != 4)
    {
        throw InputError("norm spec '" + text
                         + "' must have the form p,q,r,beta");
    }
    NormSpec s;
    s.p = Exponent::parse(parts[0]);
    s.q = Exponent::parse(parts[1]);
    auto r = parts[2];
    r.erase(std::remove(r.begin(), r.end(), ' '), r.end());
    if (r == "none")
        s.r.reset();
    else
        s.r = Exponent::parse(r);
    s.beta = Rational::parse(parts[3]);
    return s;
}

NormSpec NormSpec::classical(Exponent p, Exponent q)
{
    NormSpec s;
    s.p = p;
    s.q = q;
    s.r.reset();
    return s;
}

//---------------------------------------------------------------------------//
// WHITNEY AVERAGE
//---------------------------------------------------------------------------//
GridFunction
whitney_average(GridFunction const& f, Exponent r, BoxParams const& box)
{
    box.validate();
    GridSpec const& spec = f.spec();
    GridFunction g = f.abs();
    check_support_margin(g, box);

    int const levels = spec.levels();
    std::vector<Stencil> stencils(levels);
    std::vector<LevelRange> ranges(levels);
    for (int k = 0; k < levels; ++k)
    {
        double const radius = box.a1 * spec.height(k);
        stencils[k] = Stencil::build(
            spec, [radius](double d) { return d < radius; });
        ranges[k] = box_levels(spec, k, box.a2);
    }

    GridFunction out{spec};
    std::size_t const nb = spec.boundary_size();
    if (r.is_infinite())
    {
        RangeMaxTable table{g};
        parallel_for(static_cast<std::size_t>(levels), [&](std::size_t kk) {
            int k = static_cast<int>(kk);
            std::vector<double> acc(nb, 0.0);
            int lo = std::max(0, ranges[k].lo);
            int hi = std::min(levels - 1, ranges[k].hi);
            for (int j = lo; j <= hi; ++j)
                table.accumulate(j, stencils[k], acc);
            for (std::size_t b = 0; b < nb; ++b)
                out(b, k) = acc[b];
        });
        return out;
    }

    double const rv = r.value();
    CellMeasure volume{spec, CellMeasure::Kind::dydt};
    PrefixTable table{powered_abs(g, rv), &volume};
    parallel_for(static_cast<std::size_t>(levels), [&](std::size_t kk) {
        int k = static_cast<int>(kk);
        // Box volume includes virtual levels beyond the grid, where f = 0
        long double height_sum = 0;
        for (int j = ranges[k].lo; j <= ranges[k].hi; ++j)
            height_sum += spec.height(j);
        long double const den = static_cast<long double>(stencils[k].count())
                                * spec.boundary_cell() * spec.log_rho()
                                * height_sum;
        int lo = std::max(0, ranges[k].lo);
        int hi = std::min(levels - 1, ranges[k].hi);
        std::vector<long double> acc(nb, 0.0L);
        for (int j = lo; j <= hi; ++j)
            table.accumulate(j, stencils[k], acc);
        for (std::size_t b = 0; b < nb; ++b)
        {
            double mean = static_cast<double>(std::max(acc[b], 0.0L) / den);
            out(b, k) = mean == 0 ? 0 : std::pow(mean, 1 / rv);
        }
    });
    return out;
}

//---------------------------------------------------------------------------//
// CONICAL AND NON-TANGENTIAL
//---------------------------------------------------------------------------//
double conical_A(GridFunction const& g,
                 Exponent q,
                 double aperture,
                 BoundaryPoint const& x)
{
    if (q.is_infinite())
        return nontangential_N(g, aperture, x);
    GridSpec const& spec = g.spec();
    CellMeasure m{spec, CellMeasure::Kind::dydt_over_tn1};
    double const qv = q.value();
    double total = integrate_region(
        powered_abs(g, qv),
        [&](Point const& p) { return cone_contains(x, p, aperture); },
        m);
    return total == 0 ? 0 : std::pow(total, 1 / qv);
}

BoundaryFunction conical_A(GridFunction const& g, Exponent q, double aperture)
{
    if (q.is_infinite())
        return nontangential_N(g, aperture);
    GridSpec const& spec = g.spec();
    double const qv = q.value();
    CellMeasure m{spec, CellMeasure::Kind::dydt_over_tn1};
    PrefixTable table{powered_abs(g, qv), &m};

    int const levels = spec.levels();
    std::vector<Stencil> stencils(levels);
    for (int k = 0; k < levels; ++k)
        stencils[k] = Stencil::open_ball(spec, aperture * spec.height(k));

    std::vector<long double> acc(spec.boundary_size(), 0.0L);
    for (int k = 0; k < levels; ++k)
        table.accumulate(k, stencils[k], acc);
    BoundaryFunction out(spec.boundary_size());
    for (std::size_t b = 0; b < out.size(); ++b)
    {
        double v = static_cast<double>(std::max(acc[b], 0.0L));
        out[b] = v == 0 ? 0 : std::pow(v, 1 / qv);
    }
    return out;
}

double
nontangential_N(GridFunction const& g, double aperture, BoundaryPoint const& x)
{
    GridSpec const& spec = g.spec();
    double result = 0;
    for (int k = 0; k < spec.levels(); ++k)
    {
        for (std::size_t b = 0; b < spec.boundary_size(); ++b)
        {
            if (cone_contains(x, spec.cell_center(b, k), aperture))
                result = std::max(result, std::fabs(g(b, k)));
        }
    }
    return result;
}

BoundaryFunction nontangential_N(GridFunction const& g, double aperture)
{
    GridSpec const& spec = g.spec();
    RangeMaxTable table{g.abs()};
    int const levels = spec.levels();
    std::vector<Stencil> stencils(levels);
    for (int k = 0; k < levels; ++k)
        stencils[k] = Stencil::open_ball(spec, aperture * spec.height(k));

    BoundaryFunction out(spec.boundary_size(), 0.0);
    for (int k = 0; k < levels; ++k)
        table.accumulate(k, stencils[k], out);
    return out;
}

//---------------------------------------------------------------------------//
// BALL FAMILY AND CARLESON
//---------------------------------------------------------------------------//
BallFamily::BallFamily(GridSpec const& spec) : spec_{spec}
{
    for (double r = spec.dy(); r <= 0.25; r *= 2)
        radii_.push_back(r);
    if (radii_.empty())
        radii_.push_back(0.25);
}

double BallFamily::unit_volume(int dim)
{
    return dim == 1 ? 2.0 : M_PI;
}

double BallFamily::volume(std::size_t j) const
{
    return unit_volume(spec_.dim()) * std::pow(radii_[j], spec_.dim());
}

BallValues
carleson_ball_values(GridFunction const& g, Exponent q, double aperture)
{
    if (q.is_infinite())
        throw InputError("Carleson functional needs a finite q");
    GridSpec const& spec = g.spec();
    BallFamily family{spec};
    CellMeasure m{spec, CellMeasure::Kind::dydt_over_t};
    PrefixTable table{powered_abs(g, q.value()), &m};

    auto const& radii = family.radii();
    BallValues values(radii.size());
    for (std::size_t j = 0; j < radii.size(); ++j)
    {
        double const radius = radii[j];
        std::vector<int> active;
        std::vector<Stencil> stencils;
        for (int k = 0; k < spec.levels(); ++k)
        {
            double const reach = aperture * spec.height(k);
            Stencil s = Stencil::build(spec, [reach, radius](double d) {
                return d + reach < radius;
            });
            if (s.empty())
                continue;
            active.push_back(k);
            stencils.push_back(std::move(s));
        }
        double const volume = family.volume(j);
        auto& row = values[j];
        row.assign(spec.boundary_size(), 0.0);
        std::vector<long double> acc(row.size(), 0.0L);
        for (std::size_t i = 0; i < active.size(); ++i)
            table.accumulate(active[i], stencils[i], acc);
        for (std::size_t b = 0; b < row.size(); ++b)
            row[b] = static_cast<double>(std::max(acc[b], 0.0L)) / volume;
    }
    return values;
}

BoundaryFunction
ball_sup_at_points(BallFamily const& family, BallValues const& values)
{
    GridSpec const& spec = family.spec();
    auto const& radii = family.radii();
    GridSpec aux = boundary_stack_spec(spec, radii.size());
    GridFunction stacked{aux, -std::numeric_limits<double>::infinity()};
    for (std::size_t j = 0; j < radii.size(); ++j)
    {
        for (std::size_t b = 0; b < spec.boundary_size(); ++b)
            stacked(b, static_cast<int>(j)) = values[j][b];
    }
    RangeMaxTable table{stacked};
    std::vector<Stencil> stencils;
    for (double r : radii)
        stencils.push_back(Stencil::open_ball(spec, r));

    BoundaryFunction out(spec.boundary_size());
    for (std::size_t b = 0; b < out.size(); ++b)
    {
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < radii.size(); ++j)
            m = std::max(m, table.max(static_cast<int>(j), b, stencils[j]));
        out[b] = m;
    }
    return out;
}

double carleson_C(GridFunction const& g,
                  Exponent q,
                  double aperture,
                  BoundaryPoint const& x)
{
    GridSpec const& spec = g.spec();
    BallFamily family{spec};
    auto values = carleson_ball_values(g, q, aperture);
    double m = 0;
    for (std::size_t j = 0; j < family.radii().size(); ++j)
    {
        for (std::size_t b = 0; b < spec.boundary_size(); ++b)
        {
            if (ball_contains(family.ball(j, b), x))
                m = std::max(m, values[j][b]);
        }
    }
    return m == 0 ? 0 : std::pow(m, 1 / q.value());
}

BoundaryFunction carleson_C(GridFunction const& g, Exponent q, double aperture)
{
    BallFamily family{g.spec()};
    auto out = ball_sup_at_points(family,
                                  carleson_ball_values(g, q, aperture));
    double const inv_q = 1 / q.value();
    for (double& v : out)
        v = v == 0 ? 0 : std::pow(v, inv_q);
    return out;
}

//---------------------------------------------------------------------------//
// BOUNDARY AVERAGES
//---------------------------------------------------------------------------//
double ball_average(GridSpec const& spec,
                    BoundaryFunction const& h,
                    BoundaryPoint const& y,
                    double radius)
{
    require_boundary_size(spec, h);
    long double sum = 0;
    std::size_t count = 0;
    std::size_t nearest = 0;
    double nearest_d = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < spec.boundary_size(); ++b)
    {
        double d = torus_distance(spec.boundary_point(b), y);
        if (d < radius)
        {
            sum += h[b];
            ++count;
        }
        if (d < nearest_d)
        {
            nearest_d = d;
            nearest = b;
        }
    }
    if (count == 0)
        return h[nearest];
    return static_cast<double>(sum / count);
}

GridFunction ball_average_field(GridSpec const& spec,
                                BoundaryFunction const& h,
                                double scale)
{
    require_boundary_size(spec, h);
    PrefixTable table{stack(spec, h)};
    GridFunction out{spec};
    for (int k = 0; k < spec.levels(); ++k)
    {
        Stencil s = Stencil::open_ball(table.spec(), scale * spec.height(k));
        long double const count = static_cast<long double>(s.count());
        for (std::size_t b = 0; b < spec.boundary_size(); ++b)
            out(b, k) = static_cast<double>(table.sum(0, b, s) / count);
    }
    return out;
}

BoundaryFunction hl_maximal(GridSpec const& spec, BoundaryFunction const& h)
{
    require_boundary_size(spec, h);
    BallFamily family{spec};
    PrefixTable table{stack(spec, h)};
    BallValues means(family.radii().size());
    for (std::size_t j = 0; j < means.size(); ++j)
    {
        Stencil s = Stencil::open_ball(table.spec(), family.radii()[j]);
        long double const count = static_cast<long double>(s.count());
        means[j].resize(spec.boundary_size());
        for (std::size_t b = 0; b < spec.boundary_size(); ++b)
            means[j][b] = static_cast<double>(table.sum(0, b, s) / count);
    }
    return ball_sup_at_points(family, means);
}

double boundary_lp(GridSpec const& spec, BoundaryFunction const& h, Exponent p)
{
    require_boundary_size(spec, h);
    if (p.is_infinite())
    {
        double m = 0;
        for (double v : h)
            m = std::max(m, std::fabs(v));
        return m;
    }
    double const pv = p.value();
    long double total = 0;
    for (double v : h)
        total += std::pow(std::fabs(v), pv);
    double s = static_cast<double>(total * spec.boundary_cell());
    return s == 0 ? 0 : std::pow(s, 1 / pv);
}

//---------------------------------------------------------------------------//
// QUASI-NORMS
//---------------------------------------------------------------------------//
GridFunction prepared(GridFunction const& f, NormSpec const& s)
{
    GridFunction g = f.abs().weighted(s.beta.to_double());
    if (!s.r)
        return g;
    return whitney_average(g, *s.r, s.whitney.box());
}

double classical_norm(GridFunction const& g,
                      Exponent p,
                      Exponent q,
                      double aperture)
{
    GridSpec const& spec = g.spec();
    bool const pi = p.is_infinite();
    bool const qi = q.is_infinite();
    if (!pi && !qi)
        return boundary_lp(spec, conical_A(g, q, aperture), p);
    if (pi && !qi)
    {
        // Every family ball contains its own center
        double m = 0;
        for (auto const& row : carleson_ball_values(g, q, aperture))
        {
            for (double v : row)
                m = std::max(m, v);
        }
        return m == 0 ? 0 : std::pow(m, 1 / q.value());
    }
    if (!pi && qi)
        return boundary_lp(spec, nontangential_N(g, aperture), p);
    return g.max_abs();
}

double tent_norm(GridFunction const& f, NormSpec const& s)
{
    return classical_norm(prepared(f, s), s.p, s.q, s.aperture);
}

CheckResult
power_identity_check(GridFunction const& f, NormSpec const& s, Rational theta)
{
    if (!theta.is_positive() || Rational{1} < theta)
        throw InputError("power identity needs theta in (0, 1]");
    double const th = theta.to_double();
    GridFunction root = f.map(
        [th](double v) { return std::pow(std::fabs(v), 1 / th); });
    double lhs = std::pow(tent_norm(root, s), th);
    double rhs = tent_norm(f, s.powered(theta));
    double scale = std::max(std::fabs(lhs), std::fabs(rhs));
    double err = scale == 0 ? 0 : std::fabs(lhs - rhs) / scale;

    CheckResult result;
    result.name = "power identity " + s.to_string() + " theta="
                  + theta.to_string();
    result.anchor = "power identity of the weighted scale";
    result.constant = err;
    result.tolerance = 1e-10;
    result.passed = err <= result.tolerance;
    if (!result.passed)
    {
        std::ostringstream os;
        os.precision(17);
        os << "lhs=" << lhs << " rhs=" << rhs;
        result.witness = os.str();
    }
    return result;
}

double pairing(GridFunction const& f, GridFunction const& h, double beta0)
{
    if (f.spec() != h.spec())
        throw InputError("pairing of functions on different grids");
    CellMeasure m{f.spec(), CellMeasure::Kind::dydt_weighted, beta0};
    return integrate_region(
        f * h, [](Point const&) { return true; }, m);
}

//---------------------------------------------------------------------------//
}  // namespace tent
