//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file Measures.cc
//---------------------------------------------------------------------------//
#include "tent/Measures.hh"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "tent/Random.hh"

namespace tent
{
namespace
{
double height_power(double t, int dim)
{
    return dim == 1 ? t : t * t;
}

std::size_t ball_count(GridSpec const& spec, BoundaryPoint const& y, double r)
{
    std::size_t count = 0;
    for (std::size_t b = 0; b < spec.boundary_size(); ++b)
    {
        if (torus_distance(spec.boundary_point(b), y) < r)
            ++count;
    }
    return count;
}
}  // namespace

//---------------------------------------------------------------------------//
// MEASURE
//---------------------------------------------------------------------------//
DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms)
    : atoms_{std::move(atoms)}
{
    if (atoms_.empty())
        throw InputError("a measure needs at least one atom");
    int const dim = atoms_.front().at.y.dim();
    long double total = 0;
    for (auto const& a : atoms_)
    {
        if (!(a.mass > 0) || !std::isfinite(a.mass))
            throw InputError("atom masses must be positive and finite");
        if (!(a.at.t > 0) || !std::isfinite(a.at.t))
            throw InputError("atom heights must be positive");
        if (a.at.y.dim() != dim)
            throw InputError("atoms of mixed dimension");
        total += a.mass;
    }
    total_ = static_cast<double>(total);
}

DiscreteMeasure random_measure(int dim,
                               std::size_t count,
                               std::uint64_t seed,
                               double t_lo,
                               double t_hi)
{
    if (count == 0)
        throw InputError("a measure needs at least one atom");
    Random rng = Random::stream(seed, 101);
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < count; ++i)
    {
        Atom a;
        double y = rng.uniform();
        a.at.y = dim == 1 ? BoundaryPoint{y} : BoundaryPoint{y, rng.uniform()};
        a.at.t = rng.log_uniform(t_lo, t_hi);
        a.mass = rng.log_uniform(0.1, 1.0);
        atoms.push_back(a);
    }
    return DiscreteMeasure{std::move(atoms)};
}

//---------------------------------------------------------------------------//
// BALAYAGE AND EXTENSION
//---------------------------------------------------------------------------//
double balayage(DiscreteMeasure const& mu, BoundaryPoint const& x)
{
    long double sum = 0;
    for (auto const& a : mu.atoms())
    {
        if (cone_contains(x, a.at, 1.0))
            sum += a.mass / height_power(a.at.t, mu.dim());
    }
    return static_cast<double>(sum);
}

BoundaryFunction balayage(DiscreteMeasure const& mu, GridSpec const& spec)
{
    if (spec.dim() != mu.dim())
        throw InputError("measure and grid dimensions differ");
    BoundaryFunction out(spec.boundary_size());
    for (std::size_t b = 0; b < out.size(); ++b)
        out[b] = balayage(mu, spec.boundary_point(b));
    return out;
}

double balayage_integral(DiscreteMeasure const& mu)
{
    if (mu.dim() != 1)
        throw InputError("exact balayage integral is implemented for n = 1");
    std::vector<double> cuts{0.0, 1.0};
    for (auto const& a : mu.atoms())
    {
        cuts.push_back(BoundaryPoint{a.at.y[0] - a.at.t}[0]);
        cuts.push_back(BoundaryPoint{a.at.y[0] + a.at.t}[0]);
    }
    std::sort(cuts.begin(), cuts.end());
    // The balayage is constant between consecutive shadow endpoints
    double sum = 0;
    double comp = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    {
        double len = cuts[i + 1] - cuts[i];
        if (len <= 0)
            continue;
        double term = len * balayage(mu, BoundaryPoint{cuts[i] + len / 2});
        double s = sum + term;
        comp += std::fabs(sum) >= std::fabs(term) ? (sum - s) + term
                                                  : (term - s) + sum;
        sum = s;
    }
    return sum + comp;
}

double extension(GridSpec const& spec,
                 BoundaryFunction const& abar,
                 Point const& p)
{
    if (abar.size() != spec.boundary_size())
        throw InputError("balayage samples do not match the grid");
    long double sum = 0;
    std::size_t count = 0;
    std::size_t nearest = 0;
    double nearest_d = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < spec.boundary_size(); ++b)
    {
        double d = torus_distance(spec.boundary_point(b), p.y);
        if (d < nearest_d)
        {
            nearest_d = d;
            nearest = b;
        }
        if (!(d < p.t))
            continue;
        if (abar[b] == 0)
            return std::numeric_limits<double>::infinity();
        sum += 1 / static_cast<long double>(abar[b]);
        ++count;
    }
    if (count == 0)
    {
        return abar[nearest] == 0 ? std::numeric_limits<double>::infinity()
                                  : 1 / abar[nearest];
    }
    return static_cast<double>(sum / count);
}

double extension(DiscreteMeasure const& mu, GridSpec const& spec, Point const& p)
{
    return extension(spec, balayage(mu, spec), p);
}

//---------------------------------------------------------------------------//
// CARLESON NORMS
//---------------------------------------------------------------------------//
CarlesonNorm carleson_norm_measure(std::vector<Atom> const& nu,
                                   GridSpec const& spec,
                                   bool closed)
{
    BallFamily family{spec};
    CarlesonNorm best;
    best.witness = family.ball(0, 0);
    for (std::size_t j = 0; j < family.radii().size(); ++j)
    {
        double const vol = family.volume(j);
        for (std::size_t b = 0; b < spec.boundary_size(); ++b)
        {
            Ball ball = family.ball(j, b);
            long double mass = 0;
            for (auto const& a : nu)
            {
                if (tent_contains(ball, a.at, 1.0, closed))
                    mass += std::fabs(a.mass);
            }
            double value = static_cast<double>(mass) / vol;
            if (value > best.value)
            {
                best.value = value;
                best.witness = ball;
            }
        }
    }
    return best;
}

double balayage_lemma_constant(int dim)
{
    return 1 / BallFamily::unit_volume(dim);
}

BalayageLemma balayage_lemma(DiscreteMeasure const& mu, GridSpec const& spec)
{
    BoundaryFunction abar = balayage(mu, spec);
    std::vector<Atom> weighted;
    BalayageLemma result;
    double const cell = spec.boundary_cell();
    for (auto const& a : mu.atoms())
    {
        double e = extension(spec, abar, a.at);
        weighted.push_back({a.at, e * a.mass});
        std::size_t n = ball_count(spec, a.at.y, a.at.t);
        double lam = n == 0 ? std::numeric_limits<double>::infinity()
                            : height_power(a.at.t, spec.dim()) / (n * cell);
        result.lambda = std::max(result.lambda, lam);
    }
    BallFamily family{spec};
    for (std::size_t j = 0; j < family.radii().size(); ++j)
    {
        std::size_t n = Stencil::open_ball(spec, family.radii()[j]).count();
        result.kappa = std::max(result.kappa, n * cell / family.volume(j));
    }
    result.norm = carleson_norm_measure(weighted, spec, true);
    return result;
}

CheckResult check_balayage_lemma(DiscreteMeasure const& mu,
                                 GridSpec const& spec,
                                 double slack)
{
    BalayageLemma lemma = balayage_lemma(mu, spec);
    CheckResult result;
    result.name = "balayage lemma";
    result.anchor = "balayage lemma";
    result.constant = lemma.norm.value;
    result.tolerance = balayage_lemma_constant(spec.dim()) + slack;
    bool within_certificate = lemma.norm.value
                              <= lemma.certificate() * (1 + 1e-12);
    result.passed = within_certificate
                    && lemma.norm.value <= result.tolerance;
    if (!result.passed)
    {
        std::ostringstream os;
        os.precision(17);
        os << "ball center " << lemma.norm.witness.center.to_string()
           << " radius " << lemma.norm.witness.radius << ": norm "
           << lemma.norm.value << ", certificate " << lemma.certificate();
        result.witness = os.str();
    }
    return result;
}

//---------------------------------------------------------------------------//
// MEASURE FACTORIZATION
//---------------------------------------------------------------------------//
MeasureFactorization
factorize_measure(DiscreteMeasure const& mu, GridSpec const& spec, double p0)
{
    if (!(p0 > 0 && p0 < 1))
        throw InputError("measure factorization needs 0 < p0 < 1");
    BoundaryFunction abar = balayage(mu, spec);

    MeasureFactorization result{GridFunction{spec}, {}, {}, 0, 0, 0, 0};
    for (auto const& a : mu.atoms())
    {
        double e = extension(spec, abar, a.at);
        double inv = 1 / e;
        result.atom_factor.push_back(inv);
        result.carleson_factor.push_back({a.at, e * a.mass});
        result.reconstruction_error = std::max(
            result.reconstruction_error, std::fabs(inv * (e * a.mass) - a.mass));
    }
    result.carleson_norm
        = carleson_norm_measure(result.carleson_factor, spec, true).value;

    // E^{-1} on every cell; a zero of the balayage in the ball makes E
    // infinite and its reciprocal zero
    BoundaryFunction recip(abar.size());
    BoundaryFunction zero(abar.size());
    for (std::size_t b = 0; b < abar.size(); ++b)
    {
        recip[b] = abar[b] > 0 ? 1 / abar[b] : 0;
        zero[b] = abar[b] > 0 ? 0 : 1;
    }
    GridFunction mean = ball_average_field(spec, recip);
    GridFunction zeros = ball_average_field(spec, zero);
    for (std::size_t i = 0; i < mean.values().size(); ++i)
    {
        double m = mean.values()[i];
        result.boundary_factor.values()[i]
            = (zeros.values()[i] > 0 || m == 0) ? 0 : 1 / m;
    }
    result.boundary_norm = classical_norm(
        result.boundary_factor, Exponent{1}, Exponent::infinity(), 1.0);

    BoundaryFunction powered(abar.size());
    for (std::size_t b = 0; b < abar.size(); ++b)
        powered[b] = std::pow(abar[b], p0);
    BoundaryFunction maximal = hl_maximal(spec, powered);
    BoundaryFunction nt = nontangential_N(result.boundary_factor, 1.0);
    for (std::size_t b = 0; b < nt.size(); ++b)
    {
        if (nt[b] == 0)
            continue;
        double m = std::pow(maximal[b], 1 / p0);
        result.maximal_ratio = std::max(result.maximal_ratio,
                                        m > 0 ? nt[b] / m : HUGE_VAL);
    }
    return result;
}

double carleson_inequality_ratio(
    GridFunction const& f,
    Exponent p,
    std::vector<std::pair<std::size_t, double>> const& cells)
{
    if (p.is_infinite())
        throw InputError("Carleson inequality needs a finite p");
    GridSpec const& spec = f.spec();
    double const pv = p.value();
    GridFunction masses{spec};
    long double lhs = 0;
    for (auto const& [idx, m] : cells)
    {
        if (idx >= spec.size())
            throw InputError("atom cell index out of range");
        masses.values()[idx] += std::fabs(m);
        lhs += std::pow(std::fabs(f.values()[idx]), pv) * std::fabs(m);
    }

    // Open-tent Carleson norm through per-level prefix sums
    BallFamily family{spec};
    PrefixTable table{masses};
    double carleson = 0;
    for (std::size_t j = 0; j < family.radii().size(); ++j)
    {
        double const radius = family.radii()[j];
        std::vector<long double> acc(spec.boundary_size(), 0.0L);
        for (int k = 0; k < spec.levels(); ++k)
        {
            double const t = spec.height(k);
            Stencil s = Stencil::build(
                spec, [t, radius](double d) { return d + t < radius; });
            if (!s.empty())
                table.accumulate(k, s, acc);
        }
        for (long double v : acc)
        {
            carleson = std::max(
                carleson, static_cast<double>(v) / family.volume(j));
        }
    }

    double nt = classical_norm(f.abs(), p, Exponent::infinity(), 1.0);
    double rhs = std::pow(nt, pv) * carleson;
    if (lhs == 0)
        return 0;
    return rhs > 0 ? static_cast<double>(lhs) / rhs : HUGE_VAL;
}

//---------------------------------------------------------------------------//
// TEXT I/O
//---------------------------------------------------------------------------//
void write_measure(std::ostream& os, DiscreteMeasure const& mu)
{
    char buf[32];
    auto fmt = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    for (auto const& a : mu.atoms())
    {
        os << fmt(a.at.y[0]);
        if (mu.dim() == 2)
            os << ',' << fmt(a.at.y[1]);
        os << ',' << fmt(a.at.t) << ',' << fmt(a.mass) << '\n';
    }
}

DiscreteMeasure read_measure(std::istream& is)
{
    std::vector<Atom> atoms;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<double> cols;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ','))
        {
            try
            {
                std::size_t used = 0;
                cols.push_back(std::stod(item, &used));
                if (used != item.size())
                    throw std::invalid_argument(item);
            }
            catch (std::exception const&)
            {
                throw InputError("measure line " + std::to_string(line_no)
                                 + ": bad number '" + item + "'");
            }
        }
        Atom a;
        if (cols.size() == 3)
            a.at.y = BoundaryPoint{cols[0]};
        else if (cols.size() == 4)
            a.at.y = BoundaryPoint{cols[0], cols[1]};
        else
            throw InputError("measure line " + std::to_string(line_no)
                             + ": expected y[,z],t,mass");
        a.at.t = cols[cols.size() - 2];
        a.mass = cols.back();
        if (!(a.mass > 0))
        {
            throw InputError("measure line " + std::to_string(line_no)
                             + ": mass must be positive");
        }
        atoms.push_back(a);
    }
    return DiscreteMeasure{std::move(atoms)};
}

//---------------------------------------------------------------------------//
}  // namespace tent
