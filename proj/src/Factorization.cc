//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file Factorization.cc
//---------------------------------------------------------------------------//
#include "tent/Factorization.hh"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tent
{
namespace
{
void require_nonnegative(GridFunction const& u)
{
    for (double v : u.values())
    {
        if (!(v >= 0) || !std::isfinite(v))
        {
            throw InputError("factorization input must be finite and "
                             "non-negative");
        }
    }
}

//! a / b on the support of u, zero elsewhere
GridFunction quotient_on_support(GridFunction const& u, GridFunction const& v)
{
    GridFunction w{u.spec()};
    auto const& uv = u.values();
    auto const& vv = v.values();
    auto& out = w.values();
    for (std::size_t i = 0; i < uv.size(); ++i)
    {
        if (uv[i] > 0)
            out[i] = uv[i] / vv[i];
    }
    return w;
}

//! v restricted to the support of u; rejects v <= 0 there
GridFunction restrict_to_support(GridFunction const& u,
                                 GridFunction v,
                                 char const* what)
{
    auto const& uv = u.values();
    auto& vv = v.values();
    for (std::size_t i = 0; i < uv.size(); ++i)
    {
        if (uv[i] > 0)
        {
            if (!(vv[i] > 0) || !std::isfinite(vv[i]))
            {
                std::ostringstream os;
                os << what << " vanishes on the support of u at cell " << i
                   << "; the quotient factor is undefined";
                throw InputError(os.str());
            }
        }
        else
        {
            vv[i] = 0;
        }
    }
    return v;
}

double max_ratio(GridFunction const& num, GridFunction const& den)
{
    double m = 0;
    for (std::size_t i = 0; i < num.values().size(); ++i)
    {
        double a = num.values()[i];
        double b = den.values()[i];
        if (a > 0)
            m = std::max(m, b > 0 ? a / b : HUGE_VAL);
    }
    return m;
}

double max_ratio(BoundaryFunction const& num, BoundaryFunction const& den)
{
    double m = 0;
    for (std::size_t i = 0; i < num.size(); ++i)
    {
        if (num[i] > 0)
            m = std::max(m, den[i] > 0 ? num[i] / den[i] : HUGE_VAL);
    }
    return m;
}

NormSpec make_spec(NormSpec const& base,
                   Exponent p,
                   Exponent q,
                   std::optional<Exponent> r,
                   Rational beta)
{
    NormSpec s{base};
    s.p = p;
    s.q = q;
    s.r = r;
    s.beta = beta;
    return s;
}

Exponent require_average(NormSpec const& s0)
{
    if (!s0.r)
    {
        throw InputError("factorization source must carry a Whitney "
                         "average exponent r0");
    }
    return *s0.r;
}

void finish(Factorization& result, GridFunction const& u, NormSpec const& s0)
{
    result.norms.clear();
    for (std::size_t i = 0; i < result.factors.size(); ++i)
        result.norms.push_back(tent_norm(result.factors[i], result.targets[i]));
    result.source_norm = tent_norm(u, s0);
    GridFunction prod = result.product();
    double err = 0;
    for (std::size_t i = 0; i < prod.values().size(); ++i)
        err = std::max(err, std::fabs(prod.values()[i] - u.values()[i]));
    result.reconstruction_error = err;
}

//! Weight the first factor back by t^{beta}
void unweight_first(Factorization& result, Rational beta)
{
    if (!beta.is_zero())
        result.factors[0] = result.factors[0].weighted(-beta.to_double());
}

Factorization f1_unweighted(GridFunction const& u, NormSpec const& s0)
{
    Exponent const r0 = require_average(s0);
    auto const derived = derive_params(s0.whitney);
    BoxParams const box = s0.whitney.box();

    GridFunction v = restrict_to_support(
        u, whitney_average(u, r0, derived.star), "W*_r0(u)");
    GridFunction w = quotient_on_support(u, v);

    Factorization result;
    result.construction = "F1";
    result.factors = {v, w};
    result.targets
        = {make_spec(s0, s0.p, s0.q, Exponent::infinity(), s0.beta),
           make_spec(s0,
                     Exponent::infinity(),
                     Exponent::infinity(),
                     r0,
                     Rational{0})};

    // Pointwise bounds behind the two norm estimates
    result.extras.emplace_back(
        "max W*_inf(v)/W_r0(u)",
        max_ratio(whitney_average(v, Exponent::infinity(), derived.star),
                  whitney_average(u, r0, box)));
    result.extras.emplace_back(
        "max W**_r0(w)",
        whitney_average(w, r0, derived.doubleStar).max_abs());
    CoveringPlan plan{box, derived.doubleStar, u.spec().dim()};
    result.extras.emplace_back("covering count N",
                               static_cast<double>(plan.count()));
    return result;
}

Factorization f2_unweighted(GridFunction const& u,
                            NormSpec const& s0,
                            std::optional<Rational> ptilde)
{
    Exponent const r0 = require_average(s0);
    GridSpec const& spec = u.spec();
    Factorization result;
    result.construction = "F2";

    if (s0.p.is_infinite())
    {
        result.factors = {u.support(), u};
        result.targets
            = {make_spec(s0,
                         Exponent::infinity(),
                         Exponent::infinity(),
                         Exponent::infinity(),
                         s0.beta),
               make_spec(s0, Exponent::infinity(), s0.q, r0, Rational{0})};
        return result;
    }
    if (s0.q.is_infinite())
    {
        result = f1_unweighted(u, s0);
        result.construction = "F2";
        return result;
    }

    Rational const p0 = Rational{1} / s0.p.reciprocal();
    Rational const pt = ptilde.value_or(p0 / Rational{2});
    if (!pt.is_positive() || !(pt < p0))
        throw InputError("F2 needs 0 < ptilde < p0");

    BoundaryFunction utilde = conical_A(
        whitney_average(u, r0, s0.whitney.box()), s0.q, s0.aperture);
    for (std::size_t b = 0; b < utilde.size(); ++b)
    {
        if (!(utilde[b] > 0))
        {
            throw InputError("A_q0(W_r0 u) vanishes at boundary point "
                             + spec.boundary_point(b).to_string()
                             + "; F2 needs it positive everywhere");
        }
    }
    double const ptv = pt.to_double();
    BoundaryFunction powered(utilde.size());
    for (std::size_t b = 0; b < utilde.size(); ++b)
        powered[b] = std::pow(utilde[b], ptv);

    GridFunction mean = ball_average_field(spec, powered);
    GridFunction v = restrict_to_support(
        u,
        mean.map([ptv](double x) { return std::pow(x, 1 / ptv); }),
        "P_0[utilde^ptilde]");
    GridFunction w = quotient_on_support(u, v);

    result.factors = {v, w};
    result.targets
        = {make_spec(s0,
                     s0.p,
                     Exponent::infinity(),
                     Exponent::infinity(),
                     s0.beta),
           make_spec(s0, Exponent::infinity(), s0.q, r0, Rational{0})};

    // Maximal comparison N(W_inf v) <= M(utilde^ptilde)^{1/ptilde}
    BoundaryFunction nv = nontangential_N(
        whitney_average(v, Exponent::infinity(), s0.whitney.box()),
        s0.aperture);
    BoundaryFunction m = hl_maximal(spec, powered);
    for (double& x : m)
        x = std::pow(x, 1 / ptv);
    result.extras.emplace_back("max N(W_inf v)/M(utilde^pt)^(1/pt)",
                               max_ratio(nv, m));
    result.extras.emplace_back("ptilde", ptv);
    return result;
}

Factorization f3_unweighted(GridFunction const& u,
                            NormSpec const& s0,
                            std::optional<Rational> ptilde)
{
    Factorization first = f1_unweighted(u, s0);
    NormSpec s_v = first.targets[0];
    s_v.beta = Rational{0};
    Factorization second = f2_unweighted(first.factors[0], s_v, ptilde);

    Factorization result;
    result.construction = "F3";
    result.factors = {second.factors[0], second.factors[1], first.factors[1]};
    result.targets
        = {make_spec(s0,
                     s0.p,
                     Exponent::infinity(),
                     Exponent::infinity(),
                     s0.beta),
           make_spec(s0,
                     Exponent::infinity(),
                     s0.q,
                     Exponent::infinity(),
                     Rational{0}),
           first.targets[1]};
    result.extras = first.extras;
    result.extras.insert(
        result.extras.end(), second.extras.begin(), second.extras.end());
    return result;
}

//! a^theta on the support of a (0 outside, 1 on support when theta = 0)
GridFunction support_power(GridFunction const& a, Rational theta)
{
    double const th = theta.to_double();
    bool const identity = theta == Rational{1};
    return a.map([th, identity](double x) {
        if (x == 0)
            return 0.0;
        return identity ? x : std::pow(x, th);
    });
}
}  // namespace

//---------------------------------------------------------------------------//
// FACTORIZATION RECORD
//---------------------------------------------------------------------------//
double Factorization::norm_product() const
{
    double p = 1;
    for (double n : norms)
        p *= n;
    return p;
}

double Factorization::constant() const
{
    if (source_norm == 0)
        return 0;
    return this->norm_product() / source_norm;
}

GridFunction Factorization::product() const
{
    if (factors.empty())
        throw InputError("factorization has no factors");
    GridFunction p = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i)
        p = p * factors[i];
    return p;
}

//---------------------------------------------------------------------------//
// HOLDER TRIPLET
//---------------------------------------------------------------------------//
HolderTriplet::HolderTriplet(Exponent e1, Exponent e2, Exponent e0)
    : e1_{e1}, e2_{e2}, e0_{e0}
{
    if (!holds(e1, e2, e0))
    {
        throw InputError("Hölder relation 1/" + e0.to_string() + " = 1/"
                         + e1.to_string() + " + 1/" + e2.to_string()
                         + " fails");
    }
}

bool HolderTriplet::holds(Exponent e1, Exponent e2, Exponent e0)
{
    return e0.reciprocal() == e1.reciprocal() + e2.reciprocal();
}

Rational HolderTriplet::first_share() const
{
    if (e0_.is_infinite())
        return Rational{1};
    return e1_.reciprocal() / e0_.reciprocal();
}

void check_holder_relation(NormSpec const& s0,
                           NormSpec const& s1,
                           NormSpec const& s2)
{
    auto fail = [](std::string const& coord, std::string const& detail) {
        throw InputError("Hölder relation fails in " + coord + ": "
                         + detail);
    };
    if (!HolderTriplet::holds(s1.p, s2.p, s0.p))
        fail("p", s0.p.to_string() + " vs (" + s1.p.to_string() + ","
                      + s2.p.to_string() + ")");
    if (!HolderTriplet::holds(s1.q, s2.q, s0.q))
        fail("q", s0.q.to_string() + " vs (" + s1.q.to_string() + ","
                      + s2.q.to_string() + ")");
    if (!s0.r || !s1.r || !s2.r)
        fail("r", "every space needs a Whitney average exponent");
    if (!HolderTriplet::holds(*s1.r, *s2.r, *s0.r))
        fail("r", s0.r->to_string() + " vs (" + s1.r->to_string() + ","
                      + s2.r->to_string() + ")");
    if (!(s0.beta == s1.beta + s2.beta))
        fail("beta", s0.beta.to_string() + " != " + s1.beta.to_string()
                         + " + " + s2.beta.to_string());
}

//---------------------------------------------------------------------------//
// ENDPOINT FACTORIZATIONS
//---------------------------------------------------------------------------//
Factorization factorize_F1(GridFunction const& u, NormSpec const& s0)
{
    require_nonnegative(u);
    GridFunction uw = u.weighted(s0.beta.to_double());
    Factorization result = f1_unweighted(uw, s0);
    unweight_first(result, s0.beta);
    finish(result, u, s0);
    return result;
}

Factorization factorize_F2(GridFunction const& u,
                           NormSpec const& s0,
                           std::optional<Rational> ptilde)
{
    require_nonnegative(u);
    GridFunction uw = u.weighted(s0.beta.to_double());
    Factorization result = f2_unweighted(uw, s0, ptilde);
    unweight_first(result, s0.beta);
    finish(result, u, s0);
    return result;
}

Factorization factorize_F3(GridFunction const& u,
                           NormSpec const& s0,
                           std::optional<Rational> ptilde)
{
    require_nonnegative(u);
    GridFunction uw = u.weighted(s0.beta.to_double());
    Factorization result = f3_unweighted(uw, s0, ptilde);
    unweight_first(result, s0.beta);
    finish(result, u, s0);
    return result;
}

std::pair<GridFunction, GridFunction>
power_split(GridFunction const& u, Rational theta)
{
    if (theta.is_negative() || Rational{1} < theta)
        throw InputError("power split needs theta in [0, 1]");
    require_nonnegative(u);
    return {support_power(u, Rational{1} - theta), support_power(u, theta)};
}

Factorization factorize_general(GridFunction const& u,
                                NormSpec const& s0,
                                NormSpec const& s1,
                                NormSpec const& s2,
                                std::optional<Rational> ptilde)
{
    check_holder_relation(s0, s1, s2);
    require_nonnegative(u);

    NormSpec base{s0};
    base.beta = Rational{0};
    GridFunction uw = u.weighted(s0.beta.to_double());
    Factorization extremal = f3_unweighted(uw, base, ptilde);

    // Extremal factors carry p, q and r respectively
    Rational const shares[3]
        = {HolderTriplet{s1.p, s2.p, s0.p}.first_share(),
           HolderTriplet{s1.q, s2.q, s0.q}.first_share(),
           HolderTriplet{*s1.r, *s2.r, *s0.r}.first_share()};

    GridFunction f1 = u.support();
    GridFunction f2 = u.support();
    for (int i = 0; i < 3; ++i)
    {
        auto [rest, part] = power_split(extremal.factors[i], shares[i]);
        f1 = f1 * part;
        f2 = f2 * rest;
    }
    f1 = f1.weighted(-s1.beta.to_double());
    f2 = f2.weighted(-s2.beta.to_double());

    Factorization result;
    result.construction = "general";
    result.factors = {f1, f2};
    result.targets = {s1, s2};
    result.extras = extremal.extras;
    finish(result, u, s0);
    return result;
}

//---------------------------------------------------------------------------//
// COVERING
//---------------------------------------------------------------------------//
CoveringPlan::CoveringPlan(BoxParams large, BoxParams small, int dim)
    : large_{large}, small_{small}, dim_{dim}
{
    large.validate();
    small.validate();
    if (dim != 1 && dim != 2)
        throw InputError("covering dimension must be 1 or 2");

    // Height intervals (s/a, a s) with s stepping by a from t a / A
    double const a = small.a2;
    double s = a / large.a2;
    while (true)
    {
        height_factors_.push_back(s);
        int half = static_cast<int>(std::ceil(large.a1 / (small.a1 * s)));
        half_counts_.push_back(half);
        std::size_t per_axis = 2 * static_cast<std::size_t>(half) + 1;
        count_ += dim == 1 ? per_axis : per_axis * per_axis;
        if (s * a >= large.a2)
            break;
        s *= a;
    }
}

std::vector<Point> CoveringPlan::centers(Point const& p) const
{
    std::vector<Point> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < height_factors_.size(); ++i)
    {
        double const s = height_factors_[i] * p.t;
        double const spacing = small_.a1 * s;
        int const h = half_counts_[i];
        for (int jz = (dim_ == 2 ? -h : 0); jz <= (dim_ == 2 ? h : 0); ++jz)
        {
            for (int jy = -h; jy <= h; ++jy)
            {
                BoundaryPoint y = dim_ == 1
                                      ? p.y.shifted(jy * spacing)
                                      : p.y.shifted(jy * spacing, jz * spacing);
                out.push_back({y, s});
            }
        }
    }
    return out;
}

//---------------------------------------------------------------------------//
// MULTIPLICATION
//---------------------------------------------------------------------------//
CheckResult check_box_holder(GridFunction const& f,
                             GridFunction const& g,
                             GridFunction const& h,
                             Exponent r,
                             BoxParams const& box)
{
    GridFunction lhs = whitney_average(f * g * h, r, box);
    GridFunction rhs = whitney_average(f, Exponent::infinity(), box)
                       * whitney_average(g, Exponent::infinity(), box)
                       * whitney_average(h, r, box);
    CheckResult result;
    result.name = "box Hölder r=" + r.to_string();
    result.anchor = "endpoint multiplication M2";
    result.tolerance = 1e-12;
    double worst = 0;
    std::size_t worst_i = 0;
    for (std::size_t i = 0; i < lhs.values().size(); ++i)
    {
        double a = lhs.values()[i];
        double b = rhs.values()[i];
        if (a == 0)
            continue;
        double excess = b > 0 ? a / b - 1 : HUGE_VAL;
        if (excess > worst)
        {
            worst = excess;
            worst_i = i;
        }
    }
    result.constant = 1 + worst;
    result.passed = worst <= result.tolerance;
    if (!result.passed)
    {
        std::ostringstream os;
        os.precision(17);
        os << "cell " << worst_i << ": W_r(fgh)=" << lhs.values()[worst_i]
           << " > " << rhs.values()[worst_i];
        result.witness = os.str();
    }
    return result;
}

double m2_ratio(GridFunction const& f,
                GridFunction const& g,
                GridFunction const& h,
                NormSpec const& s0)
{
    Exponent const r0 = require_average(s0);
    Exponent const inf = Exponent::infinity();
    double num = tent_norm(f * g * h, s0);
    double den = tent_norm(f, make_spec(s0, s0.p, inf, inf, Rational{0}))
                 * tent_norm(g, make_spec(s0, inf, s0.q, inf, Rational{0}))
                 * tent_norm(h, make_spec(s0, inf, inf, r0, Rational{0}));
    if (num == 0)
        return 0;
    return den > 0 ? num / den : HUGE_VAL;
}

double m1_ratio(GridFunction const& f,
                GridFunction const& g,
                Exponent p,
                Exponent q,
                double aperture)
{
    Exponent const inf = Exponent::infinity();
    double num = classical_norm((f * g).abs(), p, q, aperture);
    double den = classical_norm(f.abs(), p, inf, aperture)
                 * classical_norm(g.abs(), inf, q, aperture);
    if (num == 0)
        return 0;
    return den > 0 ? num / den : HUGE_VAL;
}

double general_ratio(GridFunction const& f1,
                     GridFunction const& f2,
                     NormSpec const& s0,
                     NormSpec const& s1,
                     NormSpec const& s2)
{
    check_holder_relation(s0, s1, s2);
    double num = tent_norm(f1 * f2, s0);
    double den = tent_norm(f1, s1) * tent_norm(f2, s2);
    if (num == 0)
        return 0;
    return den > 0 ? num / den : HUGE_VAL;
}

//---------------------------------------------------------------------------//
}  // namespace tent
