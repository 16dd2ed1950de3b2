//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file Suites.cc
//---------------------------------------------------------------------------//
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

#include "tent/Factorization.hh"
#include "tent/Harness.hh"
#include "tent/Measures.hh"
#include "tent/Random.hh"

namespace tent
{
namespace
{
double const not_a_tolerance = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

CheckResult make_check(std::string name,
                       std::string anchor,
                       bool passed,
                       double constant,
                       double tolerance,
                       std::string witness = {})
{
    CheckResult r;
    r.name = std::move(name);
    r.anchor = std::move(anchor);
    r.passed = passed;
    r.constant = constant;
    r.tolerance = tolerance;
    if (!passed)
        r.witness = std::move(witness);
    return r;
}

// Constant reported without a threshold; it only has to be finite
CheckResult reported(std::string name, std::string anchor, double constant)
{
    bool ok = std::isfinite(constant);
    return make_check(std::move(name),
                      std::move(anchor),
                      ok,
                      constant,
                      not_a_tolerance,
                      "constant is " + fmt(constant));
}

double relative_change(double base, double fine)
{
    if (!(std::isfinite(base) && std::isfinite(fine)) || base == 0)
        return HUGE_VAL;
    return std::fabs(fine / base - 1);
}

// Relative change of a constant under one refinement
CheckResult stability(std::string name,
                      std::string anchor,
                      double base,
                      double fine,
                      double tol)
{
    double change = relative_change(base, fine);
    return make_check(std::move(name),
                      std::move(anchor),
                      change <= tol,
                      change,
                      tol,
                      "base " + fmt(base) + ", refined " + fmt(fine));
}

//! Records with the wall time since the previous record
class Recorder
{
  public:
    using clock = std::chrono::steady_clock;

    Recorder() : mark_{clock::now()} {}

    void add(CheckResult r)
    {
        auto now = clock::now();
        list_.push_back(std::move(r));
        seconds_.push_back(std::chrono::duration<double>(now - mark_).count());
        mark_ = now;
    }

    CheckList take(std::vector<double>* seconds)
    {
        if (seconds)
            *seconds = seconds_;
        return std::move(list_);
    }

  private:
    CheckList list_;
    std::vector<double> seconds_;
    clock::time_point mark_;
};

//! Grid pair, geometry and corpus shape shared by the suites
struct Context
{
    RunConfig const& cfg;
    GridSpec base;
    GridSpec fine;
    WhitneyParams whitney;
    DerivedParams derived;
    CorpusShape shape;

    explicit Context(RunConfig const& c)
        : cfg{c}
        , base{c.grid()}
        , fine{base.refined()}
        , whitney{c.whitney()}
        , derived{derive_params(whitney)}
        , shape{CorpusShape::for_grid(base, whitney.box())}
    {
    }

    GridSpec const& grid(bool refined) const { return refined ? fine : base; }

    NormSpec with_geometry(NormSpec s) const
    {
        s.whitney = whitney;
        s.aperture = cfg.aperture;
        return s;
    }

    std::uint64_t seed_for(std::uint64_t stream, std::uint64_t i) const
    {
        return cfg.seed * 1000003ULL + stream * 7919ULL + i;
    }

    // i-th member of a corpus cycling through the given generators
    GridFunction corpus(bool refined,
                        std::vector<Generator> const& gens,
                        std::uint64_t stream,
                        std::size_t i) const
    {
        return random_function(
            grid(refined), gens[i % gens.size()], seed_for(stream, i), shape);
    }
};

std::string spec_label(NormSpec const& s)
{
    return "(" + s.to_string() + ")";
}

//---------------------------------------------------------------------------//
// GEOMETRY
//---------------------------------------------------------------------------//
void geometry_suite(Context const& ctx, Recorder& rec)
{
    auto const& cfg = ctx.cfg;
    for (int dim : {1, 2})
    {
        for (auto& r : check_inclusion_suite(
                 ctx.whitney, cfg.trials, cfg.seed + dim, dim))
        {
            r.name += " n=" + std::to_string(dim);
            rec.add(std::move(r));
        }
    }

    // Random consistent parameter pairs
    {
        Random rng = Random::stream(cfg.seed, 11);
        int const pairs = 1000;
        int bad = 0;
        std::string witness;
        for (int i = 0; i < pairs; ++i)
        {
            double a2 = rng.log_uniform(1.0001, 16);
            double a1 = 0;
            while (!(a1 > 0))
                a1 = rng.uniform() / a2;
            WhitneyParams w{a1, a2};
            if (!derived_chain_holds(derive_params(w), w))
            {
                if (bad++ == 0)
                    witness = "alpha1=" + fmt(a1) + " alpha2=" + fmt(a2);
            }
        }
        rec.add(make_check("derived parameter chain, 1000 random pairs",
                           "derived parameter chain",
                           bad == 0,
                           bad,
                           0,
                           witness));
    }

    // Lattice covering of W boxes by the small boxes of the F1 estimate
    {
        BoxParams const large = ctx.whitney.box();
        BoxParams const small = ctx.derived.doubleStar;
        for (int dim : {1, 2})
        {
            CoveringPlan plan{large, small, dim};
            rec.add(reported("covering count N n=" + std::to_string(dim),
                             "covering of Whitney boxes",
                             static_cast<double>(plan.count())));
            Random rng = Random::stream(cfg.seed, 12 + dim);
            std::int64_t const samples
                = std::max<std::int64_t>(1000, cfg.trials / 10);
            std::int64_t bad = 0;
            std::string witness;
            for (std::int64_t i = 0; i < samples; ++i)
            {
                auto bp = [&] {
                    return dim == 1 ? BoundaryPoint{rng.uniform()}
                                    : BoundaryPoint{rng.uniform(),
                                                    rng.uniform()};
                };
                Point p{bp(), rng.log_uniform(1e-3, 0.05)};
                Point q;
                do
                {
                    double r = large.a1 * p.t;
                    q.y = dim == 1 ? p.y.shifted(rng.uniform(-r, r))
                                   : p.y.shifted(rng.uniform(-r, r),
                                                 rng.uniform(-r, r));
                    q.t = p.t * std::pow(large.a2, rng.uniform(-1, 1));
                } while (!whitney_box_contains(p, q, large));
                bool covered = false;
                for (auto const& c : plan.centers(p))
                {
                    if (whitney_box_contains(c, q, small))
                    {
                        covered = true;
                        break;
                    }
                }
                if (!covered && bad++ == 0)
                    witness = "box " + p.to_string() + " point "
                              + q.to_string();
            }
            rec.add(make_check("covering by small boxes n="
                                   + std::to_string(dim),
                               "covering of Whitney boxes",
                               bad == 0,
                               static_cast<double>(bad),
                               0,
                               witness));
        }
    }
}

//---------------------------------------------------------------------------//
// FUNCTIONALS
//---------------------------------------------------------------------------//
void functionals_suite(Context const& ctx, Recorder& rec)
{
    auto const& cfg = ctx.cfg;
    double const tol = cfg.tolerance("functionals");

    // Closed-form anchor on the aligned slab grid
    {
        NormSpec s = NormSpec::parse("2,2,2,0");
        s.whitney = ctx.whitney;
        GridSpec g = slab_fixture_grid(cfg.ny);
        double exact = slab_closed_form();
        for (int level = 0; level < 2; ++level)
        {
            double value = tent_norm(slab_function(g), s);
            double err = std::fabs(value / exact - 1);
            double bound = level == 0 ? tol : tol / 2;
            rec.add(make_check(level == 0 ? "slab norm, default grid"
                                          : "slab norm, refined grid",
                               "slab closed form",
                               err <= bound,
                               err,
                               bound,
                               "norm " + fmt(value) + " vs " + fmt(exact)));
            g = g.refined();
        }
    }

    auto const fixtures = fixture_set(ctx.base, ctx.shape, cfg.seed);
    Random rng = Random::stream(cfg.seed, 21);

    for (NormSpec const& s : cfg.norm_specs())
    {
        std::string const label = spec_label(s);
        std::vector<double> norms;
        for (auto const& f : fixtures)
            norms.push_back(tent_norm(f, s));

        // Homogeneity with negative and small scalars
        double worst = 0;
        for (std::size_t i = 0; i < fixtures.size(); ++i)
        {
            for (double lambda : {-3.7, 0.3})
            {
                double lhs = tent_norm(lambda * fixtures[i], s);
                double rhs = std::fabs(lambda) * norms[i];
                double err = rhs > 0 ? std::fabs(lhs - rhs) / rhs
                                     : std::fabs(lhs);
                worst = std::max(worst, err);
            }
        }
        rec.add(make_check("homogeneity " + label,
                           "homogeneity of the quasi-norm",
                           worst <= 1e-12,
                           worst,
                           1e-12));

        // Pointwise smaller functions have smaller norms, without tolerance
        int bad = 0;
        std::string witness;
        for (std::size_t i = 0; i < fixtures.size(); ++i)
        {
            GridFunction shrink{ctx.base};
            for (auto& v : shrink.values())
                v = rng.uniform();
            double smaller = tent_norm(shrink * fixtures[i], s);
            if (smaller > norms[i])
            {
                if (bad++ == 0)
                    witness = "fixture " + std::to_string(i) + ": "
                              + fmt(smaller) + " > " + fmt(norms[i]);
            }
        }
        rec.add(make_check("lattice monotonicity " + label,
                           "lattice property",
                           bad == 0,
                           bad,
                           0,
                           witness));

        for (Rational theta : {Rational{1, 2}, Rational{1, 3}})
        {
            double worst_err = 0;
            bool ok = true;
            std::string wit;
            for (std::size_t i = 0; i < fixtures.size(); ++i)
            {
                auto r = power_identity_check(fixtures[i], s, theta);
                worst_err = std::max(worst_err, r.constant);
                if (!r.passed && ok)
                {
                    ok = false;
                    wit = "fixture " + std::to_string(i) + ": " + r.witness;
                }
            }
            rec.add(make_check("power identity " + label + " theta="
                                   + theta.to_string(),
                               "power identity of the weighted scale",
                               ok,
                               worst_err,
                               1e-10,
                               wit));
        }

        // Wider cones: the norm ratio stays bounded
        {
            NormSpec wide = s;
            wide.aperture = 2 * s.aperture;
            double lo = HUGE_VAL, hi = 0;
            for (std::size_t i = 0; i < fixtures.size(); ++i)
            {
                if (norms[i] == 0)
                    continue;
                double ratio = tent_norm(fixtures[i], wide) / norms[i];
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
            rec.add(reported("aperture 2x norm ratio, max " + label,
                             "change of apertures",
                             hi));
            rec.add(reported("aperture 2x norm ratio, min " + label,
                             "change of apertures",
                             lo));
        }

        // Smaller Whitney pair (alpha1/2, sqrt alpha2) against the configured
        if (s.has_average())
        {
            NormSpec other = s;
            other.whitney = WhitneyParams{ctx.whitney.alpha1() / 2,
                                          std::sqrt(ctx.whitney.alpha2())};
            double lo = HUGE_VAL, hi = 0;
            for (std::size_t i = 0; i < fixtures.size(); ++i)
            {
                double den = tent_norm(fixtures[i], other);
                if (den == 0)
                    continue;
                double ratio = norms[i] / den;
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
            rec.add(reported("Whitney pair change C " + label,
                             "change of Whitney parameters",
                             lo));
            rec.add(reported("Whitney pair change C' " + label,
                             "change of Whitney parameters",
                             hi));
        }
    }

    // Pointwise ordering of the functionals in the aperture
    {
        double const a = cfg.aperture;
        std::int64_t bad_a = 0, bad_n = 0, bad_c = 0;
        for (auto const& f : fixtures)
        {
            auto a1 = conical_A(f, Exponent{2}, a);
            auto a2 = conical_A(f, Exponent{2}, 2 * a);
            auto n1 = nontangential_N(f, a);
            auto n2 = nontangential_N(f, 2 * a);
            auto c1 = carleson_C(f, Exponent{2}, a);
            auto c2 = carleson_C(f, Exponent{2}, 2 * a);
            for (std::size_t b = 0; b < a1.size(); ++b)
            {
                bad_a += a2[b] < a1[b];
                bad_n += n2[b] < n1[b];
                bad_c += c2[b] > c1[b];
            }
        }
        rec.add(make_check("A_2 grows with the aperture",
                           "change of apertures",
                           bad_a == 0,
                           static_cast<double>(bad_a),
                           0));
        rec.add(make_check("N grows with the aperture",
                           "change of apertures",
                           bad_n == 0,
                           static_cast<double>(bad_n),
                           0));
        rec.add(make_check("C_2 shrinks with the aperture",
                           "change of apertures",
                           bad_c == 0,
                           static_cast<double>(bad_c),
                           0));
    }

    // Fast all-point functionals against direct cell-by-cell quadrature
    {
        double worst = 0;
        for (std::size_t i = 2; i < 5 && i < fixtures.size(); ++i)
        {
            auto const& f = fixtures[i];
            for (Exponent q : {Exponent{1}, Exponent{2}})
            {
                auto fast = conical_A(f, q, cfg.aperture);
                for (std::size_t b = 0; b < fast.size(); b += 17)
                {
                    double direct = conical_A(
                        f, q, cfg.aperture, ctx.base.boundary_point(b));
                    double scale = std::max(std::fabs(direct), 1e-300);
                    worst = std::max(worst,
                                     std::fabs(fast[b] - direct) / scale);
                }
            }
        }
        rec.add(make_check("prefix sums vs direct quadrature",
                           "plumbing",
                           worst <= 1e-12,
                           worst,
                           1e-12));
    }
}

//---------------------------------------------------------------------------//
// COINCIDENCE
//---------------------------------------------------------------------------//
struct Sandwich
{
    double k1{HUGE_VAL};  //!< inf of middle / inner
    double k2{0};  //!< sup of middle / outer

    void update(BoundaryFunction const& inner,
                BoundaryFunction const& middle,
                BoundaryFunction const& outer)
    {
        for (std::size_t b = 0; b < middle.size(); ++b)
        {
            if (inner[b] > 0)
                k1 = std::min(k1, middle[b] / inner[b]);
            if (middle[b] > 0)
                k2 = std::max(k2, outer[b] > 0 ? middle[b] / outer[b]
                                               : HUGE_VAL);
        }
    }

    double width() const { return k2 / k1; }
};

void coincidence_suite(Context const& ctx, Recorder& rec)
{
    auto const& cfg = ctx.cfg;
    double const tol = cfg.tolerance("coincidence");
    BoxParams const box = ctx.whitney.box();
    double const a0 = ctx.derived.alpha0;
    double const aC = ctx.derived.alphaC;
    double const aT = ctx.derived.alphaT;
    std::vector<Generator> const gens{Generator::smooth_bump_mix,
                                      Generator::lognormal_noise,
                                      Generator::tent_indicator};
    std::size_t const count = static_cast<std::size_t>(cfg.functions);
    std::size_t const carleson_count = std::min<std::size_t>(count, 20);

    // [functional][grid]
    enum
    {
        A1,
        A2,
        N,
        C1,
        C2,
        kinds
    };
    char const* const names[kinds]
        = {"A_1", "A_2", "N", "C_1 (first 20)", "C_2 (first 20)"};
    Sandwich s[kinds][2];

    for (int refined = 0; refined < 2; ++refined)
    {
        for (std::size_t i = 0; i < count; ++i)
        {
            GridFunction f = ctx.corpus(refined, gens, 31, i);
            for (int qi = 0; qi < 2; ++qi)
            {
                Exponent q{qi + 1};
                GridFunction wf = whitney_average(f, q, box);
                s[A1 + qi][refined].update(conical_A(f, q, a0),
                                           conical_A(wf, q, 1),
                                           conical_A(f, q, aC));
                if (i < carleson_count)
                {
                    s[C1 + qi][refined].update(carleson_C(f, q, aT),
                                               carleson_C(wf, q, 1),
                                               carleson_C(f, q, a0));
                }
            }
            GridFunction wf = whitney_average(f, Exponent::infinity(), box);
            s[N][refined].update(nontangential_N(f, a0),
                                 nontangential_N(wf, 1),
                                 nontangential_N(f, aC));
        }
    }

    for (int k = 0; k < kinds; ++k)
    {
        std::string const n = names[k];
        Sandwich const& b = s[k][0];
        Sandwich const& r = s[k][1];
        bool finite = b.k1 > 0 && std::isfinite(b.k1) && std::isfinite(b.k2)
                      && r.k1 > 0 && std::isfinite(r.k1)
                      && std::isfinite(r.k2);
        rec.add(make_check(n + " sandwich K1",
                           "coincidence sandwich",
                           finite,
                           b.k1,
                           not_a_tolerance,
                           "K1 base " + fmt(b.k1) + ", refined "
                               + fmt(r.k1)));
        rec.add(make_check(n + " sandwich K2",
                           "coincidence sandwich",
                           finite,
                           b.k2,
                           not_a_tolerance,
                           "K2 base " + fmt(b.k2) + ", refined "
                               + fmt(r.k2)));
        rec.add(reported(n + " sandwich K2/K1, refined grid",
                         "coincidence sandwich",
                         r.width()));
        rec.add(stability(n + " sandwich K2/K1 refinement change",
                          "coincidence sandwich",
                          b.width(),
                          r.width(),
                          tol));
    }
}

//---------------------------------------------------------------------------//
// FACTORIZATION
//---------------------------------------------------------------------------//
struct Construction
{
    std::string name;
    std::string anchor;
    std::function<Factorization(GridFunction const&)> build;
};

void factorization_suite(Context const& ctx, Recorder& rec)
{
    auto const& cfg = ctx.cfg;
    double const tol = cfg.tolerance("factorization");
    NormSpec const s0 = ctx.with_geometry(cfg.factor_spec);
    NormSpec const s1 = ctx.with_geometry(cfg.split_first);
    NormSpec const s2 = ctx.with_geometry(cfg.split_second);

    std::vector<Construction> const constructions{
        {"F1",
         "endpoint factorization F1",
         [&](GridFunction const& u) { return factorize_F1(u, s0); }},
        {"F2",
         "endpoint factorization F2",
         [&](GridFunction const& u) { return factorize_F2(u, s0); }},
        {"F3",
         "endpoint factorization F3",
         [&](GridFunction const& u) { return factorize_F3(u, s0); }},
        {"general",
         "general factorization",
         [&](GridFunction const& u) {
             return factorize_general(u, s0, s1, s2);
         }}};

    // Slab first, then smooth and rough functions that are positive in the
    // band (F2 needs A_q(W_r u) > 0 everywhere)
    std::size_t const count = static_cast<std::size_t>(cfg.factor_corpus);
    auto element = [&](bool refined, std::size_t i) {
        if (i == 0)
            return random_function(
                ctx.grid(refined), Generator::slab, cfg.seed, ctx.shape);
        return ctx.corpus(refined,
                          {Generator::smooth_bump_mix,
                           Generator::lognormal_noise},
                          41,
                          i);
    };
    int const shift = ctx.base.ny() / 3;

    for (auto const& c : constructions)
    {
        double worst_recon = 0;
        double worst_shift = 0;
        double worst_element_change = 0;
        double max_base = 0, max_fine = 0;
        std::vector<std::pair<std::string, double>> extras;
        std::string recon_witness, shift_witness;

        for (std::size_t i = 0; i < count; ++i)
        {
            GridFunction u = element(false, i);
            Factorization fb = c.build(u);
            double recon = fb.reconstruction_error / u.max_abs();
            if (recon > worst_recon)
            {
                worst_recon = recon;
                recon_witness = "element " + std::to_string(i);
            }
            for (auto const& [name, value] : fb.extras)
            {
                auto it = std::find_if(
                    extras.begin(), extras.end(), [&](auto const& e) {
                        return e.first == name;
                    });
                if (it == extras.end())
                    extras.emplace_back(name, value);
                else
                    it->second = std::max(it->second, value);
            }

            int sz = ctx.base.dim() == 2 ? shift / 2 : 0;
            Factorization ft = c.build(u.translated(shift, sz));
            double dshift = std::fabs(ft.constant() / fb.constant() - 1);
            if (!(dshift <= worst_shift))
            {
                worst_shift = dshift;
                shift_witness = "element " + std::to_string(i) + ": "
                                + fmt(fb.constant()) + " vs "
                                + fmt(ft.constant());
            }

            Factorization ff = c.build(element(true, i));
            max_base = std::max(max_base, fb.constant());
            max_fine = std::max(max_fine, ff.constant());
            worst_element_change
                = std::max(worst_element_change,
                           relative_change(fb.constant(), ff.constant()));
        }

        rec.add(make_check(c.name + " reconstruction / max|u|",
                           c.anchor,
                           worst_recon <= 1e-12,
                           worst_recon,
                           1e-12,
                           recon_witness));
        rec.add(reported(c.name + " norm-product constant", c.anchor, max_base));
        rec.add(reported(c.name + " norm-product constant, refined grid",
                         c.anchor,
                         max_fine));
        rec.add(make_check(c.name + " translation invariance",
                           c.anchor,
                           worst_shift <= 1e-10,
                           worst_shift,
                           1e-10,
                           shift_witness));
        rec.add(stability(c.name + " constant refinement change",
                          c.anchor,
                          max_base,
                          max_fine,
                          tol));
        rec.add(make_check(c.name + " worst per-element refinement change",
                           c.anchor,
                           worst_element_change <= tol,
                           worst_element_change,
                           tol));
        for (auto const& [name, value] : extras)
            rec.add(reported(c.name + " " + name, c.anchor, value));
    }
}

//---------------------------------------------------------------------------//
// MULTIPLICATION
//---------------------------------------------------------------------------//
void multiplication_suite(Context const& ctx, Recorder& rec)
{
    auto const& cfg = ctx.cfg;
    double const tol = cfg.tolerance("multiplication");
    NormSpec const s0 = ctx.with_geometry(cfg.factor_spec);
    NormSpec const s1 = ctx.with_geometry(cfg.split_first);
    NormSpec const s2 = ctx.with_geometry(cfg.split_second);
    std::vector<Generator> const gens{Generator::smooth_bump_mix,
                                      Generator::lognormal_noise,
                                      Generator::tent_indicator};
    std::size_t const triples
        = static_cast<std::size_t>(std::max(1, cfg.pairs / 5));

    auto triple = [&](bool refined, std::size_t i) {
        return std::array<GridFunction, 3>{
            ctx.corpus(refined, gens, 51, 3 * i),
            ctx.corpus(refined, gens, 51, 3 * i + 1),
            ctx.corpus(refined, gens, 51, 3 * i + 2)};
    };

    // Pointwise Hölder chain on every Whitney box
    for (Exponent r : {Exponent{1}, Exponent{2}, Exponent::infinity()})
    {
        double worst = 0;
        bool ok = true;
        std::string witness;
        for (std::size_t i = 0; i < triples; ++i)
        {
            auto t = triple(false, i);
            auto res = check_box_holder(t[0], t[1], t[2], r, ctx.whitney.box());
            worst = std::max(worst, res.constant);
            if (!res.passed && ok)
            {
                ok = false;
                witness = "triple " + std::to_string(i) + ": " + res.witness;
            }
        }
        rec.add(make_check("box Hölder chain r=" + r.to_string(),
                           "endpoint multiplication M2",
                           ok,
                           worst,
                           1e-12,
                           witness));
    }

    double m2[2] = {0, 0}, m1[2] = {0, 0}, gen[2] = {0, 0};
    for (int refined = 0; refined < 2; ++refined)
    {
        for (std::size_t i = 0; i < triples; ++i)
        {
            auto t = triple(refined, i);
            m2[refined]
                = std::max(m2[refined], m2_ratio(t[0], t[1], t[2], s0));
            m1[refined] = std::max(
                m1[refined],
                m1_ratio(t[0], t[1], s0.p, s0.q, cfg.aperture));
            gen[refined] = std::max(gen[refined],
                                    general_ratio(t[0], t[1], s0, s1, s2));
        }
    }
    std::string const split = spec_label(s1) + " x " + spec_label(s2);
    rec.add(reported("M2 constant", "endpoint multiplication M2", m2[0]));
    rec.add(stability("M2 constant refinement change",
                      "endpoint multiplication M2",
                      m2[0],
                      m2[1],
                      tol));
    rec.add(reported("M1 constant", "endpoint multiplication M1", m1[0]));
    rec.add(stability("M1 constant refinement change",
                      "endpoint multiplication M1",
                      m1[0],
                      m1[1],
                      tol));
    rec.add(reported(
        "general constant " + split, "general multiplication", gen[0]));
    rec.add(stability("general constant refinement change " + split,
                      "general multiplication",
                      gen[0],
                      gen[1],
                      tol));

    // Scalar multiplier recovers its value
    {
        double c = 2.5;
        GridFunction w{ctx.base, c};
        double est = estimate_multiplier_norm(w, s0, s0, 4, cfg.seed);
        double err = std::fabs(est / c - 1);
        rec.add(make_check("constant multiplier norm",
                           "plumbing",
                           err <= 1e-12,
                           err,
                           1e-12,
                           "estimate " + fmt(est)));
    }

    // Probe lower bound against the Hölder-complementary norm of w
    {
        double worst = 0;
        for (std::size_t i = 0; i < std::min<std::size_t>(triples, 5); ++i)
        {
            GridFunction w = ctx.corpus(false, gens, 52, i);
            double lower = estimate_multiplier_norm(
                w, s1, s0, 8, ctx.seed_for(53, i));
            double upper = tent_norm(w, s2);
            if (upper > 0)
                worst = std::max(worst, lower / upper);
        }
        rec.add(reported("multiplier lower bound / ||w||_s2 " + split,
                         "multiplier identification",
                         worst));
    }
}

//---------------------------------------------------------------------------//
// MEASURES
//---------------------------------------------------------------------------//
void measures_suite(Context const& ctx, Recorder& rec)
{
    auto const& cfg = ctx.cfg;
    double const slack = cfg.tolerance("measures");
    if (ctx.base.dim() != 1)
    {
        rec.add(make_check("measures suite needs a line grid",
                           "plumbing",
                           false,
                           ctx.base.dim(),
                           1,
                           "dim = " + std::to_string(ctx.base.dim())));
        return;
    }
    GridSpec const& line = ctx.base;
    double const dy = line.dy();
    double const t_hi = std::min(0.125, line.t_max());
    double const t_lo = std::min(8 * dy, t_hi / 2);
    double const half = balayage_lemma_constant(1);

    // Single point mass at a boundary grid point
    {
        std::size_t b = line.boundary_size() * 2 / 5;
        double t0 = std::min(16 * dy, t_hi);
        DiscreteMeasure mu({Atom{Point{line.boundary_point(b), t0}, 0.7}});
        auto lemma = balayage_lemma(mu, line);
        double err = std::fabs(lemma.norm.value / half - 1);
        rec.add(make_check("point mass, n=1: relative distance to 1/2",
                           "balayage lemma",
                           err <= slack,
                           err,
                           slack,
                           "value " + fmt(lemma.norm.value)));
    }

    std::vector<DiscreteMeasure> measures;
    for (int i = 0; i < cfg.measures; ++i)
        measures.push_back(
            random_measure(1, 10, ctx.seed_for(61, i), t_lo, t_hi));

    {
        double worst = 0, worst_cert = 0, worst_mass = 0;
        std::string witness;
        for (std::size_t i = 0; i < measures.size(); ++i)
        {
            auto lemma = balayage_lemma(measures[i], line);
            if (lemma.norm.value > worst)
            {
                worst = lemma.norm.value;
                witness = "measure " + std::to_string(i);
            }
            worst_cert
                = std::max(worst_cert, lemma.norm.value / lemma.certificate());
            double mass = 2 * measures[i].total_mass();
            worst_mass = std::max(
                worst_mass,
                std::fabs(balayage_integral(measures[i]) - mass) / mass);
        }
        rec.add(make_check("random 10-atom measures, n=1",
                           "balayage lemma",
                           worst <= half + slack,
                           worst,
                           half + slack,
                           witness));
        rec.add(make_check("discrete Fubini certificate, n=1",
                           "balayage lemma",
                           worst_cert <= 1 + 1e-12,
                           worst_cert,
                           1 + 1e-12));
        rec.add(make_check("balayage mass identity",
                           "balayage mass identity",
                           worst_mass <= 1e-10,
                           worst_mass,
                           1e-10));
    }

    // Planar case: constant 1/pi
    {
        int const ny2 = 64;
        GridSpec plane{2, ny2, 2, line.t_min(), line.t_max()};
        double const inv_pi = balayage_lemma_constant(2);
        double t0 = std::min(8.0 / ny2, t_hi);
        DiscreteMeasure mu({Atom{
            Point{plane.boundary_point(plane.boundary_index(20, 37)), t0},
            1.0}});
        auto lemma = balayage_lemma(mu, plane);
        rec.add(reported("point mass, n=2 (continuum 1/pi)",
                         "balayage lemma",
                         lemma.norm.value));
        double worst = 0, worst_cert = 0;
        for (int i = 0; i < 10; ++i)
        {
            auto m = random_measure(
                2, 10, ctx.seed_for(62, i), 4.0 / ny2, t_hi);
            auto l = balayage_lemma(m, plane);
            worst = std::max(worst, l.norm.value);
            worst_cert = std::max(worst_cert, l.norm.value / l.certificate());
        }
        rec.add(make_check("discrete Fubini certificate, n=2",
                           "balayage lemma",
                           worst_cert <= 1 + 1e-12,
                           worst_cert,
                           1 + 1e-12));
        rec.add(make_check("random 10-atom measures, n=2",
                           "balayage lemma",
                           worst <= inv_pi + slack,
                           worst,
                           inv_pi + slack));
    }

    // Factorization of each random measure through the extension
    {
        double worst_recon = 0, boundary = 0, carleson = 0, maximal = 0;
        for (auto const& mu : measures)
        {
            auto fac = factorize_measure(mu, line);
            double min_mass = HUGE_VAL;
            for (auto const& a : mu.atoms())
                min_mass = std::min(min_mass, a.mass);
            worst_recon
                = std::max(worst_recon, fac.reconstruction_error / min_mass);
            boundary = std::max(boundary, fac.boundary_norm);
            carleson = std::max(carleson, fac.carleson_norm);
            maximal = std::max(maximal, fac.maximal_ratio);
        }
        rec.add(make_check("atomwise reconstruction",
                           "measure factorization",
                           worst_recon <= 1e-12,
                           worst_recon,
                           1e-12));
        rec.add(reported("||E^-1||_{T^1_inf}", "measure factorization", boundary));
        rec.add(reported("||E dmu||_C", "measure factorization", carleson));
        rec.add(reported("max N(E^-1) / M(balayage^p0)^(1/p0)",
                         "measure factorization",
                         maximal));
    }

    // Carleson measures integrate T^p_inf functions
    {
        std::vector<Generator> const gens{Generator::smooth_bump_mix,
                                          Generator::lognormal_noise,
                                          Generator::tent_indicator};
        Random rng = Random::stream(cfg.seed, 63);
        double worst = 0;
        for (std::size_t i = 0; i < 10; ++i)
        {
            GridFunction f = ctx.corpus(false, gens, 64, i);
            std::vector<std::pair<std::size_t, double>> cells;
            for (int a = 0; a < 10; ++a)
                cells.emplace_back(rng.below(ctx.base.size()),
                                   rng.uniform(0.1, 1));
            for (Exponent p : {Exponent{1}, Exponent{2}})
                worst = std::max(worst,
                                 carleson_inequality_ratio(f, p, cells));
        }
        rec.add(reported("Carleson inequality ratio",
                         "Carleson inequality",
                         worst));
    }
}

//---------------------------------------------------------------------------//
// DUALITY
//---------------------------------------------------------------------------//
void duality_suite(Context const& ctx, Recorder& rec)
{
    auto const& cfg = ctx.cfg;
    double const tol = cfg.tolerance("duality");
    std::vector<Generator> const gens{Generator::smooth_bump_mix,
                                      Generator::lognormal_noise,
                                      Generator::tent_indicator};
    std::size_t const pairs = static_cast<std::size_t>(cfg.pairs);
    std::size_t pool = 1;
    while (pool * pool < pairs)
        ++pool;

    for (char const* pqr : {"2,2,2", "4,2,2", "2,4,4"})
    {
        for (int beta0 : {0, -1})
        {
            Rational const b0{beta0};
            Rational const beta = b0 / Rational{2};
            NormSpec s = ctx.with_geometry(NormSpec::parse(
                std::string(pqr) + "," + beta.to_string()));
            NormSpec dual = s;
            dual.p = s.p.conjugate();
            dual.q = s.q.conjugate();
            dual.r = s.r->conjugate();
            dual.beta = b0 - beta;

            double c[2] = {0, 0};
            for (int refined = 0; refined < 2; ++refined)
            {
                std::vector<GridFunction> fs, hs;
                std::vector<double> fn, hn;
                for (std::size_t i = 0; i < pool; ++i)
                {
                    fs.push_back(ctx.corpus(refined, gens, 71, i));
                    hs.push_back(ctx.corpus(refined, gens, 72, i));
                    fn.push_back(tent_norm(fs.back(), s));
                    hn.push_back(tent_norm(hs.back(), dual));
                }
                for (std::size_t k = 0; k < pairs; ++k)
                {
                    std::size_t i = k / pool, j = k % pool;
                    double den = fn[i] * hn[j];
                    double num = std::fabs(pairing(fs[i], hs[j], beta0));
                    if (num > 0)
                        c[refined] = std::max(
                            c[refined], den > 0 ? num / den : HUGE_VAL);
                }
            }
            std::string const label = "(p,q,r)=(" + std::string(pqr)
                                      + ") beta0=" + std::to_string(beta0);
            rec.add(reported("pairing constant " + label,
                             "duality pairing",
                             c[0]));
            rec.add(stability("pairing constant refinement change " + label,
                              "duality pairing",
                              c[0],
                              c[1],
                              tol));
        }
    }
}
}  // namespace

//---------------------------------------------------------------------------//
// FIXTURES
//---------------------------------------------------------------------------//
GridSpec slab_fixture_grid(int ny)
{
    double const t_min = 0.1 * std::pow(2.0, -19.5 / 20);
    return GridSpec{1, ny, 64, t_min, t_min * std::pow(2.0, 63.0 / 20)};
}

GridFunction slab_function(GridSpec const& spec)
{
    GridFunction f{spec};
    for (int k = 0; k < spec.levels(); ++k)
    {
        double t = spec.height(k);
        if (t > 0.1 && t < 0.2)
        {
            for (std::size_t b = 0; b < spec.boundary_size(); ++b)
                f(b, k) = 1;
        }
    }
    return f;
}

double slab_closed_form()
{
    return std::sqrt(2 * std::log(2.0));
}

std::vector<GridFunction> fixture_set(GridSpec const& spec,
                                      CorpusShape const& shape,
                                      std::uint64_t seed)
{
    std::vector<GridFunction> out;
    out.push_back(random_function(spec, Generator::slab, seed, shape));
    out.push_back(random_function(spec, Generator::tent_indicator, seed, shape));
    for (std::uint64_t i = 1; i <= 3; ++i)
        out.push_back(
            random_function(spec, Generator::lognormal_noise, seed + i, shape));
    for (std::uint64_t i = 1; i <= 2; ++i)
        out.push_back(
            random_function(spec, Generator::smooth_bump_mix, seed + i, shape));
    return out;
}

//---------------------------------------------------------------------------//
double estimate_multiplier_norm(GridFunction const& w,
                                NormSpec const& s1,
                                NormSpec const& s0,
                                int probes,
                                std::uint64_t seed)
{
    if (probes < 1)
        throw InputError("multiplier estimate needs at least one probe");
    if (w.is_zero())
        return 0;
    CorpusShape shape = CorpusShape::for_grid(w.spec(), s0.whitney.box());
    double best = 0;
    for (int i = 0; i < probes; ++i)
    {
        Generator g = (i % 2 == 0) ? Generator::smooth_bump_mix
                                   : Generator::lognormal_noise;
        GridFunction v = random_function(w.spec(), g, seed + i, shape);
        double den = tent_norm(v, s1);
        if (den > 0)
            best = std::max(best, tent_norm(v * w, s0) / den);
    }
    return best;
}

//---------------------------------------------------------------------------//
CheckList run_named_suite(std::string const& name,
                          RunConfig const& cfg,
                          std::vector<double>* seconds)
{
    using Suite = void (*)(Context const&, Recorder&);
    static std::vector<std::pair<std::string, Suite>> const table{
        {"geometry", geometry_suite},
        {"functionals", functionals_suite},
        {"coincidence", coincidence_suite},
        {"factorization", factorization_suite},
        {"multiplication", multiplication_suite},
        {"measures", measures_suite},
        {"duality", duality_suite}};
    auto it = std::find_if(table.begin(), table.end(), [&](auto const& e) {
        return e.first == name;
    });
    if (it == table.end())
        throw ConfigError("suites", "unknown suite '" + name + "'");
    cfg.validate();
    Context ctx{cfg};
    Recorder rec;
    it->second(ctx, rec);
    return rec.take(seconds);
}

VerificationReport run_suite(RunConfig const& cfg)
{
    cfg.validate();
    VerificationReport report;
    for (auto const& name : suite_names())
    {
        if (std::find(cfg.suites.begin(), cfg.suites.end(), name)
            == cfg.suites.end())
            continue;
        std::vector<double> seconds;
        CheckList checks = run_named_suite(name, cfg, &seconds);
        for (std::size_t i = 0; i < checks.size(); ++i)
        {
            std::optional<double> sec;
            if (cfg.timing)
                sec = seconds[i];
            report.add(name, std::move(checks[i]), sec);
        }
    }
    return report;
}

//---------------------------------------------------------------------------//
}  // namespace tent
