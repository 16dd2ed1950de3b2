//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tent/Functionals.hh
//! \brief Whitney averages, conical/Carleson/non-tangential functionals and
//!        weighted tent quasi-norms
//---------------------------------------------------------------------------//
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "Grid.hh"
#include "Rational.hh"

namespace tent
{
//---------------------------------------------------------------------------//
//! Function sampled at the boundary grid points (Ny^n values)
using BoundaryFunction = std::vector<double>;

enum class Category
{
    A,  //!< p, q finite: L^p of the conical functional
    B,  //!< q finite, p infinite: sup of the Carleson functional
    C,  //!< p finite, q infinite: L^p of the non-tangential maximal function
    D,  //!< p = q = infinity: global sup
};

char to_char(Category c);

//---------------------------------------------------------------------------//
/*!
 * Exponents, weight and geometry selecting one space T^{p,r}_{q,beta}.
 *
 * An empty \c r is the "no average" sentinel: the classical space T^p_q
 * without any Whitney averaging.
 */
struct NormSpec
{
    Exponent p{2};
    Exponent q{2};
    std::optional<Exponent> r{Exponent{2}};
    Rational beta{0};
    double aperture{1};
    WhitneyParams whitney;

    Category category() const;

    //! min(p, q, r), ignoring a missing r
    Exponent tau() const;
    bool is_banach() const { return !(tau() < Exponent{1}); }
    bool has_average() const { return r.has_value(); }

    // Exponents divided by theta, weight multiplied by theta
    NormSpec powered(Rational theta) const;

    // "p,q,r,beta" with r = "none" for the classical space
    std::string to_string() const;

    // Parse "p,q,r,beta"; aperture and Whitney parameters take defaults
    static NormSpec parse(std::string const& text);

    //! Classical unweighted space T^p_q
    static NormSpec classical(Exponent p, Exponent q);
};

//---------------------------------------------------------------------------//
// WHITNEY AVERAGE
//---------------------------------------------------------------------------//
// L^r mean of |f| over the Whitney box of every cell (max for r = inf)
GridFunction
whitney_average(GridFunction const& f, Exponent r, BoxParams const& box);

//---------------------------------------------------------------------------//
// BOUNDARY FUNCTIONALS
//---------------------------------------------------------------------------//
// Conical functional at an arbitrary boundary point (direct sum)
double conical_A(GridFunction const& g,
                 Exponent q,
                 double aperture,
                 BoundaryPoint const& x);

// Conical functional at every boundary grid point
BoundaryFunction conical_A(GridFunction const& g, Exponent q, double aperture);

// Non-tangential maximal function at an arbitrary point / every grid point
double
nontangential_N(GridFunction const& g, double aperture, BoundaryPoint const& x);
BoundaryFunction nontangential_N(GridFunction const& g, double aperture);

//---------------------------------------------------------------------------//
/*!
 * Grid-centered boundary balls with radii dy * 2^j up to 1/4.
 */
class BallFamily
{
  public:
    explicit BallFamily(GridSpec const& spec);

    GridSpec const& spec() const { return spec_; }
    std::vector<double> const& radii() const { return radii_; }
    std::size_t size() const { return radii_.size() * spec_.boundary_size(); }

    //! Ball j-th radius centered at boundary index b
    Ball ball(std::size_t j, std::size_t b) const
    {
        return {spec_.boundary_point(b), radii_[j]};
    }

    //! Continuum volume v_n R^n
    double volume(std::size_t j) const;

    //! Unit ball volume (2 for n = 1, pi for n = 2)
    static double unit_volume(int dim);

  private:
    GridSpec spec_;
    std::vector<double> radii_;
};

//! Per-ball values indexed [radius][center]
using BallValues = std::vector<std::vector<double>>;

// |B|^{-1} integral of g^q dydt/t over each tent of aperture alpha
BallValues
carleson_ball_values(GridFunction const& g, Exponent q, double aperture);

// Max over family balls containing each grid point of per-ball values
BoundaryFunction
ball_sup_at_points(BallFamily const& family, BallValues const& values);

// Carleson functional at an arbitrary point / every grid point
double carleson_C(GridFunction const& g,
                  Exponent q,
                  double aperture,
                  BoundaryPoint const& x);
BoundaryFunction carleson_C(GridFunction const& g, Exponent q, double aperture);

//---------------------------------------------------------------------------//
// BOUNDARY AVERAGES
//---------------------------------------------------------------------------//
// Mean of h over grid points in the open ball B(y, radius); the nearest grid
// point stands in when the ball holds none
double ball_average(GridSpec const& spec,
                    BoundaryFunction const& h,
                    BoundaryPoint const& y,
                    double radius);

// P_0[h](y, t) at every cell (ball radius = scale * t)
GridFunction ball_average_field(GridSpec const& spec,
                                BoundaryFunction const& h,
                                double scale = 1);

// Discrete Hardy-Littlewood maximal function over the ball family
BoundaryFunction hl_maximal(GridSpec const& spec, BoundaryFunction const& h);

// (dy^n sum |h|^p)^{1/p}, or max for p = inf
double boundary_lp(GridSpec const& spec, BoundaryFunction const& h, Exponent p);

//---------------------------------------------------------------------------//
// QUASI-NORMS
//---------------------------------------------------------------------------//
// t^{-beta} |f| followed by the optional Whitney average
GridFunction prepared(GridFunction const& f, NormSpec const& s);

// Category functional applied to an already prepared function
double classical_norm(GridFunction const& g,
                      Exponent p,
                      Exponent q,
                      double aperture);

double tent_norm(GridFunction const& f, NormSpec const& s);

// |f|^{1/theta} in s versus f in the powered space
CheckResult
power_identity_check(GridFunction const& f, NormSpec const& s, Rational theta);

// Integral of f h t^{-beta0-1} dy dt
double
pairing(GridFunction const& f, GridFunction const& h, double beta0);

//---------------------------------------------------------------------------//
}  // namespace tent
