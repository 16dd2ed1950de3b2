//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tent/Factorization.hh
//! \brief Constructive factorizations and multiplication estimates
//---------------------------------------------------------------------------//
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "Functionals.hh"

namespace tent
{
//---------------------------------------------------------------------------//
/*!
 * Factors of a non-negative function with their target spaces and norms.
 *
 * Factors vanish outside the support of the input. The constant is the norm
 * product over the source norm.
 */
struct Factorization
{
    std::string construction;
    std::vector<GridFunction> factors;
    std::vector<NormSpec> targets;
    std::vector<double> norms;
    double source_norm{0};
    double reconstruction_error{0};  //!< max |prod - u| over the grid
    std::vector<std::pair<std::string, double>> extras;

    double norm_product() const;
    double constant() const;
    GridFunction product() const;
};

//---------------------------------------------------------------------------//
/*!
 * Exponent triple with 1/e0 = 1/e1 + 1/e2 held exactly.
 */
class HolderTriplet
{
  public:
    // Throws InputError if the relation fails
    HolderTriplet(Exponent e1, Exponent e2, Exponent e0);

    Exponent e1() const { return e1_; }
    Exponent e2() const { return e2_; }
    Exponent e0() const { return e0_; }

    //! Share of e0 carried by e1: (1/e1) / (1/e0), 1 when e0 is infinite
    Rational first_share() const;

    static bool holds(Exponent e1, Exponent e2, Exponent e0);

  private:
    Exponent e1_, e2_, e0_;
};

// Throw InputError naming the first coordinate where the Hölder relation fails
void check_holder_relation(NormSpec const& s0,
                           NormSpec const& s1,
                           NormSpec const& s2);

//---------------------------------------------------------------------------//
// ENDPOINT FACTORIZATIONS
//---------------------------------------------------------------------------//
// u = v w with v = W*_{r0}(u)
Factorization factorize_F1(GridFunction const& u, NormSpec const& s0);

// u = v w with v = P_0[ (A_{q0} W_{r0} u)^ptilde ]^{1/ptilde}; a missing
// ptilde means p0 / 2
Factorization factorize_F2(GridFunction const& u,
                           NormSpec const& s0,
                           std::optional<Rational> ptilde = {});

// F1, then F2 on the first F1 factor
Factorization factorize_F3(GridFunction const& u,
                           NormSpec const& s0,
                           std::optional<Rational> ptilde = {});

// (u^{1-theta}, u^theta) on the support of u
std::pair<GridFunction, GridFunction>
power_split(GridFunction const& u, Rational theta);

// Factorization into s1 and s2 under the Hölder relation with s0
Factorization factorize_general(GridFunction const& u,
                                NormSpec const& s0,
                                NormSpec const& s1,
                                NormSpec const& s2,
                                std::optional<Rational> ptilde = {});

//---------------------------------------------------------------------------//
// COVERING
//---------------------------------------------------------------------------//
/*!
 * Lattice covering of a Whitney box by smaller boxes of another shape.
 *
 * Heights step geometrically by the small box's a2; boundary centers sit on a
 * square lattice whose spacing equals the small box radius at that height.
 */
class CoveringPlan
{
  public:
    CoveringPlan(BoxParams large, BoxParams small, int dim);

    //! Number of covering boxes (independent of the covered box)
    std::size_t count() const { return count_; }

    //! Centers of the covering boxes for the box around p
    std::vector<Point> centers(Point const& p) const;

    BoxParams small() const { return small_; }

  private:
    BoxParams large_;
    BoxParams small_;
    int dim_;
    std::vector<double> height_factors_;
    std::vector<int> half_counts_;
    std::size_t count_{0};
};

//---------------------------------------------------------------------------//
// MULTIPLICATION
//---------------------------------------------------------------------------//
// Pointwise W_r(fgh) <= W_inf(f) W_inf(g) W_r(h) on every box
CheckResult check_box_holder(GridFunction const& f,
                             GridFunction const& g,
                             GridFunction const& h,
                             Exponent r,
                             BoxParams const& box);

// ||fgh||_{p0,r0,q0} / (||f||_{p0,inf,inf} ||g||_{inf,inf,q0}
// ||h||_{inf,r0,inf})
double m2_ratio(GridFunction const& f,
                GridFunction const& g,
                GridFunction const& h,
                NormSpec const& s0);

// ||fg||_{T^p_q} / (||f||_{T^p_inf} ||g||_{T^inf_q})
double m1_ratio(GridFunction const& f,
                GridFunction const& g,
                Exponent p,
                Exponent q,
                double aperture);

// ||f1 f2||_{s0} / (||f1||_{s1} ||f2||_{s2})
double general_ratio(GridFunction const& f1,
                     GridFunction const& f2,
                     NormSpec const& s0,
                     NormSpec const& s1,
                     NormSpec const& s2);

//---------------------------------------------------------------------------//
}  // namespace tent
