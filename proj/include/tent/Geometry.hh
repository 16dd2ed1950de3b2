//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tent/Geometry.hh
//! \brief Cones, tents and Whitney boxes over the flat torus
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "Check.hh"

namespace tent
{
//---------------------------------------------------------------------------//
/*!
 * Point of the boundary torus [0,1)^n, n in {1, 2}.
 */
class BoundaryPoint
{
  public:
    BoundaryPoint() = default;

    // One-dimensional point
    explicit BoundaryPoint(double y);

    // Two-dimensional point
    BoundaryPoint(double y, double z);

    int dim() const { return dim_; }
    double operator[](int i) const { return coords_[i]; }

    // Translate every coordinate (wrapping into [0, 1))
    BoundaryPoint shifted(double dy, double dz = 0) const;

    std::string to_string() const;

  private:
    std::array<double, 2> coords_{0, 0};
    int dim_{1};
};

// Wrap-around distance on the unit torus
double torus_distance(BoundaryPoint const& a, BoundaryPoint const& b);

//! Point (y, t) of the upper half-space
struct Point
{
    BoundaryPoint y;
    double t{1};

    std::string to_string() const;
};

//! Open ball of the boundary
struct Ball
{
    BoundaryPoint center;
    double radius{0};
};

//---------------------------------------------------------------------------//
/*!
 * Whitney box shape (a1, a2): boundary radius a1*t, heights in (t/a2, a2*t).
 *
 * Only a1 > 0 and a2 > 1 are required; some of the derived boxes used in the
 * coincidence geometry are not consistent.
 */
struct BoxParams
{
    double a1{0.25};
    double a2{2};

    // Throws InputError unless a1 > 0 and a2 > 1
    void validate() const;

    bool is_consistent() const { return 0 < a1 && a1 < 1 / a2 && a2 > 1; }
};

//---------------------------------------------------------------------------//
/*!
 * Consistent Whitney parameters: 0 < alpha1 < 1/alpha2 < 1.
 */
class WhitneyParams
{
  public:
    // Throws InputError if the pair is not consistent
    WhitneyParams(double alpha1, double alpha2);

    //! Default (1/4, 2)
    WhitneyParams() : WhitneyParams(0.25, 2.0) {}

    double alpha1() const { return alpha1_; }
    double alpha2() const { return alpha2_; }

    BoxParams box() const { return {alpha1_, alpha2_}; }

  private:
    double alpha1_;
    double alpha2_;
};

//---------------------------------------------------------------------------//
/*!
 * Apertures and auxiliary box shapes derived from the Whitney parameters.
 */
struct DerivedParams
{
    double alpha0{};  //!< (1 - a1) / a2: inner cone/tent aperture
    double alphaC{};  //!< a2 + a1*a2: outer cone aperture
    double alphaT{};  //!< a2 + a1/a2: inner tent aperture
    double alphaStarUpper{};  //!< a2 + a1: ball-union radius factor
    double alphaStarLower{};  //!< 1/a2 - a1: ball-intersection radius factor
    BoxParams star;  //!< (a1 / (1 + sqrt a2), sqrt a2)
    BoxParams doubleStar;  //!< (a1 / (2 (1 + sqrt a2) a2^{1/4}), a2^{1/4})
    BoxParams wStar;  //!< (a1 / a2, a2)
    BoxParams wDoubleStar;  //!< (a1 * a2, a2)

    //! Largest aperture any derived cone or tent uses
    double max_aperture() const;
};

DerivedParams derive_params(WhitneyParams const& w);

//---------------------------------------------------------------------------//
// PREDICATES
//---------------------------------------------------------------------------//
// (y,t) in the cone of given aperture with vertex x
bool cone_contains(BoundaryPoint const& x, Point const& p, double aperture);

// B(p.y, aperture * p.t) inside the ball (closed: boundary contact allowed)
bool tent_contains(Ball const& ball,
                   Point const& p,
                   double aperture,
                   bool closed = false);

// p inside the Whitney box of the given shape around center
bool whitney_box_contains(Point const& center,
                          Point const& p,
                          BoxParams const& params);

// x inside the open boundary ball
bool ball_contains(Ball const& ball, BoundaryPoint const& x);

//---------------------------------------------------------------------------//
// Randomized verification of every set inclusion used in the proofs
CheckList check_inclusion_suite(WhitneyParams const& w,
                                std::int64_t trials,
                                std::uint64_t seed,
                                int dim = 1);

//! Strict ordering of the derived box parameters
bool derived_chain_holds(DerivedParams const& d, WhitneyParams const& w);

//---------------------------------------------------------------------------//
}  // namespace tent
