//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tent/Measures.hh
//! \brief Atomic measures on the closed half-space: balayage, extension and
//!        Carleson norms
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "Functionals.hh"

namespace tent
{
//---------------------------------------------------------------------------//
//! Point mass (the mass may be signed where a weighted measure is allowed)
struct Atom
{
    Point at;
    double mass{0};
};

/*!
 * Finite non-negative atomic measure with at least one atom.
 */
class DiscreteMeasure
{
  public:
    // Throws InputError on empty input, non-positive masses or bad points
    explicit DiscreteMeasure(std::vector<Atom> atoms);

    std::vector<Atom> const& atoms() const { return atoms_; }
    double total_mass() const { return total_; }
    int dim() const { return atoms_.front().at.y.dim(); }

  private:
    std::vector<Atom> atoms_;
    double total_{0};
};

// Atoms with heights log-uniform in [t_lo, t_hi], masses in [0.1, 1]
DiscreteMeasure random_measure(int dim,
                               std::size_t count,
                               std::uint64_t seed,
                               double t_lo,
                               double t_hi);

//---------------------------------------------------------------------------//
// BALAYAGE AND EXTENSION
//---------------------------------------------------------------------------//
// Sum of m / t^n over atoms whose cone contains x
double balayage(DiscreteMeasure const& mu, BoundaryPoint const& x);

// Balayage at every boundary grid point
BoundaryFunction balayage(DiscreteMeasure const& mu, GridSpec const& spec);

// Exact integral of the balayage over the circle (n = 1 only)
double balayage_integral(DiscreteMeasure const& mu);

// Ball average of 1 / balayage over grid points of B(p.y, p.t); +inf when
// the balayage vanishes at any of them
double extension(GridSpec const& spec,
                 BoundaryFunction const& abar,
                 Point const& p);
double extension(DiscreteMeasure const& mu, GridSpec const& spec, Point const& p);

//---------------------------------------------------------------------------//
// CARLESON NORMS
//---------------------------------------------------------------------------//
struct CarlesonNorm
{
    double value{0};
    Ball witness;  //!< family ball attaining the sup
};

// sup over family balls of |nu|(tent of B) / |B| (closed tents by default)
CarlesonNorm carleson_norm_measure(std::vector<Atom> const& nu,
                                   GridSpec const& spec,
                                   bool closed = true);

/*!
 * Carleson norm of E(dmu) dmu with its discrete Fubini certificate.
 *
 * kappa bounds (#grid points in B) dy^n / |B| over the ball family and
 * lambda bounds t^n / (#grid points in B(y, t)) dy^n over the atoms. The
 * discrete Fubini chain gives value <= kappa * lambda exactly.
 */
struct BalayageLemma
{
    CarlesonNorm norm;
    double kappa{0};
    double lambda{0};

    double certificate() const { return kappa * lambda; }
};

BalayageLemma balayage_lemma(DiscreteMeasure const& mu, GridSpec const& spec);

//! Continuum constant 1 / |unit ball|
double balayage_lemma_constant(int dim);

// Check value <= certificate and value <= 1/v_n + slack
CheckResult check_balayage_lemma(DiscreteMeasure const& mu,
                                 GridSpec const& spec,
                                 double slack = 0.05);

//---------------------------------------------------------------------------//
// MEASURE FACTORIZATION
//---------------------------------------------------------------------------//
struct MeasureFactorization
{
    GridFunction boundary_factor;  //!< E^{-1} on grid cells
    std::vector<double> atom_factor;  //!< E^{-1} at the atoms
    std::vector<Atom> carleson_factor;  //!< E(a) m_a at the atoms
    double reconstruction_error{0};  //!< max |E^{-1} E m - m| over atoms
    double boundary_norm{0};  //!< ||E^{-1}||_{T^1_inf}
    double carleson_norm{0};  //!< ||E dmu|| over the ball family
    double maximal_ratio{0};  //!< max N(E^{-1}) / M(abar^{p0})^{1/p0}
};

MeasureFactorization factorize_measure(DiscreteMeasure const& mu,
                                       GridSpec const& spec,
                                       double p0 = 0.5);

// sum |f|^p |m| / (||f||^p_{T^p_inf} carleson_norm(open tents)), atoms at
// cell centers given as (cell index, mass)
double carleson_inequality_ratio(GridFunction const& f,
                                 Exponent p,
                                 std::vector<std::pair<std::size_t, double>> const& cells);

//---------------------------------------------------------------------------//
// TEXT I/O
//---------------------------------------------------------------------------//
// One line "y[,z],t,mass" per atom
void write_measure(std::ostream& os, DiscreteMeasure const& mu);
DiscreteMeasure read_measure(std::istream& is);

//---------------------------------------------------------------------------//
}  // namespace tent
