//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tent/Grid.hh
//! \brief Discretized upper half-space and sampled functions
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "Geometry.hh"

namespace tent
{
//---------------------------------------------------------------------------//
/*!
 * Torus boundary times a geometric ladder of heights.
 *
 * Boundary cells are centered at (i + 1/2) / Ny along each axis. Height
 * level k sits at t_k = t_min * rho^k with rho = (t_max/t_min)^{1/(L-1)}, and
 * each level stands for the log-cell [t_k rho^{-1/2}, t_k rho^{1/2}] of
 * length t_k ln(rho) (midpoint-in-log rule).
 */
class GridSpec
{
  public:
    GridSpec(int dim, int ny, int levels, double t_min, double t_max);

    int dim() const { return dim_; }
    int ny() const { return ny_; }
    int levels() const { return levels_; }
    double t_min() const { return t_min_; }
    double t_max() const { return t_max_; }

    //! Boundary spacing
    double dy() const { return 1.0 / ny_; }
    //! Boundary cell volume dy^n
    double boundary_cell() const { return dy_n_; }
    double log_rho() const { return log_rho_; }

    // Height of (possibly virtual, out-of-range) level k
    double height(int k) const;

    //! Number of boundary cells (Ny^n)
    std::size_t boundary_size() const { return nb_; }
    //! Total number of cells
    std::size_t size() const { return nb_ * levels_; }

    //! Flat index of a cell (height-major)
    std::size_t index(std::size_t b, int k) const { return k * nb_ + b; }

    BoundaryPoint boundary_point(std::size_t b) const;
    Point cell_center(std::size_t b, int k) const
    {
        return {boundary_point(b), height(k)};
    }

    //! Flat boundary index from axis indices (iz ignored when n = 1)
    std::size_t boundary_index(int iy, int iz = 0) const
    {
        return static_cast<std::size_t>(iz) * ny_ + iy;
    }

    // Subdivide every cell in two along each axis and in log-height
    GridSpec refined() const;

    // Throw unless t_max * aperture < 1/2
    void check_torus_safe(double aperture) const;

    bool operator==(GridSpec const& other) const;
    bool operator!=(GridSpec const& other) const { return !(*this == other); }

    std::string header() const;

  private:
    int dim_;
    int ny_;
    int levels_;
    double t_min_;
    double t_max_;
    double log_rho_;
    double dy_n_;
    std::size_t nb_;
};

//---------------------------------------------------------------------------//
/*!
 * Real samples on every cell of a grid.
 *
 * Complex data enter through their moduli: every functional in this library
 * depends on |f| only.
 */
class GridFunction
{
  public:
    explicit GridFunction(GridSpec spec, double fill = 0);
    GridFunction(GridSpec spec, std::vector<double> values);

    GridSpec const& spec() const { return spec_; }
    std::vector<double> const& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    double operator()(std::size_t b, int k) const
    {
        return values_[spec_.index(b, k)];
    }
    double& operator()(std::size_t b, int k)
    {
        return values_[spec_.index(b, k)];
    }

    // Largest absolute value
    double max_abs() const;

    // True if every sample is zero
    bool is_zero() const;

    // New function with op applied to every sample
    GridFunction map(std::function<double(double)> const& op) const;

    // Pointwise |f|
    GridFunction abs() const;

    // Multiply samples of level k by t_k^{-beta}
    GridFunction weighted(double beta) const;

    // Roll by whole boundary cells (torus translation)
    GridFunction translated(int shift_y, int shift_z = 0) const;

    //! Indicator of {f != 0}
    GridFunction support() const;

  private:
    GridSpec spec_;
    std::vector<double> values_;
};

// Pointwise product; specs must match
GridFunction operator*(GridFunction const& a, GridFunction const& b);
GridFunction operator*(double s, GridFunction const& a);
GridFunction operator+(GridFunction const& a, GridFunction const& b);

//---------------------------------------------------------------------------//
/*!
 * Quadrature weights of one of the half-space measures.
 *
 * The weight of cell (b, k) is dy^n * t_k ln(rho) * density(t_k).
 */
class CellMeasure
{
  public:
    enum class Kind
    {
        dydt,  //!< dy dt
        dydt_over_t,  //!< dy dt / t
        dydt_over_tn1,  //!< dy dt / t^{n+1}
        dydt_weighted,  //!< dy dt t^{-beta-1}
    };

    CellMeasure(GridSpec spec, Kind kind, double beta = 0);

    GridSpec const& spec() const { return spec_; }
    Kind kind() const { return kind_; }

    //! Weight shared by every cell of level k
    double level_weight(int k) const { return weights_[k]; }

  private:
    GridSpec spec_;
    Kind kind_;
    std::vector<double> weights_;
};

// Sum of f * weight over cells whose center satisfies `region`
double integrate_region(GridFunction const& f,
                        std::function<bool(Point const&)> const& region,
                        CellMeasure const& m);

//---------------------------------------------------------------------------//
/*!
 * Offsets of the grid points inside a centered open region of the torus.
 *
 * Each row entry is a row offset (always 0 for n = 1) and the half-width of
 * the contiguous run of columns inside the region. A half-width of at least
 * Ny/2 means the whole row.
 */
class Stencil
{
  public:
    struct Row
    {
        int offset;
        int half_width;
    };

    // Points whose torus distance d to the center satisfies inside(d);
    // inside must be monotone (true up to some distance, false after)
    static Stencil build(GridSpec const& spec,
                         std::function<bool(double)> const& inside);

    // Points with distance < radius
    static Stencil open_ball(GridSpec const& spec, double radius);

    std::vector<Row> const& rows() const { return rows_; }
    bool empty() const { return rows_.empty(); }

    //! Number of grid points covered
    std::size_t count() const { return count_; }

  private:
    std::vector<Row> rows_;
    std::size_t count_{0};
};

//---------------------------------------------------------------------------//
/*!
 * Per-level cumulative boundary sums for O(1) interval queries.
 *
 * Stored in extended precision so differences of prefixes agree with direct
 * summation far below double rounding.
 */
class PrefixTable
{
  public:
    // Table of f * level weight (pass nullptr for unit weights)
    PrefixTable(GridFunction const& f, CellMeasure const* m = nullptr);

    GridSpec const& spec() const { return spec_; }

    // Sum over a row interval [iy - half, iy + half] (wrapped)
    long double row_sum(int k, int row, int iy, int half_width) const;

    // Sum over the stencil centered at boundary index b on level k
    long double sum(int k, std::size_t b, Stencil const& stencil) const;

    // Add the stencil sum at level k centered on every boundary index
    void accumulate(int k,
                    Stencil const& stencil,
                    std::vector<long double>& acc) const;

    //! Sum of a whole level (same order as direct summation)
    double level_total(int k) const;

  private:
    GridSpec spec_;
    std::vector<long double> prefix_;  // levels * rows * (ny + 1)

    long double const* row_ptr(int k, int row) const
    {
        return prefix_.data()
               + (static_cast<std::size_t>(k) * rows_ + row) * (spec_.ny() + 1);
    }
    int rows_;
};

PrefixTable build_prefix_sums(GridFunction const& f, CellMeasure const& m);

//---------------------------------------------------------------------------//
/*!
 * Sparse tables for O(1) wrapped range maxima on every level row.
 */
class RangeMaxTable
{
  public:
    explicit RangeMaxTable(GridFunction const& f);

    double row_max(int k, int row, int iy, int half_width) const;
    double max(int k, std::size_t b, Stencil const& stencil) const;

    // Fold the stencil max at level k centered on every boundary index
    void accumulate(int k, Stencil const& stencil, std::vector<double>& acc)
        const;

  private:
    GridSpec spec_;
    int rows_;
    int depth_;
    std::vector<double> table_;  // [level][row][depth][ny]

    double range(int k, int row, int lo, int hi) const;
};

//---------------------------------------------------------------------------//
// Height-level range of the box around level k (virtual levels allowed)
struct LevelRange
{
    int lo;
    int hi;  //!< inclusive
};
LevelRange box_levels(GridSpec const& spec, int k, double a2);

// Throw SupportMarginError if f is nonzero where a box leaves the grid
void check_support_margin(GridFunction const& f, BoxParams const& box);

//---------------------------------------------------------------------------//
// TEST CORPUS
//---------------------------------------------------------------------------//
enum class Generator
{
    smooth_bump_mix,
    slab,
    tent_indicator,
    lognormal_noise,
};

Generator to_generator(std::string const& name);
std::string to_string(Generator g);

/*!
 * Continuum support band and slab edges shared by every generated function.
 *
 * Functions are evaluated at cell centers from a grid-independent formula,
 * so refining the grid resamples the same continuum function.
 */
struct CorpusShape
{
    double band_lo{};
    double band_hi{};
    double slab_a{};
    double slab_b{};
    BoxParams box;

    // Band [t_min a2, t_max / a2] and slab in its middle third (log scale)
    static CorpusShape for_grid(GridSpec const& spec, BoxParams const& box);
};

GridFunction random_function(GridSpec const& spec,
                             Generator generator,
                             std::uint64_t seed,
                             CorpusShape const& shape);

//---------------------------------------------------------------------------//
// TEXT I/O
//---------------------------------------------------------------------------//
// Header line, optional "# ..." comment lines, then one line per cell
void write_grid(std::ostream& os,
                GridFunction const& f,
                std::string const& manifest = {});
GridFunction read_grid(std::istream& is);

void write_grid_file(std::string const& path,
                     GridFunction const& f,
                     std::string const& manifest = {});
GridFunction read_grid_file(std::string const& path);

//---------------------------------------------------------------------------//
}  // namespace tent
