//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file Grid.cc
//---------------------------------------------------------------------------//
#include "tent/Grid.hh"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "tent/Random.hh"

namespace tent
{
namespace
{
std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int wrap_index(int i, int n)
{
    i %= n;
    return i < 0 ? i + n : i;
}
}  // namespace

//---------------------------------------------------------------------------//
// GRID SPEC
//---------------------------------------------------------------------------//
GridSpec::GridSpec(int dim, int ny, int levels, double t_min, double t_max)
    : dim_{dim}, ny_{ny}, levels_{levels}, t_min_{t_min}, t_max_{t_max}
{
    if (dim != 1 && dim != 2)
        throw InputError("grid dimension n must be 1 or 2");
    if (ny < 2)
        throw InputError("grid needs Ny >= 2 boundary samples");
    if (levels < 2)
        throw InputError("grid needs t_levels >= 2");
    if (!(t_min > 0) || !(t_min < t_max) || !std::isfinite(t_max))
        throw InputError("grid needs 0 < t_min < t_max");
    log_rho_ = std::log(t_max / t_min) / (levels - 1);
    nb_ = (dim == 1) ? static_cast<std::size_t>(ny)
                     : static_cast<std::size_t>(ny) * ny;
    dy_n_ = std::pow(1.0 / ny, dim);
}

double GridSpec::height(int k) const
{
    return t_min_ * std::exp(k * log_rho_);
}

BoundaryPoint GridSpec::boundary_point(std::size_t b) const
{
    double const h = this->dy();
    if (dim_ == 1)
        return BoundaryPoint{(static_cast<double>(b) + 0.5) * h};
    auto iy = b % ny_;
    auto iz = b / ny_;
    return BoundaryPoint{(static_cast<double>(iy) + 0.5) * h,
                         (static_cast<double>(iz) + 0.5) * h};
}

GridSpec GridSpec::refined() const
{
    double const quarter = std::exp(log_rho_ / 4);
    return GridSpec{
        dim_, 2 * ny_, 2 * levels_, t_min_ / quarter, t_max_ * quarter};
}

void GridSpec::check_torus_safe(double aperture) const
{
    if (!(t_max_ * aperture < 0.5))
    {
        std::ostringstream os;
        os << "grid is not torus-safe: t_max * aperture = "
           << t_max_ * aperture << " must stay below 1/2";
        throw InputError(os.str());
    }
}

bool GridSpec::operator==(GridSpec const& other) const
{
    return dim_ == other.dim_ && ny_ == other.ny_ && levels_ == other.levels_
           && t_min_ == other.t_min_ && t_max_ == other.t_max_;
}

std::string GridSpec::header() const
{
    return std::to_string(dim_) + "," + std::to_string(ny_) + ","
           + std::to_string(levels_) + "," + format_double(t_min_) + ","
           + format_double(t_max_);
}

//---------------------------------------------------------------------------//
// GRID FUNCTION
//---------------------------------------------------------------------------//
GridFunction::GridFunction(GridSpec spec, double fill)
    : spec_{spec}, values_(spec.size(), fill)
{
}

GridFunction::GridFunction(GridSpec spec, std::vector<double> values)
    : spec_{spec}, values_{std::move(values)}
{
    if (values_.size() != spec_.size())
    {
        throw InputError("grid function size does not match its grid");
    }
}

double GridFunction::max_abs() const
{
    double result = 0;
    for (double v : values_)
        result = std::max(result, std::fabs(v));
    return result;
}

bool GridFunction::is_zero() const
{
    return std::all_of(
        values_.begin(), values_.end(), [](double v) { return v == 0; });
}

GridFunction GridFunction::map(std::function<double(double)> const& op) const
{
    GridFunction result{spec_};
    std::transform(values_.begin(), values_.end(), result.values_.begin(), op);
    return result;
}

GridFunction GridFunction::abs() const
{
    return this->map([](double v) { return std::fabs(v); });
}

GridFunction GridFunction::weighted(double beta) const
{
    GridFunction result{*this};
    if (beta == 0)
        return result;
    for (int k = 0; k < spec_.levels(); ++k)
    {
        double const w = std::pow(spec_.height(k), -beta);
        for (std::size_t b = 0; b < spec_.boundary_size(); ++b)
            result(b, k) *= w;
    }
    return result;
}

GridFunction GridFunction::translated(int shift_y, int shift_z) const
{
    GridFunction result{spec_};
    int const ny = spec_.ny();
    for (int k = 0; k < spec_.levels(); ++k)
    {
        for (std::size_t b = 0; b < spec_.boundary_size(); ++b)
        {
            int iy = static_cast<int>(b % ny);
            int iz = static_cast<int>(b / ny);
            int jy = wrap_index(iy + shift_y, ny);
            int jz = spec_.dim() == 2 ? wrap_index(iz + shift_z, ny) : 0;
            result(spec_.boundary_index(jy, jz), k) = (*this)(b, k);
        }
    }
    return result;
}

GridFunction GridFunction::support() const
{
    return this->map([](double v) { return v != 0 ? 1.0 : 0.0; });
}

namespace
{
void require_same_spec(GridFunction const& a, GridFunction const& b)
{
    if (a.spec() != b.spec())
        throw InputError("grid functions live on different grids");
}
}  // namespace

GridFunction operator*(GridFunction const& a, GridFunction const& b)
{
    require_same_spec(a, b);
    GridFunction result{a};
    auto& out = result.values();
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] *= b.values()[i];
    return result;
}

GridFunction operator*(double s, GridFunction const& a)
{
    return a.map([s](double v) { return s * v; });
}

GridFunction operator+(GridFunction const& a, GridFunction const& b)
{
    require_same_spec(a, b);
    GridFunction result{a};
    auto& out = result.values();
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += b.values()[i];
    return result;
}

//---------------------------------------------------------------------------//
// MEASURE AND QUADRATURE
//---------------------------------------------------------------------------//
CellMeasure::CellMeasure(GridSpec spec, Kind kind, double beta)
    : spec_{spec}, kind_{kind}, weights_(spec.levels())
{
    for (int k = 0; k < spec.levels(); ++k)
    {
        double const t = spec.height(k);
        double density = 1;
        switch (kind)
        {
            case Kind::dydt:
                density = 1;
                break;
            case Kind::dydt_over_t:
                density = 1 / t;
                break;
            case Kind::dydt_over_tn1:
                density = std::pow(t, -(spec.dim() + 1));
                break;
            case Kind::dydt_weighted:
                density = std::pow(t, -beta - 1);
                break;
        }
        weights_[k] = spec.boundary_cell() * t * spec.log_rho() * density;
    }
}

double integrate_region(GridFunction const& f,
                        std::function<bool(Point const&)> const& region,
                        CellMeasure const& m)
{
    if (f.spec() != m.spec())
    {
        throw InputError("measure and function live on different grids");
    }
    GridSpec const& spec = f.spec();
    // Neumaier-compensated, height-major then boundary order
    double sum = 0;
    double comp = 0;
    for (int k = 0; k < spec.levels(); ++k)
    {
        double const w = m.level_weight(k);
        for (std::size_t b = 0; b < spec.boundary_size(); ++b)
        {
            double v = f(b, k);
            if (v == 0 || !region(spec.cell_center(b, k)))
                continue;
            double term = v * w;
            double s = sum + term;
            if (std::fabs(sum) >= std::fabs(term))
                comp += (sum - s) + term;
            else
                comp += (term - s) + sum;
            sum = s;
        }
    }
    return sum + comp;
}

//---------------------------------------------------------------------------//
// STENCIL
//---------------------------------------------------------------------------//
Stencil Stencil::build(GridSpec const& spec,
                       std::function<bool(double)> const& inside)
{
    int const ny = spec.ny();
    double const dy = spec.dy();
    int const half = ny / 2;

    auto run = [&](int e) -> int {
        // Longest run c = 0..c_max with inside(dist(e, c)); -1 if none
        double const de = e * dy;
        int c = -1;
        while (c < half)
        {
            double const dc = (c + 1) * dy;
            double d = (spec.dim() == 1) ? dc : std::sqrt(de * de + dc * dc);
            if (!inside(d))
                break;
            ++c;
        }
        return c;
    };

    Stencil result;
    auto add_row = [&](int e, int c) {
        if (c >= half)
        {
            result.rows_.push_back({e, ny});
            result.count_ += ny;
        }
        else
        {
            result.rows_.push_back({e, c});
            result.count_ += 2 * c + 1;
        }
    };

    if (spec.dim() == 1)
    {
        int c = run(0);
        if (c >= 0)
            add_row(0, c);
        return result;
    }

    // Row offsets e in [-(ny-1)/2, ny/2], each residue once
    int const e_lo = -((ny - 1) / 2);
    int const e_hi = ny / 2;
    for (int e = 0; e <= e_hi; ++e)
    {
        int c = run(e);
        if (c < 0)
            break;
        add_row(e, c);
    }
    for (int e = -1; e >= e_lo; --e)
    {
        int c = run(e);
        if (c < 0)
            break;
        add_row(e, c);
    }
    std::sort(result.rows_.begin(),
              result.rows_.end(),
              [](Row const& a, Row const& b) { return a.offset < b.offset; });
    return result;
}

Stencil Stencil::open_ball(GridSpec const& spec, double radius)
{
    return build(spec, [radius](double d) { return d < radius; });
}

//---------------------------------------------------------------------------//
// PREFIX TABLE
//---------------------------------------------------------------------------//
PrefixTable::PrefixTable(GridFunction const& f, CellMeasure const* m)
    : spec_{f.spec()}, rows_{f.spec().dim() == 1 ? 1 : f.spec().ny()}
{
    if (m && m->spec() != spec_)
    {
        throw InputError("measure and function live on different grids");
    }
    int const ny = spec_.ny();
    prefix_.assign(static_cast<std::size_t>(spec_.levels()) * rows_ * (ny + 1),
                   0.0L);
    for (int k = 0; k < spec_.levels(); ++k)
    {
        long double const w = m ? m->level_weight(k) : 1.0L;
        for (int row = 0; row < rows_; ++row)
        {
            long double* p = prefix_.data()
                             + (static_cast<std::size_t>(k) * rows_ + row)
                                   * (ny + 1);
            long double acc = 0;
            p[0] = 0;
            for (int iy = 0; iy < ny; ++iy)
            {
                acc += static_cast<long double>(
                           f(spec_.boundary_index(iy, row), k))
                       * w;
                p[iy + 1] = acc;
            }
        }
    }
}

long double PrefixTable::row_sum(int k, int row, int iy, int half_width) const
{
    int const ny = spec_.ny();
    long double const* p = this->row_ptr(k, row);
    if (half_width < 0)
        return 0;
    if (2 * half_width + 1 >= ny)
        return p[ny];
    int lo = iy - half_width;
    int hi = iy + half_width;
    if (lo < 0)
        return (p[ny] - p[lo + ny]) + p[hi + 1];
    if (hi >= ny)
        return (p[ny] - p[lo]) + p[hi + 1 - ny];
    return p[hi + 1] - p[lo];
}

long double
PrefixTable::sum(int k, std::size_t b, Stencil const& stencil) const
{
    int const ny = spec_.ny();
    int const iy = static_cast<int>(b % ny);
    int const iz = static_cast<int>(b / ny);
    long double total = 0;
    for (auto const& row : stencil.rows())
    {
        int r = (spec_.dim() == 1) ? 0 : wrap_index(iz + row.offset, ny);
        total += this->row_sum(k, r, iy, row.half_width);
    }
    return total;
}

void PrefixTable::accumulate(int k,
                             Stencil const& stencil,
                             std::vector<long double>& acc) const
{
    int const ny = spec_.ny();
    int const nrows = rows_;
    for (int iz = 0; iz < nrows; ++iz)
    {
        long double* out = acc.data() + static_cast<std::size_t>(iz) * ny;
        for (auto const& row : stencil.rows())
        {
            int r = (spec_.dim() == 1) ? 0 : wrap_index(iz + row.offset, ny);
            long double const* p = this->row_ptr(k, r);
            int const h = row.half_width;
            if (2 * h + 1 >= ny)
            {
                for (int iy = 0; iy < ny; ++iy)
                    out[iy] += p[ny];
                continue;
            }
            int iy = 0;
            for (; iy < h; ++iy)
                out[iy] += (p[ny] - p[iy - h + ny]) + p[iy + h + 1];
            for (; iy < ny - h; ++iy)
                out[iy] += p[iy + h + 1] - p[iy - h];
            for (; iy < ny; ++iy)
                out[iy] += (p[ny] - p[iy - h]) + p[iy + h + 1 - ny];
        }
    }
}

double PrefixTable::level_total(int k) const
{
    long double total = 0;
    for (int row = 0; row < rows_; ++row)
        total += this->row_ptr(k, row)[spec_.ny()];
    return static_cast<double>(total);
}

PrefixTable build_prefix_sums(GridFunction const& f, CellMeasure const& m)
{
    return PrefixTable{f, &m};
}

//---------------------------------------------------------------------------//
// RANGE MAX
//---------------------------------------------------------------------------//
RangeMaxTable::RangeMaxTable(GridFunction const& f)
    : spec_{f.spec()}, rows_{f.spec().dim() == 1 ? 1 : f.spec().ny()}
{
    int const ny = spec_.ny();
    depth_ = 1;
    while ((1 << depth_) <= ny)
        ++depth_;
    table_.assign(static_cast<std::size_t>(spec_.levels()) * rows_ * depth_
                      * ny,
                  0.0);
    for (int k = 0; k < spec_.levels(); ++k)
    {
        for (int row = 0; row < rows_; ++row)
        {
            double* t = table_.data()
                        + (static_cast<std::size_t>(k) * rows_ + row)
                              * depth_ * ny;
            for (int iy = 0; iy < ny; ++iy)
                t[iy] = f(spec_.boundary_index(iy, row), k);
            for (int j = 1; j < depth_; ++j)
            {
                int const len = 1 << j;
                double const* prev = t + (j - 1) * ny;
                double* cur = t + j * ny;
                for (int iy = 0; iy + len <= ny; ++iy)
                    cur[iy] = std::max(prev[iy], prev[iy + len / 2]);
            }
        }
    }
}

double RangeMaxTable::range(int k, int row, int lo, int hi) const
{
    int const ny = spec_.ny();
    double const* t = table_.data()
                      + (static_cast<std::size_t>(k) * rows_ + row) * depth_
                            * ny;
    int const len = hi - lo + 1;
    int j = 0;
    while ((2 << j) <= len)
        ++j;
    return std::max(t[j * ny + lo], t[j * ny + hi - (1 << j) + 1]);
}

double RangeMaxTable::row_max(int k, int row, int iy, int half_width) const
{
    int const ny = spec_.ny();
    if (half_width < 0)
        return -std::numeric_limits<double>::infinity();
    if (2 * half_width + 1 >= ny)
        return this->range(k, row, 0, ny - 1);
    int lo = iy - half_width;
    int hi = iy + half_width;
    if (lo < 0)
        return std::max(this->range(k, row, lo + ny, ny - 1),
                        this->range(k, row, 0, hi));
    if (hi >= ny)
        return std::max(this->range(k, row, lo, ny - 1),
                        this->range(k, row, 0, hi - ny));
    return this->range(k, row, lo, hi);
}

double RangeMaxTable::max(int k, std::size_t b, Stencil const& stencil) const
{
    int const ny = spec_.ny();
    int const iy = static_cast<int>(b % ny);
    int const iz = static_cast<int>(b / ny);
    double result = -std::numeric_limits<double>::infinity();
    for (auto const& row : stencil.rows())
    {
        int r = (spec_.dim() == 1) ? 0 : wrap_index(iz + row.offset, ny);
        result = std::max(result, this->row_max(k, r, iy, row.half_width));
    }
    return result;
}

void RangeMaxTable::accumulate(int k,
                               Stencil const& stencil,
                               std::vector<double>& acc) const
{
    int const ny = spec_.ny();
    for (int iz = 0; iz < rows_; ++iz)
    {
        double* out = acc.data() + static_cast<std::size_t>(iz) * ny;
        for (auto const& row : stencil.rows())
        {
            int r = (spec_.dim() == 1) ? 0 : wrap_index(iz + row.offset, ny);
            int const h = row.half_width;
            if (2 * h + 1 >= ny)
            {
                double m = this->range(k, r, 0, ny - 1);
                for (int iy = 0; iy < ny; ++iy)
                    out[iy] = std::max(out[iy], m);
                continue;
            }
            int const len = 2 * h + 1;
            int j = 0;
            while ((2 << j) <= len)
                ++j;
            double const* t = table_.data()
                              + ((static_cast<std::size_t>(k) * rows_ + r)
                                     * depth_
                                 + j)
                                    * ny;
            int const span = len - (1 << j);
            for (int iy = 0; iy < h; ++iy)
                out[iy] = std::max(out[iy], this->row_max(k, r, iy, h));
            for (int iy = h; iy < ny - h; ++iy)
            {
                int lo = iy - h;
                out[iy] = std::max(out[iy], std::max(t[lo], t[lo + span]));
            }
            for (int iy = std::max(h, ny - h); iy < ny; ++iy)
                out[iy] = std::max(out[iy], this->row_max(k, r, iy, h));
        }
    }
}

//---------------------------------------------------------------------------//
// SUPPORT MARGIN
//---------------------------------------------------------------------------//
LevelRange box_levels(GridSpec const& spec, int k, double a2)
{
    double const t = spec.height(k);
    double const lo_t = t / a2;
    double const hi_t = a2 * t;
    int lo = k;
    while (spec.height(lo - 1) > lo_t)
        --lo;
    int hi = k;
    while (spec.height(hi + 1) < hi_t)
        ++hi;
    return {lo, hi};
}

void check_support_margin(GridFunction const& f, BoxParams const& box)
{
    GridSpec const& spec = f.spec();
    for (int k = 0; k < spec.levels(); ++k)
    {
        auto r = box_levels(spec, k, box.a2);
        if (r.lo >= 0 && r.hi < spec.levels())
            continue;
        for (std::size_t b = 0; b < spec.boundary_size(); ++b)
        {
            if (f(b, k) != 0)
            {
                std::ostringstream os;
                os << "support-margin violation: nonzero sample at height "
                   << spec.height(k) << " (level " << k
                   << ") whose Whitney box leaves [t_min, t_max]";
                throw SupportMarginError(os.str());
            }
        }
    }
}

//---------------------------------------------------------------------------//
// CORPUS
//---------------------------------------------------------------------------//
Generator to_generator(std::string const& name)
{
    if (name == "smooth-bump-mix")
        return Generator::smooth_bump_mix;
    if (name == "slab")
        return Generator::slab;
    if (name == "tent-indicator")
        return Generator::tent_indicator;
    if (name == "lognormal-noise")
        return Generator::lognormal_noise;
    throw InputError("unknown generator '" + name + "'");
}

std::string to_string(Generator g)
{
    switch (g)
    {
        case Generator::smooth_bump_mix:
            return "smooth-bump-mix";
        case Generator::slab:
            return "slab";
        case Generator::tent_indicator:
            return "tent-indicator";
        case Generator::lognormal_noise:
            return "lognormal-noise";
    }
    return "?";
}

CorpusShape CorpusShape::for_grid(GridSpec const& spec, BoxParams const& box)
{
    CorpusShape s;
    s.box = box;
    s.band_lo = spec.t_min() * box.a2;
    s.band_hi = spec.t_max() / box.a2;
    if (!(s.band_lo < s.band_hi))
    {
        throw InputError("height range too narrow for a Whitney support "
                         "margin");
    }
    double const ratio = s.band_hi / s.band_lo;
    s.slab_a = s.band_lo * std::cbrt(ratio);
    s.slab_b = s.band_lo * std::cbrt(ratio * ratio);
    return s;
}

namespace
{
struct Bump
{
    BoundaryPoint center;
    double amplitude;
    double width;
    double log_height;
    double log_width;
};

struct Mode
{
    int ky;
    int kz;
    double phase_y;
    double omega;
    double phase_t;
    double amplitude;
};
}  // namespace

GridFunction random_function(GridSpec const& spec,
                             Generator generator,
                             std::uint64_t seed,
                             CorpusShape const& shape)
{
    Random rng = Random::stream(seed, static_cast<std::uint64_t>(generator));
    auto draw_point = [&] {
        return spec.dim() == 1
                   ? BoundaryPoint{rng.uniform()}
                   : BoundaryPoint{rng.uniform(), rng.uniform()};
    };

    std::function<double(Point const&)> formula;
    switch (generator)
    {
        case Generator::slab: {
            double a = shape.slab_a, b = shape.slab_b;
            formula = [a, b](Point const& p) {
                return (a < p.t && p.t < b) ? 1.0 : 0.0;
            };
            break;
        }
        case Generator::tent_indicator: {
            Ball ball;
            ball.center = draw_point();
            ball.radius = rng.log_uniform(2 * shape.band_lo,
                                          std::min(0.25, 2 * shape.band_hi));
            formula = [ball](Point const& p) {
                return tent_contains(ball, p, 1.0) ? 1.0 : 0.0;
            };
            break;
        }
        case Generator::smooth_bump_mix: {
            std::vector<Bump> bumps(4);
            for (auto& bump : bumps)
            {
                bump.center = draw_point();
                bump.amplitude = rng.uniform(0.5, 2.0);
                bump.width = rng.uniform(0.05, 0.2);
                bump.log_height = std::log(
                    rng.log_uniform(shape.band_lo, shape.band_hi));
                bump.log_width = rng.uniform(0.2, 0.6);
            }
            formula = [bumps](Point const& p) {
                double v = 0.05;
                double const lt = std::log(p.t);
                for (auto const& bump : bumps)
                {
                    double dy = torus_distance(p.y, bump.center) / bump.width;
                    double dt = (lt - bump.log_height) / bump.log_width;
                    v += bump.amplitude * std::exp(-dy * dy - dt * dt);
                }
                return v;
            };
            break;
        }
        case Generator::lognormal_noise: {
            std::vector<Mode> modes(12);
            double norm = 0;
            for (auto& m : modes)
            {
                m.ky = 1 + static_cast<int>(rng.below(8));
                m.kz = spec.dim() == 2 ? static_cast<int>(rng.below(8)) : 0;
                m.phase_y = rng.uniform(0, 2 * M_PI);
                m.omega = rng.uniform(0.5, 4.0);
                m.phase_t = rng.uniform(0, 2 * M_PI);
                m.amplitude = rng.normal();
                norm += m.amplitude * m.amplitude / 4;
            }
            double const scale = 0.8 / std::sqrt(norm);
            formula = [modes, scale](Point const& p) {
                double z = 0;
                double const lt = std::log(p.t);
                double const y0 = p.y[0];
                double const y1 = p.y.dim() == 2 ? p.y[1] : 0;
                for (auto const& m : modes)
                {
                    z += m.amplitude
                         * std::cos(2 * M_PI * (m.ky * y0 + m.kz * y1)
                                    + m.phase_y)
                         * std::cos(m.omega * lt + m.phase_t);
                }
                return std::exp(scale * z);
            };
            break;
        }
    }

    GridFunction f{spec};
    for (int k = 0; k < spec.levels(); ++k)
    {
        double const t = spec.height(k);
        auto r = box_levels(spec, k, shape.box.a2);
        if (t < shape.band_lo || t > shape.band_hi || r.lo < 0
            || r.hi >= spec.levels())
        {
            continue;
        }
        for (std::size_t b = 0; b < spec.boundary_size(); ++b)
            f(b, k) = formula(spec.cell_center(b, k));
    }
    return f;
}

//---------------------------------------------------------------------------//
// TEXT I/O
//---------------------------------------------------------------------------//
void write_grid(std::ostream& os,
                GridFunction const& f,
                std::string const& manifest)
{
    GridSpec const& spec = f.spec();
    os << spec.header() << '\n';
    if (!manifest.empty())
        os << "# " << manifest << '\n';
    int const ny = spec.ny();
    std::string line;
    for (int k = 0; k < spec.levels(); ++k)
    {
        for (std::size_t b = 0; b < spec.boundary_size(); ++b)
        {
            line = std::to_string(b % ny);
            if (spec.dim() == 2)
                line += "," + std::to_string(b / ny);
            line += "," + std::to_string(k) + "," + format_double(f(b, k));
            os << line << '\n';
        }
    }
}

namespace
{
std::vector<std::string> split_csv(std::string const& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(item);
    return out;
}

double parse_real(std::string const& s, std::size_t line_no)
{
    try
    {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used == s.size())
            return v;
    }
    catch (std::exception const&)
    {
    }
    throw InputError("grid file line " + std::to_string(line_no)
                     + ": bad number '" + s + "'");
}

long parse_int(std::string const& s, std::size_t line_no)
{
    try
    {
        std::size_t used = 0;
        long v = std::stol(s, &used);
        if (used == s.size())
            return v;
    }
    catch (std::exception const&)
    {
    }
    throw InputError("grid file line " + std::to_string(line_no)
                     + ": bad integer '" + s + "'");
}
}  // namespace

GridFunction read_grid(std::istream& is)
{
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(is, line))
        {
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.empty() || line[0] == '#')
                continue;
            return true;
        }
        return false;
    };

    if (!next_line())
        throw InputError("grid file is empty");
    auto head = split_csv(line);
    if (!head.empty() && head[0] == "n")
    {
        // Optional column-name line before the values
        if (!next_line())
            throw InputError("grid file has no header values");
        head = split_csv(line);
    }
    if (head.size() != 5)
    {
        throw InputError("grid header must be n,Ny,t_levels,t_min,t_max");
    }
    GridSpec spec{static_cast<int>(parse_int(head[0], line_no)),
                  static_cast<int>(parse_int(head[1], line_no)),
                  static_cast<int>(parse_int(head[2], line_no)),
                  parse_real(head[3], line_no),
                  parse_real(head[4], line_no)};

    GridFunction f{spec};
    std::vector<char> seen(spec.size(), 0);
    std::size_t const fields = spec.dim() == 1 ? 3 : 4;
    std::size_t count = 0;
    while (next_line())
    {
        auto cols = split_csv(line);
        if (cols.size() != fields)
        {
            throw InputError("grid file line " + std::to_string(line_no)
                             + ": expected " + std::to_string(fields)
                             + " fields");
        }
        long iy = parse_int(cols[0], line_no);
        long iz = spec.dim() == 2 ? parse_int(cols[1], line_no) : 0;
        long k = parse_int(cols[fields - 2], line_no);
        double v = parse_real(cols[fields - 1], line_no);
        if (iy < 0 || iy >= spec.ny() || iz < 0 || iz >= spec.ny() || k < 0
            || k >= spec.levels())
        {
            throw InputError("grid file line " + std::to_string(line_no)
                             + ": cell index out of range");
        }
        auto idx = spec.index(spec.boundary_index(iy, iz), k);
        if (seen[idx])
        {
            throw InputError("grid file line " + std::to_string(line_no)
                             + ": duplicate cell");
        }
        seen[idx] = 1;
        f.values()[idx] = v;
        ++count;
    }
    if (count != spec.size())
    {
        throw InputError("grid file has " + std::to_string(count)
                         + " cells, expected " + std::to_string(spec.size()));
    }
    return f;
}

void write_grid_file(std::string const& path,
                     GridFunction const& f,
                     std::string const& manifest)
{
    std::ofstream os(path);
    if (!os)
        throw InputError("cannot write '" + path + "'");
    write_grid(os, f, manifest);
}

GridFunction read_grid_file(std::string const& path)
{
    std::ifstream is(path);
    if (!is)
        throw InputError("cannot read '" + path + "'");
    return read_grid(is);
}

//---------------------------------------------------------------------------//
}  // namespace tent
