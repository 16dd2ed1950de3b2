//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tent/Random.hh
//! \brief Platform-independent pseudo-random streams
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace tent
{
//---------------------------------------------------------------------------//
/*!
 * Seeded random stream with bit-reproducible draws.
 *
 * The engine is fully specified by the standard; the distributions here are
 * written out by hand because the library distributions are not.
 */
class Random
{
  public:
    explicit Random(std::uint64_t seed) : engine_{seed} {}

    //! Derive an independent stream for a (seed, stream) pair
    static Random stream(std::uint64_t seed, std::uint64_t stream)
    {
        // splitmix64 finalizer decorrelates adjacent seeds
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return Random{z ^ (z >> 31)};
    }

    //! Uniform in [0, 1) with 53 random bits
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }

    //! Uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    //! Log-uniform in [lo, hi)
    double log_uniform(double lo, double hi)
    {
        return lo * std::exp(std::log(hi / lo) * uniform());
    }

    //! Uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

    //! Standard normal via Box-Muller
    double normal()
    {
        double u1 = 0;
        do
        {
            u1 = uniform();
        } while (u1 <= 0);
        double u2 = uniform();
        return std::sqrt(-2 * std::log(u1)) * std::cos(2 * M_PI * u2);
    }

  private:
    std::mt19937_64 engine_;
};

//---------------------------------------------------------------------------//
}  // namespace tent
