//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tent/Harness.hh
//! \brief Run configuration, verification suites and reports
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "Functionals.hh"

namespace tent
{
//---------------------------------------------------------------------------//
//! Invalid configuration; \c field names the offending key
class ConfigError : public InputError
{
  public:
    ConfigError(std::string field, std::string const& message)
        : InputError(field + ": " + message), field_{std::move(field)}
    {
    }
    std::string const& field() const { return field_; }

  private:
    std::string field_;
};

//! Names of the suites in their canonical run order
std::vector<std::string> const& suite_names();

//---------------------------------------------------------------------------//
/*!
 * Parameters of a verification run.
 *
 * The text form is a flat "key = value" file; '#' starts a comment. Norm
 * specs are separated by ';' and suites by ','.
 */
struct RunConfig
{
    // Grid and geometry
    int dim{1};
    int ny{256};
    int t_levels{64};
    double t_min{1.0 / 256};
    double t_max{1.0 / 8};
    double alpha1{0.25};
    double alpha2{2};
    double aperture{1};

    std::vector<NormSpec> specs;  //!< specs for the quasi-norm checks
    NormSpec factor_spec;  //!< s0 of the factorization suites
    NormSpec split_first;  //!< s1 of the general factorization
    NormSpec split_second;  //!< s2 of the general factorization
    std::vector<std::string> suites;
    std::int64_t trials{100000};
    std::uint64_t seed{20240601};
    std::map<std::string, double> tolerances;
    std::string output{"report"};
    bool timing{false};

    // Corpus sizes
    int functions{100};
    int factor_corpus{50};
    int measures{100};
    int pairs{100};

    //! Defaults used by the bundled config
    static RunConfig defaults();

    // Apply one key; throws ConfigError naming the key
    void set(std::string const& key, std::string const& value);

    // Read "key = value" lines on top of the defaults
    static RunConfig parse(std::istream& is);
    static RunConfig load(std::string const& path);

    // Throws ConfigError on the first broken invariant
    void validate() const;

    //! Primary tolerance of a suite (configured or default)
    double tolerance(std::string const& suite) const;

    //! Canonical text form (round-trips through parse)
    std::string to_string() const;

    // Built from the fields; throw ConfigError when inconsistent
    GridSpec grid() const;
    WhitneyParams whitney() const;

    //! Specs carrying the configured aperture and Whitney parameters
    std::vector<NormSpec> norm_specs() const;
};

//---------------------------------------------------------------------------//
struct Record
{
    std::string suite;
    CheckResult check;
    std::optional<double> seconds;
};

/*!
 * Ordered list of check records with CSV and JSON writers.
 *
 * A tolerance of NaN marks a record that only reports a constant.
 */
class VerificationReport
{
  public:
    void add(std::string const& suite,
             CheckResult check,
             std::optional<double> seconds = {});

    std::vector<Record> const& records() const { return records_; }
    bool passed() const;
    std::size_t failures() const;

    void write_csv(std::ostream& os) const;
    void write_json(std::ostream& os) const;

    // Read either format (JSON if the text starts with '{')
    static VerificationReport read(std::istream& is);

    // Per-suite counts followed by every failed record
    void render_summary(std::ostream& os) const;

  private:
    std::vector<Record> records_;
};

//---------------------------------------------------------------------------//
// Run every configured suite in canonical order
VerificationReport run_suite(RunConfig const& cfg);

// Run a single suite
CheckList run_named_suite(std::string const& name, RunConfig const& cfg,
                          std::vector<double>* seconds = nullptr);

//---------------------------------------------------------------------------//
// Lower bound on the multiplier norm of w from s1 into s0: the largest
// ||v w||_{s0} / ||v||_{s1} over seeded probes
double estimate_multiplier_norm(GridFunction const& w,
                                NormSpec const& s1,
                                NormSpec const& s0,
                                int probes,
                                std::uint64_t seed);

//---------------------------------------------------------------------------//
// FIXTURES
//---------------------------------------------------------------------------//
// Slab grid: n = 1, level heights rho^{k + 1/2} around 0.1 with rho = 2^{1/20}
// so the slab edges 0.1 and 0.2 fall halfway between levels
GridSpec slab_fixture_grid(int ny = 256);

// Indicator of 0.1 < t < 0.2
GridFunction slab_function(GridSpec const& spec);

//! Closed form sqrt(2 ln 2) of the slab norm for p = q = 2
double slab_closed_form();

// Default fixture set: slab, tent indicator, 3 lognormal and 2 bump mixes
std::vector<GridFunction> fixture_set(GridSpec const& spec,
                                      CorpusShape const& shape,
                                      std::uint64_t seed);

//---------------------------------------------------------------------------//
}  // namespace tent
