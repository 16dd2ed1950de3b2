//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tentspace.cpp
//! \brief Command-line driver: norms, factorizations and verification runs
//---------------------------------------------------------------------------//
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tent/Factorization.hh"
#include "tent/Harness.hh"

using namespace tent;

namespace
{
enum Exit
{
    exit_pass = 0,
    exit_check_failure = 1,
    exit_config_error = 2,
};

struct SpecFlags
{
    std::string p{"2"};
    std::string q{"2"};
    std::string r{"2"};
    std::string beta{"0"};
    double aperture{1};
    double alpha1{0.25};
    double alpha2{2};

    void add_to(CLI::App& app)
    {
        app.add_option("--p", p, "outer exponent (inf allowed)")
            ->capture_default_str();
        app.add_option("--q", q, "cone exponent (inf allowed)")
            ->capture_default_str();
        app.add_option("--r", r, "Whitney exponent; 'none' for no average")
            ->capture_default_str();
        app.add_option("--beta", beta, "weight exponent, e.g. -1/2")
            ->capture_default_str();
        app.add_option("--aperture", aperture, "cone aperture")
            ->capture_default_str();
        app.add_option("--alpha1", alpha1, "Whitney radius factor")
            ->capture_default_str();
        app.add_option("--alpha2", alpha2, "Whitney height factor")
            ->capture_default_str();
    }

    NormSpec spec() const
    {
        NormSpec s = NormSpec::parse(p + "," + q + "," + r + "," + beta);
        s.aperture = aperture;
        s.whitney = WhitneyParams{alpha1, alpha2};
        return s;
    }
};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

int run_norm(std::string const& file, SpecFlags const& flags)
{
    GridFunction f = read_grid_file(file);
    NormSpec s = flags.spec();
    f.spec().check_torus_safe(s.aperture);
    std::cout << fmt(tent_norm(f, s)) << "\n";
    return exit_pass;
}

int run_factorize(std::string const& file,
                  std::string const& which,
                  std::string const& ptilde,
                  SpecFlags const& flags,
                  std::string const& s1_text,
                  std::string const& s2_text,
                  std::string const& prefix)
{
    GridFunction u = read_grid_file(file);
    NormSpec s0 = flags.spec();
    std::optional<Rational> pt;
    if (!ptilde.empty())
        pt = Rational::parse(ptilde);

    Factorization fac;
    if (which == "F1")
        fac = factorize_F1(u, s0);
    else if (which == "F2")
        fac = factorize_F2(u, s0, pt);
    else if (which == "F3")
        fac = factorize_F3(u, s0, pt);
    else
    {
        if (s1_text.empty() || s2_text.empty())
            throw InputError("--which general needs --s1 and --s2");
        NormSpec s1 = NormSpec::parse(s1_text);
        NormSpec s2 = NormSpec::parse(s2_text);
        s1.aperture = s2.aperture = s0.aperture;
        s1.whitney = s2.whitney = s0.whitney;
        fac = factorize_general(u, s0, s1, s2, pt);
    }

    std::cout << "construction " << fac.construction << "\n"
              << "source " << s0.to_string() << " norm "
              << fmt(fac.source_norm) << "\n";
    for (std::size_t i = 0; i < fac.factors.size(); ++i)
    {
        std::string path = prefix + "_factor" + std::to_string(i + 1)
                           + ".grid";
        std::string manifest = "factor " + std::to_string(i + 1) + " of "
                               + fac.construction + " target "
                               + fac.targets[i].to_string() + " norm "
                               + fmt(fac.norms[i]);
        write_grid_file(path, fac.factors[i], manifest);
        std::cout << "factor " << i + 1 << " " << fac.targets[i].to_string()
                  << " norm " << fmt(fac.norms[i]) << " -> " << path << "\n";
    }
    std::string product_path = prefix + "_product.grid";
    write_grid_file(product_path,
                    fac.product(),
                    "product of the " + fac.construction + " factors");
    std::cout << "constant " << fmt(fac.constant()) << "\n"
              << "reconstruction error " << fmt(fac.reconstruction_error)
              << "\n";
    for (auto const& [name, value] : fac.extras)
        std::cout << name << " " << fmt(value) << "\n";
    std::cout << "product -> " << product_path << "\n";
    return exit_pass;
}

int run_verify(RunConfig cfg, std::vector<std::string> const& overrides)
{
    for (auto const& item : overrides)
    {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ConfigError(item, "override must be key=value");
        cfg.set(item.substr(0, eq), item.substr(eq + 1));
    }
    cfg.validate();

    auto start = std::chrono::steady_clock::now();
    VerificationReport report = run_suite(cfg);
    double seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();

    std::ofstream csv(cfg.output + ".csv");
    std::ofstream json(cfg.output + ".json");
    if (!csv || !json)
        throw ConfigError("output", "cannot write '" + cfg.output + ".*'");
    report.write_csv(csv);
    report.write_json(json);

    report.render_summary(std::cout);
    std::fprintf(stderr,
                 "wrote %s.csv and %s.json (%.1f s)\n",
                 cfg.output.c_str(),
                 cfg.output.c_str(),
                 seconds);
    return report.passed() ? exit_pass : exit_check_failure;
}

int run_report(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read '" + path + "'");
    VerificationReport::read(in).render_summary(std::cout);
    return exit_pass;
}

int run_generate(RunConfig const& cfg,
                 std::string const& generator,
                 std::uint64_t seed,
                 std::string const& out)
{
    if (generator == "slab-fixture")
    {
        write_grid_file(out,
                        slab_function(slab_fixture_grid(cfg.ny)),
                        "indicator of 0.1 < t < 0.2");
        return exit_pass;
    }
    GridSpec grid = cfg.grid();
    CorpusShape shape = CorpusShape::for_grid(grid, cfg.whitney().box());
    GridFunction f = random_function(grid, to_generator(generator), seed, shape);
    write_grid_file(out,
                    f,
                    generator + " seed " + std::to_string(seed));
    return exit_pass;
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Tent space norms, factorizations and verification"};
    app.require_subcommand(1);

    SpecFlags norm_flags;
    std::string norm_file;
    auto* norm = app.add_subcommand("norm", "print the quasi-norm of a grid");
    norm->add_option("grid-file", norm_file, "grid function file")
        ->required();
    norm_flags.add_to(*norm);

    SpecFlags fac_flags;
    std::string fac_file, which{"F1"}, ptilde, s1, s2, prefix{"factor"};
    auto* fac = app.add_subcommand("factorize",
                                   "factor a non-negative grid function");
    fac->add_option("grid-file", fac_file, "grid function file")->required();
    fac->add_option("--which", which, "construction")
        ->check(CLI::IsMember({"F1", "F2", "F3", "general"}))
        ->capture_default_str();
    fac->add_option("--ptilde", ptilde, "F2 exponent (default p0/2)");
    fac->add_option("--s1", s1, "first target p,q,r,beta (general)");
    fac->add_option("--s2", s2, "second target p,q,r,beta (general)");
    fac->add_option("--out-prefix", prefix, "prefix of the factor files")
        ->capture_default_str();
    fac_flags.add_to(*fac);

    std::string config_file;
    std::vector<std::string> overrides;
    std::string v_seed, v_trials, v_suites, v_output;
    bool v_timing = false;
    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--config", config_file, "key=value config file");
    verify->add_option("--seed", v_seed, "override seed");
    verify->add_option("--trials", v_trials, "override geometry trials");
    verify->add_option("--suites", v_suites, "override suites (comma list)");
    verify->add_option("--output", v_output, "override report path prefix");
    verify->add_flag("--timing", v_timing, "record wall time per check");
    verify->add_option("--set", overrides, "override any key: key=value");

    std::string report_file;
    auto* report = app.add_subcommand("report", "summarize a report file");
    report->add_option("report-file", report_file, "CSV or JSON report")
        ->required();

    std::string gen_name{"smooth-bump-mix"}, gen_out;
    std::uint64_t gen_seed = 1;
    std::string gen_config;
    auto* generate = app.add_subcommand("generate",
                                        "write a corpus function to a file");
    generate
        ->add_option("--generator",
                     gen_name,
                     "corpus generator name, or slab-fixture")
        ->capture_default_str();
    generate->add_option("--seed", gen_seed, "seed")->capture_default_str();
    generate->add_option("--config", gen_config, "grid from a config file");
    generate->add_option("--out", gen_out, "output grid file")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int code = app.exit(e);
        if (code == 0)
            return exit_pass;
        std::cerr << "\n" << app.help();
        return exit_config_error;
    }

    try
    {
        if (*norm)
            return run_norm(norm_file, norm_flags);
        if (*fac)
            return run_factorize(
                fac_file, which, ptilde, fac_flags, s1, s2, prefix);
        if (*verify)
        {
            RunConfig cfg = config_file.empty() ? RunConfig::defaults()
                                                : RunConfig::load(config_file);
            if (!v_seed.empty())
                overrides.insert(overrides.begin(), "seed=" + v_seed);
            if (!v_trials.empty())
                overrides.insert(overrides.begin(), "trials=" + v_trials);
            if (!v_suites.empty())
                overrides.insert(overrides.begin(), "suites=" + v_suites);
            if (!v_output.empty())
                overrides.insert(overrides.begin(), "output=" + v_output);
            if (v_timing)
                overrides.insert(overrides.begin(), "timing=true");
            return run_verify(cfg, overrides);
        }
        if (*report)
            return run_report(report_file);
        if (*generate)
        {
            RunConfig cfg = gen_config.empty() ? RunConfig::defaults()
                                               : RunConfig::load(gen_config);
            return run_generate(cfg, gen_name, gen_seed, gen_out);
        }
    }
    catch (ConfigError const& e)
    {
        std::cerr << "config error in " << e.what() << "\n";
        return exit_config_error;
    }
    catch (InputError const& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config_error;
    }
    return exit_config_error;
}
