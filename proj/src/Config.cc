//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file Config.cc
//---------------------------------------------------------------------------//
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tent/Factorization.hh"
#include "tent/Harness.hh"

namespace tent
{
namespace
{
std::string trim(std::string const& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(std::string const& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
    {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Decimal, "a/b" or "a^b"
double parse_real(std::string const& key, std::string const& text)
{
    try
    {
        auto caret = text.find('^');
        if (caret != std::string::npos)
        {
            return std::pow(parse_real(key, trim(text.substr(0, caret))),
                            parse_real(key, trim(text.substr(caret + 1))));
        }
        if (text.find('/') != std::string::npos)
            return Rational::parse(text).to_double();
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size())
            throw ConfigError(key, "trailing characters in '" + text + "'");
        return v;
    }
    catch (ConfigError const&)
    {
        throw;
    }
    catch (std::exception const&)
    {
        throw ConfigError(key, "expected a number, got '" + text + "'");
    }
}

std::int64_t parse_int(std::string const& key, std::string const& text)
{
    std::size_t used = 0;
    long long v = 0;
    try
    {
        v = std::stoll(text, &used);
    }
    catch (std::exception const&)
    {
        throw ConfigError(key, "expected an integer, got '" + text + "'");
    }
    if (used != text.size())
        throw ConfigError(key, "expected an integer, got '" + text + "'");
    return v;
}

bool parse_bool(std::string const& key, std::string const& text)
{
    if (text == "true" || text == "1" || text == "yes")
        return true;
    if (text == "false" || text == "0" || text == "no")
        return false;
    throw ConfigError(key, "expected true or false, got '" + text + "'");
}

NormSpec parse_spec(std::string const& key, std::string const& text)
{
    try
    {
        return NormSpec::parse(text);
    }
    catch (InputError const& e)
    {
        throw ConfigError(key, e.what());
    }
}

std::string spec_list(std::vector<NormSpec> const& specs)
{
    std::string s;
    for (std::size_t i = 0; i < specs.size(); ++i)
        s += (i ? "; " : "") + specs[i].to_string();
    return s;
}

int checked_int(std::string const& key, std::string const& text)
{
    auto v = parse_int(key, text);
    if (v < -2147483647 || v > 2147483647)
        throw ConfigError(key, "value out of range");
    return static_cast<int>(v);
}

std::map<std::string, double> const& default_tolerances()
{
    static std::map<std::string, double> const t{{"functionals", 0.03},
                                                 {"coincidence", 0.2},
                                                 {"factorization", 0.2},
                                                 {"multiplication", 0.2},
                                                 {"measures", 0.05},
                                                 {"duality", 0.2}};
    return t;
}
}  // namespace

//---------------------------------------------------------------------------//
std::vector<std::string> const& suite_names()
{
    static std::vector<std::string> const names{"geometry",
                                                "functionals",
                                                "coincidence",
                                                "factorization",
                                                "multiplication",
                                                "measures",
                                                "duality"};
    return names;
}

RunConfig RunConfig::defaults()
{
    RunConfig cfg;
    cfg.set("specs",
            "2,2,2,0; 4,2,1,-1/2; inf,2,2,-1; 2,inf,3,-1/2; inf,inf,2,-1; "
            "3,1,none,0");
    cfg.set("suites", "all");
    cfg.set("factor_spec", "2,2,2,0");
    cfg.set("split_specs", "3,4,6,-1/2; 6,4,3,1/2");
    return cfg;
}

void RunConfig::set(std::string const& raw_key, std::string const& raw_value)
{
    std::string const key = trim(raw_key);
    std::string const value = trim(raw_value);
    if (value.empty())
        throw ConfigError(key, "missing value");

    if (key == "dim")
        dim = checked_int(key, value);
    else if (key == "ny")
        ny = checked_int(key, value);
    else if (key == "t_levels")
        t_levels = checked_int(key, value);
    else if (key == "t_min")
        t_min = parse_real(key, value);
    else if (key == "t_max")
        t_max = parse_real(key, value);
    else if (key == "alpha1")
        alpha1 = parse_real(key, value);
    else if (key == "alpha2")
        alpha2 = parse_real(key, value);
    else if (key == "aperture")
        aperture = parse_real(key, value);
    else if (key == "trials")
        trials = parse_int(key, value);
    else if (key == "seed")
    {
        auto v = parse_int(key, value);
        if (v < 0)
            throw ConfigError(key, "seed must be non-negative");
        seed = static_cast<std::uint64_t>(v);
    }
    else if (key == "output")
        output = value;
    else if (key == "timing")
        timing = parse_bool(key, value);
    else if (key == "functions")
        functions = checked_int(key, value);
    else if (key == "factor_corpus")
        factor_corpus = checked_int(key, value);
    else if (key == "measures")
        measures = checked_int(key, value);
    else if (key == "pairs")
        pairs = checked_int(key, value);
    else if (key == "specs")
    {
        specs.clear();
        for (auto const& item : split(value, ';'))
            specs.push_back(parse_spec(key, item));
    }
    else if (key == "factor_spec")
        factor_spec = parse_spec(key, value);
    else if (key == "split_specs")
    {
        auto items = split(value, ';');
        if (items.size() != 2)
            throw ConfigError(key, "expected two specs separated by ';'");
        split_first = parse_spec(key, items[0]);
        split_second = parse_spec(key, items[1]);
    }
    else if (key == "suites")
    {
        suites.clear();
        if (value == "all")
        {
            suites = suite_names();
            return;
        }
        for (auto const& item : split(value, ','))
        {
            auto const& names = suite_names();
            if (std::find(names.begin(), names.end(), item) == names.end())
                throw ConfigError(key, "unknown suite '" + item + "'");
            if (std::find(suites.begin(), suites.end(), item) != suites.end())
                throw ConfigError(key, "suite '" + item + "' listed twice");
            suites.push_back(item);
        }
    }
    else if (key.rfind("tolerance.", 0) == 0)
    {
        std::string suite = key.substr(10);
        if (!default_tolerances().count(suite))
        {
            throw ConfigError(key,
                              "no tunable tolerance for suite '" + suite
                                  + "'");
        }
        tolerances[suite] = parse_real(key, value);
    }
    else
    {
        throw ConfigError(key, "unknown key");
    }
}

RunConfig RunConfig::parse(std::istream& is)
{
    RunConfig cfg = defaults();
    std::string line;
    int line_no = 0;
    while (std::getline(is, line))
    {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
        {
            throw ConfigError("line " + std::to_string(line_no),
                              "expected key = value");
        }
        cfg.set(line.substr(0, eq), line.substr(eq + 1));
    }
    return cfg;
}

RunConfig RunConfig::load(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config", "cannot open '" + path + "'");
    return parse(in);
}

GridSpec RunConfig::grid() const
{
    if (dim != 1 && dim != 2)
        throw ConfigError("dim", "must be 1 or 2");
    if (ny < 2)
        throw ConfigError("ny", "must be at least 2");
    if (t_levels < 2)
        throw ConfigError("t_levels", "must be at least 2");
    if (!(t_min > 0))
        throw ConfigError("t_min", "must be positive");
    if (!(t_max > t_min) || !std::isfinite(t_max))
        throw ConfigError("t_max", "must be finite and exceed t_min");
    return GridSpec{dim, ny, t_levels, t_min, t_max};
}

WhitneyParams RunConfig::whitney() const
{
    try
    {
        return WhitneyParams{alpha1, alpha2};
    }
    catch (InputError const& e)
    {
        throw ConfigError("alpha1", e.what());
    }
}

std::vector<NormSpec> RunConfig::norm_specs() const
{
    std::vector<NormSpec> out = specs;
    for (auto& s : out)
    {
        s.aperture = aperture;
        s.whitney = whitney();
    }
    return out;
}

void RunConfig::validate() const
{
    GridSpec const g = grid();
    WhitneyParams const w = whitney();
    if (!(aperture > 0) || !std::isfinite(aperture))
        throw ConfigError("aperture", "must be positive");
    if (suites.empty())
        throw ConfigError("suites", "at least one suite is required");
    if (specs.empty())
        throw ConfigError("specs", "at least one norm spec is required");
    if (trials < 1)
        throw ConfigError("trials", "must be at least 1");
    if (functions < 1)
        throw ConfigError("functions", "must be at least 1");
    if (factor_corpus < 1)
        throw ConfigError("factor_corpus", "must be at least 1");
    if (measures < 1)
        throw ConfigError("measures", "must be at least 1");
    if (pairs < 1)
        throw ConfigError("pairs", "must be at least 1");
    for (auto const& [suite, tol] : tolerances)
    {
        if (!(tol > 0) || !std::isfinite(tol))
            throw ConfigError("tolerance." + suite, "must be positive");
    }
    if (!factor_spec.has_average())
        throw ConfigError("factor_spec", "needs a Whitney exponent r");
    try
    {
        NormSpec s0 = factor_spec, s1 = split_first, s2 = split_second;
        s0.whitney = s1.whitney = s2.whitney = w;
        check_holder_relation(s0, s1, s2);
    }
    catch (InputError const& e)
    {
        throw ConfigError("split_specs", e.what());
    }

    // Suites evaluate every derived aperture and the doubled aperture on the
    // grid and its refinement
    double widest
        = std::max(2 * aperture, derive_params(w).max_aperture());
    try
    {
        g.check_torus_safe(widest);
        g.refined().check_torus_safe(widest);
    }
    catch (InputError const& e)
    {
        throw ConfigError("t_max", e.what());
    }
}

double RunConfig::tolerance(std::string const& suite) const
{
    auto it = tolerances.find(suite);
    if (it != tolerances.end())
        return it->second;
    auto d = default_tolerances().find(suite);
    if (d == default_tolerances().end())
        throw ConfigError("tolerance." + suite, "suite has no tolerance");
    return d->second;
}

std::string RunConfig::to_string() const
{
    std::ostringstream os;
    os << "dim = " << dim << "\n"
       << "ny = " << ny << "\n"
       << "t_levels = " << t_levels << "\n"
       << "t_min = " << format_double(t_min) << "\n"
       << "t_max = " << format_double(t_max) << "\n"
       << "alpha1 = " << format_double(alpha1) << "\n"
       << "alpha2 = " << format_double(alpha2) << "\n"
       << "aperture = " << format_double(aperture) << "\n"
       << "specs = " << spec_list(specs) << "\n"
       << "factor_spec = " << factor_spec.to_string() << "\n"
       << "split_specs = " << split_first.to_string() << "; "
       << split_second.to_string() << "\n";
    os << "suites = ";
    for (std::size_t i = 0; i < suites.size(); ++i)
        os << (i ? "," : "") << suites[i];
    os << "\n"
       << "trials = " << trials << "\n"
       << "seed = " << seed << "\n"
       << "functions = " << functions << "\n"
       << "factor_corpus = " << factor_corpus << "\n"
       << "measures = " << measures << "\n"
       << "pairs = " << pairs << "\n";
    for (auto const& [suite, tol] : tolerances)
        os << "tolerance." << suite << " = " << format_double(tol) << "\n";
    os << "output = " << output << "\n"
       << "timing = " << (timing ? "true" : "false") << "\n";
    return os.str();
}

//---------------------------------------------------------------------------//
}  // namespace tent
