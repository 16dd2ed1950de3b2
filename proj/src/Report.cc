//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file Report.cc
//---------------------------------------------------------------------------//
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <istream>
#include <iterator>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "tent/Harness.hh"

namespace tent
{
namespace
{
std::string number(double v)
{
    if (std::isnan(v))
        return {};
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

double parse_number(std::string const& s)
{
    if (s.empty())
        return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf")
        return std::numeric_limits<double>::infinity();
    if (s == "-inf")
        return -std::numeric_limits<double>::infinity();
    try
    {
        return std::stod(s);
    }
    catch (std::exception const&)
    {
        throw InputError("bad number '" + s + "' in report");
    }
}

std::string csv_field(std::string const& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> csv_split(std::string const& line)
{
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i)
    {
        char c = line[i];
        if (quoted)
        {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"')
            {
                cur += '"';
                ++i;
            }
            else if (c == '"')
                quoted = false;
            else
                cur += c;
        }
        else if (c == '"')
            quoted = true;
        else if (c == ',')
        {
            out.push_back(cur);
            cur.clear();
        }
        else if (c != '\r')
            cur += c;
    }
    out.push_back(cur);
    return out;
}

nlohmann::json json_number(double v)
{
    if (std::isnan(v))
        return nullptr;
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return v;
}

double from_json_number(nlohmann::json const& j)
{
    if (j.is_null())
        return std::numeric_limits<double>::quiet_NaN();
    if (j.is_string())
        return parse_number(j.get<std::string>());
    return j.get<double>();
}

char const* const csv_header
    = "suite,check,anchor,status,constant,tolerance,seconds";
}  // namespace

//---------------------------------------------------------------------------//
void VerificationReport::add(std::string const& suite,
                             CheckResult check,
                             std::optional<double> seconds)
{
    if (check.anchor.empty())
        throw InputError("check '" + check.name + "' has no anchor");
    records_.push_back({suite, std::move(check), seconds});
}

bool VerificationReport::passed() const
{
    return failures() == 0;
}

std::size_t VerificationReport::failures() const
{
    std::size_t n = 0;
    for (auto const& r : records_)
        n += r.check.passed ? 0 : 1;
    return n;
}

void VerificationReport::write_csv(std::ostream& os) const
{
    os << csv_header << "\n";
    for (auto const& r : records_)
    {
        os << csv_field(r.suite) << ',' << csv_field(r.check.name) << ','
           << csv_field(r.check.anchor) << ','
           << (r.check.passed ? "pass" : "fail") << ','
           << number(r.check.constant) << ',' << number(r.check.tolerance)
           << ',';
        if (r.seconds)
        {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.3f", *r.seconds);
            os << buf;
        }
        os << "\n";
    }
}

void VerificationReport::write_json(std::ostream& os) const
{
    nlohmann::json out;
    out["passed"] = passed();
    out["failures"] = failures();
    auto& list = out["records"] = nlohmann::json::array();
    for (auto const& r : records_)
    {
        nlohmann::json j;
        j["suite"] = r.suite;
        j["check"] = r.check.name;
        j["anchor"] = r.check.anchor;
        j["status"] = r.check.passed ? "pass" : "fail";
        j["constant"] = json_number(r.check.constant);
        j["tolerance"] = json_number(r.check.tolerance);
        j["seconds"] = r.seconds ? nlohmann::json(*r.seconds)
                                 : nlohmann::json(nullptr);
        if (!r.check.witness.empty())
            j["witness"] = r.check.witness;
        list.push_back(std::move(j));
    }
    os << out.dump(2) << "\n";
}

VerificationReport VerificationReport::read(std::istream& is)
{
    std::string text{std::istreambuf_iterator<char>(is),
                     std::istreambuf_iterator<char>()};
    VerificationReport report;
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        throw InputError("empty report");

    if (text[first] == '{')
    {
        nlohmann::json j;
        try
        {
            j = nlohmann::json::parse(text);
            for (auto const& item : j.at("records"))
            {
                Record r;
                r.suite = item.at("suite").get<std::string>();
                r.check.name = item.at("check").get<std::string>();
                r.check.anchor = item.at("anchor").get<std::string>();
                r.check.passed = item.at("status").get<std::string>()
                                 == "pass";
                r.check.constant = from_json_number(item.at("constant"));
                r.check.tolerance = from_json_number(item.at("tolerance"));
                if (!item.at("seconds").is_null())
                    r.seconds = item.at("seconds").get<double>();
                if (item.contains("witness"))
                    r.check.witness = item["witness"].get<std::string>();
                report.records_.push_back(std::move(r));
            }
        }
        catch (nlohmann::json::exception const& e)
        {
            throw InputError(std::string("malformed JSON report: ")
                             + e.what());
        }
        return report;
    }

    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != csv_header)
        throw InputError("report does not start with the CSV header");
    int line_no = 1;
    while (std::getline(lines, line))
    {
        ++line_no;
        if (line.empty())
            continue;
        auto f = csv_split(line);
        if (f.size() != 7)
        {
            throw InputError("report line " + std::to_string(line_no)
                             + " has " + std::to_string(f.size())
                             + " fields, expected 7");
        }
        if (f[3] != "pass" && f[3] != "fail")
        {
            throw InputError("report line " + std::to_string(line_no)
                             + ": status must be pass or fail");
        }
        Record r;
        r.suite = f[0];
        r.check.name = f[1];
        r.check.anchor = f[2];
        r.check.passed = f[3] == "pass";
        r.check.constant = parse_number(f[4]);
        r.check.tolerance = parse_number(f[5]);
        if (!f[6].empty())
            r.seconds = parse_number(f[6]);
        report.records_.push_back(std::move(r));
    }
    return report;
}

void VerificationReport::render_summary(std::ostream& os) const
{
    struct Counts
    {
        std::size_t pass{0};
        std::size_t fail{0};
    };
    std::vector<std::string> order;
    std::map<std::string, Counts> counts;
    for (auto const& r : records_)
    {
        if (!counts.count(r.suite))
            order.push_back(r.suite);
        auto& c = counts[r.suite];
        (r.check.passed ? c.pass : c.fail) += 1;
    }

    os << std::left << std::setw(16) << "suite" << std::right << std::setw(8)
       << "checks" << std::setw(8) << "pass" << std::setw(8) << "fail"
       << "\n";
    for (auto const& name : order)
    {
        auto const& c = counts[name];
        os << std::left << std::setw(16) << name << std::right << std::setw(8)
           << c.pass + c.fail << std::setw(8) << c.pass << std::setw(8)
           << c.fail << "\n";
    }
    os << "\n" << records_.size() << " checks, " << failures() << " failed\n";
    for (auto const& r : records_)
    {
        if (r.check.passed)
            continue;
        os << "FAIL " << r.suite << " / " << r.check.name << " ["
           << r.check.anchor << "] constant=" << number(r.check.constant)
           << " tolerance=" << number(r.check.tolerance) << "\n";
        if (!r.check.witness.empty())
            os << "     witness: " << r.check.witness << "\n";
    }
}

//---------------------------------------------------------------------------//
}  // namespace tent
