//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file Rational.cc
//---------------------------------------------------------------------------//
#include "tent/Rational.hh"

#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "tent/Check.hh"

namespace tent
{
namespace
{
using wide = __int128;

std::int64_t narrow(wide value)
{
    if (value > std::numeric_limits<std::int64_t>::max()
        || value < std::numeric_limits<std::int64_t>::min())
    {
        throw std::overflow_error("rational arithmetic overflow");
    }
    return static_cast<std::int64_t>(value);
}

}  // namespace

Rational Rational::reduced(wide num, wide den)
{
    if (den == 0)
    {
        throw std::domain_error("rational with zero denominator");
    }
    if (den < 0)
    {
        num = -num;
        den = -den;
    }
    wide a = num < 0 ? -num : num;
    wide b = den;
    while (b != 0)
    {
        wide t = a % b;
        a = b;
        b = t;
    }
    if (a > 1)
    {
        num /= a;
        den /= a;
    }
    Rational result;
    result.num_ = narrow(num);
    result.den_ = narrow(den);
    return result;
}

namespace
{

std::int64_t pow10(int e)
{
    std::int64_t result = 1;
    for (int i = 0; i < e; ++i)
    {
        result = narrow(static_cast<wide>(result) * 10);
    }
    return result;
}

// Parse an unsigned decimal literal like "12.375e-2" into num/den
Rational parse_decimal(std::string_view text)
{
    if (text.empty())
    {
        throw InputError("empty number");
    }
    bool negative = false;
    std::size_t pos = 0;
    if (text[pos] == '+' || text[pos] == '-')
    {
        negative = (text[pos] == '-');
        ++pos;
    }
    wide mantissa = 0;
    int frac_digits = 0;
    bool any_digit = false;
    bool in_fraction = false;
    for (; pos < text.size(); ++pos)
    {
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c)))
        {
            mantissa = mantissa * 10 + (c - '0');
            if (mantissa > std::numeric_limits<std::int64_t>::max())
            {
                throw std::overflow_error("too many digits in '"
                                          + std::string(text) + "'");
            }
            any_digit = true;
            if (in_fraction)
                ++frac_digits;
        }
        else if (c == '.' && !in_fraction)
        {
            in_fraction = true;
        }
        else
        {
            break;
        }
    }
    if (!any_digit)
    {
        throw InputError("malformed number '" + std::string(text)
                                    + "'");
    }
    int exponent = -frac_digits;
    if (pos < text.size())
    {
        if (text[pos] != 'e' && text[pos] != 'E')
        {
            throw InputError("malformed number '"
                                        + std::string(text) + "'");
        }
        std::string rest{text.substr(pos + 1)};
        std::size_t used = 0;
        int e = 0;
        try
        {
            e = std::stoi(rest, &used);
        }
        catch (std::exception const&)
        {
            used = 0;
        }
        if (used != rest.size() || rest.empty())
        {
            throw InputError("malformed exponent in '"
                                        + std::string(text) + "'");
        }
        exponent += e;
    }
    if (negative)
        mantissa = -mantissa;
    if (exponent >= 0)
    {
        return Rational::reduced(mantissa * pow10(exponent), 1);
    }
    return Rational::reduced(mantissa, pow10(-exponent));
}

std::string trim(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string{s.substr(b, e - b)};
}
}  // namespace

//---------------------------------------------------------------------------//
Rational::Rational(std::int64_t num, std::int64_t den)
{
    *this = reduced(num, den);
}

//---------------------------------------------------------------------------//
Rational Rational::parse(std::string_view raw)
{
    std::string text = trim(raw);
    auto slash = text.find('/');
    if (slash == std::string::npos)
    {
        return parse_decimal(text);
    }
    Rational num = parse_decimal(trim(text.substr(0, slash)));
    Rational den = parse_decimal(trim(text.substr(slash + 1)));
    if (den.is_zero())
    {
        throw InputError("zero denominator in '" + text + "'");
    }
    return num / den;
}

//---------------------------------------------------------------------------//
Rational Rational::from_double(double value)
{
    if (!std::isfinite(value))
    {
        throw InputError("non-finite value has no rational form");
    }
    // Scale by powers of two until integral; doubles are dyadic rationals
    double scaled = value;
    std::int64_t den = 1;
    for (int i = 0; i < 62 && scaled != std::floor(scaled); ++i)
    {
        scaled *= 2;
        den *= 2;
    }
    if (scaled != std::floor(scaled)
        || std::fabs(scaled) > 9.0e18)
    {
        throw InputError("value is not a short binary fraction");
    }
    return Rational{static_cast<std::int64_t>(scaled), den};
}

//---------------------------------------------------------------------------//
std::string Rational::to_string() const
{
    if (den_ == 1)
        return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(Rational const& a, Rational const& b)
{
    return Rational::reduced(static_cast<wide>(a.num_) * b.den_
                      + static_cast<wide>(b.num_) * a.den_,
                  static_cast<wide>(a.den_) * b.den_);
}

Rational operator-(Rational const& a, Rational const& b)
{
    return a + (-b);
}

Rational operator*(Rational const& a, Rational const& b)
{
    return Rational::reduced(static_cast<wide>(a.num_) * b.num_,
                  static_cast<wide>(a.den_) * b.den_);
}

Rational operator/(Rational const& a, Rational const& b)
{
    if (b.is_zero())
    {
        throw std::domain_error("rational division by zero");
    }
    return Rational::reduced(static_cast<wide>(a.num_) * b.den_,
                  static_cast<wide>(a.den_) * b.num_);
}

bool operator<(Rational const& a, Rational const& b)
{
    return static_cast<wide>(a.num_) * b.den_
           < static_cast<wide>(b.num_) * a.den_;
}

std::ostream& operator<<(std::ostream& os, Rational const& r)
{
    return os << r.to_string();
}

//---------------------------------------------------------------------------//
// EXPONENT
//---------------------------------------------------------------------------//
Exponent Exponent::finite(Rational value)
{
    if (!value.is_positive())
    {
        throw InputError("exponent must be positive, got "
                                    + value.to_string());
    }
    return Exponent{Rational{1} / value};
}

Exponent Exponent::from_reciprocal(Rational reciprocal)
{
    if (reciprocal.is_negative())
    {
        throw InputError("exponent reciprocal must be >= 0");
    }
    return Exponent{reciprocal};
}

Exponent Exponent::parse(std::string_view raw)
{
    std::string text = trim(raw);
    if (text == "inf" || text == "infinity" || text == "Inf")
    {
        return infinity();
    }
    return finite(Rational::parse(text));
}

double Exponent::value() const
{
    if (this->is_infinite())
        return std::numeric_limits<double>::infinity();
    return static_cast<double>(recip_.den())
           / static_cast<double>(recip_.num());
}

Exponent Exponent::scaled_down(Rational theta) const
{
    if (!theta.is_positive())
    {
        throw InputError("exponent scale must be positive");
    }
    return Exponent{recip_ * theta};
}

Exponent Exponent::conjugate() const
{
    if (Rational{1} < recip_)
    {
        throw InputError("conjugate requires exponent >= 1");
    }
    return Exponent{Rational{1} - recip_};
}

std::string Exponent::to_string() const
{
    if (this->is_infinite())
        return "inf";
    return (Rational{1} / recip_).to_string();
}

Exponent holder_sum(Exponent const& a, Exponent const& b)
{
    return Exponent::from_reciprocal(a.reciprocal() + b.reciprocal());
}

//---------------------------------------------------------------------------//
}  // namespace tent
