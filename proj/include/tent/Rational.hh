//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tent/Rational.hh
//! \brief Exact rational arithmetic for exponents and weights
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace tent
{
//---------------------------------------------------------------------------//
/*!
 * Reduced fraction with a positive denominator.
 *
 * Arithmetic is checked: any intermediate that does not fit in 64 bits
 * throws \c std::overflow_error rather than silently wrapping.
 */
class Rational
{
  public:
    //! Zero
    constexpr Rational() = default;

    //! Integer value
    constexpr Rational(std::int64_t value) : num_{value} {}

    // Construct and reduce; den must be nonzero
    Rational(std::int64_t num, std::int64_t den);

    // Reduce a wide fraction, throwing if the result overflows
    static Rational reduced(__int128 num, __int128 den);

    // Parse "3", "-1/2", "0.75", "1e-2" exactly
    static Rational parse(std::string_view text);

    // Exact conversion of a double that is a short binary fraction
    static Rational from_double(double value);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const
    {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_positive() const { return num_ > 0; }

    std::string to_string() const;

    friend Rational operator+(Rational const& a, Rational const& b);
    friend Rational operator-(Rational const& a, Rational const& b);
    friend Rational operator*(Rational const& a, Rational const& b);
    friend Rational operator/(Rational const& a, Rational const& b);
    friend Rational operator-(Rational const& a) { return {-a.num_, a.den_}; }

    friend bool operator==(Rational const& a, Rational const& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator<(Rational const& a, Rational const& b);
    friend bool operator<=(Rational const& a, Rational const& b)
    {
        return !(b < a);
    }
    friend bool operator>(Rational const& a, Rational const& b)
    {
        return b < a;
    }
    friend bool operator>=(Rational const& a, Rational const& b)
    {
        return !(a < b);
    }

  private:
    std::int64_t num_{0};
    std::int64_t den_{1};
};

std::ostream& operator<<(std::ostream& os, Rational const& r);

//---------------------------------------------------------------------------//
/*!
 * Extended exponent in (0, infinity], stored through its reciprocal.
 *
 * Infinity is the zero reciprocal, so Hölder bookkeeping
 * \f$ 1/e_0 = 1/e_1 + 1/e_2 \f$ is plain rational addition.
 */
class Exponent
{
  public:
    // Finite exponent from an exact rational value (must be positive)
    static Exponent finite(Rational value);
    static Exponent from_reciprocal(Rational reciprocal);
    static Exponent infinity() { return Exponent{Rational{0}}; }

    // Parse "inf", "2", "4/3", "0.5"
    static Exponent parse(std::string_view text);

    //! Default is 1
    Exponent() = default;

    //! Integer exponent
    Exponent(int value) : Exponent{finite(Rational{value})} {}

    bool is_infinite() const { return recip_.is_zero(); }
    Rational reciprocal() const { return recip_; }

    // Value as a double (infinity for the infinite exponent)
    double value() const;

    // Exponent divided by a positive rational scale (p -> p / theta)
    Exponent scaled_down(Rational theta) const;

    // Hölder conjugate: 1/p' = 1 - 1/p (requires p >= 1)
    Exponent conjugate() const;

    std::string to_string() const;

    friend bool operator==(Exponent const& a, Exponent const& b)
    {
        return a.recip_ == b.recip_;
    }
    //! Ordering of the exponents (not the reciprocals)
    friend bool operator<(Exponent const& a, Exponent const& b)
    {
        return b.recip_ < a.recip_;
    }

  private:
    explicit Exponent(Rational recip) : recip_{recip} {}

    Rational recip_{1};
};

// Hölderian combination: 1/result = 1/a + 1/b
Exponent holder_sum(Exponent const& a, Exponent const& b);

//---------------------------------------------------------------------------//
}  // namespace tent
