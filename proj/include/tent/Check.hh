//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tent/Check.hh
//! \brief Common result and error types
//---------------------------------------------------------------------------//
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tent
{
//---------------------------------------------------------------------------//
//! Malformed or out-of-contract input
class InputError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

//! A function has mass too close to the edge of the height range
class SupportMarginError : public InputError
{
  public:
    using InputError::InputError;
};

//---------------------------------------------------------------------------//
/*!
 * Outcome of a single verification check.
 *
 * \c constant carries the empirical constant (or worst error) the check
 * measured; \c tolerance is the threshold it was compared against. A failed
 * check carries a human-readable witness.
 */
struct CheckResult
{
    std::string name;
    std::string anchor;
    bool passed{true};
    double constant{0};
    double tolerance{0};
    std::string witness;
};

using CheckList = std::vector<CheckResult>;

//---------------------------------------------------------------------------//
}  // namespace tent
