// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace eotx {

/// Bad argument to a pure physics function (negative rate, empty range...).
class InvalidArgument : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/// Coupler phase outside the principal branch |phi| < pi.
class OutOfBranchError : public InvalidArgument
{
  public:
    using InvalidArgument::InvalidArgument;
};

/// A requested supermode splitting would need |phi| >= pi.
class UnreachableSplittingError : public InvalidArgument
{
  public:
    using InvalidArgument::InvalidArgument;
};

/// A cross-section feature spans fewer cells than the mesh requires.
class FeatureUnderResolvedError : public InvalidArgument
{
  public:
    FeatureUnderResolvedError(std::string dimension, double cells);

    const std::string& dimension() const noexcept { return dimension_; }
    double cells() const noexcept { return cells_; }

  private:
    std::string dimension_;
    double cells_;
};

/// Iterative field solve did not reach its tolerance.
class SolverFailure : public std::runtime_error
{
  public:
    SolverFailure(std::string const& what, std::vector<double> residual_history);

    const std::vector<double>& residual_history() const noexcept
    {
        return history_;
    }

  private:
    std::vector<double> history_;
};

/// Adaptive ODE integration could not keep its step size above the floor.
class StiffnessError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent design configuration.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace eotx
