// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

#include "eotx/errors.hpp"

#include <fmt/format.h>

#include <utility>

namespace eotx {

FeatureUnderResolvedError::FeatureUnderResolvedError(std::string dimension,
                                                     double cells)
    : InvalidArgument(fmt::format(
          "feature '{}' spans only {:.3g} cells (need at least 3); "
          "increase the mesh resolution",
          dimension, cells)),
      dimension_(std::move(dimension)),
      cells_(cells)
{
}

SolverFailure::SolverFailure(std::string const& what,
                             std::vector<double> residual_history)
    : std::runtime_error(what), history_(std::move(residual_history))
{
}

}  // namespace eotx
