// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "eotx/csv.hpp"
#include "eotx/design/config.hpp"

namespace eotx::design {

/// Evaluate the pipeline at every point of `block`. Points are dispatched to
/// `threads` workers (0 = hardware concurrency); rows come back in input
/// order. The field solve is shared across points unless the swept variable
/// changes the cross-section. Throws ConfigError for an unknown variable,
/// listing the valid paths.
CsvTable run_sweep(RawConfig const& raw, SweepBlock const& block, unsigned threads = 0);

/// Look up a sweep block by name ("" for a bare [sweep] section).
SweepBlock const& find_sweep(DesignConfig const& config, std::string const& name);

}  // namespace eotx::design
