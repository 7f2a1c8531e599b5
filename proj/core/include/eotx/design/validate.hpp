// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "eotx/design/config.hpp"

#include <string>
#include <vector>

namespace eotx::design {

enum class Severity
{
    Warning,
    Error,
};

struct Diagnostic
{
    Severity severity = Severity::Error;
    std::string path;
    std::string message;

    std::string str() const;
};

/// Static checks on a raw config, in a stable order: unknown keys,
/// malformed values, missing fields (registry order), rate/Q conflicts,
/// non-positive rates, phase-branch violations, electrode capacitance.
std::vector<Diagnostic> validate_config(RawConfig const& raw);

/// Warning when an electrode capacitance falls below 40 fF.
std::optional<Diagnostic> capacitance_diagnostic(double capacitance_f);

bool has_errors(std::vector<Diagnostic> const& diags);

}  // namespace eotx::design
