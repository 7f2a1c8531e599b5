// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string_view>

namespace eotx::design::detail {

/// Whole-string floating point parse; nullopt on trailing garbage.
std::optional<double> parse_number(std::string_view text);
/// Accepts true/false/1/0/yes/no.
std::optional<bool> parse_flag(std::string_view text);

inline constexpr std::string_view kBudgetQuantities[] = {"i_opt", "ex_opt", "i_m", "ex_m"};

}  // namespace eotx::design::detail
