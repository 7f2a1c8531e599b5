// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

#include "eotx/design/sweep.hpp"

#include "eotx/design/pipeline.hpp"
#include "eotx/errors.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>

namespace eotx::design {

SweepBlock const& find_sweep(DesignConfig const& config, std::string const& name)
{
    for (auto const& s : config.sweeps)
        if (s.name == name)
            return s;
    std::vector<std::string> names;
    for (auto const& s : config.sweeps)
        names.push_back(s.name.empty() ? "(unnamed)" : s.name);
    throw ConfigError(fmt::format("no sweep named '{}'; available: {}", name,
                                  names.empty() ? std::string("none") : fmt::format("{}", fmt::join(names, ", "))));
}

CsvTable run_sweep(RawConfig const& raw, SweepBlock const& block, unsigned threads)
{
    auto const* spec = find_key(block.variable);
    if (!spec || spec->kind != ValueKind::Number)
        throw ConfigError(fmt::format("unknown sweep variable '{}'; valid paths: {}", block.variable,
                                      fmt::join(sweepable_paths(), ", ")));
    auto const points = block.points();
    if (points.empty())
        throw ConfigError("sweep has no points");

    std::vector<DesignConfig> configs;
    configs.reserve(points.size());
    for (double v : points)
    {
        RawConfig r = raw;
        r.values[block.variable] = format_number(v);
        configs.push_back(resolve_config(r));
    }

    std::optional<coupling::FieldSummary> shared;
    bool const geometry_varies = block.variable.starts_with("cross_section.");
    if (!geometry_varies && !configs.front().g)
        shared = solve_field(configs.front());

    std::vector<std::optional<PipelineReport>> reports(points.size());
    std::vector<std::exception_ptr> errors(points.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next++; k < points.size(); k = next++)
        {
            try
            {
                reports[k] = run_pipeline(configs[k], shared ? &*shared : nullptr);
            }
            catch (...)
            {
                errors[k] = std::current_exception();
            }
        }
    };
    unsigned n = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    n = static_cast<unsigned>(std::min<std::size_t>(n, points.size()));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n; ++t)
        pool.emplace_back(work);
    work();
    pool.clear();

    for (auto const& e : errors)
        if (e)
            std::rethrow_exception(e);

    std::vector<CsvColumn> cols{{block.variable, std::string(spec->unit)}};
    for (auto const& e : reports.front()->entries())
        cols.push_back({std::string(e.name), std::string(e.unit)});
    cols.push_back({"optical_regime", "-"});
    CsvTable table(std::move(cols));
    for (std::size_t k = 0; k < points.size(); ++k)
    {
        std::vector<CsvCell> row{points[k]};
        for (auto const& e : reports[k]->entries())
            row.emplace_back(e.value.value);
        row.emplace_back(std::string(to_string(open_system::optical_regime(reports[k]->budget))));
        table.add_row(std::move(row));
    }
    return table;
}

}  // namespace eotx::design
