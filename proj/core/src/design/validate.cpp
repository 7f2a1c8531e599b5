// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

#include "eotx/design/validate.hpp"

#include "detail.hpp"
#include "eotx/constants.hpp"
#include "eotx/coupling.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <cmath>

namespace eotx::design {
namespace {

constexpr std::string_view kRequired[] = {
    "ring.fsr_hz",   "ring.n_eff",         "ring.n_g",
    "coupler.phase_shifter_length_m",      "coupler.v_pi_l_v_m",
    "microwave.frequency_hz",              "material.n_e",
    "material.r33_m_per_v",
};

constexpr std::string_view kIntegerKeys[] = {
    "cross_section.max_iterations", "dynamics.samples",       "gfactor.fsr_steps",
    "qp.p_steps",                   "convert.detuning_steps", "convert.q_ex_opt_steps",
};

class Collector
{
  public:
    void error(std::string path, std::string msg)
    {
        out.push_back({Severity::Error, std::move(path), std::move(msg)});
    }
    void warning(std::string path, std::string msg)
    {
        out.push_back({Severity::Warning, std::move(path), std::move(msg)});
    }
    std::vector<Diagnostic> out;
};

void check_sweep(Collector& c, std::string const& name,
                 std::map<std::string, std::string> const& body)
{
    std::string const where = name.empty() ? "sweep" : "sweep." + name;
    for (auto const& [key, value] : body)
        if (key != "variable" && key != "start" && key != "stop" && key != "steps" && key != "scale")
            c.error(where + "." + key, "unknown sweep key");

    auto var = body.find("variable");
    if (var == body.end())
    {
        c.error(where + ".variable", "missing field");
    }
    else
    {
        auto const* spec = find_key(var->second);
        if (!spec || spec->kind != ValueKind::Number)
        {
            auto const paths = sweepable_paths();
            c.error(where + ".variable",
                    fmt::format("unknown sweep variable '{}'; valid paths: {}", var->second,
                                fmt::join(paths, ", ")));
        }
    }

    std::optional<double> lo, hi;
    for (char const* key : {"start", "stop", "steps"})
    {
        auto it = body.find(key);
        if (it == body.end())
        {
            c.error(where + "." + key, "missing field");
            continue;
        }
        auto v = detail::parse_number(it->second);
        if (!v)
            c.error(where + "." + key, fmt::format("'{}' is not a number", it->second));
        else if (std::string_view(key) == "steps" && (*v < 1 || *v != std::floor(*v)))
            c.error(where + ".steps", "steps must be a positive integer");
        else if (std::string_view(key) == "start")
            lo = v;
        else if (std::string_view(key) == "stop")
            hi = v;
    }
    auto scale = body.find("scale");
    if (scale != body.end() && scale->second != "linear" && scale->second != "log")
        c.error(where + ".scale", fmt::format("scale must be 'linear' or 'log', got '{}'", scale->second));
    if (scale != body.end() && scale->second == "log" && lo && hi && !(*lo > 0 && *hi > 0))
        c.error(where + ".scale", "log sweeps need positive start and stop");
}

}  // namespace

std::string Diagnostic::str() const
{
    return fmt::format("{}: {}: {}", severity == Severity::Error ? "error" : "warning", path, message);
}

bool has_errors(std::vector<Diagnostic> const& diags)
{
    return std::any_of(diags.begin(), diags.end(),
                       [](Diagnostic const& d) { return d.severity == Severity::Error; });
}

std::optional<Diagnostic> capacitance_diagnostic(double capacitance_f)
{
    if (capacitance_f < coupling::kMinElectrodeCapacitance)
        return Diagnostic{Severity::Warning, "microwave.capacitance_f",
                          fmt::format("electrode capacitance {:.4g} fF is below the 40 fF minimum",
                                      capacitance_f * 1e15)};
    return std::nullopt;
}

std::vector<Diagnostic> validate_config(RawConfig const& raw)
{
    Collector c;
    auto num = [&](std::string const& path) -> std::optional<double> {
        auto it = raw.values.find(path);
        return it == raw.values.end() ? std::nullopt : detail::parse_number(it->second);
    };

    // Unknown keys and malformed values.
    for (auto const& [path, value] : raw.values)
    {
        auto const* spec = find_key(path);
        if (!spec)
        {
            c.error(path, "unknown key");
            continue;
        }
        switch (spec->kind)
        {
            case ValueKind::Number:
                if (!detail::parse_number(value))
                    c.error(path, fmt::format("'{}' is not a number", value));
                break;
            case ValueKind::Flag:
                if (!detail::parse_flag(value))
                    c.error(path, fmt::format("'{}' is not a boolean", value));
                break;
            case ValueKind::Text:
                if (value != "parallel_plates" && value != "top_plus_side_grounds")
                    c.error(path, fmt::format("'{}' is not one of parallel_plates, top_plus_side_grounds",
                                              value));
                break;
        }
    }
    for (auto key : kIntegerKeys)
        if (auto v = num(std::string(key)); v && (*v < 1 || *v != std::floor(*v)))
            c.error(std::string(key), "must be a positive integer");

    // Missing fields.
    for (auto key : kRequired)
        if (!raw.has(std::string(key)))
            c.error(std::string(key), "missing field");
    if (!raw.has("cross_section.config") && !raw.has("microwave.g_rad_s"))
        c.error("cross_section.config", "missing field (or give microwave.g_rad_s)");
    for (auto q : detail::kBudgetQuantities)
    {
        std::string const qk = fmt::format("budget.q_{}", q);
        std::string const gk = fmt::format("budget.gamma_{}_rad_s", q);
        if (!raw.has(qk) && !raw.has(gk))
            c.error(qk, fmt::format("missing field (or give {})", gk));
    }

    // Rates versus Q's.
    for (auto q : detail::kBudgetQuantities)
    {
        std::string const qk = fmt::format("budget.q_{}", q);
        std::string const gk = fmt::format("budget.gamma_{}_rad_s", q);
        if (raw.has(qk) && raw.has(gk))
            c.error(qk, fmt::format("both {} and {} given; use one", qk, gk));
        for (auto const& k : {qk, gk})
            if (auto v = num(k); v && !(*v > 0.0))
                c.error(k, fmt::format("must be positive (got {})", *v));
    }

    // Coupler branch.
    auto bias = num("coupler.bias_v");
    auto len = num("coupler.phase_shifter_length_m");
    auto vpl = num("coupler.v_pi_l_v_m");
    if (bias && len && vpl && *vpl > 0.0)
    {
        double const phi = kPi * *bias * *len / *vpl;
        if (!(std::abs(phi) < kPi))
            c.error("coupler.bias_v", fmt::format("phase {:.6g} rad leaves the |phi| < pi branch", phi));
    }

    if (auto cap = num("microwave.capacitance_f"))
        if (auto d = capacitance_diagnostic(*cap))
            c.out.push_back(*d);

    for (auto const& [name, body] : raw.sweeps)
        check_sweep(c, name, body);

    return std::move(c.out);
}

}  // namespace eotx::design
