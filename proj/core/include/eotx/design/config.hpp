// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

//! Design configuration: a line-oriented `key = value` file with `[section]`
//! headers. Every physical quantity carries its unit in the key name
//! (fsr_hz, r33_m_per_v, ...). Keys are addressed as "section.key".

#pragma once

#include "eotx/coupling.hpp"
#include "eotx/electrostatics.hpp"
#include "eotx/open_system.hpp"
#include "eotx/quasiparticle.hpp"
#include "eotx/spectra.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eotx::design {

/// Parsed but uninterpreted key/value pairs. `values` holds scalar keys as
/// "section.key"; sweep sections ("sweep" or "sweep.<name>") are kept apart.
struct RawConfig
{
    std::map<std::string, std::string> values;
    std::map<std::string, std::map<std::string, std::string>> sweeps;

    bool has(std::string const& path) const { return values.count(path) != 0; }
};

/// Throws ConfigError on syntax errors, keys outside a section and
/// duplicate keys.
RawConfig parse_config_text(std::string const& text);
RawConfig load_config_file(std::filesystem::path const& path);

/// Apply "section.key=value" (or "sweep.<name>.key=value").
void apply_override(RawConfig& raw, std::string_view assignment);

enum class ValueKind
{
    Number,
    Text,
    Flag,
};

struct KeySpec
{
    std::string_view path;
    std::string_view unit;  //!< "1" dimensionless, "-" for text and flags
    ValueKind kind = ValueKind::Number;
};

/// Every recognised scalar key, in canonical order.
std::vector<KeySpec> const& key_registry();
KeySpec const* find_key(std::string_view path);
/// Numeric keys, i.e. the valid sweep variables.
std::vector<std::string> sweepable_paths();

enum class SweepScale
{
    Linear,
    Log,
};

struct SweepBlock
{
    std::string name;  //!< "" for a bare [sweep] section
    std::string variable;
    double start = 0.0;
    double stop = 0.0;
    int steps = 0;
    SweepScale scale = SweepScale::Linear;

    std::vector<double> points() const;
};

struct DynamicsSettings
{
    double n_s = 1e6;
    double a_m0 = 1.0;
    double periods = 4.0;  //!< simulate this many swap times
    int samples = 401;
    double tolerance = 1e-12;
};

struct RangeSettings
{
    double start = 0.0;
    double stop = 0.0;
    int steps = 0;
};

struct DesignConfig
{
    spectra::RingParams ring;
    spectra::CouplerParams coupler;
    std::optional<double> bias;  //!< V; when absent the bias is solved for omega_m

    std::optional<electrostatics::CrossSection> cross_section;
    double resolution = 20.0;  //!< cells per micron
    double drive_voltage = 1.0;
    double solver_tolerance = 1e-8;
    int solver_max_iterations = 200000;

    coupling::EOMaterial material;
    double omega_m = 0.0;  //!< rad/s
    double alpha = 1.0;
    std::optional<double> g;            //!< rad/s, bypasses the field solve
    std::optional<double> capacitance;  //!< F, only used alongside g

    open_system::LossBudget budget;
    std::optional<double> p_in;  //!< W; when absent the pipeline targets C = 1

    quasiparticle::SCMaterial aluminum = quasiparticle::SCMaterial::aluminum();
    quasiparticle::SCMaterial niobium = quasiparticle::SCMaterial::niobium();
    double film_volume = 1e-13;
    double q_other = quasiparticle::kDefaultQOther;

    DynamicsSettings dynamics;
    RangeSettings gfactor_fsr{50e9, 300e9, 26};
    RangeSettings qp_power{1e-9, 1e-3, 61};
    double convert_detuning_span = 0.0;  //!< rad/s, 0 selects 3 gamma_M
    int convert_detuning_steps = 201;
    RangeSettings convert_q_ex_opt{1e5, 1e9, 41};

    std::vector<SweepBlock> sweeps;
};

/// Validate then interpret. Throws ConfigError listing every error
/// diagnostic when validation fails.
DesignConfig resolve_config(RawConfig const& raw);

}  // namespace eotx::design
