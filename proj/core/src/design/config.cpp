// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

#include "eotx/design/config.hpp"

#include "detail.hpp"
#include "eotx/constants.hpp"
#include "eotx/design/validate.hpp"
#include "eotx/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace eotx::design {

namespace detail {

std::optional<double> parse_number(std::string_view text)
{
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
        text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t'))
        text.remove_suffix(1);
    if (!text.empty() && text.front() == '+')
        text.remove_prefix(1);
    double v = 0.0;
    auto const [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
        return std::nullopt;
    return v;
}

std::optional<bool> parse_flag(std::string_view text)
{
    if (text == "1" || text == "true" || text == "yes")
        return true;
    if (text == "0" || text == "false" || text == "no")
        return false;
    return std::nullopt;
}

}  // namespace detail

namespace {

constexpr std::string_view kSweepPrefix = "sweep";

bool is_sweep_section(std::string_view section)
{
    return section == kSweepPrefix ||
           (section.size() > kSweepPrefix.size() + 1 && section.starts_with("sweep."));
}

std::string sweep_name(std::string_view section)
{
    return section == kSweepPrefix ? std::string{} : std::string(section.substr(6));
}

}  // namespace

RawConfig parse_config_text(std::string const& text)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream in(text);
    try
    {
        pt::read_ini(in, tree);
    }
    catch (pt::ini_parser_error const& e)
    {
        throw ConfigError(fmt::format("config line {}: {}", e.line(), e.message()));
    }

    RawConfig raw;
    for (auto const& [section, body] : tree)
    {
        if (body.empty())
            throw ConfigError(fmt::format("key '{}' is outside any [section]", section));
        for (auto const& [key, node] : body)
        {
            if (is_sweep_section(section))
                raw.sweeps[sweep_name(section)][key] = node.data();
            else
                raw.values[section + "." + key] = node.data();
        }
    }
    return raw;
}

RawConfig load_config_file(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void apply_override(RawConfig& raw, std::string_view assignment)
{
    auto const eq = assignment.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError(fmt::format("override '{}' is not of the form key=value", assignment));
    auto trim = [](std::string_view s) {
        while (!s.empty() && s.front() == ' ')
            s.remove_prefix(1);
        while (!s.empty() && s.back() == ' ')
            s.remove_suffix(1);
        return std::string(s);
    };
    std::string const key = trim(assignment.substr(0, eq));
    std::string const value = trim(assignment.substr(eq + 1));
    auto const dot = key.rfind('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == key.size())
        throw ConfigError(fmt::format("override key '{}' must be section.key", key));
    std::string const section = key.substr(0, dot);
    if (is_sweep_section(section))
        raw.sweeps[sweep_name(section)][key.substr(dot + 1)] = value;
    else
        raw.values[key] = value;
}

std::vector<KeySpec> const& key_registry()
{
    using K = ValueKind;
    static std::vector<KeySpec> const registry = {
        {"ring.fsr_hz", "Hz"},
        {"ring.n_eff", "1"},
        {"ring.n_g", "1"},
        {"ring.wavelength_m", "m"},
        {"coupler.phase_shifter_length_m", "m"},
        {"coupler.v_pi_l_v_m", "V m"},
        {"coupler.bias_v", "V"},
        {"microwave.frequency_hz", "Hz"},
        {"microwave.coverage_alpha", "1"},
        {"microwave.g_rad_s", "rad/s"},
        {"microwave.capacitance_f", "F"},
        {"material.n_e", "1"},
        {"material.r33_m_per_v", "m/V"},
        {"cross_section.config", "-", K::Text},
        {"cross_section.w_m", "m"},
        {"cross_section.h_m", "m"},
        {"cross_section.s1_m", "m"},
        {"cross_section.s2_m", "m"},
        {"cross_section.g_m", "m"},
        {"cross_section.l_side_m", "m"},
        {"cross_section.electrode_thickness_m", "m"},
        {"cross_section.drive_width_m", "m"},
        {"cross_section.ground_width_m", "m"},
        {"cross_section.device_margin_m", "m"},
        {"cross_section.padding_m", "m"},
        {"cross_section.stretch_length_m", "m"},
        {"cross_section.include_substrate", "-", K::Flag},
        {"cross_section.substrate_offset_m", "m"},
        {"cross_section.eps_ln_z", "1"},
        {"cross_section.eps_ln_xy", "1"},
        {"cross_section.eps_sio2", "1"},
        {"cross_section.eps_si", "1"},
        {"cross_section.resolution_per_um", "1/um"},
        {"cross_section.drive_voltage_v", "V"},
        {"cross_section.solver_tolerance", "1"},
        {"cross_section.max_iterations", "1"},
        {"budget.q_i_opt", "1"},
        {"budget.q_ex_opt", "1"},
        {"budget.q_i_m", "1"},
        {"budget.q_ex_m", "1"},
        {"budget.gamma_i_opt_rad_s", "rad/s"},
        {"budget.gamma_ex_opt_rad_s", "rad/s"},
        {"budget.gamma_i_m_rad_s", "rad/s"},
        {"budget.gamma_ex_m_rad_s", "rad/s"},
        {"pump.p_in_w", "W"},
        {"quasiparticle.film_volume_m3", "m^3"},
        {"quasiparticle.q_other", "1"},
        {"quasiparticle.al_gap_energy_j", "J"},
        {"quasiparticle.al_recombination_m3_per_s", "m^3/s"},
        {"quasiparticle.al_generation_efficiency", "1"},
        {"quasiparticle.al_thermal_density_m3", "m^-3"},
        {"quasiparticle.al_inverse_q_coeff_m3", "m^3"},
        {"quasiparticle.nb_gap_energy_j", "J"},
        {"quasiparticle.nb_recombination_m3_per_s", "m^3/s"},
        {"quasiparticle.nb_generation_efficiency", "1"},
        {"quasiparticle.nb_thermal_density_m3", "m^-3"},
        {"quasiparticle.nb_inverse_q_coeff_m3", "m^3"},
        {"dynamics.n_s", "1"},
        {"dynamics.a_m0", "1"},
        {"dynamics.periods", "1"},
        {"dynamics.samples", "1"},
        {"dynamics.tolerance", "1"},
        {"gfactor.fsr_start_hz", "Hz"},
        {"gfactor.fsr_stop_hz", "Hz"},
        {"gfactor.fsr_steps", "1"},
        {"qp.p_start_w", "W"},
        {"qp.p_stop_w", "W"},
        {"qp.p_steps", "1"},
        {"convert.detuning_span_rad_s", "rad/s"},
        {"convert.detuning_steps", "1"},
        {"convert.q_ex_opt_start", "1"},
        {"convert.q_ex_opt_stop", "1"},
        {"convert.q_ex_opt_steps", "1"},
    };
    return registry;
}

KeySpec const* find_key(std::string_view path)
{
    auto const& reg = key_registry();
    auto it = std::find_if(reg.begin(), reg.end(), [&](KeySpec const& k) { return k.path == path; });
    return it == reg.end() ? nullptr : &*it;
}

std::vector<std::string> sweepable_paths()
{
    std::vector<std::string> out;
    for (auto const& k : key_registry())
        if (k.kind == ValueKind::Number)
            out.emplace_back(k.path);
    return out;
}

std::vector<double> SweepBlock::points() const
{
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(std::max(steps, 0)));
    for (int k = 0; k < steps; ++k)
    {
        double const t = steps == 1 ? 0.0 : static_cast<double>(k) / (steps - 1);
        if (scale == SweepScale::Log)
            pts.push_back(start * std::pow(stop / start, t));
        else
            pts.push_back(start + (stop - start) * t);
    }
    if (steps > 1)
        pts.back() = stop;
    return pts;
}

namespace {

class Reader
{
  public:
    explicit Reader(RawConfig const& raw) : raw_(raw) {}

    std::optional<double> opt(std::string const& path) const
    {
        auto it = raw_.values.find(path);
        if (it == raw_.values.end())
            return std::nullopt;
        return detail::parse_number(it->second);
    }

    double num(std::string const& path, double fallback) const
    {
        return opt(path).value_or(fallback);
    }

    int integer(std::string const& path, int fallback) const
    {
        return static_cast<int>(std::lround(num(path, fallback)));
    }

  private:
    RawConfig const& raw_;
};

quasiparticle::SCMaterial read_sc(Reader const& r, std::string const& prefix,
                                  quasiparticle::SCMaterial m)
{
    std::string const p = "quasiparticle." + prefix + "_";
    m.gap_energy = r.num(p + "gap_energy_j", m.gap_energy);
    m.recombination_coeff = r.num(p + "recombination_m3_per_s", m.recombination_coeff);
    m.qp_generation_efficiency = r.num(p + "generation_efficiency", m.qp_generation_efficiency);
    m.thermal_qp_density = r.num(p + "thermal_density_m3", m.thermal_qp_density);
    m.qp_to_inverse_q = r.num(p + "inverse_q_coeff_m3", m.qp_to_inverse_q);
    return m;
}

}  // namespace

DesignConfig resolve_config(RawConfig const& raw)
{
    auto const diags = validate_config(raw);
    if (has_errors(diags))
    {
        std::string msg = "invalid configuration:";
        for (auto const& d : diags)
            if (d.severity == Severity::Error)
                msg += "\n  " + d.str();
        throw ConfigError(msg);
    }

    Reader const r(raw);
    DesignConfig cfg;

    cfg.ring.fsr_hz = *r.opt("ring.fsr_hz");
    cfg.ring.n_eff = *r.opt("ring.n_eff");
    cfg.ring.n_g = *r.opt("ring.n_g");
    if (auto wl = r.opt("ring.wavelength_m"))
        cfg.ring.omega0 = omega_from_wavelength(*wl);

    cfg.coupler.phase_shifter_length = *r.opt("coupler.phase_shifter_length_m");
    cfg.coupler.v_pi_l = *r.opt("coupler.v_pi_l_v_m");
    cfg.bias = r.opt("coupler.bias_v");
    if (cfg.bias)
        cfg.coupler.bias = *cfg.bias;

    cfg.omega_m = hz_to_rad(*r.opt("microwave.frequency_hz"));
    cfg.alpha = r.num("microwave.coverage_alpha", 1.0);
    cfg.g = r.opt("microwave.g_rad_s");
    cfg.capacitance = r.opt("microwave.capacitance_f");

    cfg.material.n_e = *r.opt("material.n_e");
    cfg.material.r33 = *r.opt("material.r33_m_per_v");

    if (raw.has("cross_section.config"))
    {
        electrostatics::CrossSection xs;
        xs.config = raw.values.at("cross_section.config") == "top_plus_side_grounds"
                        ? electrostatics::ElectrodeConfig::TopPlusSideGrounds
                        : electrostatics::ElectrodeConfig::ParallelPlates;
        xs.W = r.num("cross_section.w_m", xs.W);
        xs.H = r.num("cross_section.h_m", xs.H);
        xs.S1 = r.num("cross_section.s1_m", xs.S1);
        xs.S2 = r.num("cross_section.s2_m", xs.S2);
        xs.G = r.num("cross_section.g_m", xs.G);
        xs.L_side = r.num("cross_section.l_side_m", xs.L_side);
        xs.electrode_thickness = r.num("cross_section.electrode_thickness_m", xs.electrode_thickness);
        xs.drive_width = r.num("cross_section.drive_width_m", xs.drive_width);
        xs.ground_width = r.num("cross_section.ground_width_m", xs.ground_width);
        xs.device_margin = r.num("cross_section.device_margin_m", xs.device_margin);
        xs.padding = r.num("cross_section.padding_m", xs.padding);
        xs.stretch_length = r.num("cross_section.stretch_length_m", xs.stretch_length);
        if (auto it = raw.values.find("cross_section.include_substrate"); it != raw.values.end())
            xs.include_substrate = detail::parse_flag(it->second).value_or(false);
        xs.substrate_offset = r.num("cross_section.substrate_offset_m", xs.substrate_offset);
        xs.eps.ln_z = r.num("cross_section.eps_ln_z", xs.eps.ln_z);
        xs.eps.ln_xy = r.num("cross_section.eps_ln_xy", xs.eps.ln_xy);
        xs.eps.sio2 = r.num("cross_section.eps_sio2", xs.eps.sio2);
        xs.eps.si = r.num("cross_section.eps_si", xs.eps.si);
        cfg.cross_section = xs;
    }
    cfg.resolution = r.num("cross_section.resolution_per_um", cfg.resolution);
    cfg.drive_voltage = r.num("cross_section.drive_voltage_v", cfg.drive_voltage);
    cfg.solver_tolerance = r.num("cross_section.solver_tolerance", cfg.solver_tolerance);
    cfg.solver_max_iterations = r.integer("cross_section.max_iterations", cfg.solver_max_iterations);

    double const w_opt = cfg.ring.omega0;
    double const w_m = cfg.omega_m;
    auto rate = [&](std::string_view name, double omega) {
        std::string const qn = fmt::format("budget.q_{}", name);
        if (auto v = r.opt(qn))
            return omega / *v;
        return *r.opt(fmt::format("budget.gamma_{}_rad_s", name));
    };
    cfg.budget.gamma_i_opt = rate("i_opt", w_opt);
    cfg.budget.gamma_ex_opt = rate("ex_opt", w_opt);
    cfg.budget.gamma_i_m = rate("i_m", w_m);
    cfg.budget.gamma_ex_m = rate("ex_m", w_m);
    cfg.p_in = r.opt("pump.p_in_w");

    cfg.aluminum = read_sc(r, "al", cfg.aluminum);
    cfg.niobium = read_sc(r, "nb", cfg.niobium);
    cfg.film_volume = r.num("quasiparticle.film_volume_m3", cfg.film_volume);
    cfg.q_other = r.num("quasiparticle.q_other", cfg.q_other);

    auto& dy = cfg.dynamics;
    dy.n_s = r.num("dynamics.n_s", dy.n_s);
    dy.a_m0 = r.num("dynamics.a_m0", dy.a_m0);
    dy.periods = r.num("dynamics.periods", dy.periods);
    dy.samples = r.integer("dynamics.samples", dy.samples);
    dy.tolerance = r.num("dynamics.tolerance", dy.tolerance);

    auto range = [&](char const* start, char const* stop, char const* steps, RangeSettings d) {
        d.start = r.num(start, d.start);
        d.stop = r.num(stop, d.stop);
        d.steps = r.integer(steps, d.steps);
        return d;
    };
    cfg.gfactor_fsr = range("gfactor.fsr_start_hz", "gfactor.fsr_stop_hz", "gfactor.fsr_steps",
                            cfg.gfactor_fsr);
    cfg.qp_power = range("qp.p_start_w", "qp.p_stop_w", "qp.p_steps", cfg.qp_power);
    cfg.convert_q_ex_opt = range("convert.q_ex_opt_start", "convert.q_ex_opt_stop",
                                 "convert.q_ex_opt_steps", cfg.convert_q_ex_opt);
    cfg.convert_detuning_span = r.num("convert.detuning_span_rad_s", cfg.convert_detuning_span);
    cfg.convert_detuning_steps = r.integer("convert.detuning_steps", cfg.convert_detuning_steps);

    for (auto const& [name, body] : raw.sweeps)
    {
        SweepBlock s;
        s.name = name;
        s.variable = body.at("variable");
        s.start = *detail::parse_number(body.at("start"));
        s.stop = *detail::parse_number(body.at("stop"));
        s.steps = static_cast<int>(*detail::parse_number(body.at("steps")));
        auto it = body.find("scale");
        s.scale = (it != body.end() && it->second == "log") ? SweepScale::Log : SweepScale::Linear;
        cfg.sweeps.push_back(std::move(s));
    }
    return cfg;
}

}  // namespace eotx::design
