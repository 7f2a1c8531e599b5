// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

#include "eotx/design/pipeline.hpp"

#include "eotx/constants.hpp"
#include "eotx/electrostatics.hpp"
#include "eotx/errors.hpp"
#include "eotx/open_system.hpp"
#include "eotx/quasiparticle.hpp"
#include "eotx/spectra.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

namespace eotx::design {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template<class F>
auto stage(char const* name, F&& f)
{
    try
    {
        return f();
    }
    catch (SolverFailure const& e)
    {
        throw SolverFailure(fmt::format("{} stage: {}", name, e.what()), e.residual_history());
    }
    catch (InvalidArgument const& e)
    {
        throw StageError(name, e.what());
    }
}

ReportValue computed(double v)
{
    return {v, Provenance::Computed};
}

}  // namespace

std::string_view to_string(Provenance p)
{
    switch (p)
    {
        case Provenance::Computed: return "computed";
        case Provenance::Config: return "config";
        case Provenance::Skipped: return "skipped";
    }
    return "?";
}

StageError::StageError(std::string stage, std::string const& what)
    : ConfigError(fmt::format("{} stage: {}", stage, what)), stage_(std::move(stage))
{
}

std::vector<ReportEntry> PipelineReport::entries() const
{
    return {
        {"bias_v", "V", bias_v},
        {"splitting_hz", "Hz", splitting_hz},
        {"e_mz_v_per_m", "V/m", e_mz_v_per_m},
        {"capacitance_per_length_f_per_m", "F/m", capacitance_per_length_f_per_m},
        {"capacitance_f", "F", capacitance_f},
        {"g_rad_s", "rad/s", g_rad_s},
        {"n_s", "1", n_s},
        {"cooperativity", "1", cooperativity},
        {"p_in_w", "W", p_in_w},
        {"p_scat_w", "W", p_scat_w},
        {"efficiency", "1", efficiency},
        {"n_qp_al_m3", "m^-3", n_qp_al_m3},
        {"q_al", "1", q_al},
        {"q_nb", "1", q_nb},
    };
}

coupling::FieldSummary solve_field(DesignConfig const& config)
{
    if (!config.cross_section)
        throw StageError("electrostatics", "no cross-section configured");
    return stage("electrostatics", [&] {
        electrostatics::SolverOptions opts;
        opts.tolerance = config.solver_tolerance;
        opts.max_iterations = config.solver_max_iterations;
        auto const sol = electrostatics::solve_cross_section(*config.cross_section, config.resolution,
                                                             opts, config.drive_voltage);
        return coupling::FieldSummary::from(sol);
    });
}

PipelineReport run_pipeline(DesignConfig const& config, coupling::FieldSummary const* field)
{
    PipelineReport rep;
    rep.omega_opt = config.ring.omega0;
    rep.omega_m = config.omega_m;
    rep.budget = config.budget;

    stage("spectra", [&] {
        spectra::validate(config.ring);
        spectra::CouplerParams coupler = config.coupler;
        if (config.bias)
        {
            rep.bias_v = {*config.bias, Provenance::Config};
        }
        else
        {
            coupler.bias = spectra::bias_for_target_splitting(config.ring, coupler, config.omega_m);
            rep.bias_v = computed(coupler.bias);
        }
        rep.splitting_hz = computed(rad_to_hz(spectra::splitting_at_bias(config.ring, coupler)));
    });

    double const electrode_length = config.alpha * config.ring.perimeter();
    if (config.g)
    {
        rep.e_mz_v_per_m = {kNaN, Provenance::Skipped};
        rep.capacitance_per_length_f_per_m = {kNaN, Provenance::Skipped};
        rep.capacitance_f = config.capacitance ? ReportValue{*config.capacitance, Provenance::Config}
                                               : ReportValue{kNaN, Provenance::Skipped};
        rep.g_rad_s = {*config.g, Provenance::Config};
    }
    else
    {
        coupling::FieldSummary const fs = field ? *field : solve_field(config);
        rep.e_mz_v_per_m = computed(fs.e_mz);
        rep.capacitance_per_length_f_per_m = computed(fs.capacitance_per_length);
        rep.capacitance_f = computed(fs.capacitance_per_length * electrode_length);
        stage("coupling", [&] {
            auto const cav = coupling::cavity_from_electrode(config.omega_m, rep.capacitance_f.value,
                                                             fs.drive_voltage);
            rep.g_rad_s = computed(coupling::g_uniform(config.material, config.ring.omega0, cav,
                                                       coupling::CoverageFactor(config.alpha), fs.e_mz));
        });
    }
    if (std::isfinite(rep.capacitance_f.value))
        if (auto d = capacitance_diagnostic(rep.capacitance_f.value))
            rep.diagnostics.push_back(*d);

    stage("open_system", [&] {
        namespace os = open_system;
        double const g = rep.g_rad_s.value;
        double const w = config.ring.omega0;
        os::validate(config.budget);
        rep.targets_unit_cooperativity = !config.p_in;
        if (config.p_in)
        {
            rep.p_in_w = {*config.p_in, Provenance::Config};
            rep.n_s = computed(os::pump_photons_from_power(*config.p_in, config.budget, w));
        }
        else
        {
            rep.p_in_w = computed(os::required_pump_power(config.budget, g, w));
            rep.n_s = computed(os::pump_photons_from_power(rep.p_in_w.value, config.budget, w));
        }
        os::OperatingPoint const op{g, rep.n_s.value, 0.0, config.budget, w, config.omega_m};
        rep.cooperativity = computed(os::cooperativity(op));
        rep.p_scat_w = computed(config.budget.gamma_i_opt * kHbar * w * rep.n_s.value);
        rep.efficiency = computed(rep.targets_unit_cooperativity ? os::conversion_efficiency(config.budget)
                                                                 : os::conversion_efficiency_at(op));
    });

    stage("quasiparticle", [&] {
        namespace qp = quasiparticle;
        qp::AbsorptionScenario const scen{rep.p_scat_w.value, config.film_volume};
        double const n_al = qp::steady_state_qp_density(config.aluminum, scen);
        double const n_nb = qp::steady_state_qp_density(config.niobium, scen);
        rep.n_qp_al_m3 = computed(n_al);
        rep.q_al = computed(qp::microwave_q_from_qp(config.aluminum, n_al, config.q_other));
        rep.q_nb = computed(qp::microwave_q_from_qp(config.niobium, n_nb, config.q_other));
    });
    return rep;
}

CsvTable report_table(PipelineReport const& report)
{
    CsvTable t({{"quantity", "-"}, {"unit", "-"}, {"value", "-"}, {"source", "-"}});
    for (auto const& e : report.entries())
        t.add_row({std::string(e.name), std::string(e.unit), e.value.value,
                   std::string(to_string(e.value.source))});
    return t;
}

}  // namespace eotx::design
