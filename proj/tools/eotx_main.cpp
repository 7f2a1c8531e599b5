// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

// eotx: command-line front end for the transducer design chain.
//
//   eotx <verb> CONFIG [--out DIR] [--set section.key=value ...]
//
// Exit codes: 0 success, 2 configuration error, 3 solver failure.

#include "eotx/closed_dynamics.hpp"
#include "eotx/constants.hpp"
#include "eotx/coupling.hpp"
#include "eotx/design/config.hpp"
#include "eotx/design/pipeline.hpp"
#include "eotx/design/sweep.hpp"
#include "eotx/design/validate.hpp"
#include "eotx/electrostatics.hpp"
#include "eotx/errors.hpp"
#include "eotx/open_system.hpp"
#include "eotx/quasiparticle.hpp"
#include "eotx/spectra.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace eotx;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct Options
{
    std::string config;
    std::string out = ".";
    std::vector<std::string> overrides;
    std::string sweep;
    unsigned threads = 0;
};

struct Context
{
    design::RawConfig raw;
    design::DesignConfig cfg;
    fs::path out;
};

Context load(Options const& opt)
{
    Context ctx;
    ctx.raw = design::load_config_file(opt.config);
    for (auto const& s : opt.overrides)
        design::apply_override(ctx.raw, s);
    for (auto const& d : design::validate_config(ctx.raw))
        if (d.severity == design::Severity::Warning)
            fmt::print(stderr, "{}\n", d.str());
    ctx.cfg = design::resolve_config(ctx.raw);
    ctx.out = opt.out;
    fs::create_directories(ctx.out);
    std::ofstream info(ctx.out / "run_info.txt", std::ios::binary);
    info << "eotx " << EOTX_VERSION << "\n";
    return ctx;
}

void write_table(Context const& ctx, std::string const& name, CsvTable const& table)
{
    auto const path = ctx.out / name;
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw ConfigError(fmt::format("cannot write '{}'", path.string()));
    table.write(f);
    fmt::print("wrote {}\n", path.string());
}

void report_diagnostics(design::PipelineReport const& rep)
{
    for (auto const& d : rep.diagnostics)
        fmt::print(stderr, "{}\n", d.str());
}

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        v[k] = n == 1 ? a : a + (b - a) * k / (n - 1);
    return v;
}

std::vector<double> logspace(double a, double b, int n)
{
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        v[k] = n == 1 ? a : a * std::pow(b / a, static_cast<double>(k) / (n - 1));
    return v;
}

void run_tune(Context const& ctx)
{
    auto const& c = ctx.cfg;
    auto coupler = c.coupler;
    double const bias = c.bias ? *c.bias : spectra::bias_for_target_splitting(c.ring, coupler, c.omega_m);
    fmt::print("bias_v = {}\n", format_number(bias));
    CsvTable t({{"bias_v", "V"}, {"phase_rad", "rad"}, {"splitting_hz", "Hz"}});
    for (double v : linspace(0.0, 2.0 * std::abs(bias), 101))
    {
        coupler.bias = v;
        double const phi = spectra::phase_from_bias(coupler);
        if (!(std::abs(phi) < kPi))
            break;
        t.add_row({v, phi, rad_to_hz(spectra::splitting_at_bias(c.ring, coupler))});
    }
    write_table(ctx, "tuning.csv", t);
}

void run_fields(Context const& ctx)
{
    auto const& c = ctx.cfg;
    if (!c.cross_section)
        throw ConfigError("fields: no [cross_section] configured");
    electrostatics::SolverOptions opts;
    opts.tolerance = c.solver_tolerance;
    opts.max_iterations = c.solver_max_iterations;
    auto const sol = electrostatics::solve_cross_section(*c.cross_section, c.resolution, opts, c.drive_voltage);
    CsvTable s({{"e_mz_v_per_m", "V/m"},
                {"capacitance_per_length_f_per_m", "F/m"},
                {"energy_per_length_j_per_m", "J/m"},
                {"iterations", "1"},
                {"relative_residual", "1"}});
    s.add_row({sol.e_mz_center, sol.capacitance_per_length, sol.energy_per_length,
               static_cast<double>(sol.iterations), sol.residual});
    write_table(ctx, "field_summary.csv", s);
    auto const path = ctx.out / "field.csv";
    std::ofstream f(path, std::ios::binary);
    electrostatics::write_field_csv(f, sol);
    fmt::print("wrote {}\n", path.string());
}

void run_gfactor(Context const& ctx)
{
    auto const& c = ctx.cfg;
    auto const field = design::solve_field(c);
    coupling::GCurveInputs in{c.material, c.ring.omega0, c.ring.n_g, c.omega_m, c.alpha};
    auto const fsr = linspace(c.gfactor_fsr.start, c.gfactor_fsr.stop, c.gfactor_fsr.steps);
    write_table(ctx, "gfactor.csv", coupling::g_curve_table(coupling::g_vs_fsr(field, in, fsr)));
}

void run_dynamics(Context const& ctx)
{
    auto const& c = ctx.cfg;
    double const g = design::run_pipeline(c).g_rad_s.value;
    auto const& d = c.dynamics;
    dynamics::ClosedState s0{std::sqrt(d.n_s), 0.0, d.a_m0, 0.0};
    double const t_end = d.periods * dynamics::swap_time(g, d.n_s);
    dynamics::IntegratorOptions io;
    io.tolerance = d.tolerance;
    auto const traj = dynamics::integrate_full(s0, g, t_end, d.samples, io);
    write_table(ctx, "trajectory.csv", dynamics::trajectory_table(traj));
}

void run_convert(Context const& ctx)
{
    namespace os = open_system;
    auto const& c = ctx.cfg;
    auto const rep = design::run_pipeline(c);
    report_diagnostics(rep);
    os::OperatingPoint const op{rep.g_rad_s.value, rep.n_s.value, 0.0, c.budget, c.ring.omega0, c.omega_m};
    double const span = c.convert_detuning_span > 0 ? c.convert_detuning_span : 3.0 * c.budget.gamma_m();
    CsvTable t({{"detuning_rad_s", "rad/s"},
                {"abs2_in_m", "1"},
                {"abs2_vac_m", "1"},
                {"abs2_vac_wg", "1"},
                {"abs2_vac_loss", "1"},
                {"abs2_sum", "1"}});
    for (double w : linspace(-span, span, c.convert_detuning_steps))
    {
        auto const row = os::transfer_coefficients(op, w, os::Target::S_out);
        t.add_row({w, std::norm(row.in_m), std::norm(row.vac_m), std::norm(row.vac_wg),
                   std::norm(row.vac_loss), row.power_sum()});
    }
    write_table(ctx, "transfer.csv", t);

    auto const q = c.budget.q_factors(c.ring.omega0, c.omega_m);
    auto const range = logspace(c.convert_q_ex_opt.start, c.convert_q_ex_opt.stop, c.convert_q_ex_opt.steps);
    write_table(ctx, "coupling_sweep.csv",
                os::coupling_sweep_table(os::coupling_sweep(q, rep.g_rad_s.value, c.ring.omega0, c.omega_m, range)));
}

void run_sweeps(Context const& ctx, Options const& opt)
{
    if (ctx.cfg.sweeps.empty())
        throw ConfigError("no [sweep] sections in config");
    std::vector<design::SweepBlock> blocks;
    if (!opt.sweep.empty())
        blocks.push_back(design::find_sweep(ctx.cfg, opt.sweep));
    else
        blocks = ctx.cfg.sweeps;
    for (auto const& b : blocks)
        write_table(ctx, b.name.empty() ? "sweep.csv" : fmt::format("sweep_{}.csv", b.name),
                    design::run_sweep(ctx.raw, b, opt.threads));
}

void run_qp(Context const& ctx)
{
    auto const& c = ctx.cfg;
    auto const p = logspace(c.qp_power.start, c.qp_power.stop, c.qp_power.steps);
    write_table(ctx, "qp_sweep.csv", quasiparticle::qp_sweep_table(c.aluminum, c.niobium, c.film_volume, c.q_other, p));
}

void run_pipeline_verb(Context const& ctx)
{
    auto const rep = design::run_pipeline(ctx.cfg);
    report_diagnostics(rep);
    for (auto const& e : rep.entries())
        fmt::print("{:<32} {:>24} {:<6} {}\n", e.name, format_number(e.value.value), e.unit,
                   design::to_string(e.value.source));
    write_table(ctx, "report.csv", design::report_table(rep));
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"eotx: electro-optic transducer design tool"};
    app.set_version_flag("--version", std::string("eotx ") + EOTX_VERSION);
    app.require_subcommand(1);

    Options opt;
    struct Verb
    {
        char const* name;
        char const* help;
    };
    Verb const verbs[] = {
        {"tune", "bias voltage for the target supermode splitting and tuning curve"},
        {"fields", "electrostatic field solve of the electrode cross-section"},
        {"gfactor", "conversion rate g against ring FSR"},
        {"dynamics", "closed-system three-mode trajectory"},
        {"convert", "open-system transfer spectrum and coupling-Q sweep"},
        {"sweep", "one-dimensional sweeps of the full pipeline"},
        {"qp", "quasiparticle-limited microwave Q against absorbed power"},
        {"pipeline", "run the full design chain and print the report"},
    };
    for (auto const& v : verbs)
    {
        auto* sub = app.add_subcommand(v.name, v.help);
        sub->add_option("config", opt.config, "configuration file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out,-o", opt.out, "output directory")->capture_default_str();
        sub->add_option("--set,-s", opt.overrides, "override section.key=value")->take_all();
        if (std::string_view(v.name) == "sweep")
        {
            sub->add_option("--name", opt.sweep, "run only this sweep block");
            sub->add_option("--threads,-j", opt.threads, "worker threads (0 = all cores)");
        }
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    std::string const verb = app.get_subcommands().front()->get_name();
    try
    {
        auto const ctx = load(opt);
        if (verb == "tune")
            run_tune(ctx);
        else if (verb == "fields")
            run_fields(ctx);
        else if (verb == "gfactor")
            run_gfactor(ctx);
        else if (verb == "dynamics")
            run_dynamics(ctx);
        else if (verb == "convert")
            run_convert(ctx);
        else if (verb == "sweep")
            run_sweeps(ctx, opt);
        else if (verb == "qp")
            run_qp(ctx);
        else
            run_pipeline_verb(ctx);
    }
    catch (SolverFailure const& e)
    {
        fmt::print(stderr, "solver failure: {}\n", e.what());
        return kExitSolver;
    }
    catch (StiffnessError const& e)
    {
        fmt::print(stderr, "solver failure: {}\n", e.what());
        return kExitSolver;
    }
    catch (ConfigError const& e)
    {
        fmt::print(stderr, "config error: {}\n", e.what());
        return kExitConfig;
    }
    catch (std::invalid_argument const& e)
    {
        fmt::print(stderr, "config error: {}\n", e.what());
        return kExitConfig;
    }
    catch (fs::filesystem_error const& e)
    {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitConfig;
    }
    return 0;
}
