// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Oracles are hand-derived values frozen here.

#include "eotx/closed_dynamics.hpp"
#include "eotx/constants.hpp"
#include "eotx/coupling.hpp"
#include "eotx/design/config.hpp"
#include "eotx/design/sweep.hpp"
#include "eotx/electrostatics.hpp"
#include "eotx/open_system.hpp"
#include "eotx/quasiparticle.hpp"
#include "eotx/spectra.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace eotx;

struct Outcome
{
    bool pass = true;
    std::string detail;
};

/// Accumulates named checks; the first failure is kept in the detail.
class Checks
{
  public:
    void expect(bool ok, std::string const& what)
    {
        if (!ok && pass_)
            first_failure_ = what;
        pass_ = pass_ && ok;
    }
    void note(std::string const& s) { notes_ += (notes_.empty() ? "" : ", ") + s; }
    Outcome outcome() const
    {
        return {pass_, pass_ ? notes_ : first_failure_ + (notes_.empty() ? "" : " [" + notes_ + "]")};
    }

  private:
    bool pass_ = true;
    std::string first_failure_;
    std::string notes_;
};

double rel_err(double a, double b)
{
    return std::abs(a - b) / std::abs(b);
}

constexpr double kOmegaM = kTwoPi * 6e9;
double const kOmega1550 = omega_from_wavelength(1.55e-6);

open_system::LossBudget random_budget(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> lg(3.0, 9.0);
    auto r = [&] { return std::pow(10.0, lg(rng)); };
    return {r(), r(), r() * 1e-3, r() * 1e-3};
}

Outcome critical_coupling_efficiency()
{
    using namespace open_system;
    Checks c;
    auto const b = LossBudget::critical(1e6, 5000.0, kOmega1550, kOmegaM);
    double const g = kTwoPi * 1e4;
    double const rate_form = conversion_efficiency(b);
    double const q_form = conversion_efficiency(b.q_factors(kOmega1550, kOmegaM));
    OperatingPoint const op{g, photons_for_unit_cooperativity(b, g), 0.0, b, kOmega1550, kOmegaM};
    double const coeff = std::norm(transfer_coefficients(op, 0.0, Target::S_out).in_m);
    c.expect(std::abs(rate_form - 0.25) <= 1e-12, fmt::format("rate form {:.15g}", rate_form));
    c.expect(std::abs(q_form - 0.25) <= 1e-12, fmt::format("Q form {:.15g}", q_form));
    c.expect(std::abs(coeff - 0.25) <= 1e-12, fmt::format("|c|^2 {:.15g}", coeff));
    c.note(fmt::format("eta = {:.15f} / {:.15f} / {:.15f}", rate_form, q_form, coeff));
    return c.outcome();
}

Outcome unitarity()
{
    using namespace open_system;
    Checks c;
    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> lc(-3.0, 3.0);
    std::uniform_real_distribution<double> ph(-kPi, kPi);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k)
    {
        auto const b = random_budget(rng);
        double const n_s = std::pow(10.0, 6.0 + lc(rng));
        double const coop = std::pow(10.0, lc(rng));
        double const g = std::sqrt(coop * b.gamma_opt() * b.gamma_m() / (4.0 * n_s));
        double const w = lc(rng) * std::max(b.gamma_opt(), b.gamma_m());
        OperatingPoint const op{g, n_s, ph(rng), b, kOmega1550, kOmegaM};
        worst = std::max(worst, std::abs(transfer_coefficients(op, w, Target::S_out).power_sum() - 1.0));
    }
    c.expect(worst <= 1e-12, fmt::format("max |sum - 1| = {:.3e}", worst));
    c.note(fmt::format("1000 points, max |sum - 1| = {:.2e}", worst));
    return c.outcome();
}

Outcome pump_power()
{
    using namespace open_system;
    Checks c;
    constexpr double kOracle = 4.518498796e-5;  // W
    double const g = kTwoPi * 1e4;
    auto const b = LossBudget::critical(1e6, 5000.0, kOmega1550, kOmegaM);
    double const p = required_pump_power(b, g, kOmega1550);
    c.expect(rel_err(p, kOracle) <= 1e-3, fmt::format("P_in = {:.6e} W, oracle {:.6e} W", p, kOracle));
    c.expect(p >= 10e-6 && p < 100e-6, fmt::format("P_in = {:.3e} W outside tens of uW", p));
    double const p_low = required_pump_power(LossBudget::critical(1e5, 5000.0, kOmega1550, kOmegaM), g, kOmega1550);
    c.expect(rel_err(p_low / p, 100.0) <= 1e-12, fmt::format("ratio {:.15g}", p_low / p));
    c.note(fmt::format("P_in = {:.4f} uW, Q_opt/10 ratio = {:.12f}", p * 1e6, p_low / p));
    return c.outcome();
}

Outcome cooperativity_closure()
{
    using namespace open_system;
    Checks c;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> lg(3.0, 6.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k)
    {
        auto const b = random_budget(rng);
        double const g = std::pow(10.0, lg(rng));
        double const p = required_pump_power(b, g, kOmega1550);
        OperatingPoint const op{g, pump_photons_from_power(p, b, kOmega1550), 0.0, b, kOmega1550, kOmegaM};
        worst = std::max(worst, std::abs(cooperativity(op) - 1.0));
    }
    c.expect(worst <= 1e-9, fmt::format("max |C - 1| = {:.3e}", worst));
    c.note(fmt::format("100 budgets, max |C - 1| = {:.2e}", worst));
    return c.outcome();
}

Outcome closed_swap()
{
    using namespace dynamics;
    Checks c;
    double const g = kTwoPi * 1e4;
    Complex const a_m0{0.6, 0.8};

    // Complete swap from the closed form.
    double const n_big = 5.8e5;
    double const t_swap = swap_time(g, n_big);
    auto const sw = rabi_closed_form(a_m0, 0.0, n_big, 0.0, g, t_swap);
    c.expect(std::abs(std::abs(sw.a_as) - std::abs(a_m0)) <= 1e-12, "|a_as(T)| != |a_m0|");
    c.expect(std::abs(sw.a_m) <= 1e-12, fmt::format("|a_m(T)| = {:.3e}", std::abs(sw.a_m)));

    // Full three-mode integration against the undepleted-pump solution.
    double const n_s = 1e4 * std::norm(a_m0);
    double const t = swap_time(g, n_s);
    ClosedState const s0{std::sqrt(n_s), 0.0, a_m0, 0.0};
    auto const traj = integrate_full(s0, g, 4.0 * t, 401);
    double worst = 0.0;
    for (auto const& s : traj)
    {
        auto const cf = rabi_closed_form(a_m0, 0.0, n_s, 0.0, g, s.time);
        worst = std::max({worst, std::abs(s.a_m - cf.a_m) / std::abs(a_m0),
                          std::abs(s.a_as - cf.a_as) / std::abs(a_m0)});
    }
    c.expect(worst <= 1e-3, fmt::format("ODE vs closed form {:.3e}", worst));

    // Manley-Rowe invariants with a depleted pump over ten swap periods.
    ClosedState const d0{1.0, 0.3, Complex{0.5, 0.5}, 0.0};
    double const period = kTwoPi / (g * std::sqrt(std::norm(d0.a_s) + std::norm(d0.a_m)));
    auto const dep = integrate_full(d0, g, 10.0 * period, 201);
    auto const mr0 = manley_rowe(d0);
    double drift = 0.0;
    for (auto const& s : dep)
    {
        auto const mr = manley_rowe(s);
        drift = std::max({drift, std::abs(mr.pump_plus_up - mr0.pump_plus_up),
                          std::abs(mr.microwave_plus_up - mr0.microwave_plus_up)});
    }
    c.expect(drift <= 1e-9, fmt::format("Manley-Rowe drift {:.3e}", drift));
    c.note(fmt::format("|a_m(T)| = {:.1e}, ODE err = {:.2e}, invariant drift = {:.2e}", std::abs(sw.a_m), worst,
                       drift));
    return c.outcome();
}

Outcome tuning_curve()
{
    using namespace spectra;
    Checks c;
    constexpr double kSlopeOracle = 7508406442.0796;  // Hz/V
    constexpr double kVFor6GHz = 0.79910431677939;    // V
    RingParams const ring{};
    CouplerParams coupler{};
    double prev = 0.0;
    bool linear = true;
    for (int k = 0; k <= 30; ++k)
    {
        coupler.bias = 0.1 * k;
        double const s = rad_to_hz(splitting_at_bias(ring, coupler));
        if (k > 0)
            linear = linear && std::abs((s - prev) / 0.1 - kSlopeOracle) <= 1e-6 * kSlopeOracle;
        prev = s;
    }
    coupler.bias = 1.0;
    double const slope = rad_to_hz(splitting_at_bias(ring, coupler));
    double const v6 = bias_for_target_splitting(ring, coupler, hz_to_rad(6e9));
    c.expect(rel_err(slope, kSlopeOracle) <= 1e-3, fmt::format("slope {:.6e} Hz/V", slope));
    c.expect(linear, "splitting not linear in bias");
    c.expect(v6 < 1.0 && rel_err(v6, kVFor6GHz) <= 1e-9, fmt::format("6 GHz bias {:.6f} V", v6));
    c.note(fmt::format("slope = {:.4f} GHz/V, 6 GHz at {:.4f} V", slope * 1e-9, v6));
    return c.outcome();
}

electrostatics::Grid2D plate_grid(double width, double gap, int nx, int ny)
{
    auto g = electrostatics::make_rect_grid(width, gap, nx, ny);
    for (int i = 0; i < g.nx; ++i)
    {
        int const top = g.node(i, g.ny - 1);
        g.dirichlet[top] = 1;
        g.fixed_value[top] = 1.0;
        g.drive_node[top] = 1;
        g.dirichlet[g.node(i, 0)] = 1;
    }
    return g;
}

Outcome electrostatics_oracle()
{
    using namespace electrostatics;
    Checks c;
    Permittivities const eps;

    // Parallel plates: C = eps W / d, E = V / d.
    {
        double const w = 4e-6;
        double const d = 1e-6;
        auto const sol = solve(plate_grid(w, d, 40, 20));
        double const cap = kVacuumPermittivity * eps.sio2 * w / d;
        c.expect(rel_err(sol.capacitance_per_length, cap) <= 0.01, "parallel-plate capacitance");
        c.expect(rel_err(std::abs(sol.ey_at(0.5 * w, 0.5 * d)), 1.0 / d) <= 0.01, "parallel-plate field");
    }
    // Two-layer stack: series capacitance, field from D continuity.
    {
        double const w = 3e-6;
        double const d1 = 0.6e-6;
        double const d2 = 0.9e-6;
        auto g = plate_grid(w, d1 + d2, 30, 30);
        for (int j = 0; j + 1 < g.ny; ++j)
            for (int i = 0; i + 1 < g.nx; ++i)
                g.region[g.cell(i, j)] = g.y[j] < d1 - 1e-12 ? Region::LN : Region::SiO2;
        assign_permittivities(g, eps);
        auto const sol = solve(g);
        double const cap = kVacuumPermittivity * w / (d1 / eps.ln_z + d2 / eps.sio2);
        double const e_ln = 1.0 / (d1 + d2 * eps.ln_z / eps.sio2);
        c.expect(rel_err(sol.capacitance_per_length, cap) <= 0.01, "two-layer capacitance");
        c.expect(rel_err(std::abs(sol.ey_at(0.5 * w, 0.5 * d1)), e_ln) <= 0.01, "two-layer field");
    }
    // Observed order on a smooth problem with a known solution.
    double order_lo = 1e9;
    double order_hi = -1e9;
    {
        double const l = 1e-6;
        double const u_exact = kVacuumPermittivity * eps.sio2 * kPi / std::tanh(kPi) / 4.0;
        std::vector<double> err;
        for (int n : {16, 32, 64})
        {
            auto g = make_rect_grid(l, l, n, n);
            for (int i = 0; i < g.nx; ++i)
            {
                int const top = g.node(i, g.ny - 1);
                g.dirichlet[top] = 1;
                g.fixed_value[top] = std::cos(kPi * g.x[i] / l);
                g.dirichlet[g.node(i, 0)] = 1;
            }
            err.push_back(rel_err(solve(g, {1e-12}).energy_per_length, u_exact));
        }
        for (std::size_t k = 1; k < err.size(); ++k)
        {
            double const p = std::log2(err[k - 1] / err[k]);
            order_lo = std::min(order_lo, p);
            order_hi = std::max(order_hi, p);
        }
        c.expect(order_lo >= 1.5 && order_hi <= 2.5, fmt::format("order in [{:.3f}, {:.3f}]", order_lo, order_hi));
    }
    // Device geometry: self-convergence and electrode-configuration ordering.
    CrossSection const a{};
    CrossSection b{};
    b.config = ElectrodeConfig::TopPlusSideGrounds;
    auto const sa = solve_cross_section(a, 20.0);
    auto const sa_fine = solve_cross_section(a, 80.0);
    auto const sb = solve_cross_section(b, 20.0);
    double const self = rel_err(sa.e_mz_center, sa_fine.e_mz_center);
    c.expect(self <= 0.02, fmt::format("20 vs 80 cells/um differ by {:.3f}", self));
    c.expect(std::abs(sa.e_mz_center) > std::abs(sb.e_mz_center), "side grounds give the larger field");
    c.note(fmt::format("order {:.3f}..{:.3f}, 4x refinement {:.2f}%, |E| {:.4g} vs {:.4g} V/m", order_lo, order_hi,
                       100.0 * self, std::abs(sa.e_mz_center), std::abs(sb.e_mz_center)));
    return c.outcome();
}

Outcome g_band()
{
    Checks c;
    auto const raw = design::load_config_file(std::filesystem::path(EOTX_CONFIG_DIR) / "parallel_plates.ini");
    auto const cfg = design::resolve_config(raw);
    auto const t = design::run_sweep(raw, design::find_sweep(cfg, "fsr"));
    auto const& cols = t.columns();
    auto col = [&](std::string const& name) {
        return static_cast<std::size_t>(
            std::find_if(cols.begin(), cols.end(), [&](auto const& x) { return x.name == name; }) - cols.begin());
    };
    std::size_t const ci = col("capacitance_f");
    std::size_t const gi = col("g_rad_s");
    std::size_t const fi = col("ring.fsr_hz");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double g_min = 1e300;
    double g_max = 0.0;
    int usable = 0;
    for (auto const& row : t.rows())
    {
        double const f = std::get<double>(row[fi]);
        double const g_hz = rad_to_hz(std::get<double>(row[gi]));
        double const x = std::log(f);
        double const y = std::log(g_hz);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        if (std::get<double>(row[ci]) >= coupling::kMinElectrodeCapacitance)
        {
            ++usable;
            g_min = std::min(g_min, g_hz);
            g_max = std::max(g_max, g_hz);
        }
    }
    double const n = static_cast<double>(t.rows().size());
    double const slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    c.expect(usable > 0, "no FSR with C >= 40 fF");
    c.expect(g_min >= 5e3 && g_max <= 15e3, fmt::format("g/2pi in [{:.0f}, {:.0f}] Hz", g_min, g_max));
    c.expect(std::abs(slope - 0.5) <= 0.02, fmt::format("exponent {:.4f}", slope));
    c.note(fmt::format("{} FSRs with C >= 40 fF, g/2pi {:.2f}..{:.2f} kHz, exponent {:.4f}", usable, g_min * 1e-3,
                       g_max * 1e-3, slope));
    return c.outcome();
}

Outcome scattered_power()
{
    using namespace open_system;
    Checks c;
    double const g = kTwoPi * 1e4;
    auto const b = LossBudget::critical(1e6, 5000.0, kOmega1550, kOmegaM);
    double const crit = rel_err(open_system::scattered_power(b, g, kOmega1550), required_pump_power(b, g, kOmega1550));
    c.expect(crit <= 1e-12, fmt::format("critical P_scat/P_in - 1 = {:.3e}", crit));
    std::mt19937_64 rng(99);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k)
    {
        auto const r = random_budget(rng);
        auto const q = r.q_factors(kOmega1550, kOmegaM);
        double const ratio = open_system::scattered_power(r, g, kOmega1550) / required_pump_power(r, g, kOmega1550);
        worst = std::max(worst, rel_err(ratio, 4.0 * q.q_opt() * q.q_opt() / (q.q_ex_opt * q.q_i_opt)));
    }
    c.expect(worst <= 1e-12, fmt::format("ratio identity error {:.3e}", worst));
    c.note(fmt::format("critical {:.1e}, 1000 budgets max rel err {:.1e}", crit, worst));
    return c.outcome();
}

Outcome quasiparticles()
{
    using namespace quasiparticle;
    Checks c;
    auto const al = SCMaterial::aluminum();
    auto const nb = SCMaterial::niobium();
    double prev_al = 1e300;
    bool monotone = true;
    bool nb_wins = true;
    for (int k = 0; k <= 60; ++k)
    {
        double const p = 1e-9 * std::pow(10.0, 0.1 * k);
        double const q_al = microwave_q_from_qp(al, steady_state_qp_density(al, {p}), kDefaultQOther);
        double const q_nb = microwave_q_from_qp(nb, steady_state_qp_density(nb, {p}), kDefaultQOther);
        monotone = monotone && q_al <= prev_al;
        nb_wins = nb_wins && q_nb > q_al;
        prev_al = q_al;
    }
    double const slope =
        std::log10(steady_state_qp_density(al, {1e-3}) / steady_state_qp_density(al, {1e-4}));
    double const q50 = microwave_q_from_qp(al, steady_state_qp_density(al, {50e-6}), kDefaultQOther);
    c.expect(monotone, "Q_Al increases with absorbed power");
    c.expect(nb_wins, "Q_Nb <= Q_Al somewhere");
    c.expect(std::abs(slope - 0.5) <= 0.02, fmt::format("high-power slope {:.4f}", slope));
    c.expect(q50 > 1e4, fmt::format("Q_Al(50 uW) = {:.0f}", q50));
    c.note(fmt::format("slope {:.4f}, Q_Al(50 uW) = {:.0f}", slope, q50));
    return c.outcome();
}

}  // namespace

int main()
{
    struct Criterion
    {
        char const* name;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> const criteria{
        {"critical-coupling efficiency", critical_coupling_efficiency},
        {"input-output unitarity", unitarity},
        {"pump power", pump_power},
        {"cooperativity closure", cooperativity_closure},
        {"closed-system swap", closed_swap},
        {"tuning curve", tuning_curve},
        {"electrostatics oracles", electrostatics_oracle},
        {"g band", g_band},
        {"scattered-power identities", scattered_power},
        {"quasiparticle-limited Q", quasiparticles},
    };

    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k)
    {
        auto const t0 = std::chrono::steady_clock::now();
        Outcome out;
        try
        {
            out = criteria[k].run();
        }
        catch (std::exception const& e)
        {
            out = {false, fmt::format("threw: {}", e.what())};
        }
        double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        fmt::print("[{}] criterion {}: {} ({}; {:.2f} s)\n", out.pass ? "PASS" : "FAIL", k + 1, criteria[k].name,
                   out.detail, secs);
        std::fflush(stdout);
        failures += out.pass ? 0 : 1;
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
