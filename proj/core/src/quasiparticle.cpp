// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

#include "eotx/quasiparticle.hpp"

#include "eotx/constants.hpp"
#include "eotx/errors.hpp"

#include <fmt/format.h>

#include <cmath>

namespace eotx::quasiparticle {
namespace {

constexpr double kMicroEv = 1e-6 * kElementaryCharge;
constexpr double kBathTemperature = 0.1;
constexpr double kOmegaM = kTwoPi * 6e9;

// Single-spin density of states at the Fermi level, 1/(eV um^3) -> 1/(J m^3).
constexpr double per_ev_um3(double v)
{
    return v / kElementaryCharge * 1e18;
}

SCMaterial make(std::string name, double gap_uev, double n0_per_ev_um3, double r,
                double eta, double alpha_k)
{
    double const gap = gap_uev * kMicroEv;
    double const n0 = per_ev_um3(n0_per_ev_um3);
    SCMaterial m;
    m.name = std::move(name);
    m.gap_energy = gap;
    m.recombination_coeff = r;
    m.qp_generation_efficiency = eta;
    m.thermal_qp_density = thermal_qp_density(n0, gap, kBathTemperature);
    m.qp_to_inverse_q = mattis_bardeen_coefficient(n0, gap, kOmegaM, alpha_k);
    return m;
}

}  // namespace

SCMaterial SCMaterial::aluminum()
{
    return make("Aluminum", 180.0, 1.72e10, 1e-17, 1e-5, 0.05);
}

SCMaterial SCMaterial::niobium()
{
    return make("Niobium", 1500.0, 2.0e10, 1e-15, 1e-5, 0.02);
}

void validate(SCMaterial const& sc)
{
    if (!(sc.gap_energy > 0.0 && sc.recombination_coeff > 0.0 &&
          sc.qp_generation_efficiency > 0.0 && sc.qp_to_inverse_q > 0.0))
        throw InvalidArgument(fmt::format("superconductor '{}' has non-positive constants", sc.name));
    if (!(sc.thermal_qp_density >= 0.0))
        throw InvalidArgument(fmt::format("superconductor '{}' has negative thermal density", sc.name));
}

double thermal_qp_density(double n0, double gap_energy, double temperature)
{
    if (!(n0 > 0.0 && gap_energy > 0.0 && temperature > 0.0))
        throw InvalidArgument("density of states, gap and temperature must be positive");
    double const kt = kBoltzmann * temperature;
    return 2.0 * n0 * std::sqrt(kTwoPi * kt * gap_energy) * std::exp(-gap_energy / kt);
}

double mattis_bardeen_coefficient(double n0, double gap_energy, double omega_m, double alpha_k)
{
    if (!(n0 > 0.0 && gap_energy > 0.0 && omega_m > 0.0 && alpha_k > 0.0))
        throw InvalidArgument("Mattis-Bardeen inputs must be positive");
    double const pair_density = 2.0 * n0 * gap_energy;
    return alpha_k * std::sqrt(2.0 * gap_energy / (kPi * kHbar * omega_m)) / pair_density;
}

double steady_state_qp_density(SCMaterial const& sc, AbsorptionScenario const& scen)
{
    validate(sc);
    if (!(scen.absorbed_power >= 0.0))
        throw InvalidArgument(fmt::format("absorbed power must be >= 0 (got {})", scen.absorbed_power));
    if (!(scen.film_volume > 0.0))
        throw InvalidArgument("film volume must be positive");
    double const gen = sc.qp_generation_efficiency * scen.absorbed_power /
                       (sc.gap_energy * scen.film_volume);
    double const nth = sc.thermal_qp_density;
    return std::sqrt(nth * nth + gen / sc.recombination_coeff);
}

double microwave_q_from_qp(SCMaterial const& sc, double n_qp, double q_other)
{
    validate(sc);
    if (!(q_other > 0.0))
        throw InvalidArgument("q_other must be positive");
    if (!(n_qp >= 0.0))
        throw InvalidArgument("quasiparticle density must be >= 0");
    return 1.0 / (1.0 / q_other + sc.qp_to_inverse_q * n_qp);
}

CsvTable qp_sweep_table(SCMaterial const& al, SCMaterial const& nb, double film_volume,
                        double q_other, std::span<double const> p_abs)
{
    CsvTable t({{"p_abs_w", "W"}, {"n_qp_m3", "m^-3"}, {"q_al", "1"}, {"q_nb", "1"}});
    for (double p : p_abs)
    {
        double const n_al = steady_state_qp_density(al, {p, film_volume});
        double const n_nb = steady_state_qp_density(nb, {p, film_volume});
        t.add_row({p, n_al, microwave_q_from_qp(al, n_al, q_other),
                   microwave_q_from_qp(nb, n_nb, q_other)});
    }
    return t;
}

}  // namespace eotx::quasiparticle
