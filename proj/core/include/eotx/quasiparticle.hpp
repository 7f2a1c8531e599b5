// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

//! Worst-case microwave Q degradation from stray optical power absorbed in
//! the superconducting film. Zero-dimensional steady-state Rothwarf-Taylor
//! balance:
//!
//!   eta_gen P_abs / (Delta V_film) = R (n^2 - n_th^2)
//!
//! followed by a linear map from quasiparticle density to 1/Q.
//!
//! The material defaults below are literature-typical assumptions, not
//! measured data for any particular device.

#pragma once

#include "eotx/csv.hpp"

#include <span>
#include <string>

namespace eotx::quasiparticle {

struct SCMaterial
{
    std::string name;
    double gap_energy = 0.0;          //!< Delta, J
    double recombination_coeff = 0.0;  //!< R, m^3/s
    double qp_generation_efficiency = 0.0;  //!< includes phonon trapping
    double thermal_qp_density = 0.0;  //!< n_th at the bath temperature, m^-3
    double qp_to_inverse_q = 0.0;     //!< d(1/Q)/dn_qp, m^3

    /// Al at 100 mK: Delta = 180 ueV, N0 = 1.72e10 /(eV um^3), R = 1e-17 m^3/s,
    /// eta_gen = 1e-5, kinetic-inductance fraction 0.05 at 6 GHz.
    static SCMaterial aluminum();
    /// Nb at 100 mK: Delta = 1.5 meV, N0 = 2e10 /(eV um^3), R = 1e-15 m^3/s,
    /// eta_gen = 1e-5, kinetic-inductance fraction 0.02 at 6 GHz.
    static SCMaterial niobium();
};

/// Throws InvalidArgument unless every constant is positive (n_th may be 0).
void validate(SCMaterial const& sc);

struct AbsorptionScenario
{
    double absorbed_power = 0.0;  //!< W
    double film_volume = 1e-13;   //!< m^3 (1 mm^2 x 100 nm)
};

/// Thermal quasiparticle density 2 N0 sqrt(2 pi k T Delta) exp(-Delta / kT);
/// n0 in states per J per m^3.
double thermal_qp_density(double n0, double gap_energy, double temperature);

/// Low-temperature Mattis-Bardeen slope of 1/Q against n_qp for a
/// resonator at omega_m with kinetic-inductance fraction alpha_k.
double mattis_bardeen_coefficient(double n0, double gap_energy, double omega_m, double alpha_k);

/// sqrt(n_th^2 + eta_gen P_abs / (Delta V_film R)). Absorbed power may be
/// zero; the film volume must be positive.
double steady_state_qp_density(SCMaterial const& sc, AbsorptionScenario const& scen);

/// 1 / (1/q_other + coeff * n_qp).
double microwave_q_from_qp(SCMaterial const& sc, double n_qp, double q_other);

/// Default non-quasiparticle loss limit used by the sweep.
inline constexpr double kDefaultQOther = 1e6;

/// One row per absorbed power: p_abs_w, n_qp_m3 (aluminium), q_al, q_nb.
CsvTable qp_sweep_table(SCMaterial const& al, SCMaterial const& nb, double film_volume,
                        double q_other, std::span<double const> p_abs);

}  // namespace eotx::quasiparticle
