// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

//! Supermodes of two identical coupled rings and the voltage-tuned
//! splitting of the two-point (tunable) coupler.
//!
//! All angular frequencies are rad/s. Frequencies in Hz appear only at
//! the edges (FSR input, reporting helpers).

#pragma once

#include "eotx/constants.hpp"

namespace eotx::spectra {

/// Geometry and dispersion of one ring.
struct RingParams
{
    double omega0 = kDefaultOpticalOmega;  // rad/s
    double n_eff = 2.0;
    double n_g = 2.39;
    double fsr_hz = 100e9;

    /// Ring perimeter l_R = c / (n_g FSR).
    double perimeter() const { return kSpeedOfLight / (n_g * fsr_hz); }

    /// Build from a perimeter instead of an FSR.
    static RingParams from_perimeter(double perimeter_m, double n_eff,
                                     double n_g,
                                     double omega0 = kDefaultOpticalOmega);
};

/// Throws InvalidArgument unless fsr > 0 and n_g >= n_eff > 1.
void validate(RingParams const& ring);

/// Electro-optic phase shifter integrated in each ring.
struct CouplerParams
{
    double phase_shifter_length = 200e-6;  // m
    double v_pi_l = 2.0e-2;                // V m (2 V cm)
    double bias = 0.0;                     // V
};

void validate(CouplerParams const& coupler);

struct SupermodeSpectrum
{
    double omega_s = 0.0;    // symmetric (lower) supermode, rad/s
    double omega_as = 0.0;   // antisymmetric (upper) supermode, rad/s
    double splitting = 0.0;  // omega_as - omega_s, rad/s

    double splitting_hz() const { return rad_to_hz(splitting); }
    double mu() const { return 0.5 * splitting; }
};

/// omega_{s,as} = omega0 -/+ mu. Throws InvalidArgument for mu < 0.
SupermodeSpectrum supermodes_from_mu(double omega0, double mu);

/// Linear EO phase: phi = pi * bias * L_ps / (V_pi L).
double phase_from_bias(CouplerParams const& coupler);

/// Tuning slope K = 2 pi n_g FSR / n_eff (rad/s per radian of phase).
double tuning_rate(RingParams const& ring);

/// Supermodes of the two-point coupled rings for a phase-shifter phase phi:
/// omega_{s,as} = omega0 + K (pi -/+ phi). The pair is ordered so that
/// omega_as >= omega_s. Throws OutOfBranchError for |phi| >= pi.
SupermodeSpectrum splitting_from_phase(RingParams const& ring, double phi);

/// Bias voltage that produces a splitting of `target` rad/s.
/// Throws UnreachableSplittingError when the phase would leave |phi| < pi.
double bias_for_target_splitting(RingParams const& ring,
                                 CouplerParams const& coupler, double target);

/// Convenience: splitting (rad/s) reached at the coupler's bias.
double splitting_at_bias(RingParams const& ring, CouplerParams const& coupler);

}  // namespace eotx::spectra
