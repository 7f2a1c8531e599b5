// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

#include "eotx/spectra.hpp"

#include "eotx/errors.hpp"

#include <fmt/format.h>

#include <cmath>

namespace eotx::spectra {

RingParams RingParams::from_perimeter(double perimeter_m, double n_eff,
                                      double n_g, double omega0)
{
    if (!(perimeter_m > 0.0))
        throw InvalidArgument("ring perimeter must be positive");
    RingParams ring;
    ring.omega0 = omega0;
    ring.n_eff = n_eff;
    ring.n_g = n_g;
    ring.fsr_hz = kSpeedOfLight / (n_g * perimeter_m);
    return ring;
}

void validate(RingParams const& ring)
{
    if (!(ring.fsr_hz > 0.0))
        throw InvalidArgument("ring FSR must be positive");
    if (!(ring.n_eff > 1.0))
        throw InvalidArgument("ring n_eff must exceed 1");
    if (!(ring.n_g >= ring.n_eff))
        throw InvalidArgument("ring group index must be >= effective index");
    if (!(ring.omega0 > 0.0))
        throw InvalidArgument("ring resonance frequency must be positive");
}

void validate(CouplerParams const& coupler)
{
    if (!(coupler.phase_shifter_length > 0.0))
        throw InvalidArgument("phase-shifter length must be positive");
    if (!(coupler.v_pi_l > 0.0))
        throw InvalidArgument("V_pi*L must be positive");
}

SupermodeSpectrum supermodes_from_mu(double omega0, double mu)
{
    if (!(mu >= 0.0))
        throw InvalidArgument(fmt::format("coupling rate mu must be >= 0 (got {})", mu));
    return {omega0 - mu, omega0 + mu, 2.0 * mu};
}

double phase_from_bias(CouplerParams const& coupler)
{
    validate(coupler);
    return kPi * coupler.bias * coupler.phase_shifter_length / coupler.v_pi_l;
}

double tuning_rate(RingParams const& ring)
{
    return kTwoPi * ring.n_g * ring.fsr_hz / ring.n_eff;
}

SupermodeSpectrum splitting_from_phase(RingParams const& ring, double phi)
{
    validate(ring);
    if (!(std::abs(phi) < kPi))
        throw OutOfBranchError(fmt::format(
            "coupler phase {} rad is outside the principal branch |phi| < pi", phi));

    double const k = tuning_rate(ring);
    double lower = ring.omega0 + k * (kPi - phi);
    double upper = ring.omega0 + k * (kPi + phi);
    if (upper < lower)
        std::swap(lower, upper);
    // Splitting from the phase directly; differencing two ~1e15 numbers
    // would throw away six digits.
    return {lower, upper, 2.0 * k * std::abs(phi)};
}

double bias_for_target_splitting(RingParams const& ring,
                                 CouplerParams const& coupler, double target)
{
    validate(ring);
    validate(coupler);
    if (!(target >= 0.0))
        throw InvalidArgument("target splitting must be >= 0");

    double const phi = target / (2.0 * tuning_rate(ring));
    if (!(phi < kPi))
        throw UnreachableSplittingError(fmt::format(
            "splitting {:.6g} Hz needs phase {:.6g} rad, beyond the principal branch",
            rad_to_hz(target), phi));
    return phi * coupler.v_pi_l / (kPi * coupler.phase_shifter_length);
}

double splitting_at_bias(RingParams const& ring, CouplerParams const& coupler)
{
    return splitting_from_phase(ring, phase_from_bias(coupler)).splitting;
}

}  // namespace eotx::spectra
