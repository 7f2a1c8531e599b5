// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

//! Lossless three-mode dynamics in the slowly-varying frame: pump (a_s),
//! up-converted optical mode (a_as) and microwave mode (a_m). Operators are
//! carried as mean-field complex amplitudes in units of sqrt(photons).

#pragma once

#include "eotx/csv.hpp"

#include <complex>
#include <span>
#include <vector>

namespace eotx::dynamics {

using Complex = std::complex<double>;

struct ClosedState
{
    Complex a_s;
    Complex a_as;
    Complex a_m;
    double time = 0.0;  // s
};

struct SwapAmplitudes
{
    Complex a_m;
    Complex a_as;
};

/// Undepleted-pump solution with |a_s|^2 = n_s and pump phase phi_s:
///   a_m  = a_m0 cos(W t) - i e^{-i phi_s} a_as0 sin(W t)
///   a_as = a_as0 cos(W t) - i e^{+i phi_s} a_m0 sin(W t),  W = g sqrt(n_s).
SwapAmplitudes rabi_closed_form(Complex a_m0, Complex a_as0, double n_s, double phi_s, double g,
                                double t);

/// Time for a complete microwave-to-optical swap, pi / (2 g sqrt(n_s)).
double swap_time(double g, double n_s);

/// Rabi frequency g sqrt(n_s) in rad/s.
double swap_rate(double g, double n_s);

struct IntegratorOptions
{
    double tolerance = 1e-12;  //!< relative; also absolute after scaling by the state norm
    /// Step-size floor relative to the swap period; going below it is
    /// reported as stiffness.
    double min_step_fraction = 1e-12;
};

/// Integrate da_s/dt = -i g conj(a_m) a_as, da_as/dt = -i g a_m a_s,
/// da_m/dt = -i g conj(a_s) a_as with an adaptive Dormand-Prince 5(4)
/// stepper, reporting the state at each of `sample_times` (ascending,
/// starting at or after state0.time).
std::vector<ClosedState> integrate_full(ClosedState const& state0, double g,
                                        std::span<double const> sample_times,
                                        IntegratorOptions const& opts = {});

/// Convenience: `samples` equally spaced points on [state0.time, t_end].
std::vector<ClosedState> integrate_full(ClosedState const& state0, double g, double t_end,
                                        int samples, IntegratorOptions const& opts = {});

/// The two Manley-Rowe invariants of the three-wave system.
struct ManleyRowe
{
    double pump_plus_up;       //!< |a_s|^2 + |a_as|^2
    double microwave_plus_up;  //!< |a_m|^2 + |a_as|^2
};

ManleyRowe manley_rowe(ClosedState const& s);

/// t_s, re/im of each amplitude and the three populations.
CsvTable trajectory_table(std::vector<ClosedState> const& traj);

}  // namespace eotx::dynamics
