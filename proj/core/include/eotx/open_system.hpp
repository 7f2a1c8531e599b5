// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

//! Driven, lossy three-mode system in the input-output picture: transfer
//! coefficients from the four input ports (microwave signal, microwave
//! intrinsic bath, optical waveguide vacuum, optical intrinsic bath) to the
//! intracavity modes and the optical output, plus the C = 1 design budget.
//!
//! Noise ports are tracked as complex coefficient rows; the pump is a
//! classical, undepleted, on-resonance drive of the symmetric supermode.

#pragma once

#include "eotx/csv.hpp"

#include <complex>
#include <span>
#include <string_view>
#include <vector>

namespace eotx::open_system {

using Complex = std::complex<double>;

/// Q views of a LossBudget, Q_x = omega / gamma_x.
struct QFactors
{
    double q_i_opt = 0.0;
    double q_ex_opt = 0.0;
    double q_i_m = 0.0;
    double q_ex_m = 0.0;

    double q_opt() const { return 1.0 / (1.0 / q_i_opt + 1.0 / q_ex_opt); }
    double q_m() const { return 1.0 / (1.0 / q_i_m + 1.0 / q_ex_m); }
};

/// Energy decay rates in rad/s.
struct LossBudget
{
    double gamma_i_opt = 0.0;
    double gamma_ex_opt = 0.0;
    double gamma_i_m = 0.0;
    double gamma_ex_m = 0.0;

    double gamma_opt() const { return gamma_i_opt + gamma_ex_opt; }
    double gamma_m() const { return gamma_i_m + gamma_ex_m; }

    QFactors q_factors(double omega_opt, double omega_m) const;
    static LossBudget from_q(QFactors const& q, double omega_opt, double omega_m);
    /// Both resonators critically coupled with the given loaded Q's.
    static LossBudget critical(double q_opt, double q_m, double omega_opt, double omega_m);
};

/// Throws InvalidArgument unless every rate is positive and finite.
void validate(LossBudget const& budget);

struct OperatingPoint
{
    double g = 0.0;    //!< rad/s
    double n_s = 0.0;  //!< intracavity pump photons
    double phi_s = 0.0;
    LossBudget budget;
    double omega_opt = 0.0;
    double omega_m = 0.0;
};

enum class Target
{
    A_as,   //!< intracavity up-converted optical mode
    A_m,    //!< intracavity microwave mode
    S_out,  //!< up-converted field leaving through the optical waveguide
};

std::string_view to_string(Target t);

/// Coefficients multiplying each input port for one output quantity.
struct TransferRow
{
    double detuning = 0.0;  //!< Omega, rad/s
    Target target = Target::S_out;
    Complex in_m;      //!< S_in,M   (microwave signal)
    Complex vac_m;     //!< S''_vac  (microwave intrinsic bath)
    Complex vac_wg;    //!< S_vac    (optical waveguide vacuum)
    Complex vac_loss;  //!< S'_vac   (optical intrinsic bath)

    /// Sum of |c|^2 over the four ports.
    double power_sum() const;
};

/// C = 4 g^2 n_s / (gamma_opt gamma_M).
double cooperativity(OperatingPoint const& op);

/// n_s giving C = 1: gamma_opt gamma_M / (4 g^2).
double photons_for_unit_cooperativity(LossBudget const& budget, double g);

/// Frequency-domain solution at detuning Omega for the chosen target; the
/// S_out row follows from S_out = S_vac - sqrt(gamma_ex,opt) A_as.
TransferRow transfer_coefficients(OperatingPoint const& op, double detuning, Target target);

/// The on-resonance rows written out directly (independent of the
/// detuned expressions).
TransferRow transfer_on_resonance(OperatingPoint const& op, Target target);

/// Output row at the C = 1 optimum, expressed through rate ratios only.
TransferRow optimal_output_row(LossBudget const& budget, double phi_s = 0.0);

/// Microwave-to-optical efficiency at C = 1:
/// gamma_ex,opt gamma_ex,M / (gamma_opt gamma_M).
double conversion_efficiency(LossBudget const& budget);
/// Same from Q's: Q_opt Q_M / (Q_ex,opt Q_ex,M).
double conversion_efficiency(QFactors const& q);
/// Efficiency at an arbitrary operating point, |c_in,M(Omega = 0)|^2 of the
/// output row. Reduces to conversion_efficiency(budget) at C = 1.
double conversion_efficiency_at(OperatingPoint const& op);

/// Intracavity pump photons for waveguide power p_in (W), pump on resonance:
/// N_s = (4 gamma_ex,opt / gamma_opt^2) p_in / (hbar omega_opt).
double pump_photons_from_power(double p_in, LossBudget const& budget, double omega_opt);
/// Q form: (4 Q_opt^2 / Q_ex,opt) p_in / (hbar omega_opt^2).
double pump_photons_from_power(double p_in, QFactors const& q, double omega_opt);

/// Waveguide pump power for C = 1:
/// hbar omega_opt gamma_opt^3 gamma_M / (16 gamma_ex,opt g^2).
double required_pump_power(LossBudget const& budget, double g, double omega_opt);
/// Q form: hbar omega_M omega_opt^3 Q_ex,opt / (16 Q_opt^3 Q_M g^2).
double required_pump_power(QFactors const& q, double g, double omega_opt, double omega_m);

/// Optical power lost through intrinsic loss at C = 1:
/// gamma_i,opt hbar omega_opt N_s.
double scattered_power(LossBudget const& budget, double g, double omega_opt);
/// Q form: hbar omega_M omega_opt^3 / (4 Q_i,opt Q_opt Q_M g^2).
double scattered_power(QFactors const& q, double g, double omega_opt, double omega_m);

enum class CouplingRegime
{
    Undercoupled,
    Critical,
    Overcoupled,
};

std::string_view to_string(CouplingRegime r);
CouplingRegime optical_regime(LossBudget const& budget);

struct CouplingSweepPoint
{
    double q_ex_opt = 0.0;
    double q_opt = 0.0;
    double p_in = 0.0;    //!< W
    double p_scat = 0.0;  //!< W
    double efficiency = 0.0;
    CouplingRegime regime = CouplingRegime::Critical;
};

/// Vary the optical extrinsic Q with everything else in `base` fixed;
/// every point is evaluated at C = 1.
std::vector<CouplingSweepPoint> coupling_sweep(QFactors const& base, double g, double omega_opt,
                                               double omega_m, std::span<double const> q_ex_opt);

CsvTable coupling_sweep_table(std::vector<CouplingSweepPoint> const& sweep);

}  // namespace eotx::open_system
