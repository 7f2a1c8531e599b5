// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

//! Electro-optic conversion rate g in the uniform-field approximation and
//! g-versus-FSR design curves.

#pragma once

#include "eotx/csv.hpp"
#include "eotx/electrostatics.hpp"

#include <span>
#include <vector>

namespace eotx::coupling {

/// Minimum electrode capacitance that keeps parasitics negligible and
/// leaves room for an on-chip meander inductor.
inline constexpr double kMinElectrodeCapacitance = 40e-15;  // F

/// Z-cut lithium niobate by default.
struct EOMaterial
{
    double n_e = 2.138;
    double r33 = 30e-12;  // m/V
};

void validate(EOMaterial const& material);

/// LC microwave resonator formed by the electrode capacitance and a meander
/// inductor.
struct MicrowaveCavity
{
    double omega_m = 0.0;        // rad/s
    double capacitance = 0.0;    // F
    double drive_voltage = 1.0;  // V, the normalisation used for the field solve
    double inductance = 0.0;     // H, 1 / (omega_m^2 C)

    /// U_M = C V^2 / 2.
    double energy() const { return 0.5 * capacitance * drive_voltage * drive_voltage; }
};

MicrowaveCavity cavity_from_electrode(double omega_m, double capacitance,
                                      double drive_voltage = 1.0);

/// Fraction of the ring perimeter covered by the microwave electrode.
class CoverageFactor
{
  public:
    explicit CoverageFactor(double alpha);
    double value() const { return alpha_; }

  private:
    double alpha_;
};

/// g = n_e^2 r33 omega0 sqrt(hbar omega_M / U_M) (alpha / 2) |E_Mz|, in rad/s.
/// The factor 1/2 accounts for the field acting on one ring of the pair.
/// `e_mz` must be the field at the cavity's drive voltage.
double g_uniform(EOMaterial const& material, double omega0, MicrowaveCavity const& cavity,
                 CoverageFactor alpha, double e_mz);

/// Per-length results of one cross-section solve.
struct FieldSummary
{
    double e_mz = 0.0;                   // V/m at drive_voltage
    double capacitance_per_length = 0.0; // F/m
    double drive_voltage = 1.0;          // V

    static FieldSummary from(electrostatics::FieldSolution const& sol);
};

struct GCurvePoint
{
    double fsr_hz = 0.0;
    double perimeter_m = 0.0;
    double electrode_length_m = 0.0;
    double capacitance_f = 0.0;
    double g_rad_s = 0.0;
    bool c_ge_40ff = false;

    double g_over_2pi_hz() const;
};

struct GCurveInputs
{
    EOMaterial material;
    double omega0 = 0.0;   // rad/s
    double n_g = 2.39;
    double omega_m = 0.0;  // rad/s
    double alpha = 1.0;
};

/// g along an FSR sweep. The cross-section fixes E_Mz and C per length, so
/// a single field solve serves every point; perimeter = c / (n_g FSR).
std::vector<GCurvePoint> g_vs_fsr(FieldSummary const& field, GCurveInputs const& in,
                                  std::span<double const> fsr_hz);

/// Same, solving the cross-section first.
std::vector<GCurvePoint> g_vs_fsr(electrostatics::CrossSection const& xs, double resolution,
                                  GCurveInputs const& in, std::span<double const> fsr_hz);

/// Largest FSR (smallest ring) whose electrode still reaches `min_capacitance`.
double max_fsr_for_capacitance(double capacitance_per_length, double alpha, double n_g,
                               double min_capacitance = kMinElectrodeCapacitance);

/// fsr_hz, perimeter_m, capacitance_f, g_rad_s, g_over_2pi_hz, c_ge_40ff.
CsvTable g_curve_table(std::vector<GCurvePoint> const& curve);

}  // namespace eotx::coupling
