// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

#include "eotx/coupling.hpp"

#include "eotx/constants.hpp"
#include "eotx/errors.hpp"

#include <fmt/format.h>

#include <cmath>

namespace eotx::coupling {

void validate(EOMaterial const& material)
{
    if (!(material.n_e > 1.0))
        throw InvalidArgument("extraordinary index must exceed 1");
    if (!(material.r33 > 0.0))
        throw InvalidArgument("r33 must be positive");
}

MicrowaveCavity cavity_from_electrode(double omega_m, double capacitance, double drive_voltage)
{
    if (!(capacitance > 0.0))
        throw InvalidArgument(fmt::format("electrode capacitance must be positive (got {})", capacitance));
    if (!(omega_m > 0.0))
        throw InvalidArgument("microwave frequency must be positive");
    MicrowaveCavity cav;
    cav.omega_m = omega_m;
    cav.capacitance = capacitance;
    cav.drive_voltage = drive_voltage;
    cav.inductance = 1.0 / (omega_m * omega_m * capacitance);
    return cav;
}

CoverageFactor::CoverageFactor(double alpha) : alpha_(alpha)
{
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw InvalidArgument(fmt::format("coverage factor alpha must be in (0, 1] (got {})", alpha));
}

double g_uniform(EOMaterial const& material, double omega0, MicrowaveCavity const& cavity,
                 CoverageFactor alpha, double e_mz)
{
    validate(material);
    double const u_m = cavity.energy();
    if (!(u_m > 0.0))
        throw InvalidArgument("microwave cavity energy must be positive");
    return material.n_e * material.n_e * material.r33 * omega0 *
           std::sqrt(kHbar * cavity.omega_m / u_m) * 0.5 * alpha.value() * std::abs(e_mz);
}

FieldSummary FieldSummary::from(electrostatics::FieldSolution const& sol)
{
    return {sol.e_mz_center, sol.capacitance_per_length, sol.grid.drive_voltage};
}

double GCurvePoint::g_over_2pi_hz() const
{
    return rad_to_hz(g_rad_s);
}

std::vector<GCurvePoint> g_vs_fsr(FieldSummary const& field, GCurveInputs const& in,
                                  std::span<double const> fsr_hz)
{
    CoverageFactor const alpha(in.alpha);
    for (std::size_t k = 0; k < fsr_hz.size(); ++k)
    {
        if (!(fsr_hz[k] > 0.0))
            throw InvalidArgument("FSR sweep values must be positive");
        if (k > 0 && !(fsr_hz[k] > fsr_hz[k - 1]))
            throw InvalidArgument("FSR sweep must be strictly increasing");
    }

    std::vector<GCurvePoint> curve;
    curve.reserve(fsr_hz.size());
    for (double fsr : fsr_hz)
    {
        GCurvePoint pt;
        pt.fsr_hz = fsr;
        pt.perimeter_m = kSpeedOfLight / (in.n_g * fsr);
        pt.electrode_length_m = alpha.value() * pt.perimeter_m;
        pt.capacitance_f = field.capacitance_per_length * pt.electrode_length_m;
        auto const cav = cavity_from_electrode(in.omega_m, pt.capacitance_f, field.drive_voltage);
        pt.g_rad_s = g_uniform(in.material, in.omega0, cav, alpha, field.e_mz);
        pt.c_ge_40ff = pt.capacitance_f >= kMinElectrodeCapacitance;
        curve.push_back(pt);
    }
    return curve;
}

std::vector<GCurvePoint> g_vs_fsr(electrostatics::CrossSection const& xs, double resolution,
                                  GCurveInputs const& in, std::span<double const> fsr_hz)
{
    auto const sol = electrostatics::solve_cross_section(xs, resolution);
    return g_vs_fsr(FieldSummary::from(sol), in, fsr_hz);
}

double max_fsr_for_capacitance(double capacitance_per_length, double alpha, double n_g,
                               double min_capacitance)
{
    if (!(capacitance_per_length > 0.0 && min_capacitance > 0.0))
        throw InvalidArgument("capacitances must be positive");
    double const perimeter = min_capacitance / (alpha * capacitance_per_length);
    return kSpeedOfLight / (n_g * perimeter);
}

CsvTable g_curve_table(std::vector<GCurvePoint> const& curve)
{
    CsvTable t({{"fsr_hz", "Hz"},
                {"perimeter_m", "m"},
                {"capacitance_f", "F"},
                {"g_rad_s", "rad/s"},
                {"g_over_2pi_hz", "Hz"},
                {"c_ge_40ff", "-"}});
    for (auto const& p : curve)
        t.add_row({p.fsr_hz, p.perimeter_m, p.capacitance_f, p.g_rad_s, p.g_over_2pi_hz(), p.c_ge_40ff});
    return t;
}

}  // namespace eotx::coupling
