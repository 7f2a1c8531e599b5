// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

#include "eotx/open_system.hpp"

#include "eotx/constants.hpp"
#include "eotx/errors.hpp"

#include <fmt/format.h>

#include <cmath>

namespace eotx::open_system {
namespace {

constexpr Complex kI{0.0, 1.0};

void require_positive(double v, char const* what)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw InvalidArgument(fmt::format("{} must be positive and finite (got {})", what, v));
}

void validate(QFactors const& q)
{
    require_positive(q.q_i_opt, "Q_i,opt");
    require_positive(q.q_ex_opt, "Q_ex,opt");
    require_positive(q.q_i_m, "Q_i,M");
    require_positive(q.q_ex_m, "Q_ex,M");
}

void validate(OperatingPoint const& op)
{
    validate(op.budget);
    if (!(op.n_s >= 0.0) || !std::isfinite(op.n_s))
        throw InvalidArgument(fmt::format("pump photon number must be >= 0 (got {})", op.n_s));
    if (!std::isfinite(op.g) || !std::isfinite(op.phi_s))
        throw InvalidArgument("coupling rate and pump phase must be finite");
}

}  // namespace

QFactors LossBudget::q_factors(double omega_opt, double omega_m) const
{
    return {omega_opt / gamma_i_opt, omega_opt / gamma_ex_opt, omega_m / gamma_i_m,
            omega_m / gamma_ex_m};
}

LossBudget LossBudget::from_q(QFactors const& q, double omega_opt, double omega_m)
{
    validate(q);
    require_positive(omega_opt, "optical frequency");
    require_positive(omega_m, "microwave frequency");
    return {omega_opt / q.q_i_opt, omega_opt / q.q_ex_opt, omega_m / q.q_i_m,
            omega_m / q.q_ex_m};
}

LossBudget LossBudget::critical(double q_opt, double q_m, double omega_opt, double omega_m)
{
    return from_q({2 * q_opt, 2 * q_opt, 2 * q_m, 2 * q_m}, omega_opt, omega_m);
}

void validate(LossBudget const& b)
{
    require_positive(b.gamma_i_opt, "gamma_i,opt");
    require_positive(b.gamma_ex_opt, "gamma_ex,opt");
    require_positive(b.gamma_i_m, "gamma_i,M");
    require_positive(b.gamma_ex_m, "gamma_ex,M");
}

std::string_view to_string(Target t)
{
    switch (t)
    {
        case Target::A_as: return "A_as";
        case Target::A_m: return "A_M";
        case Target::S_out: return "S_out";
    }
    return "?";
}

double TransferRow::power_sum() const
{
    return std::norm(in_m) + std::norm(vac_m) + std::norm(vac_wg) + std::norm(vac_loss);
}

double cooperativity(OperatingPoint const& op)
{
    validate(op);
    return 4.0 * op.g * op.g * op.n_s / (op.budget.gamma_opt() * op.budget.gamma_m());
}

double photons_for_unit_cooperativity(LossBudget const& budget, double g)
{
    validate(budget);
    require_positive(std::abs(g), "coupling rate");
    return budget.gamma_opt() * budget.gamma_m() / (4.0 * g * g);
}

TransferRow transfer_coefficients(OperatingPoint const& op, double detuning, Target target)
{
    validate(op);
    auto const& b = op.budget;
    Complex const lo = kI * detuning + 0.5 * b.gamma_opt();
    Complex const lm = kI * detuning + 0.5 * b.gamma_m();
    double const gn = op.g * std::sqrt(op.n_s);
    Complex const d = lo * lm + gn * gn;
    Complex const pump = std::polar(1.0, op.phi_s);
    Complex const pump_c = std::conj(pump);

    TransferRow row;
    row.detuning = detuning;
    row.target = target;
    switch (target)
    {
        case Target::A_as:
            row.in_m = -kI * gn * pump * std::sqrt(b.gamma_ex_m) / d;
            row.vac_m = -kI * gn * pump * std::sqrt(b.gamma_i_m) / d;
            row.vac_wg = lm * std::sqrt(b.gamma_ex_opt) / d;
            row.vac_loss = lm * std::sqrt(b.gamma_i_opt) / d;
            break;
        case Target::A_m:
            row.in_m = lo * std::sqrt(b.gamma_ex_m) / d;
            row.vac_m = lo * std::sqrt(b.gamma_i_m) / d;
            row.vac_wg = -kI * gn * pump_c * std::sqrt(b.gamma_ex_opt) / d;
            row.vac_loss = -kI * gn * pump_c * std::sqrt(b.gamma_i_opt) / d;
            break;
        case Target::S_out: {
            auto const a = transfer_coefficients(op, detuning, Target::A_as);
            double const s = std::sqrt(b.gamma_ex_opt);
            row.in_m = -s * a.in_m;
            row.vac_m = -s * a.vac_m;
            row.vac_wg = 1.0 - s * a.vac_wg;
            row.vac_loss = -s * a.vac_loss;
            break;
        }
    }
    return row;
}

TransferRow transfer_on_resonance(OperatingPoint const& op, Target target)
{
    validate(op);
    auto const& b = op.budget;
    double const gn = op.g * std::sqrt(op.n_s);
    double const d = b.gamma_opt() * b.gamma_m() / 4.0 + gn * gn;
    Complex const pump = std::polar(1.0, op.phi_s);

    TransferRow row;
    row.target = target;
    switch (target)
    {
        case Target::A_as:
            row.in_m = -kI * gn * pump * std::sqrt(b.gamma_ex_m) / d;
            row.vac_m = -kI * gn * pump * std::sqrt(b.gamma_i_m) / d;
            row.vac_wg = b.gamma_m() / 2.0 * std::sqrt(b.gamma_ex_opt) / d;
            row.vac_loss = b.gamma_m() / 2.0 * std::sqrt(b.gamma_i_opt) / d;
            break;
        case Target::A_m:
            row.in_m = b.gamma_opt() / 2.0 * std::sqrt(b.gamma_ex_m) / d;
            row.vac_m = b.gamma_opt() / 2.0 * std::sqrt(b.gamma_i_m) / d;
            row.vac_wg = -kI * gn * std::conj(pump) * std::sqrt(b.gamma_ex_opt) / d;
            row.vac_loss = -kI * gn * std::conj(pump) * std::sqrt(b.gamma_i_opt) / d;
            break;
        case Target::S_out:
            row.in_m = kI * gn * pump * std::sqrt(b.gamma_ex_m * b.gamma_ex_opt) / d;
            row.vac_m = kI * gn * pump * std::sqrt(b.gamma_ex_opt) * std::sqrt(b.gamma_i_m) / d;
            row.vac_wg = (b.gamma_m() * (b.gamma_i_opt - b.gamma_ex_opt) / 4.0 + gn * gn) / d;
            row.vac_loss =
                -b.gamma_m() / 2.0 * std::sqrt(b.gamma_ex_opt) * std::sqrt(b.gamma_i_opt) / d;
            break;
    }
    return row;
}

TransferRow optimal_output_row(LossBudget const& b, double phi_s)
{
    validate(b);
    Complex const ip = kI * std::polar(1.0, phi_s);
    double const go = b.gamma_opt();
    double const gm = b.gamma_m();
    TransferRow row;
    row.target = Target::S_out;
    row.in_m = ip * std::sqrt(b.gamma_ex_m * b.gamma_ex_opt / (gm * go));
    row.vac_wg = b.gamma_i_opt / go;
    row.vac_loss = -std::sqrt(b.gamma_ex_opt * b.gamma_i_opt) / go;
    row.vac_m = ip * std::sqrt(b.gamma_ex_opt * b.gamma_i_m / (gm * go));
    return row;
}

double conversion_efficiency(LossBudget const& b)
{
    validate(b);
    return b.gamma_ex_opt * b.gamma_ex_m / (b.gamma_opt() * b.gamma_m());
}

double conversion_efficiency(QFactors const& q)
{
    validate(q);
    return q.q_opt() * q.q_m() / (q.q_ex_opt * q.q_ex_m);
}

double conversion_efficiency_at(OperatingPoint const& op)
{
    return std::norm(transfer_coefficients(op, 0.0, Target::S_out).in_m);
}

double pump_photons_from_power(double p_in, LossBudget const& b, double omega_opt)
{
    validate(b);
    require_positive(omega_opt, "optical frequency");
    if (!(p_in >= 0.0))
        throw InvalidArgument(fmt::format("pump power must be >= 0 (got {})", p_in));
    double const go = b.gamma_opt();
    return 4.0 * b.gamma_ex_opt / (go * go) * p_in / (kHbar * omega_opt);
}

double pump_photons_from_power(double p_in, QFactors const& q, double omega_opt)
{
    validate(q);
    require_positive(omega_opt, "optical frequency");
    if (!(p_in >= 0.0))
        throw InvalidArgument(fmt::format("pump power must be >= 0 (got {})", p_in));
    double const qo = q.q_opt();
    return 4.0 * qo * qo / q.q_ex_opt * p_in / (kHbar * omega_opt * omega_opt);
}

double required_pump_power(LossBudget const& b, double g, double omega_opt)
{
    validate(b);
    require_positive(g, "coupling rate");
    require_positive(omega_opt, "optical frequency");
    double const go = b.gamma_opt();
    return kHbar * omega_opt * go * go * go * b.gamma_m() / (16.0 * b.gamma_ex_opt * g * g);
}

double required_pump_power(QFactors const& q, double g, double omega_opt, double omega_m)
{
    validate(q);
    require_positive(g, "coupling rate");
    double const qo = q.q_opt();
    return kHbar * omega_m * omega_opt * omega_opt * omega_opt * q.q_ex_opt /
           (16.0 * qo * qo * qo * q.q_m() * g * g);
}

double scattered_power(LossBudget const& b, double g, double omega_opt)
{
    return b.gamma_i_opt * kHbar * omega_opt * photons_for_unit_cooperativity(b, g);
}

double scattered_power(QFactors const& q, double g, double omega_opt, double omega_m)
{
    validate(q);
    require_positive(g, "coupling rate");
    return kHbar * omega_m * omega_opt * omega_opt * omega_opt /
           (4.0 * q.q_i_opt * q.q_opt() * q.q_m() * g * g);
}

std::string_view to_string(CouplingRegime r)
{
    switch (r)
    {
        case CouplingRegime::Undercoupled: return "under";
        case CouplingRegime::Critical: return "critical";
        case CouplingRegime::Overcoupled: return "over";
    }
    return "?";
}

CouplingRegime optical_regime(LossBudget const& b)
{
    double const r = b.gamma_ex_opt / b.gamma_i_opt;
    if (std::abs(r - 1.0) <= 1e-9)
        return CouplingRegime::Critical;
    return r > 1.0 ? CouplingRegime::Overcoupled : CouplingRegime::Undercoupled;
}

std::vector<CouplingSweepPoint> coupling_sweep(QFactors const& base, double g, double omega_opt,
                                               double omega_m, std::span<double const> q_ex_opt)
{
    for (std::size_t k = 0; k < q_ex_opt.size(); ++k)
    {
        require_positive(q_ex_opt[k], "Q_ex,opt");
        if (k > 0 && !(q_ex_opt[k] > q_ex_opt[k - 1]))
            throw InvalidArgument("Q_ex,opt sweep must be strictly increasing");
    }
    std::vector<CouplingSweepPoint> out;
    out.reserve(q_ex_opt.size());
    for (double qe : q_ex_opt)
    {
        QFactors q = base;
        q.q_ex_opt = qe;
        auto const b = LossBudget::from_q(q, omega_opt, omega_m);
        CouplingSweepPoint p;
        p.q_ex_opt = qe;
        p.q_opt = q.q_opt();
        p.p_in = required_pump_power(b, g, omega_opt);
        p.p_scat = scattered_power(b, g, omega_opt);
        p.efficiency = conversion_efficiency(b);
        p.regime = optical_regime(b);
        out.push_back(p);
    }
    return out;
}

CsvTable coupling_sweep_table(std::vector<CouplingSweepPoint> const& sweep)
{
    CsvTable t({{"q_ex_opt", "1"},
                {"q_opt", "1"},
                {"p_in_w", "W"},
                {"p_scat_w", "W"},
                {"efficiency", "1"},
                {"regime", "-"}});
    for (auto const& p : sweep)
        t.add_row({p.q_ex_opt, p.q_opt, p.p_in, p.p_scat, p.efficiency,
                   std::string(to_string(p.regime))});
    return t;
}

}  // namespace eotx::open_system
