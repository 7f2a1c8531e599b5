// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

#include "eotx/closed_dynamics.hpp"

#include "eotx/constants.hpp"
#include "eotx/errors.hpp"

#include <boost/numeric/odeint.hpp>
#include <fmt/format.h>

#include <array>
#include <cmath>

namespace eotx::dynamics {
namespace {

using State = std::array<Complex, 3>;  // a_s, a_as, a_m

struct ThreeWave
{
    double g;
    void operator()(State const& x, State& dxdt, double /*t*/) const
    {
        constexpr Complex i{0.0, 1.0};
        dxdt[0] = -i * g * std::conj(x[2]) * x[1];
        dxdt[1] = -i * g * x[2] * x[0];
        dxdt[2] = -i * g * std::conj(x[0]) * x[1];
    }
};

}  // namespace

SwapAmplitudes rabi_closed_form(Complex a_m0, Complex a_as0, double n_s, double phi_s, double g,
                                double t)
{
    if (!(n_s > 0.0 && g > 0.0))
        throw InvalidArgument("rabi_closed_form needs n_s > 0 and g > 0");
    if (!(t >= 0.0))
        throw InvalidArgument("rabi_closed_form needs t >= 0");
    constexpr Complex i{0.0, 1.0};
    double const w = g * std::sqrt(n_s) * t;
    double const c = std::cos(w);
    double const s = std::sin(w);
    return {a_m0 * c - i * std::polar(1.0, -phi_s) * a_as0 * s,
            a_as0 * c - i * std::polar(1.0, phi_s) * a_m0 * s};
}

double swap_rate(double g, double n_s)
{
    if (!(g > 0.0 && n_s > 0.0))
        throw InvalidArgument("swap rate needs g > 0 and n_s > 0");
    return g * std::sqrt(n_s);
}

double swap_time(double g, double n_s)
{
    return kPi / (2.0 * swap_rate(g, n_s));
}

std::vector<ClosedState> integrate_full(ClosedState const& state0, double g,
                                        std::span<double const> sample_times,
                                        IntegratorOptions const& opts)
{
    namespace ode = boost::numeric::odeint;

    if (!(opts.tolerance >= 1e-12 && opts.tolerance <= 1e-6))
        throw InvalidArgument(fmt::format("integrator tolerance must be in [1e-12, 1e-6] (got {})",
                                          opts.tolerance));
    for (std::size_t k = 0; k < sample_times.size(); ++k)
    {
        if (sample_times[k] < state0.time || (k > 0 && sample_times[k] < sample_times[k - 1]))
            throw InvalidArgument("sample times must be ascending and not before the initial time");
    }

    State x{state0.a_s, state0.a_as, state0.a_m};
    double const norm = std::sqrt(std::norm(x[0]) + std::norm(x[1]) + std::norm(x[2]));
    std::vector<ClosedState> out;
    out.reserve(sample_times.size());
    if (sample_times.empty())
        return out;

    // With two of the three amplitudes zero (or no coupling) every
    // derivative vanishes identically.
    int const zeros = (x[0] == Complex{}) + (x[1] == Complex{}) + (x[2] == Complex{});
    double const scale = std::abs(g) * norm;
    if (scale == 0.0 || zeros >= 2)
    {
        for (double t : sample_times)
            out.push_back({x[0], x[1], x[2], t});
        return out;
    }

    // Largest rate in the system sets the time scale.
    double const period = kTwoPi / scale;
    double const min_dt = opts.min_step_fraction * period;

    auto stepper = ode::make_dense_output(opts.tolerance * norm, opts.tolerance,
                                          ode::runge_kutta_dopri5<State>());
    ThreeWave const sys{g};
    stepper.initialize(x, state0.time, 1e-3 * period);

    State sample;
    for (double t : sample_times)
    {
        while (stepper.current_time() < t)
        {
            stepper.do_step(sys);
            if (stepper.current_time_step() < min_dt)
                throw StiffnessError(fmt::format(
                    "step size {:.3e} s fell below the floor {:.3e} s at t = {:.6e} s",
                    stepper.current_time_step(), min_dt, stepper.current_time()));
        }
        if (t == stepper.current_time())
            sample = stepper.current_state();
        else if (t == state0.time)
            sample = x;
        else
            stepper.calc_state(t, sample);
        out.push_back({sample[0], sample[1], sample[2], t});
    }
    return out;
}

std::vector<ClosedState> integrate_full(ClosedState const& state0, double g, double t_end,
                                        int samples, IntegratorOptions const& opts)
{
    if (samples < 2 || !(t_end > state0.time))
        throw InvalidArgument("need at least two samples over a positive time span");
    std::vector<double> times(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k)
        times[k] = state0.time + (t_end - state0.time) * k / (samples - 1);
    times.back() = t_end;
    return integrate_full(state0, g, times, opts);
}

ManleyRowe manley_rowe(ClosedState const& s)
{
    return {std::norm(s.a_s) + std::norm(s.a_as), std::norm(s.a_m) + std::norm(s.a_as)};
}

CsvTable trajectory_table(std::vector<ClosedState> const& traj)
{
    CsvTable t({{"t_s", "s"},
                {"re_a_s", "sqrt(photons)"},
                {"im_a_s", "sqrt(photons)"},
                {"re_a_as", "sqrt(photons)"},
                {"im_a_as", "sqrt(photons)"},
                {"re_a_m", "sqrt(photons)"},
                {"im_a_m", "sqrt(photons)"},
                {"n_s", "photons"},
                {"n_as", "photons"},
                {"n_m", "photons"}});
    for (auto const& s : traj)
    {
        t.add_row({s.time, s.a_s.real(), s.a_s.imag(), s.a_as.real(), s.a_as.imag(), s.a_m.real(),
                   s.a_m.imag(), std::norm(s.a_s), std::norm(s.a_as), std::norm(s.a_m)});
    }
    return t;
}

}  // namespace eotx::dynamics
