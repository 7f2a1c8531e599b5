// Copyright 2026 The eotx Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <numbers>

namespace eotx {

// CODATA 2018 exact/recommended values, SI units.
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;          // m/s
inline constexpr double kHbar = 1.054571817e-34;              // J s
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kBoltzmann = 1.380649e-23;            // J/K

// Telecom carrier used when no optical frequency is configured.
inline constexpr double kDefaultOpticalFrequencyHz = 193.41e12;
inline constexpr double kDefaultOpticalOmega = kTwoPi * kDefaultOpticalFrequencyHz;

inline constexpr double kMicron = 1e-6;

constexpr double hz_to_rad(double hz) { return kTwoPi * hz; }
constexpr double rad_to_hz(double rad_s) { return rad_s / kTwoPi; }

/// Angular frequency of light with the given vacuum wavelength.
constexpr double omega_from_wavelength(double lambda_m)
{
    return kTwoPi * kSpeedOfLight / lambda_m;
}

}  // namespace eotx
