// SPDX-License-Identifier: Apache-2.0
//
// emfbeam - exposure-aware downlink beamforming simulator
// Copyright (C) 2026 The emfbeam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace emfbeam
{

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double pi = 3.14159265358979323846;

// Point or direction in the x-y plane, in wavelengths.
struct Vec2
{
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Vec2 &, const Vec2 &) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }
inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }

// Unit vector at angle `theta` measured from +y towards +x.
inline Vec2 direction_from_y(double theta) { return {std::sin(theta), std::cos(theta)}; }

// Unit vector at polar angle `phi` measured from +x towards +y.
inline Vec2 direction_polar(double phi) { return {std::cos(phi), std::sin(phi)}; }

// Scenario parameters. Distances are in wavelengths and powers are relative
// to the maximum transmit power, so both reference quantities equal 1.
struct ScenarioConfig
{
    int M = 64;                          // BS antenna elements
    int N = 3;                           // scatterers
    int K = 3;                           // RISs (0 = no RIS)
    int P = 16;                          // elements per RIS
    double R = 650.0;                    // limit-circle radius
    double element_spacing = 0.5;
    double omega_thresh_db = -70.0;      // exposure threshold, dB re max transmit power
    double square_half_width = 700.0;
    double sector_half_angle = pi / 6.0; // about +y, radians
    int circle_samples = 4096;           // points on the scanned half-circle
    double grid_step = 5.0;
    std::uint64_t seed = 1;

    // Polar angle of every RIS array axis. Unset means broadside: the axis is
    // perpendicular to the BS-to-RIS direction.
    std::optional<double> ris_axis_angle;

    double omega_thresh() const { return std::pow(10.0, omega_thresh_db / 10.0); }

    // Throws std::invalid_argument on a non-finite or out-of-range field.
    void validate() const;

    // True when R is too small for the limit circle to resolve beam directions.
    bool radius_is_small() const { return R < 50.0; }

    friend bool operator==(const ScenarioConfig &, const ScenarioConfig &) = default;
};

struct Scatterer
{
    Vec2 direction; // BS to scatterer, unit length
    cplx gain;      // Rayleigh path gain, E|gain|^2 = 1

    friend bool operator==(const Scatterer &, const Scatterer &) = default;
};

struct RisDescriptor
{
    Vec2 bs_dir;                      // BS to RIS, unit length
    Vec2 ue_dir;                      // RIS to target UE, unit length
    cplx gain;                        // total gain over the surface, E|gain|^2 = 1
    std::vector<Vec2> element_offsets; // first element at the origin
    Vec2 orientation;                 // unit vector along the RIS array

    friend bool operator==(const RisDescriptor &, const RisDescriptor &) = default;
};

// One frozen random draw. Immutable once built; safe to share across threads.
struct Scenario
{
    ScenarioConfig config;
    std::vector<Vec2> bs_elements;
    std::vector<Scatterer> scatterers;
    std::vector<RisDescriptor> ris_list;

    friend bool operator==(const Scenario &, const Scenario &) = default;
};

// Points (i-1)*spacing*axis for i = 1..count.
std::vector<Vec2> element_positions(int count, double spacing, Vec2 axis);

// Draws scatterer and RIS directions and gains from config.seed.
//
// Each random quantity family is drawn from its own stream derived from the
// root seed, so changing K leaves the scatterer draw untouched and vice versa.
Scenario build_scenario(const ScenarioConfig &config);

// Purposes for derive_seed(). Values are part of the reproducibility contract.
enum class SeedStream : std::uint64_t
{
    scatter_directions = 1,
    scatter_gains = 2,
    ris_directions = 3,
    ris_gains = 4,
    ris_ue_directions = 5,
    monte_carlo_sample = 16,
};

// splitmix64 finaliser.
std::uint64_t mix64(std::uint64_t x);

// Deterministic sub-seed for (root, purpose, index).
std::uint64_t derive_seed(std::uint64_t root, SeedStream purpose, std::uint64_t index = 0);

} // namespace emfbeam
