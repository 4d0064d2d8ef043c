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

#include "emfbeam/scenario.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace emfbeam
{

namespace
{

void require(bool ok, const std::string &what)
{
    if (!ok)
        throw std::invalid_argument("ScenarioConfig: " + what);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

// Circularly-symmetric complex Gaussian with unit variance.
cplx draw_rayleigh(std::mt19937_64 &rng)
{
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

} // namespace

void ScenarioConfig::validate() const
{
    require(M >= 1, "M must be >= 1");
    require(N >= 1, "N must be >= 1");
    require(K >= 0, "K must be >= 0");
    require(P >= 1, "P must be >= 1");
    require(positive(R), "R must be finite and > 0");
    require(positive(element_spacing), "element_spacing must be finite and > 0");
    require(std::isfinite(omega_thresh_db), "omega_thresh_db must be finite");
    require(positive(square_half_width), "square_half_width must be finite and > 0");
    require(positive(sector_half_angle) && sector_half_angle <= pi / 2.0,
            "sector_half_angle must lie in (0, pi/2]");
    require(circle_samples >= 2, "circle_samples must be >= 2");
    require(positive(grid_step), "grid_step must be finite and > 0");
    require(!ris_axis_angle || std::isfinite(*ris_axis_angle), "ris_axis_angle must be finite");
}

std::vector<Vec2> element_positions(int count, double spacing, Vec2 axis)
{
    if (count < 1)
        throw std::invalid_argument("element_positions: count must be >= 1");
    if (!positive(spacing))
        throw std::invalid_argument("element_positions: spacing must be > 0");

    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        out.push_back((static_cast<double>(i) * spacing) * axis);
    return out;
}

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, SeedStream purpose, std::uint64_t index)
{
    std::uint64_t h = mix64(root);
    h = mix64(h ^ static_cast<std::uint64_t>(purpose));
    return mix64(h ^ index);
}

Scenario build_scenario(const ScenarioConfig &config)
{
    config.validate();

    Scenario sc;
    sc.config = config;
    sc.bs_elements = element_positions(config.M, config.element_spacing, {1.0, 0.0});

    const double half = config.sector_half_angle;
    auto draw_angle = [half](std::mt19937_64 &rng) {
        std::uniform_real_distribution<double> u(-half, half);
        return u(rng);
    };

    std::mt19937_64 scat_dir(derive_seed(config.seed, SeedStream::scatter_directions));
    std::mt19937_64 scat_gain(derive_seed(config.seed, SeedStream::scatter_gains));
    sc.scatterers.reserve(static_cast<std::size_t>(config.N));
    for (int n = 0; n < config.N; ++n)
    {
        Scatterer s;
        s.direction = direction_from_y(draw_angle(scat_dir));
        s.gain = draw_rayleigh(scat_gain);
        sc.scatterers.push_back(s);
    }

    std::mt19937_64 ris_dir(derive_seed(config.seed, SeedStream::ris_directions));
    std::mt19937_64 ris_gain(derive_seed(config.seed, SeedStream::ris_gains));
    std::mt19937_64 ue_dir(derive_seed(config.seed, SeedStream::ris_ue_directions));
    sc.ris_list.reserve(static_cast<std::size_t>(config.K));
    for (int k = 0; k < config.K; ++k)
    {
        RisDescriptor ris;
        ris.bs_dir = direction_from_y(draw_angle(ris_dir));
        ris.ue_dir = direction_from_y(draw_angle(ue_dir));
        ris.gain = draw_rayleigh(ris_gain);
        if (config.ris_axis_angle)
            ris.orientation = direction_polar(*config.ris_axis_angle);
        else
            ris.orientation = {-ris.bs_dir.y, ris.bs_dir.x};
        ris.element_offsets = element_positions(config.P, config.element_spacing, ris.orientation);
        sc.ris_list.push_back(std::move(ris));
    }
    return sc;
}

} // namespace emfbeam
