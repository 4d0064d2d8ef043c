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

#include <string_view>
#include <vector>

#include "emfbeam/channel.hpp"
#include "emfbeam/codebook.hpp"
#include "emfbeam/geometry.hpp"

namespace emfbeam
{

enum class Scheme
{
    mrt,
    reduced,
    truncated,
    boosted
};

std::string_view scheme_name(Scheme s);

// omega sampled along the upper half of the limit circle.
struct CircleScan
{
    std::vector<double> angles;
    std::vector<double> powers;
    double chi = 1.0;
    Scheme tag = Scheme::mrt;
};

// Per-beam maximum of omega over the beam's arc, indexed by beam.
struct ArcMaxima
{
    std::vector<double> value;
    std::vector<double> angle;
};

// omega on a square grid around the BS. Only points on or beyond the limit
// circle enter the mask and the violation percentage.
struct ExposureMap
{
    double origin = 0.0; // x and y of grid point (0, 0)
    double step = 0.0;
    int nx = 0;
    int ny = 0;
    double threshold = 0.0;
    std::vector<double> powers; // row-major, y outer
    std::vector<bool> evaluated; // on or beyond the circle
    std::vector<bool> over;      // evaluated and above threshold
    std::size_t evaluated_count = 0;
    std::size_t over_count = 0;
    double violation_pct = 0.0;
};

// Relative slack on the threshold before a point counts as over-exposed.
inline constexpr double default_over_rtol = 1e-6;

CircleScan scan_circle(const CircleGrid &circle, const CVector &b, double chi, Scheme tag = Scheme::mrt);
CircleScan scan_circle(const Scenario &scenario, const CVector &b, double chi, int circle_samples);

// Largest sample divided by chi (0 when chi is 0). Throws on an empty scan.
PowerSample circle_max(const CircleScan &scan);

// circle_max() polished by a golden-section search around the best sample.
PowerSample refined_circle_max(const CircleGrid &circle, const CircleScan &scan, const CVector &b);

// Discrete per-arc maxima of the scan. Throws std::invalid_argument when an
// arc contains no sample.
ArcMaxima arc_maxima(const CircleScan &scan, const BeamFrame &frame);

// arc_maxima() with each arc's maximum polished inside the arc by a
// golden-section search between the neighbours of its best sample. Never
// smaller than the discrete value.
ArcMaxima refined_arc_maxima(const CircleGrid &circle, const BeamFrame &frame, const CircleScan &scan,
                             const CVector &b);

ExposureMap scan_area(const AreaGrid &area, const CVector &b, double chi, double threshold,
                      double over_rtol = default_over_rtol);
ExposureMap scan_area(const Scenario &scenario, const CVector &b, double chi, double grid_step);

} // namespace emfbeam
