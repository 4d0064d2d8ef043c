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

#include "emfbeam/exposure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace emfbeam
{

namespace
{

struct Extremum
{
    double x;
    double f;
};

// Golden-section search for the maximum of a unimodal f on [lo, hi].
template <typename F>
Extremum golden_max(F &&f, double lo, double hi)
{
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 60 && (b - a) > 1e-10; ++it)
    {
        if (fc >= fd)
        {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        }
        else
        {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? Extremum{c, fc} : Extremum{d, fd};
}

Extremum polish(const CircleGrid &circle, const std::vector<double> &angles, std::size_t best, double lo,
                double hi, double chi, const CVector &b, double current)
{
    const double left = best > 0 ? std::max(lo, angles[best - 1]) : angles[best];
    const double right = best + 1 < angles.size() ? std::min(hi, angles[best + 1]) : angles[best];
    Extremum out{angles[best], current};
    if (right > left)
    {
        const auto e = golden_max([&](double a) { return circle.power_at(a, b, chi); }, left, right);
        if (e.f > out.f)
            out = e;
    }
    return out;
}

} // namespace

std::string_view scheme_name(Scheme s)
{
    switch (s)
    {
    case Scheme::mrt:
        return "mrt";
    case Scheme::reduced:
        return "reduced";
    case Scheme::truncated:
        return "truncated";
    case Scheme::boosted:
        return "boosted";
    }
    return "unknown";
}

CircleScan scan_circle(const CircleGrid &circle, const CVector &b, double chi, Scheme tag)
{
    if (!(chi >= 0.0))
        throw std::invalid_argument("scan_circle: chi must be >= 0");
    return {circle.angles(), circle.powers(b, chi), chi, tag};
}

CircleScan scan_circle(const Scenario &scenario, const CVector &b, double chi, int circle_samples)
{
    const CircleGrid circle(scenario.bs_elements, scenario.config.R, circle_samples);
    return scan_circle(circle, b, chi);
}

PowerSample circle_max(const CircleScan &scan)
{
    if (scan.powers.empty())
        throw std::invalid_argument("circle_max: empty scan");
    const auto it = std::max_element(scan.powers.begin(), scan.powers.end());
    const auto i = static_cast<std::size_t>(it - scan.powers.begin());
    const double value = scan.chi > 0.0 ? *it / scan.chi : 0.0;
    return {value, direction_polar(scan.angles[i])};
}

PowerSample refined_circle_max(const CircleGrid &circle, const CircleScan &scan, const CVector &b)
{
    if (scan.powers.empty())
        throw std::invalid_argument("refined_circle_max: empty scan");
    if (scan.chi <= 0.0)
        return {0.0, direction_polar(scan.angles.front())};
    const auto it = std::max_element(scan.powers.begin(), scan.powers.end());
    const auto i = static_cast<std::size_t>(it - scan.powers.begin());
    const auto e = polish(circle, scan.angles, i, 0.0, pi, 1.0, b, *it / scan.chi);
    return {e.f, circle.point(e.x)};
}

ArcMaxima arc_maxima(const CircleScan &scan, const BeamFrame &frame)
{
    if (scan.powers.size() != frame.sample_beam.size())
        throw std::invalid_argument("arc_maxima: scan and beam frame use different circle grids");

    const auto M = static_cast<std::size_t>(frame.size);
    ArcMaxima out{std::vector<double>(M, -1.0), std::vector<double>(M, 0.0)};
    for (std::size_t i = 0; i < scan.powers.size(); ++i)
    {
        const auto m = static_cast<std::size_t>(frame.sample_beam[i]);
        if (scan.powers[i] > out.value[m])
        {
            out.value[m] = scan.powers[i];
            out.angle[m] = scan.angles[i];
        }
    }
    for (std::size_t m = 0; m < M; ++m)
        if (out.value[m] < 0.0)
            throw std::invalid_argument("arc_maxima: an arc holds no circle sample; increase circle_samples");
    return out;
}

ArcMaxima refined_arc_maxima(const CircleGrid &circle, const BeamFrame &frame, const CircleScan &scan,
                             const CVector &b)
{
    ArcMaxima out = arc_maxima(scan, frame);
    if (scan.chi <= 0.0)
        return out;

    const auto &angles = scan.angles;
    for (std::size_t m = 0; m < out.value.size(); ++m)
    {
        const auto best = static_cast<std::size_t>(
            std::lower_bound(angles.begin(), angles.end(), out.angle[m]) - angles.begin());
        const Arc &arc = frame.arcs[m];
        const auto e = polish(circle, angles, best, arc.lo, arc.hi, scan.chi, b, out.value[m]);
        out.value[m] = e.f;
        out.angle[m] = e.x;
    }
    return out;
}

ExposureMap scan_area(const AreaGrid &area, const CVector &b, double chi, double threshold, double over_rtol)
{
    if (!(chi >= 0.0))
        throw std::invalid_argument("scan_area: chi must be >= 0");

    ExposureMap map;
    map.origin = area.origin();
    map.step = area.step();
    map.nx = area.nx();
    map.ny = area.ny();
    map.threshold = threshold;
    map.powers = area.powers(b, chi);
    map.evaluated = area.outside();
    map.over.assign(map.powers.size(), false);
    map.evaluated_count = area.outside_count();

    const double limit = threshold * (1.0 + over_rtol);
    for (std::size_t i = 0; i < map.powers.size(); ++i)
        if (map.evaluated[i] && map.powers[i] > limit)
        {
            map.over[i] = true;
            ++map.over_count;
        }
    map.violation_pct = map.evaluated_count > 0
                            ? 100.0 * static_cast<double>(map.over_count) / static_cast<double>(map.evaluated_count)
                            : 0.0;
    return map;
}

ExposureMap scan_area(const Scenario &scenario, const CVector &b, double chi, double grid_step)
{
    const AreaGrid area(scenario.bs_elements, scenario.config.square_half_width, grid_step, scenario.config.R);
    return scan_area(area, b, chi, scenario.config.omega_thresh());
}

} // namespace emfbeam
