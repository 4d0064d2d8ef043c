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

// Scalar reference implementations used as test oracles. Written as plain
// loops over real arithmetic, independent of the library code paths.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "emfbeam/scenario.hpp"

namespace oracle
{

using emfbeam::Scenario;
using emfbeam::Vec2;
using C = std::complex<double>;

constexpr double tau = 6.283185307179586476925;

inline C cis(double t) { return {std::cos(t), std::sin(t)}; }

inline std::vector<C> scatter(const Scenario &sc)
{
    std::vector<C> s(sc.bs_elements.size());
    for (std::size_t m = 0; m < s.size(); ++m)
    {
        double re = 0.0, im = 0.0;
        for (const auto &n : sc.scatterers)
        {
            const double ph = tau * (n.direction.x * sc.bs_elements[m].x + n.direction.y * sc.bs_elements[m].y);
            re += n.gain.real() * std::cos(ph) - n.gain.imag() * std::sin(ph);
            im += n.gain.real() * std::sin(ph) + n.gain.imag() * std::cos(ph);
        }
        s[m] = {re, im};
    }
    return s;
}

inline double psi(const Scenario &sc, std::size_t k, std::size_t p)
{
    const auto &r = sc.ris_list[k];
    return tau * (r.ue_dir.x * r.element_offsets[p].x + r.ue_dir.y * r.element_offsets[p].y);
}

inline double phi(const Scenario &sc, std::size_t k, std::size_t m, std::size_t p)
{
    const auto &r = sc.ris_list[k];
    const Vec2 v = sc.bs_elements[m];
    const Vec2 c = r.element_offsets[p];
    return tau * (r.bs_dir.x * v.x + r.bs_dir.y * v.y + r.bs_dir.x * c.x + r.bs_dir.y * c.y);
}

// weights[k][p]; empty means the self-configured choice exp(-j psi).
inline std::vector<C> ris(const Scenario &sc, const std::vector<std::vector<C>> &weights = {})
{
    std::vector<C> h(sc.bs_elements.size(), C{});
    for (std::size_t m = 0; m < h.size(); ++m)
        for (std::size_t k = 0; k < sc.ris_list.size(); ++k)
        {
            const auto P = sc.ris_list[k].element_offsets.size();
            C sum{};
            for (std::size_t p = 0; p < P; ++p)
            {
                const C w = weights.empty() ? cis(-psi(sc, k, p)) : weights[k][p];
                sum += w * cis(phi(sc, k, m, p) + psi(sc, k, p));
            }
            h[m] += sc.ris_list[k].gain / static_cast<double>(P) * sum;
        }
    return h;
}

inline std::vector<C> near_field(const std::vector<Vec2> &elements, Vec2 q)
{
    std::vector<C> out;
    for (const Vec2 e : elements)
    {
        const double dx = q.x - e.x, dy = q.y - e.y;
        const double d = std::sqrt(dx * dx + dy * dy);
        out.push_back(cis(tau * d) / (2.0 * tau * d));
    }
    return out;
}

inline double omega(const std::vector<Vec2> &elements, Vec2 q, const std::vector<C> &b, double chi)
{
    const auto row = near_field(elements, q);
    C acc{};
    for (std::size_t m = 0; m < row.size(); ++m)
        acc += row[m] * b[m];
    return std::norm(acc) * chi;
}

inline C dft(int M, int l, int m) { return cis(tau * l * m / M) / std::sqrt(static_cast<double>(M)); }

} // namespace oracle
