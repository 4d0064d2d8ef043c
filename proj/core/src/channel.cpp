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

#include "emfbeam/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace emfbeam
{

namespace
{

constexpr double two_pi = 2.0 * pi;

cplx expj(double theta) { return std::polar(1.0, theta); }

// Elements closer than this to a probe point are treated as coincident.
constexpr double min_distance = 1e-9;

} // namespace

ChannelRow scatter_channel(const Scenario &scenario)
{
    const auto M = static_cast<Eigen::Index>(scenario.bs_elements.size());
    ChannelRow row{CVector::Zero(M), ChannelRole::scatter};
    for (Eigen::Index m = 0; m < M; ++m)
    {
        cplx acc{0.0, 0.0};
        for (const auto &s : scenario.scatterers)
            acc += s.gain * expj(two_pi * dot(s.direction, scenario.bs_elements[m]));
        row.values[m] = acc;
    }
    return row;
}

RisPhaseSet ris_phases(const Scenario &scenario)
{
    RisPhaseSet set;
    if (scenario.ris_list.empty())
        return set;

    set.K = static_cast<int>(scenario.ris_list.size());
    set.M = static_cast<int>(scenario.bs_elements.size());
    set.P = static_cast<int>(scenario.ris_list.front().element_offsets.size());
    set.phi.resize(static_cast<std::size_t>(set.K) * set.M * set.P);
    set.psi.resize(static_cast<std::size_t>(set.K) * set.P);

    for (int k = 0; k < set.K; ++k)
    {
        const auto &ris = scenario.ris_list[k];
        if (static_cast<int>(ris.element_offsets.size()) != set.P)
            throw std::invalid_argument("ris_phases: RISs must share one element count");
        for (int p = 0; p < set.P; ++p)
        {
            const Vec2 c = ris.element_offsets[p];
            set.psi[static_cast<std::size_t>(k) * set.P + p] = two_pi * dot(ris.ue_dir, c);
            for (int m = 0; m < set.M; ++m)
                set.phi[(static_cast<std::size_t>(k) * set.M + m) * set.P + p] =
                    two_pi * (dot(ris.bs_dir, scenario.bs_elements[m]) + dot(ris.bs_dir, c));
        }
    }
    return set;
}

RisWeights ris_self_configure(const RisPhaseSet &phases)
{
    RisWeights weights{phases.K, phases.P, {}};
    weights.w.reserve(phases.psi.size());
    for (double psi : phases.psi)
        weights.w.push_back(expj(-psi));
    return weights;
}

ChannelRow ris_channel(const Scenario &scenario, const RisWeights &weights)
{
    const auto M = static_cast<Eigen::Index>(scenario.bs_elements.size());
    ChannelRow row{CVector::Zero(M), ChannelRole::ris};
    if (scenario.ris_list.empty())
        return row;

    const RisPhaseSet phases = ris_phases(scenario);
    if (weights.K != phases.K || weights.P != phases.P ||
        weights.w.size() != static_cast<std::size_t>(phases.K) * phases.P)
        throw std::invalid_argument("ris_channel: weight dimensions do not match the scenario");

    const double inv_p = 1.0 / static_cast<double>(phases.P);
    for (Eigen::Index m = 0; m < M; ++m)
    {
        cplx acc{0.0, 0.0};
        for (int k = 0; k < phases.K; ++k)
        {
            cplx inner{0.0, 0.0};
            for (int p = 0; p < phases.P; ++p)
                inner += weights.at(k, p) *
                         expj(phases.phi_at(k, static_cast<int>(m), p) + phases.psi_at(k, p));
            acc += scenario.ris_list[k].gain * inv_p * inner;
        }
        row.values[m] = acc;
    }
    return row;
}

ChannelRow total_channel(const ChannelRow &s, const ChannelRow &h)
{
    if (s.size() != h.size())
        throw std::invalid_argument("total_channel: row lengths differ");
    return {s.values + h.values, ChannelRole::total};
}

ChannelRow target_channel(const Scenario &scenario)
{
    const ChannelRow s = scatter_channel(scenario);
    const ChannelRow h = ris_channel(scenario, ris_self_configure(ris_phases(scenario)));
    return total_channel(s, h);
}

void near_field_row(const std::vector<Vec2> &elements, Vec2 q, cplx *out)
{
    constexpr double inv_4pi = 1.0 / (4.0 * pi);
    for (std::size_t m = 0; m < elements.size(); ++m)
    {
        const double d = norm(q - elements[m]);
        if (d < min_distance)
            throw std::domain_error("near_field_channel: probe point coincides with an element");
        out[m] = std::polar(inv_4pi / d, two_pi * d);
    }
}

ChannelRow near_field_channel(const std::vector<Vec2> &elements, Vec2 q)
{
    ChannelRow row{CVector(static_cast<Eigen::Index>(elements.size())), ChannelRole::nearfield};
    near_field_row(elements, q, row.values.data());
    return row;
}

ChannelRow near_field_channel(const Scenario &scenario, Vec2 q)
{
    return near_field_channel(scenario.bs_elements, q);
}

PowerSample received_power(const ChannelRow &channel, const CVector &b, double chi)
{
    if (channel.size() != b.size())
        throw std::invalid_argument("received_power: channel and precoder lengths differ");
    if (!(chi >= 0.0))
        throw std::invalid_argument("received_power: chi must be >= 0");
    const cplx y = (channel.values.transpose() * b)(0);
    return {std::norm(y) * chi, std::nullopt};
}

} // namespace emfbeam
