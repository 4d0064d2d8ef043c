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

#include <optional>
#include <vector>

#include "emfbeam/scenario.hpp"

namespace emfbeam
{

enum class ChannelRole
{
    scatter,  // s: BS to UE through the scatterers
    ris,      // h: BS to UE through the RISs
    total,    // g = s + h
    nearfield // q(Q): BS to a probe point close to the array
};

// 1xM channel row. Applied to a precoder b as the plain product row * b.
struct ChannelRow
{
    CVector values;
    ChannelRole role = ChannelRole::total;

    Eigen::Index size() const { return values.size(); }
};

// Phases of every BS-element / RIS-element / target combination, in radians.
struct RisPhaseSet
{
    int K = 0;
    int M = 0;
    int P = 0;
    std::vector<double> phi; // [k][m][p], row-major
    std::vector<double> psi; // [k][p], row-major

    bool empty() const { return K == 0; }
    double phi_at(int k, int m, int p) const { return phi[(static_cast<std::size_t>(k) * M + m) * P + p]; }
    double psi_at(int k, int p) const { return psi[static_cast<std::size_t>(k) * P + p]; }
};

// Unit-modulus RIS element weights, [k][p] row-major.
struct RisWeights
{
    int K = 0;
    int P = 0;
    std::vector<cplx> w;

    cplx at(int k, int p) const { return w[static_cast<std::size_t>(k) * P + p]; }
};

struct PowerSample
{
    double value = 0.0;
    std::optional<Vec2> location;
};

ChannelRow scatter_channel(const Scenario &scenario);

// Empty set when the scenario has no RIS.
RisPhaseSet ris_phases(const Scenario &scenario);

// w = exp(-j psi): each RIS steers itself towards the target UE.
RisWeights ris_self_configure(const RisPhaseSet &phases);

// Zero row when K = 0. Throws std::invalid_argument on a K/P mismatch.
ChannelRow ris_channel(const Scenario &scenario, const RisWeights &weights);

ChannelRow total_channel(const ChannelRow &s, const ChannelRow &h);

// s + h with self-configured RISs.
ChannelRow target_channel(const Scenario &scenario);

// Spherical-wave row towards point q. Throws std::domain_error when q sits on
// an element.
ChannelRow near_field_channel(const Scenario &scenario, Vec2 q);
ChannelRow near_field_channel(const std::vector<Vec2> &elements, Vec2 q);

// Writes the near-field row into `out` (size M) without allocating.
void near_field_row(const std::vector<Vec2> &elements, Vec2 q, cplx *out);

// |row * b|^2 * chi.
PowerSample received_power(const ChannelRow &channel, const CVector &b, double chi);

} // namespace emfbeam
