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

#include <vector>

#include "emfbeam/channel.hpp"
#include "emfbeam/codebook.hpp"
#include "emfbeam/exposure.hpp"

namespace emfbeam
{

// Unit-norm precoder and its transmit power (relative to the maximum).
struct Precoder
{
    CVector b;
    double chi = 1.0;
    Scheme scheme = Scheme::mrt;
};

enum class TruncationMode
{
    // One scaling of the exceeding beams, straight from the MRT arc maxima.
    single_pass,
    // single_pass, then rescan and rescale the exceeding beams until their
    // arc maxima sit at the threshold, then back off any residual excess.
    refined,
};

enum class BoostOrder
{
    ascending,
    descending,
};

struct SchemeOptions
{
    TruncationMode truncation = TruncationMode::refined;
    int refine_max_iterations = 100;
    double refine_tolerance_db = 0.01;
    // Polish circle and arc maxima between samples.
    bool refine_peaks = true;
    BoostOrder boost_order = BoostOrder::ascending;
    // Arcs weaker than threshold * boost_floor are never boosted.
    double boost_floor = 1e-12;
};

struct TruncationReport
{
    std::vector<int> exceed_set; // ascending beam indices
    std::vector<int> boost_set;  // ascending beam indices
    std::vector<int> skipped;    // boost candidates below the floor
    BeamDomainVector y_before;
    double chi_before = 1.0;     // transmit power of the input precoder
    BeamDomainVector y_after;
    std::vector<double> scale;   // truncation factor per beam, <= 1
    std::vector<double> boost_scale; // boosting factor per beam, >= 1
    int refine_iterations = 0;
    double guard_factor = 1.0;   // power back-off applied after refinement
    int boost_iterations = 0;
    bool power_cap_hit = false;

    // Beams of exceed_set whose coefficient was actually reduced.
    std::vector<int> truncated_beams() const;
};

struct SchemeResult
{
    Precoder precoder;
    TruncationReport report;
};

// Circle grid and codebook shared by every precoder over one array layout.
struct ScanContext
{
    const CircleGrid &circle;
    const BeamFrame &frame;
};

// Per-arc maxima of omega for (b, chi), polished when options ask for it.
ArcMaxima exposure_by_arc(const ScanContext &ctx, const CVector &b, double chi, const SchemeOptions &options);

// Maximum of omega / chi on the circle.
PowerSample circle_peak(const ScanContext &ctx, const CVector &b, double chi, const SchemeOptions &options);

// Matched filter b = g^H / |g|, full power. Throws std::domain_error on g = 0.
Precoder mrt(const ChannelRow &g);

// Same beam, power scaled so the circle maximum meets the threshold.
Precoder reduced_mrt(const Precoder &mrt, const PowerSample &omega_max, double omega_thresh);

struct CoefficientUpdate
{
    CVector y;
    std::vector<int> beams;
    std::vector<double> scale;
};

// Scale every coefficient whose arc maximum exceeds the threshold by
// sqrt(thresh / arc_max). Other coefficients are copied.
CoefficientUpdate truncate_coefficients(const CVector &y, const std::vector<double> &arc_max, double thresh);

struct BoostUpdate
{
    CVector y;
    std::vector<int> boost_set;
    std::vector<int> skipped;
    std::vector<double> scale; // applied factor per beam, 1 when untouched
    int iterations = 0;
};

// Raise every beam outside `exclude` whose arc maximum is strictly below the
// threshold by sqrt(thresh / arc_max), one beam at a time, while
// |y|^2 < reference_norm2.
BoostUpdate boost_coefficients(const CVector &y_trunc, const std::vector<double> &arc_max,
                               const std::vector<int> &exclude, double thresh, double reference_norm2,
                               const SchemeOptions &options);

// Truncate the beams of (b, chi) whose arc exceeds the threshold.
SchemeResult truncated_mrt(const Precoder &mrt, const ScanContext &ctx, double omega_thresh,
                           const SchemeOptions &options = {});

// Boost the arcs left below the threshold by truncation. The truncated
// result must come from truncated_mrt() on the same MRT precoder.
SchemeResult truncated_boosted_mrt(const SchemeResult &truncated, const ScanContext &ctx, double omega_thresh,
                                   const SchemeOptions &options = {});

} // namespace emfbeam
