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

#include "emfbeam/geometry.hpp"

namespace emfbeam
{

// Angular interval [lo, hi] of the scanned half-circle owned by one beam.
struct Arc
{
    double lo = 0.0;
    double hi = 0.0;
    int beam = 0;

    bool contains(double angle) const { return angle >= lo && angle <= hi; }
};

enum class BeamTag
{
    mrt,
    trunc,
    boost
};

// Precoder coefficients in the DFT beam basis.
struct BeamDomainVector
{
    CVector y;
    BeamTag tag = BeamTag::mrt;
};

// DFT codebook together with where each beam lands on the limit circle.
//
// `arcs[m]` is the arc of beam m; `arc_order` lists beam indices by
// increasing arc angle; `sample_beam[i]` is the beam whose arc owns circle
// sample i. A sample on a boundary belongs to the arc that precedes it in
// angle.
struct BeamFrame
{
    int size = 0;
    CMatrix dft;
    std::vector<double> peak_angles;
    std::vector<Vec2> beam_peaks;
    std::vector<Arc> arcs;
    std::vector<int> arc_order;
    std::vector<int> sample_beam;
};

// F(l, m) = exp(j 2 pi l m / M) / sqrt(M), zero-based indices.
CMatrix dft_matrix(int M);

// y = F^H b.
BeamDomainVector project(const CVector &b, const BeamFrame &frame);
BeamDomainVector project(const CVector &b, const CMatrix &dft);

// F y, not normalised.
CVector synthesize(const BeamDomainVector &y, const BeamFrame &frame);
CVector synthesize(const CVector &y, const CMatrix &dft);

struct BeamPeak
{
    int sample = 0;
    double angle = 0.0;
    Vec2 point;
};

// Circle sample with the largest received power for beam m (zero-based).
// Ties resolve to the smallest polar angle.
BeamPeak beam_peak(const CMatrix &dft, int m, const CircleGrid &circle);

// Partition [0, pi] into arcs split at mid-angles between neighbouring peaks.
// Throws std::invalid_argument on duplicate peak angles.
std::vector<Arc> build_arcs(const std::vector<double> &peak_angles);

BeamFrame build_beam_frame(const CircleGrid &circle);

} // namespace emfbeam
