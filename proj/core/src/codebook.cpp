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

#include "emfbeam/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace emfbeam
{

CMatrix dft_matrix(int M)
{
    if (M < 1)
        throw std::invalid_argument("dft_matrix: M must be >= 1");
    CMatrix F(M, M);
    const double scale = 1.0 / std::sqrt(static_cast<double>(M));
    for (int l = 0; l < M; ++l)
        for (int m = 0; m < M; ++m)
        {
            // Reduce l*m modulo M first so the phase stays in [0, 2 pi).
            const auto lm = static_cast<long long>(l) * m % M;
            F(l, m) = std::polar(scale, 2.0 * pi * static_cast<double>(lm) / M);
        }
    return F;
}

BeamDomainVector project(const CVector &b, const CMatrix &dft)
{
    if (b.size() != dft.rows())
        throw std::invalid_argument("project: vector length does not match the codebook");
    return {dft.adjoint() * b, BeamTag::mrt};
}

BeamDomainVector project(const CVector &b, const BeamFrame &frame) { return project(b, frame.dft); }

CVector synthesize(const CVector &y, const CMatrix &dft)
{
    if (y.size() != dft.cols())
        throw std::invalid_argument("synthesize: vector length does not match the codebook");
    return dft * y;
}

CVector synthesize(const BeamDomainVector &y, const BeamFrame &frame) { return synthesize(y.y, frame.dft); }

BeamPeak beam_peak(const CMatrix &dft, int m, const CircleGrid &circle)
{
    if (m < 0 || m >= dft.cols())
        throw std::out_of_range("beam_peak: beam index out of range");
    const auto w = circle.powers(dft.col(m), 1.0);
    int best = 0;
    for (int i = 1; i < static_cast<int>(w.size()); ++i)
        if (w[i] > w[best])
            best = i;
    const double angle = circle.angles()[best];
    return {best, angle, circle.point(angle)};
}

std::vector<Arc> build_arcs(const std::vector<double> &peak_angles)
{
    const int M = static_cast<int>(peak_angles.size());
    if (M < 1)
        throw std::invalid_argument("build_arcs: no peaks");

    std::vector<int> order(static_cast<std::size_t>(M));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return peak_angles[a] < peak_angles[b]; });
    for (int i = 1; i < M; ++i)
        if (peak_angles[order[i]] == peak_angles[order[i - 1]])
            throw std::invalid_argument("build_arcs: two beams share a peak angle");

    std::vector<Arc> arcs(static_cast<std::size_t>(M));
    for (int i = 0; i < M; ++i)
    {
        const int m = order[i];
        Arc &arc = arcs[m];
        arc.beam = m;
        arc.lo = i == 0 ? 0.0 : 0.5 * (peak_angles[order[i - 1]] + peak_angles[m]);
        arc.hi = i == M - 1 ? pi : 0.5 * (peak_angles[m] + peak_angles[order[i + 1]]);
    }
    return arcs;
}

BeamFrame build_beam_frame(const CircleGrid &circle)
{
    BeamFrame frame;
    frame.size = circle.elements();
    frame.dft = dft_matrix(frame.size);

    // All beam patterns in one product: samples x beams.
    const RowMatrix patterns = circle.rows() * frame.dft;
    frame.peak_angles.resize(static_cast<std::size_t>(frame.size));
    frame.beam_peaks.resize(static_cast<std::size_t>(frame.size));
    for (int m = 0; m < frame.size; ++m)
    {
        Eigen::Index best = 0;
        double best_w = -1.0;
        for (Eigen::Index i = 0; i < patterns.rows(); ++i)
        {
            const double w = std::norm(patterns(i, m));
            if (w > best_w)
            {
                best_w = w;
                best = i;
            }
        }
        frame.peak_angles[m] = circle.angles()[static_cast<std::size_t>(best)];
        frame.beam_peaks[m] = circle.point(frame.peak_angles[m]);
    }

    frame.arcs = build_arcs(frame.peak_angles);
    frame.arc_order.resize(static_cast<std::size_t>(frame.size));
    std::iota(frame.arc_order.begin(), frame.arc_order.end(), 0);
    std::sort(frame.arc_order.begin(), frame.arc_order.end(),
              [&](int a, int b) { return frame.arcs[a].lo < frame.arcs[b].lo; });

    frame.sample_beam.resize(static_cast<std::size_t>(circle.size()));
    std::size_t pos = 0;
    for (int i = 0; i < circle.size(); ++i)
    {
        const double a = circle.angles()[i];
        while (pos + 1 < frame.arc_order.size() && a > frame.arcs[frame.arc_order[pos]].hi)
            ++pos;
        frame.sample_beam[i] = frame.arc_order[pos];
    }
    return frame;
}

} // namespace emfbeam
