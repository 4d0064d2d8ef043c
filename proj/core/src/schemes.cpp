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

#include "emfbeam/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace emfbeam
{

namespace
{

double to_db(double ratio) { return 10.0 * std::log10(ratio); }

// Unit-norm direction and power ratio of the unnormalised synthesis F y.
Precoder finish(const CVector &field, double reference_norm2, double chi_in, Scheme scheme)
{
    const double n2 = field.squaredNorm();
    if (!(n2 > 0.0))
        throw std::domain_error("scheme produced a zero precoder");
    return {field / std::sqrt(n2), chi_in * n2 / reference_norm2, scheme};
}

} // namespace

std::vector<int> TruncationReport::truncated_beams() const
{
    std::vector<int> out;
    for (int m : exceed_set)
        if (scale[static_cast<std::size_t>(m)] < 1.0)
            out.push_back(m);
    return out;
}

ArcMaxima exposure_by_arc(const ScanContext &ctx, const CVector &b, double chi, const SchemeOptions &options)
{
    const CircleScan scan = scan_circle(ctx.circle, b, chi);
    return options.refine_peaks ? refined_arc_maxima(ctx.circle, ctx.frame, scan, b) : arc_maxima(scan, ctx.frame);
}

PowerSample circle_peak(const ScanContext &ctx, const CVector &b, double chi, const SchemeOptions &options)
{
    const CircleScan scan = scan_circle(ctx.circle, b, chi);
    return options.refine_peaks ? refined_circle_max(ctx.circle, scan, b) : circle_max(scan);
}

Precoder mrt(const ChannelRow &g)
{
    const double n = g.values.norm();
    if (!(n > 0.0))
        throw std::domain_error("mrt: channel is zero");
    return {g.values.conjugate() / n, 1.0, Scheme::mrt};
}

Precoder reduced_mrt(const Precoder &mrt, const PowerSample &omega_max, double omega_thresh)
{
    Precoder out{mrt.b, 1.0, Scheme::reduced};
    if (omega_max.value > 0.0)
        out.chi = std::min(omega_thresh / omega_max.value, 1.0);
    return out;
}

CoefficientUpdate truncate_coefficients(const CVector &y, const std::vector<double> &arc_max, double thresh)
{
    if (static_cast<Eigen::Index>(arc_max.size()) != y.size())
        throw std::invalid_argument("truncate_coefficients: one arc maximum per beam required");
    CoefficientUpdate out{y, {}, std::vector<double>(arc_max.size(), 1.0)};
    for (std::size_t m = 0; m < arc_max.size(); ++m)
        if (arc_max[m] > thresh)
        {
            out.scale[m] = std::sqrt(thresh / arc_max[m]);
            out.y[static_cast<Eigen::Index>(m)] *= out.scale[m];
            out.beams.push_back(static_cast<int>(m));
        }
    return out;
}

BoostUpdate boost_coefficients(const CVector &y_trunc, const std::vector<double> &arc_max,
                               const std::vector<int> &exclude, double thresh, double reference_norm2,
                               const SchemeOptions &options)
{
    if (static_cast<Eigen::Index>(arc_max.size()) != y_trunc.size())
        throw std::invalid_argument("boost_coefficients: one arc maximum per beam required");

    BoostUpdate out{y_trunc, {}, {}, std::vector<double>(arc_max.size(), 1.0), 0};
    const double floor = thresh * options.boost_floor;
    for (std::size_t m = 0; m < arc_max.size(); ++m)
    {
        if (std::binary_search(exclude.begin(), exclude.end(), static_cast<int>(m)) || !(arc_max[m] < thresh))
            continue;
        if (arc_max[m] < floor)
            out.skipped.push_back(static_cast<int>(m));
        else
            out.boost_set.push_back(static_cast<int>(m));
    }

    std::vector<int> order = out.boost_set;
    if (options.boost_order == BoostOrder::descending)
        std::reverse(order.begin(), order.end());

    for (int m : order)
    {
        if (!(out.y.squaredNorm() < reference_norm2))
            break;
        const double f = std::sqrt(thresh / arc_max[static_cast<std::size_t>(m)]);
        out.y[m] = y_trunc[m] * f;
        out.scale[static_cast<std::size_t>(m)] = f;
        ++out.iterations;
    }
    return out;
}

SchemeResult truncated_mrt(const Precoder &mrt, const ScanContext &ctx, double omega_thresh,
                           const SchemeOptions &options)
{
    const CMatrix &F = ctx.frame.dft;
    SchemeResult res;
    TruncationReport &rep = res.report;
    rep.y_before = project(mrt.b, F);
    rep.chi_before = mrt.chi;
    const CVector &y = rep.y_before.y;
    const double ref2 = y.squaredNorm();

    const ArcMaxima initial = exposure_by_arc(ctx, mrt.b, mrt.chi, options);
    CoefficientUpdate upd = truncate_coefficients(y, initial.value, omega_thresh);
    rep.exceed_set = upd.beams;
    rep.scale = upd.scale;

    // omega of F * y_t at transmit power chi_in / |y|^2 equals omega of the
    // truncated precoder at its own transmit power.
    const double field_chi = mrt.chi / ref2;
    auto field_of = [&](const std::vector<double> &scale) {
        CVector yt = y;
        for (Eigen::Index m = 0; m < yt.size(); ++m)
            yt[m] *= scale[static_cast<std::size_t>(m)];
        return yt;
    };

    if (options.truncation == TruncationMode::refined && !rep.exceed_set.empty())
    {
        std::vector<bool> in_set(rep.scale.size(), false);
        for (int m : rep.exceed_set)
            in_set[static_cast<std::size_t>(m)] = true;

        // Sampled maxima are within a few 1e-4 relative of the polished ones,
        // well inside the tolerance; the guard below uses the polished peak.
        SchemeOptions sampled = options;
        sampled.refine_peaks = false;
        const double tol = options.refine_tolerance_db;
        for (int it = 0;; ++it)
        {
            const CVector yt = field_of(rep.scale);
            const ArcMaxima a = exposure_by_arc(ctx, F * yt, field_chi, sampled);

            bool converged = true;
            for (std::size_t m = 0; m < a.value.size(); ++m)
            {
                if (!in_set[m] && a.value[m] > omega_thresh)
                    in_set[m] = true;
                if (!in_set[m])
                    continue;
                const double d = a.value[m] > 0.0 ? to_db(a.value[m] / omega_thresh) : -300.0;
                if (d > tol || (d < -tol && rep.scale[m] < 1.0))
                    converged = false;
            }
            if (converged || it >= options.refine_max_iterations)
                break;

            for (std::size_t m = 0; m < a.value.size(); ++m)
                if (in_set[m] && a.value[m] > 0.0)
                    rep.scale[m] = std::min(1.0, rep.scale[m] * std::sqrt(omega_thresh / a.value[m]));
            ++rep.refine_iterations;
        }

        rep.exceed_set.clear();
        for (std::size_t m = 0; m < in_set.size(); ++m)
            if (in_set[m])
                rep.exceed_set.push_back(static_cast<int>(m));

        // Remove whatever excess the iteration left on the circle.
        const CVector yt = field_of(rep.scale);
        const PowerSample peak = circle_peak(ctx, F * yt, 1.0, options);
        const double limit = omega_thresh * (1.0 - 1e-12);
        if (peak.value * field_chi > limit)
            rep.guard_factor = limit / (peak.value * field_chi);
    }

    CVector y_after = field_of(rep.scale);
    if (rep.guard_factor != 1.0)
        y_after *= std::sqrt(rep.guard_factor);
    rep.y_after = {y_after, BeamTag::trunc};
    rep.boost_scale.assign(rep.scale.size(), 1.0);

    if (rep.exceed_set.empty())
        res.precoder = {mrt.b, mrt.chi, Scheme::truncated};
    else
        res.precoder = finish(F * y_after, ref2, mrt.chi, Scheme::truncated);
    return res;
}

SchemeResult truncated_boosted_mrt(const SchemeResult &truncated, const ScanContext &ctx, double omega_thresh,
                                   const SchemeOptions &options)
{
    const CMatrix &F = ctx.frame.dft;
    SchemeResult res;
    res.report = truncated.report;
    TruncationReport &rep = res.report;

    const Precoder &pt = truncated.precoder;
    const ArcMaxima a = exposure_by_arc(ctx, pt.b, pt.chi, options);
    const double ref2 = rep.y_before.y.squaredNorm();
    const BoostUpdate upd = boost_coefficients(rep.y_after.y, a.value, rep.exceed_set, omega_thresh, ref2, options);
    rep.boost_set = upd.boost_set;
    rep.skipped = upd.skipped;
    rep.boost_iterations = upd.iterations;
    rep.boost_scale = upd.scale;

    if (upd.iterations == 0)
    {
        res.precoder = {pt.b, pt.chi, Scheme::boosted};
        return res;
    }

    rep.y_after = {upd.y, BeamTag::boost};
    res.precoder = finish(F * upd.y, ref2, rep.chi_before, Scheme::boosted);
    if (res.precoder.chi > 1.0)
    {
        res.precoder.chi = 1.0;
        rep.power_cap_hit = true;
    }
    return res;
}

} // namespace emfbeam
