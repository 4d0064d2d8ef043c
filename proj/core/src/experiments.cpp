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

#include "emfbeam/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace emfbeam
{

namespace
{

std::size_t slot(Scheme s) { return static_cast<std::size_t>(s); }

bool wants(const std::vector<Scheme> &list, Scheme s) { return std::find(list.begin(), list.end(), s) != list.end(); }

} // namespace

double to_db(double linear) { return 10.0 * std::log10(linear); }

void ExperimentConfig::validate() const
{
    scenario.validate();
    if (n_samples < 1)
        throw std::invalid_argument("ExperimentConfig: n_samples must be >= 1");
    if (workers < 1)
        throw std::invalid_argument("ExperimentConfig: workers must be >= 1");
    if (schemes.empty())
        throw std::invalid_argument("ExperimentConfig: at least one scheme is required");
    if (options.refine_max_iterations < 0 || !(options.refine_tolerance_db > 0.0))
        throw std::invalid_argument("ExperimentConfig: invalid truncation refinement settings");
    if (!(options.boost_floor >= 0.0))
        throw std::invalid_argument("ExperimentConfig: boost_floor must be >= 0");
}

ExperimentGeometry::ExperimentGeometry(const ScenarioConfig &config, bool with_area)
{
    config.validate();
    auto elements = element_positions(config.M, config.element_spacing, {1.0, 0.0});
    circle_ = std::make_unique<CircleGrid>(elements, config.R, config.circle_samples);
    frame_ = std::make_unique<BeamFrame>(build_beam_frame(*circle_));
    if (with_area)
        area_ = std::make_unique<AreaGrid>(std::move(elements), config.square_half_width, config.grid_step,
                                           config.R);
}

const AreaGrid &ExperimentGeometry::area() const
{
    if (!area_)
        throw std::logic_error("ExperimentGeometry: built without an area grid");
    return *area_;
}

const SchemeOutcome &SampleOutcome::at(Scheme s) const
{
    const auto &o = schemes[slot(s)];
    if (!o)
        throw std::out_of_range("SampleOutcome: scheme was not evaluated");
    return *o;
}

SampleOutcome evaluate_sample(const Scenario &scenario, const ExperimentGeometry &geometry,
                              const std::vector<Scheme> &schemes, const SchemeOptions &options,
                              const EvaluateOptions &eval)
{
    const double thresh = scenario.config.omega_thresh();
    const ScanContext ctx = geometry.context();

    const bool need_boost = wants(schemes, Scheme::boosted);
    const bool need_trunc = need_boost || wants(schemes, Scheme::truncated);
    const bool need_reduced = wants(schemes, Scheme::reduced);

    SampleOutcome out;
    out.seed = scenario.config.seed;
    out.g = target_channel(scenario);

    auto record = [&](Scheme s, const Precoder &p) {
        if (!wants(schemes, s))
            return;
        SchemeOutcome so;
        so.precoder = p;
        so.rho = received_power(out.g, p.b, p.chi).value;
        so.violation_pct = std::numeric_limits<double>::quiet_NaN();
        if (eval.scan_area)
        {
            ExposureMap map = scan_area(geometry.area(), p.b, p.chi, thresh);
            so.violation_pct = map.violation_pct;
            if (eval.keep_maps)
                so.map = std::move(map);
        }
        out.schemes[slot(s)] = std::move(so);
    };

    const Precoder p_mrt = mrt(out.g);
    record(Scheme::mrt, p_mrt);

    if (need_reduced)
    {
        out.omega_max = circle_peak(ctx, p_mrt.b, p_mrt.chi, options);
        record(Scheme::reduced, reduced_mrt(p_mrt, out.omega_max, thresh));
    }

    if (need_trunc)
    {
        const SchemeResult trunc = truncated_mrt(p_mrt, ctx, thresh, options);
        out.truncation = trunc.report;
        out.truncated_arc_max = exposure_by_arc(ctx, trunc.precoder.b, trunc.precoder.chi, options).value;
        record(Scheme::truncated, trunc.precoder);

        if (need_boost)
        {
            const SchemeResult boost = truncated_boosted_mrt(trunc, ctx, thresh, options);
            out.boosting = boost.report;
            record(Scheme::boosted, boost.precoder);
        }
    }
    return out;
}

CdfSeries cdf(std::vector<double> values, std::string metric)
{
    if (values.empty())
        throw std::invalid_argument("cdf: no values");
    std::stable_sort(values.begin(), values.end());
    CdfSeries out{std::move(metric), std::move(values), {}};
    const auto n = static_cast<double>(out.values.size());
    out.probabilities.reserve(out.values.size());
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.probabilities.push_back(static_cast<double>(i + 1) / n);
    return out;
}

std::uint64_t sample_seed(std::uint64_t root, int index)
{
    return derive_seed(root, SeedStream::monte_carlo_sample, static_cast<std::uint64_t>(index));
}

SnapshotResult run_snapshot(const ExperimentConfig &config, std::uint64_t seed)
{
    config.validate();
    ScenarioConfig sc = config.scenario;
    sc.seed = seed;
    const ExperimentGeometry geometry(sc, true);
    SnapshotResult res{build_scenario(sc), {}};
    res.outcome = evaluate_sample(res.scenario, geometry, config.schemes, config.options, {true, true});
    return res;
}

MonteCarloResult run_monte_carlo(const ExperimentConfig &config, const MonteCarloOptions &mc)
{
    config.validate();
    const ExperimentGeometry geometry(config.scenario, true);
    const int n = config.n_samples;

    std::vector<SampleOutcome> outcomes(static_cast<std::size_t>(n));
    std::atomic<int> next{0};
    std::atomic<int> done{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (int i = next++; i < n; i = next++)
        {
            try
            {
                ScenarioConfig sc = config.scenario;
                sc.seed = sample_seed(config.scenario.seed, i);
                outcomes[static_cast<std::size_t>(i)] =
                    evaluate_sample(build_scenario(sc), geometry, config.schemes, config.options);
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = n;
                return;
            }
            const int d = ++done;
            if (mc.progress)
            {
                std::lock_guard lock(failure_mutex);
                mc.progress(d, n);
            }
        }
    };

    const int workers = std::min(config.workers, n);
    if (workers <= 1)
        worker();
    else
    {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);

    MonteCarloResult res;
    res.samples.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
    {
        const SampleOutcome &o = outcomes[static_cast<std::size_t>(i)];
        MetricSample ms{i, o.seed, {}};
        for (Scheme s : config.schemes)
        {
            const SchemeOutcome &so = o.at(s);
            MetricSample::Entry e{s, so.rho, so.precoder.chi, so.violation_pct, false, false};
            if (s == Scheme::reduced)
                e.clamp_hit = so.precoder.chi >= 1.0;
            if (s == Scheme::boosted && o.boosting)
            {
                e.clamp_hit = o.boosting->power_cap_hit;
                e.boost_applied = o.boosting->boost_iterations > 0;
            }
            ms.entries.push_back(e);
        }
        res.samples.push_back(std::move(ms));
    }

    for (std::size_t k = 0; k < config.schemes.size(); ++k)
    {
        const std::string name{scheme_name(config.schemes[k])};
        std::vector<double> viol, chi, rho;
        for (const auto &ms : res.samples)
        {
            viol.push_back(ms.entries[k].violation_pct);
            chi.push_back(ms.entries[k].chi);
            rho.push_back(to_db(ms.entries[k].rho));
        }
        res.cdfs["violation_pct_" + name] = cdf(std::move(viol), "violation_pct");
        res.cdfs["chi_" + name] = cdf(std::move(chi), "chi");
        res.cdfs["rho_db_" + name] = cdf(std::move(rho), "rho_db");
    }

    if (mc.keep_outcomes)
        res.outcomes = std::move(outcomes);
    return res;
}

} // namespace emfbeam
