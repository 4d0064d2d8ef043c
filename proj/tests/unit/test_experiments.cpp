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

#include <catch_amalgamated.hpp>

#include <cmath>

#include "emfbeam/experiments.hpp"

using namespace emfbeam;
using Catch::Matchers::WithinAbs;

namespace
{

ExperimentConfig small_config()
{
    ExperimentConfig c;
    c.scenario.M = 16;
    c.scenario.R = 120.0;
    c.scenario.square_half_width = 150.0;
    c.scenario.circle_samples = 1024;
    c.scenario.omega_thresh_db = -55.0;
    c.scenario.seed = 42;
    c.n_samples = 12;
    return c;
}

} // namespace

TEST_CASE("empirical CDF", "[experiments]")
{
    const CdfSeries one = cdf({3.5}, "x");
    CHECK(one.values == std::vector<double>{3.5});
    CHECK(one.probabilities == std::vector<double>{1.0});

    const CdfSeries s = cdf({0.0, 2.0, 1.0, 0.0});
    CHECK(s.values == std::vector<double>{0.0, 0.0, 1.0, 2.0});
    CHECK(s.probabilities == std::vector<double>{0.25, 0.5, 0.75, 1.0});

    CHECK_THROWS_AS(cdf({}), std::invalid_argument);
}

TEST_CASE("sample evaluation pulls in dependencies", "[experiments]")
{
    const ExperimentConfig c = small_config();
    const ExperimentGeometry geometry(c.scenario);
    const Scenario sc = build_scenario(c.scenario);

    const SampleOutcome only = evaluate_sample(sc, geometry, {Scheme::boosted}, c.options);
    CHECK(only.has(Scheme::boosted));
    CHECK_FALSE(only.has(Scheme::mrt));
    CHECK_FALSE(only.has(Scheme::truncated));
    CHECK(only.truncation.has_value());
    CHECK_THROWS_AS(only.at(Scheme::mrt), std::out_of_range);

    const SampleOutcome all = evaluate_sample(sc, geometry, c.schemes, c.options, {false, false});
    for (Scheme s : all_schemes)
    {
        CHECK(std::isnan(all.at(s).violation_pct));
        CHECK_FALSE(all.at(s).map.has_value());
    }
    CHECK_THAT(all.at(Scheme::mrt).rho, WithinAbs(all.g.values.squaredNorm(), 1e-9));
    CHECK(all.at(Scheme::boosted).precoder.b == only.at(Scheme::boosted).precoder.b);
}

TEST_CASE("snapshot keeps maps", "[experiments]")
{
    const ExperimentConfig c = small_config();
    const SnapshotResult snap = run_snapshot(c, 7);
    CHECK(snap.scenario.config.seed == 7);
    for (Scheme s : all_schemes)
    {
        const auto &o = snap.outcome.at(s);
        REQUIRE(o.map.has_value());
        CHECK(o.map->violation_pct == o.violation_pct);
    }
    CHECK(snap.outcome.at(Scheme::reduced).violation_pct == 0.0);
    CHECK(snap.outcome.at(Scheme::truncated).violation_pct == 0.0);
}

TEST_CASE("Monte-Carlo run is independent of the worker count", "[experiments]")
{
    ExperimentConfig c = small_config();
    const MonteCarloResult one = run_monte_carlo(c);
    c.workers = 3;
    int calls = 0;
    const MonteCarloResult three = run_monte_carlo(c, {true, [&](int, int) { ++calls; }});
    CHECK(calls == c.n_samples);
    CHECK(three.outcomes.size() == 12);
    CHECK(one.outcomes.empty());

    REQUIRE(one.samples.size() == three.samples.size());
    for (std::size_t i = 0; i < one.samples.size(); ++i)
    {
        CHECK(one.samples[i].seed == sample_seed(42, static_cast<int>(i)));
        CHECK(one.samples[i].seed == three.samples[i].seed);
        REQUIRE(one.samples[i].entries.size() == 4);
        for (std::size_t k = 0; k < 4; ++k)
        {
            CHECK(one.samples[i].entries[k].rho == three.samples[i].entries[k].rho);
            CHECK(one.samples[i].entries[k].chi == three.samples[i].entries[k].chi);
            CHECK(one.samples[i].entries[k].violation_pct == three.samples[i].entries[k].violation_pct);
        }
    }
    CHECK(one.cdfs.size() == 12);
    for (const auto &[key, series] : one.cdfs)
    {
        CHECK(series.values == three.cdfs.at(key).values);
        CHECK(series.values.size() == 12);
    }
    CHECK(one.cdfs.count("rho_db_boosted") == 1);

    // Transmit-power CDFs are ordered at every decile.
    auto decile = [&](const std::string &key, int d) {
        const auto &v = one.cdfs.at(key).values;
        return v[std::min(v.size() - 1, v.size() * static_cast<std::size_t>(d) / 10)];
    };
    for (int d = 0; d <= 10; ++d)
    {
        CHECK(decile("chi_reduced", d) <= decile("chi_truncated", d));
        CHECK(decile("chi_truncated", d) <= decile("chi_boosted", d));
    }
    CHECK(one.cdfs.count("violation_pct_mrt") == 1);
    CHECK(one.cdfs.count("chi_reduced") == 1);
}

TEST_CASE("experiment config validation", "[experiments]")
{
    ExperimentConfig c;
    CHECK_NOTHROW(c.validate());
    c.n_samples = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.workers = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.schemes.clear();
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    CHECK_THROWS_AS(run_monte_carlo(c), std::invalid_argument);
}
