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

#include <benchmark/benchmark.h>

#include "emfbeam/experiments.hpp"

using namespace emfbeam;

namespace
{

struct Fixture
{
    ScenarioConfig config;
    ExperimentGeometry geometry{config};
    Scenario scenario = build_scenario(config);
    Precoder precoder = mrt(target_channel(scenario));
};

const Fixture &fixture()
{
    static const Fixture f;
    return f;
}

} // namespace

static void BM_AreaScan(benchmark::State &state)
{
    const auto &f = fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            scan_area(f.geometry.area(), f.precoder.b, 1.0, f.config.omega_thresh(), default_over_rtol));
}
BENCHMARK(BM_AreaScan)->Unit(benchmark::kMillisecond);

static void BM_CircleScan(benchmark::State &state)
{
    const auto &f = fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(scan_circle(f.geometry.circle(), f.precoder.b, 1.0));
}
BENCHMARK(BM_CircleScan)->Unit(benchmark::kMicrosecond);

static void BM_ArcMaxima(benchmark::State &state)
{
    const auto &f = fixture();
    SchemeOptions options;
    options.refine_peaks = state.range(0) != 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(exposure_by_arc(f.geometry.context(), f.precoder.b, 1.0, options));
}
BENCHMARK(BM_ArcMaxima)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

static void BM_Truncation(benchmark::State &state)
{
    const auto &f = fixture();
    SchemeOptions options;
    options.truncation = state.range(0) != 0 ? TruncationMode::refined : TruncationMode::single_pass;
    for (auto _ : state)
        benchmark::DoNotOptimize(truncated_mrt(f.precoder, f.geometry.context(), f.config.omega_thresh(), options));
}
BENCHMARK(BM_Truncation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_Sample(benchmark::State &state)
{
    const auto &f = fixture();
    const std::vector<Scheme> schemes(all_schemes.begin(), all_schemes.end());
    EvaluateOptions eval;
    eval.scan_area = state.range(0) != 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_sample(f.scenario, f.geometry, schemes, SchemeOptions{}, eval));
}
BENCHMARK(BM_Sample)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
