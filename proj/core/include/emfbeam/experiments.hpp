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

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "emfbeam/schemes.hpp"

namespace emfbeam
{

inline constexpr std::array<Scheme, 4> all_schemes{Scheme::mrt, Scheme::reduced, Scheme::truncated,
                                                   Scheme::boosted};

struct ExperimentConfig
{
    ScenarioConfig scenario;
    int n_samples = 1000;
    std::vector<Scheme> schemes{all_schemes.begin(), all_schemes.end()};
    SchemeOptions options;
    std::string out_dir = "out";
    int workers = 1;

    void validate() const;
};

// Probe grids and codebook for one array layout. Built once and shared
// read-only by every sample.
class ExperimentGeometry
{
  public:
    explicit ExperimentGeometry(const ScenarioConfig &config, bool with_area = true);

    const CircleGrid &circle() const { return *circle_; }
    const BeamFrame &frame() const { return *frame_; }
    const AreaGrid &area() const;
    bool has_area() const { return area_ != nullptr; }
    ScanContext context() const { return {*circle_, *frame_}; }

  private:
    std::unique_ptr<CircleGrid> circle_;
    std::unique_ptr<BeamFrame> frame_;
    std::unique_ptr<AreaGrid> area_;
};

struct SchemeOutcome
{
    Precoder precoder;
    double rho = 0.0;           // received power at the target, linear
    double violation_pct = 0.0; // NaN when the area was not scanned
    std::optional<ExposureMap> map;
};

struct SampleOutcome
{
    std::uint64_t seed = 0;
    ChannelRow g;
    PowerSample omega_max;                             // MRT circle maximum, chi-normalised
    std::array<std::optional<SchemeOutcome>, 4> schemes; // indexed by Scheme
    std::optional<TruncationReport> truncation;
    std::optional<TruncationReport> boosting;
    std::vector<double> truncated_arc_max; // arc maxima under the truncated scheme

    const SchemeOutcome &at(Scheme s) const;
    bool has(Scheme s) const { return schemes[static_cast<std::size_t>(s)].has_value(); }
};

struct EvaluateOptions
{
    bool scan_area = true;
    bool keep_maps = false;
};

// Runs the requested schemes (plus whatever they depend on) for one draw.
SampleOutcome evaluate_sample(const Scenario &scenario, const ExperimentGeometry &geometry,
                              const std::vector<Scheme> &schemes, const SchemeOptions &options,
                              const EvaluateOptions &eval = {});

struct MetricSample
{
    int index = 0;
    std::uint64_t seed = 0;
    struct Entry
    {
        Scheme scheme = Scheme::mrt;
        double rho = 0.0;
        double chi = 0.0;
        double violation_pct = 0.0;
        bool clamp_hit = false;
        bool boost_applied = false;
    };
    std::vector<Entry> entries; // in ExperimentConfig::schemes order
};

struct CdfSeries
{
    std::string metric;
    std::vector<double> values;
    std::vector<double> probabilities;
};

// Empirical CDF: i-th sorted value carries probability i/n.
CdfSeries cdf(std::vector<double> values, std::string metric = {});

// Seed of Monte-Carlo sample `index`.
std::uint64_t sample_seed(std::uint64_t root, int index);

struct SnapshotResult
{
    Scenario scenario;
    SampleOutcome outcome;
};

SnapshotResult run_snapshot(const ExperimentConfig &config, std::uint64_t seed);

struct MonteCarloResult
{
    std::vector<MetricSample> samples; // by sample index
    // Keyed "<metric>_<scheme>", metric one of violation_pct, chi, rho_db.
    std::map<std::string, CdfSeries> cdfs;
    std::vector<SampleOutcome> outcomes; // only when requested
};

struct MonteCarloOptions
{
    bool keep_outcomes = false;
    std::function<void(int done, int total)> progress;
};

// Independent samples spread over config.workers threads. Output does not
// depend on the worker count.
MonteCarloResult run_monte_carlo(const ExperimentConfig &config, const MonteCarloOptions &mc = {});

double to_db(double linear);

} // namespace emfbeam
