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

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "emfbeam/experiments.hpp"

namespace emfbeam
{

inline constexpr std::string_view tool_version = "0.1.0";

// Malformed or invalid configuration input.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Experiment configuration as one flat JSON object. Every field is optional;
// missing fields keep their defaults, unknown fields are rejected.
ExperimentConfig parse_experiment_config(std::string_view json_text);
ExperimentConfig load_experiment_config(const std::filesystem::path &path);
std::string experiment_config_json(const ExperimentConfig &config);

ScenarioConfig parse_scenario_config(std::string_view json_text);
std::string scenario_config_json(const ScenarioConfig &config);

// Full scenario dump. Reloading reproduces every double bit for bit.
std::string scenario_json(const Scenario &scenario);
Scenario parse_scenario(std::string_view json_text);

Scheme parse_scheme(std::string_view name);
std::vector<Scheme> parse_scheme_list(std::string_view comma_separated);

// sample_id,scheme,rho_db,chi,violation_pct,flags
std::string samples_csv(const std::vector<MetricSample> &samples);
// value,probability
std::string cdf_csv(const CdfSeries &series);
// x,y,omega_db,over_flag for every grid point
std::string exposure_csv(const ExposureMap &map);

// Binary PPM: banded dB greyscale, over-threshold area in yellow, limit
// circle in red and a colour bar on the right. The dB scale is fixed
// relative to the threshold so that images compare across runs.
std::string heatmap_ppm(const ExposureMap &map, double radius, Scheme scheme);

// Plain-text table: scheme, received power (dB), transmit power, violation %.
std::string report_table(const SnapshotResult &snapshot, const std::vector<Scheme> &schemes);

std::string sha256_hex(std::string_view data);

struct FileRecord
{
    std::string name;
    std::string sha256;
    std::uintmax_t bytes = 0;
};

// Files staged in memory and written together. Each file goes to a
// temporary name first and is renamed into place, so a failure before
// commit() leaves the output directory untouched.
class OutputSet
{
  public:
    void add(std::string name, std::string content);
    bool empty() const { return files_.empty(); }
    const std::vector<std::pair<std::string, std::string>> &files() const { return files_; }
    std::vector<FileRecord> records() const;
    std::vector<FileRecord> commit(const std::filesystem::path &dir) const;

  private:
    std::vector<std::pair<std::string, std::string>> files_;
};

struct RunManifest
{
    std::string command;
    std::string config_json;
    std::uint64_t root_seed = 0;
    std::string started_utc;
    std::string finished_utc;
    std::vector<FileRecord> files;
};

std::string manifest_json(const RunManifest &manifest);
std::string utc_now();

// Writes `content` to `path` through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path &path, std::string_view content);

} // namespace emfbeam
