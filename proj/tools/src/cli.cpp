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

#include "emfbeam_cli/cli.hpp"

#include <cstdlib>
#include <optional>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "emfbeam/io.hpp"

namespace emfbeam::cli
{

namespace
{

constexpr const char *out_dir_env = "EMFBEAM_OUT_DIR";

struct CommonArgs
{
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
};

std::string join_args(int argc, const char *const *argv)
{
    std::string s;
    for (int i = 0; i < argc; ++i)
    {
        if (i)
            s += ' ';
        s += argv[i];
    }
    return s;
}

std::filesystem::path resolve_out_dir(const CommonArgs &args, const ExperimentConfig &config)
{
    if (args.out_dir)
        return *args.out_dir;
    if (const char *env = std::getenv(out_dir_env); env && *env)
        return env;
    return config.out_dir;
}

int snapshot(const CommonArgs &args, const std::optional<std::string> &schemes, const std::string &command,
             std::ostream &out)
{
    const std::string started = utc_now();
    ExperimentConfig config = load_experiment_config(args.config);
    if (schemes)
    {
        try
        {
            config.schemes = parse_scheme_list(*schemes);
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(e.what());
        }
    }
    if (args.seed)
        config.scenario.seed = *args.seed;
    const auto dir = resolve_out_dir(args, config);

    const SnapshotResult snap = run_snapshot(config, config.scenario.seed);

    OutputSet files;
    for (Scheme s : config.schemes)
    {
        const auto &o = snap.outcome.at(s);
        const std::string name(scheme_name(s));
        files.add(fmt::format("heatmap_{}.ppm", name), heatmap_ppm(*o.map, config.scenario.R, s));
        files.add(fmt::format("exposure_{}.csv", name), exposure_csv(*o.map));
    }
    const std::string report = report_table(snap, config.schemes);
    files.add("report.txt", report);
    files.add("scenario.json", scenario_json(snap.scenario));

    RunManifest manifest{command, experiment_config_json(config), config.scenario.seed, started, utc_now(),
                         files.records()};
    files.add("manifest.json", manifest_json(manifest));
    files.commit(dir);

    out << report;
    fmt::print(out, "wrote {} files to {}\n", files.files().size(), dir.string());
    return exit_ok;
}

int monte_carlo(const CommonArgs &args, std::optional<int> samples, std::optional<int> workers,
                const std::string &command, std::ostream &out)
{
    const std::string started = utc_now();
    ExperimentConfig config = load_experiment_config(args.config);
    if (samples)
        config.n_samples = *samples;
    if (workers)
        config.workers = *workers;
    if (args.seed)
        config.scenario.seed = *args.seed;
    try
    {
        config.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(e.what());
    }
    const auto dir = resolve_out_dir(args, config);

    const MonteCarloResult mc = run_monte_carlo(config);

    OutputSet files;
    files.add("samples.csv", samples_csv(mc.samples));
    for (const auto &[key, series] : mc.cdfs)
        files.add(fmt::format("cdf_{}.csv", key), cdf_csv(series));

    RunManifest manifest{command, experiment_config_json(config), config.scenario.seed, started, utc_now(),
                         files.records()};
    files.add("manifest.json", manifest_json(manifest));
    files.commit(dir);

    fmt::print(out, "{} samples, {} files written to {}\n", config.n_samples, files.files().size(), dir.string());
    return exit_ok;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"emfbeam: exposure-aware downlink beamforming simulator", "emfbeam"};
    app.set_version_flag("--version", std::string(tool_version));
    app.require_subcommand(1);

    CommonArgs snap_args, mc_args;
    std::optional<std::string> schemes;
    std::optional<int> samples, workers;

    auto *snap = app.add_subcommand("snapshot", "Evaluate one channel draw and write exposure maps");
    snap->add_option("--config", snap_args.config, "JSON configuration file")->required();
    snap->add_option("--seed", snap_args.seed, "Scenario seed");
    snap->add_option("--out-dir", snap_args.out_dir, "Output directory");
    snap->add_option("--schemes", schemes, "Comma-separated schemes: mrt,reduced,truncated,boosted");

    auto *mc = app.add_subcommand("mc", "Monte-Carlo run writing per-sample metrics and CDFs");
    mc->add_option("--config", mc_args.config, "JSON configuration file")->required();
    mc->add_option("--samples", samples, "Number of samples");
    mc->add_option("--seed", mc_args.seed, "Root seed");
    mc->add_option("--out-dir", mc_args.out_dir, "Output directory");
    mc->add_option("--workers", workers, "Worker threads");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::CallForVersion &e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e, out, err);
        return exit_config;
    }

    const std::string command = join_args(argc, argv);
    try
    {
        if (snap->parsed())
            return snapshot(snap_args, schemes, command, out);
        return monte_carlo(mc_args, samples, workers, command, out);
    }
    catch (const ConfigError &e)
    {
        fmt::print(err, "emfbeam: configuration error: {}\n", e.what());
        return exit_config;
    }
    catch (const std::exception &e)
    {
        fmt::print(err, "emfbeam: error: {}\n", e.what());
        return exit_runtime;
    }
}

} // namespace emfbeam::cli
