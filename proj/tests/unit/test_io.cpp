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

#include <filesystem>
#include <fstream>

#include "emfbeam/io.hpp"
#include "json.hpp"

using namespace emfbeam;
namespace fs = std::filesystem;

namespace
{

fs::path fresh_dir(const std::string &name)
{
    const fs::path p = fs::temp_directory_path() / ("emfbeam_io_" + name);
    fs::remove_all(p);
    return p;
}

} // namespace

TEST_CASE("empty config gives defaults", "[io]")
{
    const ExperimentConfig c = parse_experiment_config("{}");
    CHECK(c.scenario == ScenarioConfig{});
    CHECK(c.n_samples == 1000);
    CHECK(c.schemes.size() == 4);
    CHECK(c.workers == 1);
    CHECK(c.options.truncation == TruncationMode::refined);
}

TEST_CASE("config fields", "[io]")
{
    const ExperimentConfig c = parse_experiment_config(R"({
        "M": 16, "K": 0, "R": 300.5, "seed": 18446744073709551615,
        "n_samples": 5, "schemes": ["truncated", "mrt"], "workers": 2,
        "truncation_mode": "single_pass", "boost_order": "descending",
        "refine_peaks": false, "ris_axis_angle": 0.25 })");
    CHECK(c.scenario.M == 16);
    CHECK(c.scenario.K == 0);
    CHECK(c.scenario.R == 300.5);
    CHECK(c.scenario.seed == 18446744073709551615ULL);
    CHECK(c.scenario.ris_axis_angle == 0.25);
    CHECK(c.n_samples == 5);
    CHECK(c.schemes == std::vector<Scheme>{Scheme::truncated, Scheme::mrt});
    CHECK(c.workers == 2);
    CHECK(c.options.truncation == TruncationMode::single_pass);
    CHECK(c.options.boost_order == BoostOrder::descending);
    CHECK_FALSE(c.options.refine_peaks);
    CHECK(parse_experiment_config(R"({"schemes": "mrt,boosted"})").schemes ==
          std::vector<Scheme>{Scheme::mrt, Scheme::boosted});
}

TEST_CASE("config errors", "[io]")
{
    CHECK_THROWS_AS(parse_experiment_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config("[]"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"bogus": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"M": "64"})"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"M": 6.5})"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"M": 0})"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"seed": -1})"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"schemes": ["zf"]})"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"schemes": []})"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"truncation_mode": "twice"})"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"n_samples": 0})"), ConfigError);
    CHECK_THROWS_AS(load_experiment_config("/nonexistent/emfbeam.json"), ConfigError);
    CHECK_THROWS_AS(parse_scenario_config(R"({"n_samples": 3})"), ConfigError);
}

TEST_CASE("config round trip", "[io]")
{
    ExperimentConfig c;
    c.scenario.M = 32;
    c.scenario.R = 0.1 + 0.2;
    c.scenario.ris_axis_angle = pi / 3;
    c.n_samples = 77;
    c.schemes = {Scheme::boosted, Scheme::reduced};
    c.options.refine_tolerance_db = 0.003;
    const std::string text = experiment_config_json(c);
    const ExperimentConfig back = parse_experiment_config(text);
    CHECK(back.scenario == c.scenario);
    CHECK(back.schemes == c.schemes);
    CHECK(back.n_samples == 77);
    CHECK(experiment_config_json(back) == text);

    CHECK(parse_scenario_config(scenario_config_json(c.scenario)) == c.scenario);
}

TEST_CASE("scheme names", "[io]")
{
    for (Scheme s : all_schemes)
        CHECK(parse_scheme(scheme_name(s)) == s);
    CHECK_THROWS_AS(parse_scheme("MRT"), std::invalid_argument);
    CHECK(parse_scheme_list("mrt,,mrt,reduced") == std::vector<Scheme>{Scheme::mrt, Scheme::reduced});
    CHECK_THROWS_AS(parse_scheme_list(""), std::invalid_argument);
}

TEST_CASE("CSV emitters", "[io]")
{
    MetricSample ms{3, 9, {{Scheme::mrt, 100.0, 1.0, 2.5, false, false}, {Scheme::boosted, 10.0, 1.0, 0.0, true, true}}};
    const std::string csv = samples_csv({ms});
    CHECK(csv == "sample_id,scheme,rho_db,chi,violation_pct,flags\n"
                 "3,mrt,20,1,2.5,-\n"
                 "3,boosted,10,1,0,clamp|boost\n");

    CHECK(cdf_csv(cdf({2.0, 1.0})) == "value,probability\n1,0.5\n2,1\n");

    ExposureMap map;
    map.origin = -5.0;
    map.step = 5.0;
    map.nx = 2;
    map.ny = 1;
    map.threshold = 1e-7;
    map.powers = {1e-6, 1e-8};
    map.evaluated = {true, true};
    map.over = {true, false};
    CHECK(exposure_csv(map) == "x,y,omega_db,over_flag\n-5,-5,-60.0000,1\n0,-5,-80.0000,0\n");

    const std::string ppm = heatmap_ppm(map, 3.0, Scheme::mrt);
    CHECK(ppm.rfind("P6\n", 0) == 0);
    CHECK(ppm.find("scheme mrt") != std::string::npos);
    CHECK(ppm.find("-70 dB") != std::string::npos);
    CHECK(ppm.find("\n28 2\n255\n") != std::string::npos);
    CHECK(ppm.size() == ppm.find("255\n") + 4 + 28 * 2 * 3);
}

TEST_CASE("hashing and atomic output", "[io]")
{
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");

    const fs::path dir = fresh_dir("commit");
    OutputSet files;
    CHECK(files.empty());
    files.add("a.txt", "alpha");
    files.add("b.bin", std::string("\0\1\2", 3));
    const auto recs = files.commit(dir);
    REQUIRE(recs.size() == 2);
    CHECK(recs[1].bytes == 3);
    CHECK(fs::file_size(dir / "b.bin") == 3);
    for (const auto &r : recs)
    {
        std::ifstream in(dir / r.name, std::ios::binary);
        const std::string content((std::istreambuf_iterator<char>(in)), {});
        CHECK(sha256_hex(content) == r.sha256);
    }
    std::size_t n = 0;
    for ([[maybe_unused]] const auto &e : fs::directory_iterator(dir))
        ++n;
    CHECK(n == 2);
    fs::remove_all(dir);
}

TEST_CASE("manifest", "[io]")
{
    RunManifest m{"emfbeam mc", experiment_config_json(ExperimentConfig{}), 5, utc_now(), utc_now(),
                  {{"x.csv", sha256_hex("x"), 1}}};
    const auto j = nlohmann::json::parse(manifest_json(m));
    CHECK(j.at("version") == std::string(tool_version));
    CHECK(j.at("root_seed") == 5);
    CHECK(j.at("files").at(0).at("sha256") == sha256_hex("x"));
    CHECK(j.at("started_utc").get<std::string>().size() == 20);
    const ExperimentConfig echo = parse_experiment_config(j.at("config").dump());
    CHECK(echo.scenario == ScenarioConfig{});
}
