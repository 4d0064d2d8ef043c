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

#include "emfbeam/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <openssl/evp.h>

#include "json.hpp"

namespace emfbeam
{

using nlohmann::json;

namespace
{

const std::set<std::string> scenario_keys{
    "M",         "N",          "K",
    "P",         "R",          "element_spacing",
    "omega_thresh_db",         "square_half_width",
    "sector_half_angle",       "circle_samples",
    "grid_step", "seed",       "ris_axis_angle"};

const std::set<std::string> experiment_keys{
    "n_samples",           "schemes",    "out_dir",     "workers",     "truncation_mode",
    "refine_max_iterations", "refine_tolerance_db", "refine_peaks", "boost_order", "boost_floor"};

json parse_object(std::string_view text)
{
    json j;
    try
    {
        j = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("configuration must be a JSON object");
    return j;
}

int get_int(const json &j, const char *key, int fallback)
{
    if (!j.contains(key))
        return fallback;
    const auto &v = j.at(key);
    if (!v.is_number_integer())
        throw ConfigError(fmt::format("'{}' must be an integer", key));
    const auto x = v.get<long long>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
        throw ConfigError(fmt::format("'{}' is out of range", key));
    return static_cast<int>(x);
}

double get_double(const json &j, const char *key, double fallback)
{
    if (!j.contains(key))
        return fallback;
    const auto &v = j.at(key);
    if (!v.is_number())
        throw ConfigError(fmt::format("'{}' must be a number", key));
    return v.get<double>();
}

ScenarioConfig scenario_from(const json &j)
{
    ScenarioConfig c;
    c.M = get_int(j, "M", c.M);
    c.N = get_int(j, "N", c.N);
    c.K = get_int(j, "K", c.K);
    c.P = get_int(j, "P", c.P);
    c.R = get_double(j, "R", c.R);
    c.element_spacing = get_double(j, "element_spacing", c.element_spacing);
    c.omega_thresh_db = get_double(j, "omega_thresh_db", c.omega_thresh_db);
    c.square_half_width = get_double(j, "square_half_width", c.square_half_width);
    c.sector_half_angle = get_double(j, "sector_half_angle", c.sector_half_angle);
    c.circle_samples = get_int(j, "circle_samples", c.circle_samples);
    c.grid_step = get_double(j, "grid_step", c.grid_step);
    if (j.contains("seed"))
    {
        const auto &v = j.at("seed");
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
            throw ConfigError("'seed' must be a non-negative integer");
        c.seed = v.get<std::uint64_t>();
    }
    if (j.contains("ris_axis_angle") && !j.at("ris_axis_angle").is_null())
        c.ris_axis_angle = get_double(j, "ris_axis_angle", 0.0);
    try
    {
        c.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(e.what());
    }
    return c;
}

json scenario_to(const ScenarioConfig &c)
{
    json j{{"M", c.M},
           {"N", c.N},
           {"K", c.K},
           {"P", c.P},
           {"R", c.R},
           {"element_spacing", c.element_spacing},
           {"omega_thresh_db", c.omega_thresh_db},
           {"square_half_width", c.square_half_width},
           {"sector_half_angle", c.sector_half_angle},
           {"circle_samples", c.circle_samples},
           {"grid_step", c.grid_step},
           {"seed", c.seed}};
    if (c.ris_axis_angle)
        j["ris_axis_angle"] = *c.ris_axis_angle;
    return j;
}

void reject_unknown(const json &j, std::initializer_list<const std::set<std::string> *> allowed)
{
    for (const auto &item : j.items())
    {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const auto *keys) { return keys->count(item.key()) > 0; });
        if (!known)
            throw ConfigError(fmt::format("unknown configuration field '{}'", item.key()));
    }
}

json vec_json(Vec2 v) { return json::array({v.x, v.y}); }
json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

Vec2 vec_from(const json &j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }
cplx cplx_from(const json &j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

std::string flags_of(const MetricSample::Entry &e)
{
    std::string f;
    if (e.clamp_hit)
        f = "clamp";
    if (e.boost_applied)
        f += f.empty() ? "boost" : "|boost";
    return f.empty() ? "-" : f;
}

struct Rgb
{
    unsigned char r, g, b;
};

} // namespace

ScenarioConfig parse_scenario_config(std::string_view json_text)
{
    const json j = parse_object(json_text);
    reject_unknown(j, {&scenario_keys});
    return scenario_from(j);
}

std::string scenario_config_json(const ScenarioConfig &config) { return scenario_to(config).dump(2); }

ExperimentConfig parse_experiment_config(std::string_view json_text)
{
    const json j = parse_object(json_text);
    reject_unknown(j, {&scenario_keys, &experiment_keys});

    ExperimentConfig c;
    c.scenario = scenario_from(j);
    c.n_samples = get_int(j, "n_samples", c.n_samples);
    c.workers = get_int(j, "workers", c.workers);
    if (j.contains("out_dir"))
    {
        if (!j.at("out_dir").is_string())
            throw ConfigError("'out_dir' must be a string");
        c.out_dir = j.at("out_dir").get<std::string>();
    }
    if (j.contains("schemes"))
    {
        const auto &v = j.at("schemes");
        try
        {
            if (v.is_string())
                c.schemes = parse_scheme_list(v.get<std::string>());
            else if (v.is_array())
            {
                c.schemes.clear();
                for (const auto &s : v)
                    c.schemes.push_back(parse_scheme(s.get<std::string>()));
            }
            else
                throw ConfigError("'schemes' must be a list of scheme names");
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(e.what());
        }
        catch (const json::exception &e)
        {
            throw ConfigError(std::string("'schemes': ") + e.what());
        }
    }
    if (j.contains("truncation_mode"))
    {
        const auto mode = j.at("truncation_mode").is_string() ? j.at("truncation_mode").get<std::string>() : "";
        if (mode == "refined")
            c.options.truncation = TruncationMode::refined;
        else if (mode == "single_pass")
            c.options.truncation = TruncationMode::single_pass;
        else
            throw ConfigError("'truncation_mode' must be \"refined\" or \"single_pass\"");
    }
    c.options.refine_max_iterations = get_int(j, "refine_max_iterations", c.options.refine_max_iterations);
    c.options.refine_tolerance_db = get_double(j, "refine_tolerance_db", c.options.refine_tolerance_db);
    if (j.contains("refine_peaks"))
    {
        if (!j.at("refine_peaks").is_boolean())
            throw ConfigError("'refine_peaks' must be a boolean");
        c.options.refine_peaks = j.at("refine_peaks").get<bool>();
    }
    if (j.contains("boost_order"))
    {
        const auto order = j.at("boost_order").is_string() ? j.at("boost_order").get<std::string>() : "";
        if (order == "ascending")
            c.options.boost_order = BoostOrder::ascending;
        else if (order == "descending")
            c.options.boost_order = BoostOrder::descending;
        else
            throw ConfigError("'boost_order' must be \"ascending\" or \"descending\"");
    }
    c.options.boost_floor = get_double(j, "boost_floor", c.options.boost_floor);

    try
    {
        c.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(e.what());
    }
    return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(fmt::format("cannot open configuration file '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_experiment_config(ss.str());
}

std::string experiment_config_json(const ExperimentConfig &c)
{
    json j = scenario_to(c.scenario);
    j["n_samples"] = c.n_samples;
    json schemes = json::array();
    for (Scheme s : c.schemes)
        schemes.push_back(std::string(scheme_name(s)));
    j["schemes"] = schemes;
    j["out_dir"] = c.out_dir;
    j["workers"] = c.workers;
    j["truncation_mode"] = c.options.truncation == TruncationMode::refined ? "refined" : "single_pass";
    j["refine_max_iterations"] = c.options.refine_max_iterations;
    j["refine_tolerance_db"] = c.options.refine_tolerance_db;
    j["refine_peaks"] = c.options.refine_peaks;
    j["boost_order"] = c.options.boost_order == BoostOrder::ascending ? "ascending" : "descending";
    j["boost_floor"] = c.options.boost_floor;
    return j.dump(2);
}

std::string scenario_json(const Scenario &sc)
{
    json j;
    j["config"] = scenario_to(sc.config);
    j["bs_elements"] = json::array();
    for (Vec2 v : sc.bs_elements)
        j["bs_elements"].push_back(vec_json(v));
    j["scatterers"] = json::array();
    for (const auto &s : sc.scatterers)
        j["scatterers"].push_back({{"direction", vec_json(s.direction)}, {"gain", cplx_json(s.gain)}});
    j["ris"] = json::array();
    for (const auto &r : sc.ris_list)
    {
        json offsets = json::array();
        for (Vec2 c : r.element_offsets)
            offsets.push_back(vec_json(c));
        j["ris"].push_back({{"bs_dir", vec_json(r.bs_dir)},
                            {"ue_dir", vec_json(r.ue_dir)},
                            {"gain", cplx_json(r.gain)},
                            {"orientation", vec_json(r.orientation)},
                            {"element_offsets", offsets}});
    }
    return j.dump(2);
}

Scenario parse_scenario(std::string_view json_text)
{
    const json j = parse_object(json_text);
    try
    {
        Scenario sc;
        sc.config = scenario_from(j.at("config"));
        for (const auto &v : j.at("bs_elements"))
            sc.bs_elements.push_back(vec_from(v));
        for (const auto &s : j.at("scatterers"))
            sc.scatterers.push_back({vec_from(s.at("direction")), cplx_from(s.at("gain"))});
        for (const auto &r : j.at("ris"))
        {
            RisDescriptor d;
            d.bs_dir = vec_from(r.at("bs_dir"));
            d.ue_dir = vec_from(r.at("ue_dir"));
            d.gain = cplx_from(r.at("gain"));
            d.orientation = vec_from(r.at("orientation"));
            for (const auto &c : r.at("element_offsets"))
                d.element_offsets.push_back(vec_from(c));
            sc.ris_list.push_back(std::move(d));
        }
        return sc;
    }
    catch (const json::exception &e)
    {
        throw ConfigError(std::string("malformed scenario dump: ") + e.what());
    }
}

Scheme parse_scheme(std::string_view name)
{
    for (Scheme s : all_schemes)
        if (scheme_name(s) == name)
            return s;
    throw std::invalid_argument(fmt::format("unknown scheme '{}'", name));
}

std::vector<Scheme> parse_scheme_list(std::string_view text)
{
    std::vector<Scheme> out;
    std::size_t start = 0;
    while (start <= text.size())
    {
        const auto end = std::min(text.find(',', start), text.size());
        const auto token = text.substr(start, end - start);
        if (!token.empty())
        {
            const Scheme s = parse_scheme(token);
            if (std::find(out.begin(), out.end(), s) == out.end())
                out.push_back(s);
        }
        start = end + 1;
    }
    if (out.empty())
        throw std::invalid_argument("empty scheme list");
    return out;
}

std::string samples_csv(const std::vector<MetricSample> &samples)
{
    fmt::memory_buffer buf;
    fmt::format_to(std::back_inserter(buf), "sample_id,scheme,rho_db,chi,violation_pct,flags\n");
    for (const auto &ms : samples)
        for (const auto &e : ms.entries)
            fmt::format_to(std::back_inserter(buf), "{},{},{:.10g},{:.10g},{:.10g},{}\n", ms.index,
                           scheme_name(e.scheme), to_db(e.rho), e.chi, e.violation_pct, flags_of(e));
    return fmt::to_string(buf);
}

std::string cdf_csv(const CdfSeries &series)
{
    fmt::memory_buffer buf;
    fmt::format_to(std::back_inserter(buf), "value,probability\n");
    for (std::size_t i = 0; i < series.values.size(); ++i)
        fmt::format_to(std::back_inserter(buf), "{:.10g},{:.10g}\n", series.values[i], series.probabilities[i]);
    return fmt::to_string(buf);
}

std::string exposure_csv(const ExposureMap &map)
{
    fmt::memory_buffer buf;
    fmt::format_to(std::back_inserter(buf), "x,y,omega_db,over_flag\n");
    for (int iy = 0; iy < map.ny; ++iy)
        for (int ix = 0; ix < map.nx; ++ix)
        {
            const auto i = static_cast<std::size_t>(iy) * map.nx + ix;
            const double w = map.powers[i];
            fmt::format_to(std::back_inserter(buf), "{:g},{:g},{:.4f},{}\n", map.origin + map.step * ix,
                           map.origin + map.step * iy, w > 0.0 ? to_db(w) : -400.0, map.over[i] ? 1 : 0);
        }
    return fmt::to_string(buf);
}

std::string heatmap_ppm(const ExposureMap &map, double radius, Scheme scheme)
{
    constexpr int scale = 2;
    constexpr int bar = 24;
    constexpr double band_db = 5.0;
    const double thr_db = to_db(map.threshold);
    const double lo_db = thr_db - 40.0;
    const double hi_db = thr_db + 20.0;

    const int w = map.nx * scale + bar;
    const int h = map.ny * scale;
    std::vector<Rgb> px(static_cast<std::size_t>(w) * h, Rgb{255, 255, 255});

    auto grey = [&](double db) {
        const double clipped = std::clamp(db, lo_db, hi_db - 1e-9);
        const double band = std::floor((clipped - lo_db) / band_db);
        const double bands = (hi_db - lo_db) / band_db;
        return band / (bands - 1.0);
    };

    for (int iy = 0; iy < map.ny; ++iy)
        for (int ix = 0; ix < map.nx; ++ix)
        {
            const auto i = static_cast<std::size_t>(iy) * map.nx + ix;
            const double p = map.powers[i];
            const double v = grey(p > 0.0 ? to_db(p) : lo_db);
            Rgb c;
            if (p > map.threshold)
            {
                const auto y = static_cast<unsigned char>(155.0 + 100.0 * v);
                c = {y, y, 0};
            }
            else
            {
                const auto g = static_cast<unsigned char>(255.0 * v);
                c = {g, g, g};
            }
            const int row0 = (map.ny - 1 - iy) * scale;
            for (int dy = 0; dy < scale; ++dy)
                for (int dx = 0; dx < scale; ++dx)
                    px[static_cast<std::size_t>(row0 + dy) * w + ix * scale + dx] = c;
        }

    // Limit circle, sub-pixel accurate in image coordinates.
    const double pitch = map.step / scale;
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < map.nx * scale; ++c)
        {
            const double x = map.origin + (c + 0.5) * pitch - 0.5 * map.step;
            const double y = map.origin + (map.ny * scale - r - 0.5) * pitch - 0.5 * map.step;
            if (std::abs(std::hypot(x, y) - radius) < 0.75 * pitch)
                px[static_cast<std::size_t>(r) * w + c] = {255, 0, 0};
        }

    // Colour bar: top is hi_db.
    for (int r = 0; r < h; ++r)
    {
        const double db = hi_db - (hi_db - lo_db) * (r + 0.5) / h;
        const auto g = static_cast<unsigned char>(255.0 * grey(db));
        for (int c = map.nx * scale + 4; c < w; ++c)
            px[static_cast<std::size_t>(r) * w + c] = {g, g, g};
    }

    std::string out = fmt::format("P6\n# emfbeam exposure map, scheme {}\n"
                                  "# greyscale bands of {:g} dB from {:g} dB (black) to {:g} dB (white), "
                                  "re max transmit power\n"
                                  "# yellow: omega above threshold {:g} dB; red: limit circle R = {:g}\n"
                                  "# colour bar at right, top = {:g} dB; pixel pitch {:g} wavelengths\n"
                                  "{} {}\n255\n",
                                  scheme_name(scheme), band_db, lo_db, hi_db, thr_db, radius, hi_db, pitch, w, h);
    out.reserve(out.size() + px.size() * 3);
    for (const Rgb &c : px)
    {
        out.push_back(static_cast<char>(c.r));
        out.push_back(static_cast<char>(c.g));
        out.push_back(static_cast<char>(c.b));
    }
    return out;
}

std::string report_table(const SnapshotResult &snap, const std::vector<Scheme> &schemes)
{
    const auto &cfg = snap.scenario.config;
    fmt::memory_buffer buf;
    auto out = std::back_inserter(buf);
    fmt::format_to(out, "seed {}  M={} N={} K={} P={} R={:g}  threshold {:g} dB\n", cfg.seed, cfg.M, cfg.N, cfg.K,
                   cfg.P, cfg.R, cfg.omega_thresh_db);
    fmt::format_to(out, "{:<10} {:>14} {:>10} {:>12}\n", "scheme", "rho_db", "chi", "violation_pct");
    for (Scheme s : schemes)
    {
        const auto &o = snap.outcome.at(s);
        fmt::format_to(out, "{:<10} {:>14.3f} {:>10.4f} {:>12.3f}\n", scheme_name(s), to_db(o.rho), o.precoder.chi,
                       o.violation_pct);
    }
    return fmt::to_string(buf);
}

std::string sha256_hex(std::string_view data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    std::string hex;
    hex.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i)
        hex += fmt::format("{:02x}", md[i]);
    return hex;
}

void OutputSet::add(std::string name, std::string content) { files_.emplace_back(std::move(name), std::move(content)); }

std::vector<FileRecord> OutputSet::records() const
{
    std::vector<FileRecord> out;
    for (const auto &[name, content] : files_)
        out.push_back({name, sha256_hex(content), content.size()});
    return out;
}

std::vector<FileRecord> OutputSet::commit(const std::filesystem::path &dir) const
{
    std::filesystem::create_directories(dir);
    for (const auto &[name, content] : files_)
        write_file_atomic(dir / name, content);
    return records();
}

void write_file_atomic(const std::filesystem::path &path, std::string_view content)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error(fmt::format("cannot write '{}'", tmp.string()));
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw std::runtime_error(fmt::format("short write to '{}'", tmp.string()));
    }
    std::filesystem::rename(tmp, path);
}

std::string utc_now()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(now));
}

std::string manifest_json(const RunManifest &m)
{
    json files = json::array();
    for (const auto &f : m.files)
        files.push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    json j{{"tool", "emfbeam"},
           {"version", std::string(tool_version)},
           {"command", m.command},
           {"root_seed", m.root_seed},
           {"config", json::parse(m.config_json)},
           {"started_utc", m.started_utc},
           {"finished_utc", m.finished_utc},
           {"files", files}};
    return j.dump(2);
}

} // namespace emfbeam
