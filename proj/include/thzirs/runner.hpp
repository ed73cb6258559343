// SPDX-License-Identifier: Apache-2.0
//
// thzirs: wideband THz intelligent-reflecting-surface link simulator
// Copyright (C) 2026 The thzirs Authors
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


#ifndef THZIRS_RUNNER_HPP
#define THZIRS_RUNNER_HPP

#include "cascade.hpp"
#include "core.hpp"
#include "grid_geom.hpp"
#include "irs.hpp"
#include "metrics.hpp"
#include "precoder.hpp"
#include "wavefield.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace thzirs
{
    using json = nlohmann::json;

    // Configuration problem tied to one dotted key path
    struct config_error : std::invalid_argument
    {
        std::string field;
        config_error(std::string f, const std::string &msg) : std::invalid_argument(f + ": " + msg), field(std::move(f)) {}
    };

    struct ScenarioConfig
    {
        std::string scenario;

        double center_hz = 200e9;
        double bandwidth_hz = 20e9;
        std::size_t subcarriers = 64;

        std::size_t bs_antennas = 64;
        TdKind structure = TdKind::sparse_subarray_td;
        std::size_t group_size = 4;
        std::size_t td_per_rf = 16;
        std::size_t rf_chains = 1;
        Vec3 bs_position{4.0, -3.0, -2.0};
        Vec3 bs_boresight{-1.0, 0.0, 0.0};
        Vec3 user_position{3.0, -1.0, -1.0};

        int irs_scheme = 1;
        std::size_t irs_base = 16;
        double panel_gap = 0.02;
        Vec3 irs_center{0.0, 0.0, 0.0};
        Vec3 irs_normal{1.0, 0.0, 0.0};
        unsigned phase_bits = 0; // 0 = continuous phases

        double theta0_deg = 45.0;
        double sector_lo_deg = 40.0;
        double sector_hi_deg = 50.0;
        std::vector<std::size_t> broadening_td_counts{16, 32};

        std::size_t angle_points = 10000;
        double leakage_threshold = 0.01;
        PowerModel power;

        std::string sweep_parameter = "irs.scheme";
        std::vector<json> sweep_values{1, 2, 3, 4};

        std::string out_dir = ".";

        json source; // merged configuration this struct was parsed from

        double element_spacing() const { return half_wavelength(center_hz); }
    };

    // ----- Scenario registry ----------------------------------------------------------------------

    struct ScenarioInfo
    {
        std::string name;
        std::string description;
        std::string csv_file;
        std::string csv_header;
    };

    inline const std::vector<ScenarioInfo> &scenarios()
    {
        static const std::vector<ScenarioInfo> list{
            {"fig4-deployment", "Relative subcarrier gain of IRS deployment schemes 1-4 (single-antenna BS)", "fig4_deployment.csv",
             "scheme,subcarrier_index,freq_hz,rel_gain"},
            {"fig5-convergence", "BS beam patterns per subcarrier without and with TD beam convergence", "fig5_convergence.csv",
             "variant,subcarrier_index,freq_hz,angle_deg,gain"},
            {"fig6-broadening", "BS beam patterns per subcarrier for PS-only and TD beam broadening", "fig6_broadening.csv",
             "variant,subcarrier_index,freq_hz,angle_deg,gain"},
            {"power-table", "Hardware power of the sparse RF chain structures", "power_table.csv", "structure,n_rf,n_td,n_ps,power_mw"},
            {"sweep", "Relative subcarrier gain while sweeping one configuration key", "sweep.csv",
             "value,subcarrier_index,freq_hz,rel_gain"},
        };
        return list;
    }

    inline const ScenarioInfo *find_scenario(std::string_view name)
    {
        for (const auto &s : scenarios())
            if (s.name == name)
                return &s;
        return nullptr;
    }

    // Built-in defaults of every configuration key for a scenario
    inline json default_config(std::string_view scenario)
    {
        json j = {
            {"frequency", {{"center_hz", 200e9}, {"bandwidth_hz", 20e9}, {"subcarriers", 64}}},
            {"bs",
             {{"antennas", 64},
              {"structure", "sparse-subarray-td"},
              {"group_size", 4},
              {"td_per_rf", 16},
              {"rf_chains", 1},
              {"position", {4.0, -3.0, -2.0}},
              {"boresight", {-1.0, 0.0, 0.0}}}},
            {"user", {{"position", {3.0, -1.0, -1.0}}}},
            {"irs",
             {{"scheme", 1},
              {"base_size", 16},
              {"panel_spacing_m", 0.02},
              {"center", {0.0, 0.0, 0.0}},
              {"normal", {1.0, 0.0, 0.0}},
              {"phase_bits", 0}}},
            {"steering", {{"theta0_deg", 45.0}, {"sector_deg", {40.0, 50.0}}}},
            {"broadening", {{"td_counts", {16, 32}}}},
            {"pattern", {{"angle_points", 10000}}},
            {"leakage", {{"threshold", 0.01}}},
            {"power", {{"rf_chain_mw", 250.0}, {"phase_shifter_mw", 30.0}, {"time_delayer_mw", 80.0}}},
            {"sweep", {{"parameter", "irs.scheme"}, {"values", {1, 2, 3, 4}}}},
            {"output", {{"dir", "."}}},
        };
        if (scenario == "fig4-deployment")
            j["bs"]["antennas"] = 1;
        return j;
    }

    // ----- Config parsing -------------------------------------------------------------------------

    namespace detail
    {
        inline json::json_pointer to_pointer(const std::string &dotted)
        {
            std::string p;
            std::size_t start = 0;
            while (start <= dotted.size())
            {
                const std::size_t dot = dotted.find('.', start);
                const std::string part = dotted.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
                if (part.empty())
                    throw config_error(dotted, "malformed key");
                p += "/" + part;
                if (dot == std::string::npos)
                    break;
                start = dot + 1;
            }
            return json::json_pointer(p);
        }

        // Rejects keys that the defaults do not define
        inline void check_known_keys(const json &given, const json &known, const std::string &prefix)
        {
            for (auto it = given.begin(); it != given.end(); ++it)
            {
                const std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
                if (!known.contains(it.key()))
                    throw config_error(path, "unknown configuration key");
                if (it->is_object() && known[it.key()].is_object())
                    check_known_keys(*it, known[it.key()], path);
            }
        }

        template <typename T>
        T get_as(const json &root, const std::string &path)
        {
            const json &v = root.at(to_pointer(path));
            try
            {
                return v.get<T>();
            }
            catch (const json::exception &)
            {
                throw config_error(path, "has the wrong type (" + std::string(v.type_name()) + ")");
            }
        }

        inline std::size_t get_count(const json &root, const std::string &path, std::size_t min_value)
        {
            const json &v = root.at(to_pointer(path));
            if (!v.is_number_integer() || v.get<long long>() < (long long)min_value)
                throw config_error(path, "must be an integer >= " + std::to_string(min_value));
            return v.get<std::size_t>();
        }

        inline double get_number(const json &root, const std::string &path)
        {
            const json &v = root.at(to_pointer(path));
            if (!v.is_number() || !std::isfinite(v.get<double>()))
                throw config_error(path, "must be a finite number");
            return v.get<double>();
        }

        inline Vec3 get_vec3(const json &root, const std::string &path)
        {
            const json &v = root.at(to_pointer(path));
            if (!v.is_array() || v.size() != 3 || !std::all_of(v.begin(), v.end(), [](const json &x) { return x.is_number(); }))
                throw config_error(path, "must be an array of three numbers");
            return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
        }

        inline Vec3 get_unit(const json &root, const std::string &path)
        {
            const Vec3 v = get_vec3(root, path);
            if (!(norm(v) > 0.0))
                throw config_error(path, "must be a non-zero direction");
            return normalized(v);
        }
    }

    // Applies "key.path=value"; the value is parsed as JSON when possible, else taken as a string
    inline void apply_override(json &cfg, const std::string &assignment)
    {
        const auto eq = assignment.find('=');
        if (eq == std::string::npos || eq == 0)
            throw config_error(assignment, "override must have the form key=value");
        const std::string key = assignment.substr(0, eq);
        const std::string raw = assignment.substr(eq + 1);
        json value = json::parse(raw, nullptr, false);
        if (value.is_discarded())
            value = raw;
        const auto ptr = detail::to_pointer(key);
        if (!cfg.contains(ptr))
            throw config_error(key, "unknown configuration key");
        cfg[ptr] = std::move(value);
    }

    inline json load_config_file(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw io_error("Cannot open configuration file '" + path + "'");
        json j = json::parse(in, nullptr, false, true);
        if (j.is_discarded() || !j.is_object())
            throw config_error("<file>", "'" + path + "' is not a valid JSON object");
        return j;
    }

    // Defaults <- file <- overrides, then validation
    inline json merged_config(std::string_view scenario, const json &file_cfg, const std::vector<std::string> &overrides)
    {
        json cfg = default_config(scenario);
        json file = file_cfg;
        file.erase("scenario");
        detail::check_known_keys(file, cfg, "");
        cfg.merge_patch(file);
        for (const auto &o : overrides)
            apply_override(cfg, o);
        return cfg;
    }

    inline ScenarioConfig parse_config(const json &cfg, std::string scenario = {})
    {
        using namespace detail;
        ScenarioConfig c;
        c.scenario = std::move(scenario);
        c.source = cfg;

        c.center_hz = get_number(cfg, "frequency.center_hz");
        c.bandwidth_hz = get_number(cfg, "frequency.bandwidth_hz");
        c.subcarriers = get_count(cfg, "frequency.subcarriers", 1);
        if (!(c.bandwidth_hz > 0.0))
            throw config_error("frequency.bandwidth_hz", "must be positive");
        if (!(c.center_hz > 0.5 * c.bandwidth_hz))
            throw config_error("frequency.center_hz", "must exceed half the bandwidth");

        c.bs_antennas = get_count(cfg, "bs.antennas", 1);
        try
        {
            c.structure = td_kind_from_string(get_as<std::string>(cfg, "bs.structure"));
        }
        catch (const invalid_parameter &e)
        {
            throw config_error("bs.structure", e.what());
        }
        c.group_size = get_count(cfg, "bs.group_size", 1);
        c.td_per_rf = get_count(cfg, "bs.td_per_rf", 1);
        c.rf_chains = get_count(cfg, "bs.rf_chains", 1);
        if (c.bs_antennas > 1)
        {
            if (c.structure == TdKind::sparse_subarray_td && c.bs_antennas % c.group_size != 0)
                throw config_error("bs.group_size", "must divide bs.antennas");
            if (c.structure == TdKind::fully_connected_td && c.bs_antennas % c.td_per_rf != 0)
                throw config_error("bs.td_per_rf", "must divide bs.antennas");
        }
        c.bs_position = get_vec3(cfg, "bs.position");
        c.bs_boresight = get_unit(cfg, "bs.boresight");
        c.user_position = get_vec3(cfg, "user.position");

        c.irs_scheme = get_as<int>(cfg, "irs.scheme");
        if (c.irs_scheme < 1 || c.irs_scheme > 4)
            throw config_error("irs.scheme", "must be 1, 2, 3 or 4");
        c.irs_base = get_count(cfg, "irs.base_size", 4);
        if (c.irs_base % 4 != 0)
            throw config_error("irs.base_size", "must be a multiple of 4");
        c.panel_gap = get_number(cfg, "irs.panel_spacing_m");
        if (c.panel_gap < 0.0)
            throw config_error("irs.panel_spacing_m", "must be non-negative");
        c.irs_center = get_vec3(cfg, "irs.center");
        c.irs_normal = get_unit(cfg, "irs.normal");
        c.phase_bits = unsigned(get_count(cfg, "irs.phase_bits", 0));

        c.theta0_deg = get_number(cfg, "steering.theta0_deg");
        if (!(std::abs(c.theta0_deg) < 90.0))
            throw config_error("steering.theta0_deg", "must lie in (-90, 90)");
        const json &sector = cfg.at(to_pointer("steering.sector_deg"));
        if (!sector.is_array() || sector.size() != 2 || !sector[0].is_number() || !sector[1].is_number())
            throw config_error("steering.sector_deg", "must be [lo, hi]");
        c.sector_lo_deg = sector[0].get<double>();
        c.sector_hi_deg = sector[1].get<double>();
        if (!(c.sector_lo_deg <= c.sector_hi_deg) || !(c.sector_lo_deg > -90.0) || !(c.sector_hi_deg < 90.0))
            throw config_error("steering.sector_deg", "must satisfy -90 < lo <= hi < 90");

        const json &tds = cfg.at(to_pointer("broadening.td_counts"));
        if (!tds.is_array() || tds.empty())
            throw config_error("broadening.td_counts", "must be a non-empty array");
        c.broadening_td_counts.clear();
        for (const auto &t : tds)
        {
            if (!t.is_number_integer() || t.get<long long>() < 2 || (c.bs_antennas > 1 && c.bs_antennas % t.get<std::size_t>() != 0))
                throw config_error("broadening.td_counts", "entries must be integers >= 2 dividing bs.antennas");
            c.broadening_td_counts.push_back(t.get<std::size_t>());
        }

        c.angle_points = get_count(cfg, "pattern.angle_points", 2);
        c.leakage_threshold = get_number(cfg, "leakage.threshold");
        if (!(c.leakage_threshold > 0.0))
            throw config_error("leakage.threshold", "must be positive");

        c.power.rf_chain_mw = get_number(cfg, "power.rf_chain_mw");
        c.power.phase_shifter_mw = get_number(cfg, "power.phase_shifter_mw");
        c.power.time_delayer_mw = get_number(cfg, "power.time_delayer_mw");
        for (const char *k : {"power.rf_chain_mw", "power.phase_shifter_mw", "power.time_delayer_mw"})
            if (get_number(cfg, k) < 0.0)
                throw config_error(k, "must be non-negative");

        c.sweep_parameter = get_as<std::string>(cfg, "sweep.parameter");
        if (c.sweep_parameter.rfind("sweep.", 0) == 0 || c.sweep_parameter.rfind("output.", 0) == 0 ||
            !cfg.contains(to_pointer(c.sweep_parameter)))
            throw config_error("sweep.parameter", "must name a configuration key outside sweep/output");
        const json &vals = cfg.at(to_pointer("sweep.values"));
        if (!vals.is_array() || vals.empty())
            throw config_error("sweep.values", "must be a non-empty array");
        c.sweep_values.assign(vals.begin(), vals.end());

        c.out_dir = get_as<std::string>(cfg, "output.dir");
        return c;
    }

    // ----- CSV ------------------------------------------------------------------------------------

    // Shortest representation that parses back to the same double
    inline std::string format_double(double v)
    {
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof(buf), v);
        return {buf, res.ptr};
    }

    class CsvWriter
    {
    public:
        CsvWriter(const std::filesystem::path &path, std::string_view header) : path_(path)
        {
            out_.open(path, std::ios::binary | std::ios::trunc);
            if (!out_)
                throw io_error("Cannot write '" + path.string() + "'");
            out_ << header << '\n';
        }

        template <typename... Fields>
        void row(const Fields &...fields)
        {
            bool first = true;
            ((out_ << (first ? "" : ",") << field(fields), first = false), ...);
            out_ << '\n';
        }

        void close()
        {
            out_.close();
            if (!out_)
                throw io_error("Failed writing '" + path_.string() + "'");
        }

    private:
        static std::string field(double v) { return format_double(v); }
        static std::string field(const std::string &s) { return s; }
        static std::string field(const char *s) { return s; }
        static std::string field(std::size_t v) { return std::to_string(v); }
        static std::string field(int v) { return std::to_string(v); }

        std::filesystem::path path_;
        std::ofstream out_;
    };

    // ----- Scenario building blocks ---------------------------------------------------------------

    inline Scene make_scene(const ScenarioConfig &c)
    {
        Scene s;
        s.bs.position = c.bs_position;
        s.bs.boresight = c.bs_boresight;
        s.bs.array = c.bs_antennas == 1 ? ArrayGeometry::single() : ArrayGeometry::ula(c.bs_antennas, c.element_spacing());
        s.user.position = c.user_position;
        s.user.boresight = normalized(c.irs_center - c.user_position);
        return s;
    }

    inline IrsDeployment make_deployment(const ScenarioConfig &c, int scheme)
    {
        DeploymentSite site{c.irs_center, c.irs_normal, c.element_spacing(), c.panel_gap};
        IrsDeployment d = configure_phases(deployment_scheme(scheme, site, c.irs_base), c.bs_position, c.user_position, c.center_hz);
        if (c.phase_bits > 0)
            d = quantize_phases(std::move(d), c.phase_bits);
        return d;
    }

    inline TdStructure make_structure(const ScenarioConfig &c, TdKind kind)
    {
        switch (kind)
        {
        case TdKind::ps_only:
            return TdStructure::ps_only(c.bs_antennas, c.rf_chains);
        case TdKind::per_antenna_td:
            return TdStructure::per_antenna_td(c.bs_antennas, c.rf_chains);
        case TdKind::sparse_subarray_td:
            return TdStructure::sparse_subarray_td(c.bs_antennas, c.group_size, c.rf_chains);
        case TdKind::fully_connected_td:
            return TdStructure::fully_connected_td(c.bs_antennas, c.td_per_rf, c.rf_chains);
        }
        throw invalid_parameter("Unknown structure");
    }

    // BS precoder converging toward theta0 with the configured structure (PS-only steering if it has no TDs)
    inline TdPrecoder steering_precoder(const ScenarioConfig &c, TdKind kind, double theta0)
    {
        if (kind == TdKind::ps_only)
            return ps_only_precoder(c.bs_antennas, theta0, c.center_hz, c.element_spacing());
        return convergence_delays(make_structure(c, kind), theta0, c.center_hz, c.element_spacing());
    }

    // Relative gain profile of one scheme; a multi-antenna BS converges toward the IRS centre
    inline std::vector<double> deployment_relative_gains(const ScenarioConfig &c, int scheme)
    {
        const Scene scene = make_scene(c);
        const CascadeModel model(scene, make_deployment(c, scheme));
        const FrequencyGrid grid(c.center_hz, c.bandwidth_hz, c.subcarriers);
        GainProfile gp;
        if (c.bs_antennas == 1)
            gp = model.profile([](double) { return std::vector<cplx>{1.0}; }, grid.frequencies(), c.center_hz);
        else
        {
            const TdPrecoder pre = steering_precoder(c, c.structure, scene.bs.angles_to(c.irs_center).azimuth);
            gp = model.profile([&](double f) { return analog_weights_at(pre, f); }, grid.frequencies(), c.center_hz);
        }
        return gp.relative_all();
    }

    struct PatternVariant
    {
        std::string name;
        TdPrecoder precoder;
    };

    inline void write_patterns(CsvWriter &csv, const ScenarioConfig &c, const std::vector<PatternVariant> &variants)
    {
        const FrequencyGrid grid(c.center_hz, c.bandwidth_hz, c.subcarriers);
        const ArrayGeometry ula = ArrayGeometry::ula(c.bs_antennas, c.element_spacing());
        const auto angles = uniform_angle_grid(c.angle_points);
        std::vector<double> angles_deg(angles.size());
        for (std::size_t i = 0; i < angles.size(); ++i)
            angles_deg[i] = rad_to_deg(angles[i]);

        for (const auto &v : variants)
            for (std::size_t m = 0; m < grid.size(); ++m)
            {
                const auto bp = beam_pattern(analog_weights_at(v.precoder, grid[m]), ula, grid[m], angles);
                for (std::size_t i = 0; i < angles.size(); ++i)
                    csv.row(v.name, m + 1, grid[m], angles_deg[i], bp.gains[i]);
            }
    }

    // ----- Scenarios ------------------------------------------------------------------------------

    inline std::vector<std::filesystem::path> run_scenario(const ScenarioConfig &c)
    {
        const ScenarioInfo *info = find_scenario(c.scenario);
        if (!info)
            throw config_error("scenario", "unknown scenario '" + c.scenario + "'");
        const std::filesystem::path dir(c.out_dir);
        if (!std::filesystem::is_directory(dir))
            throw io_error("Output directory '" + c.out_dir + "' does not exist");
        const std::filesystem::path path = dir / info->csv_file;
        CsvWriter csv(path, info->csv_header);
        const FrequencyGrid grid(c.center_hz, c.bandwidth_hz, c.subcarriers);

        if (c.scenario == "fig4-deployment")
        {
            for (int scheme = 1; scheme <= 4; ++scheme)
            {
                const auto rel = deployment_relative_gains(c, scheme);
                for (std::size_t m = 0; m < grid.size(); ++m)
                    csv.row(scheme, m + 1, grid[m], rel[m]);
            }
        }
        else if (c.scenario == "fig5-convergence")
        {
            if (c.bs_antennas < 2 || c.structure == TdKind::ps_only)
                throw config_error("bs.structure", "fig5-convergence needs a multi-antenna BS with TDs");
            const double th = deg_to_rad(c.theta0_deg);
            write_patterns(csv, c, {{"ps-only", steering_precoder(c, TdKind::ps_only, th)}, {to_string(c.structure), steering_precoder(c, c.structure, th)}});
        }
        else if (c.scenario == "fig6-broadening")
        {
            if (c.bs_antennas < 2)
                throw config_error("bs.antennas", "fig6-broadening needs a multi-antenna BS");
            const double lo = deg_to_rad(c.sector_lo_deg), hi = deg_to_rad(c.sector_hi_deg);
            std::vector<PatternVariant> variants{{"ps-only", steering_precoder(c, TdKind::ps_only, 0.5 * (lo + hi))}};
            for (std::size_t n_td : c.broadening_td_counts)
            {
                const auto s = TdStructure::sparse_subarray_td(c.bs_antennas, c.bs_antennas / n_td, c.rf_chains);
                variants.push_back({"td-" + std::to_string(n_td), broadening_delays(s, lo, hi, c.center_hz, c.element_spacing())});
            }
            write_patterns(csv, c, variants);
        }
        else if (c.scenario == "power-table")
        {
            for (TdKind k : {TdKind::ps_only, TdKind::sparse_subarray_td, TdKind::per_antenna_td, TdKind::fully_connected_td})
            {
                const TdStructure s = make_structure(c, k);
                csv.row(to_string(k), s.n_rf(), s.n_td(), s.n_ps(), hardware_power(s, c.power));
            }
        }
        else if (c.scenario == "sweep")
        {
            // Every value is substituted into the merged configuration and re-validated
            for (const auto &v : c.sweep_values)
            {
                json j = c.source;
                j[detail::to_pointer(c.sweep_parameter)] = v;
                const ScenarioConfig sc = parse_config(j, c.scenario);
                const std::string label = v.is_string() ? v.get<std::string>() : v.dump();
                const FrequencyGrid g(sc.center_hz, sc.bandwidth_hz, sc.subcarriers);
                const auto rel = deployment_relative_gains(sc, sc.irs_scheme);
                for (std::size_t m = 0; m < g.size(); ++m)
                    csv.row(label, m + 1, g[m], rel[m]);
            }
        }
        csv.close();
        return {path};
    }

    // Entry point used by the CLI: merges defaults, file and overrides, then runs
    inline std::vector<std::filesystem::path> run_scenario(const std::string &scenario, const json &file_cfg,
                                                           const std::vector<std::string> &overrides)
    {
        if (!find_scenario(scenario))
            throw config_error("scenario", "unknown scenario '" + scenario + "'");
        return run_scenario(parse_config(merged_config(scenario, file_cfg, overrides), scenario));
    }
}

#endif
