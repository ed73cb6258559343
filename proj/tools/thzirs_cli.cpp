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


#include "thzirs/runner.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace
{
    enum exit_code : int
    {
        ok = 0,
        usage = 2,
        config = 3,
        io = 4,
    };

    int run(const std::string &scenario, const std::string &config_file, const std::string &out_dir,
            std::vector<std::string> overrides)
    {
        thzirs::json file_cfg = thzirs::json::object();
        if (!config_file.empty())
            file_cfg = thzirs::load_config_file(config_file);
        if (!out_dir.empty())
            overrides.push_back("output.dir=" + thzirs::json(out_dir).dump());

        for (const auto &path : thzirs::run_scenario(scenario, file_cfg, overrides))
            std::cout << path.string() << '\n';
        return ok;
    }

    int validate(const std::string &config_file)
    {
        const thzirs::json file_cfg = thzirs::load_config_file(config_file);
        const std::string scenario = file_cfg.value("scenario", std::string{});
        if (!scenario.empty() && !thzirs::find_scenario(scenario))
            throw thzirs::config_error("scenario", "unknown scenario '" + scenario + "'");
        thzirs::parse_config(thzirs::merged_config(scenario, file_cfg, {}), scenario);
        std::cout << config_file << ": ok\n";
        return ok;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Wideband THz IRS link simulator"};
    app.require_subcommand(1);

    std::string scenario, config_file, out_dir;
    std::vector<std::string> overrides;

    auto *run_cmd = app.add_subcommand("run", "Run a built-in scenario and write its CSV");
    run_cmd->add_option("scenario", scenario, "Scenario name (see list-scenarios)")->required();
    run_cmd->add_option("--config", config_file, "JSON configuration file");
    run_cmd->add_option("--out", out_dir, "Output directory (must exist)");
    run_cmd->add_option("--override", overrides, "key.path=value, repeatable")->allow_extra_args(false);

    auto *list_cmd = app.add_subcommand("list-scenarios", "List the built-in scenarios");

    std::string validate_file;
    auto *validate_cmd = app.add_subcommand("validate", "Check a configuration file");
    validate_cmd->add_option("--config", validate_file, "JSON configuration file")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return usage;
    }

    try
    {
        if (*list_cmd)
        {
            for (const auto &s : thzirs::scenarios())
                std::cout << s.name << "\t" << s.description << '\n';
            return ok;
        }
        if (*validate_cmd)
            return validate(validate_file);
        if (*run_cmd)
        {
            if (scenario.empty())
            {
                std::cerr << "error: scenario name is required\n";
                return usage;
            }
            if (!thzirs::find_scenario(scenario))
            {
                std::cerr << "error: unknown scenario '" << scenario << "' (see list-scenarios)\n";
                return usage;
            }
            return run(scenario, config_file, out_dir, overrides);
        }
    }
    catch (const thzirs::config_error &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return config;
    }
    catch (const thzirs::io_error &e)
    {
        std::cerr << "I/O error: " << e.what() << '\n';
        return io;
    }
    catch (const std::exception &e)
    {
        // Parameter combinations rejected deeper in the library (e.g. far-field violations)
        std::cerr << "config error: " << e.what() << '\n';
        return config;
    }
    return usage;
}
