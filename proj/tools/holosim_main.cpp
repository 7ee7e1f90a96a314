// Copyright 2026 The holosim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "holosim/runner.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitEngine = 3;

int run_command(const std::string& config_path, const std::string& out_override,
                const std::string& mode_override, long long seed_override) {
    using nlohmann::ordered_json;
    std::string text;
    {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot read config file " << config_path << "\n";
            return kExitValidation;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }

    holosim::RunConfig config;
    try {
        if (!mode_override.empty()) {
            // Patch the raw document so the override passes through the
            // same validation as everything else.
            auto raw = nlohmann::ordered_json::parse(text, nullptr, false);
            if (raw.is_discarded() || !raw.is_object()) {
                std::cerr << "config error: not a JSON object\n";
                return kExitValidation;
            }
            raw["mode"] = mode_override;
            text = raw.dump();
        }
        config = holosim::parse_config(text);
        if (!out_override.empty()) config.output.dir = out_override;
        if (seed_override >= 0) config.seed = static_cast<std::uint64_t>(seed_override);
    } catch (const holosim::validation_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitValidation;
    }

    try {
        const holosim::RunResult result = holosim::run(config);
        const auto written = holosim::emit(result, config.output);
        std::cout << "mode " << config.mode << " finished in "
                  << result.report.doc["wall_clock_seconds"].get<double>() << " s\n";
        for (const auto& p : written) std::cout << "wrote " << p.string() << "\n";
        return 0;
    } catch (const holosim::validation_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "engine error: " << e.what() << "\n";
        return kExitEngine;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"holosim: open-system holonomy simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    std::string mode_override;
    long long seed_override = -1;

    CLI::App* run_cmd = app.add_subcommand("run", "execute one run configuration");
    run_cmd->add_option("config", config_path, "JSON run configuration")->required();
    run_cmd->add_option("--out", out_override, "output directory (overrides config)");
    run_cmd->add_option("--seed", seed_override, "seed (overrides config)");
    run_cmd->add_option("--mode", mode_override, "mode (overrides config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);  // prints help/usage
        return rc == 0 ? 0 : kExitValidation;
    }

    if (run_cmd->parsed()) {
        return run_command(config_path, out_override, mode_override, seed_override);
    }
    return 0;
}
