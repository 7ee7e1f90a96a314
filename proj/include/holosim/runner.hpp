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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "holosim/jump.hpp"
#include "holosim/robustness.hpp"

namespace holosim {

/// Config rejection with the offending field spelled out. The CLI maps
/// this to exit code 2; engine failures map to 3.
struct validation_error : std::runtime_error {
    std::string field;
    validation_error(std::string field_path, const std::string& message)
        : std::runtime_error(field_path.empty() ? message : field_path + ": " + message),
          field(std::move(field_path)) {}
};

struct ModelSpec {
    std::string id;       // spin_half | single_qubit_gate | two_qubit_gate
    int axis = 1;         // single_qubit_gate
    double angle = 0.0;   // gate families
    double gap = 1.0;
};

struct PathSpec {
    std::string type;  // gate_loop | latitude | waypoints
    std::size_t segments = 256;
    double polar = 0.0;
    double phi_start = 0.0;
    double phi_end = 6.283185307179586476925286766559;
    std::vector<std::vector<double>> points;
    bool closed = false;
};

struct NoiseTerm {
    std::string op;
    double rate = 0.0;
};

struct JumpSpecEntry {
    double fraction = 0.5;
    std::string op;
};

struct OutputSpec {
    std::string dir = ".";
    bool structured = true;
    bool tabular = false;
};

struct RunConfig {
    ModelSpec model;
    PathSpec path;
    std::vector<NoiseTerm> noise;
    std::string mode;  // nojump | enumerate | montecarlo | master | robustness
    std::size_t max_jumps = 2;
    std::size_t n_traj = 1000;
    std::vector<JumpSpecEntry> jumps;
    double dt = 1e-3;
    double total_time = 1.0;
    std::uint64_t seed = 0;
    std::optional<std::vector<cplx>> initial;  // defaults to the first code vector
    OutputSpec output;

    nlohmann::ordered_json echo() const;
};

/// Strict parse: unknown keys are rejected (with a spelling suggestion),
/// every numeric field is range-checked, defaults documented in the
/// README are filled in.
RunConfig parse_config(std::string_view text);

struct RunReport {
    nlohmann::ordered_json doc;

    std::string to_text() const { return doc.dump(2) + "\n"; }
    static RunReport from_text(std::string_view text);
    friend bool operator==(const RunReport& a, const RunReport& b) { return a.doc == b.doc; }
};

struct TabularRow {
    std::size_t trajectory_index = 0;
    std::size_t jump_count = 0;
    std::string jump_steps;  // "m:k" pairs joined by ';'
    double weight = 0.0;
    double fidelity = 0.0;
};

struct RunResult {
    RunReport report;
    std::vector<TabularRow> rows;
};

/// Executes the configured mode. Deterministic given (config, seed)
/// except for the wall_clock_seconds field.
RunResult run(const RunConfig& config);

/// Writes report.json (structured) and/or trajectories.csv (tabular)
/// under the configured directory; returns the paths written.
std::vector<std::filesystem::path> emit(const RunResult& result, const OutputSpec& output);

}  // namespace holosim
