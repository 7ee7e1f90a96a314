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

#include <algorithm>
#include <cmath>
#include <set>

#include "holosim/runner.hpp"

namespace holosim {

namespace {

using ojson = nlohmann::ordered_json;

std::size_t levenshtein(std::string_view a, std::string_view b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t prev = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t cur = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                               prev + (a[i - 1] == b[j - 1] ? 0 : 1)});
            prev = cur;
        }
    }
    return row[b.size()];
}

void check_keys(const ojson& obj, const std::string& path,
                const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (allowed.count(key)) continue;
        std::string best;
        std::size_t best_dist = 3;
        for (const auto& cand : allowed) {
            const std::size_t d = levenshtein(key, cand);
            if (d < best_dist) {
                best_dist = d;
                best = cand;
            }
        }
        std::string msg = "unknown key \"" + key + "\"";
        if (!best.empty()) msg += " (did you mean \"" + best + "\"?)";
        throw validation_error(path, msg);
    }
}

const ojson& require(const ojson& obj, const std::string& path, const std::string& key) {
    if (!obj.contains(key)) throw validation_error(path + "." + key, "missing required field");
    return obj.at(key);
}

double get_number(const ojson& j, const std::string& field) {
    if (!j.is_number()) throw validation_error(field, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw validation_error(field, "must be finite");
    return v;
}

std::uint64_t get_count(const ojson& j, const std::string& field) {
    if (!j.is_number_unsigned()) throw validation_error(field, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

std::string get_string(const ojson& j, const std::string& field) {
    if (!j.is_string()) throw validation_error(field, "expected a string");
    return j.get<std::string>();
}

bool get_bool(const ojson& j, const std::string& field) {
    if (!j.is_boolean()) throw validation_error(field, "expected a boolean");
    return j.get<bool>();
}

bool valid_op_name(const std::string& name, std::size_t code_dim) {
    static const std::set<std::string> single = {"sigma1", "sigma2", "sigma3", "sigma_plus",
                                                 "sigma_minus"};
    if (code_dim <= 2) return single.count(name) > 0;
    // two-qubit: sigmaIxsigmaJ, I,J in 0..3
    if (name.size() != 13 || name.rfind("sigma", 0) != 0 || name.substr(6, 6) != "xsigma") {
        return false;
    }
    const char i = name[5], j = name[12];
    return i >= '0' && i <= '3' && j >= '0' && j <= '3';
}

}  // namespace

RunConfig parse_config(std::string_view text) {
    ojson root;
    try {
        root = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error("", std::string("not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw validation_error("", "config must be a JSON object");

    check_keys(root, "config",
               {"model", "path", "noise", "mode", "max_jumps", "n_traj", "jumps", "dt",
                "total_time", "seed", "initial", "output"});

    RunConfig cfg;

    // --- model ---
    const ojson& jm = require(root, "config", "model");
    if (!jm.is_object()) throw validation_error("model", "expected an object");
    cfg.model.id = get_string(require(jm, "model", "id"), "model.id");
    if (cfg.model.id == "spin_half") {
        check_keys(jm, "model", {"id"});
    } else if (cfg.model.id == "single_qubit_gate") {
        check_keys(jm, "model", {"id", "axis", "angle", "gap"});
        const auto axis = static_cast<int>(get_count(require(jm, "model", "axis"), "model.axis"));
        if (axis != 1 && axis != 2) throw validation_error("model.axis", "must be 1 or 2");
        cfg.model.axis = axis;
        cfg.model.angle = get_number(require(jm, "model", "angle"), "model.angle");
    } else if (cfg.model.id == "two_qubit_gate") {
        check_keys(jm, "model", {"id", "angle", "gap"});
        cfg.model.angle = get_number(require(jm, "model", "angle"), "model.angle");
    } else {
        throw validation_error("model.id",
                               "unknown model \"" + cfg.model.id +
                                   "\" (expected spin_half, single_qubit_gate or two_qubit_gate)");
    }
    if (cfg.model.id != "spin_half") {
        if (!(cfg.model.angle > 0.0 && cfg.model.angle < 3.141592653589793)) {
            throw validation_error("model.angle", "gate angle must lie in (0, pi)");
        }
        if (jm.contains("gap")) {
            cfg.model.gap = get_number(jm.at("gap"), "model.gap");
            if (cfg.model.gap <= 0.0) throw validation_error("model.gap", "must be positive");
        }
    }

    // --- path ---
    const ojson& jp = require(root, "config", "path");
    if (!jp.is_object()) throw validation_error("path", "expected an object");
    cfg.path.type = get_string(require(jp, "path", "type"), "path.type");
    if (cfg.path.type == "gate_loop") {
        check_keys(jp, "path", {"type", "segments"});
        if (cfg.model.id == "spin_half") {
            throw validation_error("path.type", "gate_loop requires a gate model");
        }
        cfg.path.segments = get_count(require(jp, "path", "segments"), "path.segments");
    } else if (cfg.path.type == "latitude") {
        check_keys(jp, "path", {"type", "segments", "polar", "phi_start", "phi_end"});
        cfg.path.segments = get_count(require(jp, "path", "segments"), "path.segments");
        cfg.path.polar = get_number(require(jp, "path", "polar"), "path.polar");
        if (!(cfg.path.polar > 0.0 && cfg.path.polar < 3.141592653589793)) {
            throw validation_error("path.polar", "must lie in (0, pi)");
        }
        if (jp.contains("phi_start")) cfg.path.phi_start = get_number(jp.at("phi_start"), "path.phi_start");
        if (jp.contains("phi_end")) cfg.path.phi_end = get_number(jp.at("phi_end"), "path.phi_end");
        if (cfg.path.phi_end == cfg.path.phi_start) {
            throw validation_error("path.phi_end", "must differ from phi_start");
        }
    } else if (cfg.path.type == "waypoints") {
        check_keys(jp, "path", {"type", "points", "closed"});
        const ojson& pts = require(jp, "path", "points");
        if (!pts.is_array() || pts.size() < 2) {
            throw validation_error("path.points", "need at least 2 waypoints");
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const ojson& pt = pts.at(i);
            if (!pt.is_array() || pt.size() != 2) {
                throw validation_error("path.points[" + std::to_string(i) + "]",
                                       "expected [polar, azimuth]");
            }
            cfg.path.points.push_back({get_number(pt.at(0), "path.points"),
                                       get_number(pt.at(1), "path.points")});
        }
        if (jp.contains("closed")) cfg.path.closed = get_bool(jp.at("closed"), "path.closed");
        if (cfg.path.closed && cfg.path.points.front() != cfg.path.points.back()) {
            throw validation_error("path.closed", "closed path must end exactly at its start");
        }
    } else {
        throw validation_error("path.type", "expected gate_loop, latitude or waypoints");
    }
    if (cfg.path.type != "waypoints" && cfg.path.segments < 1) {
        throw validation_error("path.segments", "must be at least 1");
    }

    const std::size_t code_dim =
        cfg.model.id == "two_qubit_gate" ? 4 : 2;  // spin_half noise acts on the full 2-dim space

    // --- noise ---
    if (root.contains("noise")) {
        const ojson& jn = root.at("noise");
        if (!jn.is_array()) throw validation_error("noise", "expected an array");
        for (std::size_t i = 0; i < jn.size(); ++i) {
            const std::string field = "noise[" + std::to_string(i) + "]";
            const ojson& term = jn.at(i);
            if (!term.is_object()) throw validation_error(field, "expected an object");
            check_keys(term, field, {"op", "rate"});
            NoiseTerm nt;
            nt.op = get_string(require(term, field, "op"), field + ".op");
            if (!valid_op_name(nt.op, code_dim)) {
                throw validation_error(field + ".op", "unknown operator \"" + nt.op + "\"");
            }
            nt.rate = get_number(require(term, field, "rate"), field + ".rate");
            if (nt.rate < 0.0) throw validation_error(field + ".rate", "must be non-negative");
            cfg.noise.push_back(std::move(nt));
        }
    }

    // --- mode ---
    cfg.mode = get_string(require(root, "config", "mode"), "mode");
    static const std::set<std::string> modes = {"nojump", "enumerate", "montecarlo", "master",
                                                "robustness"};
    if (!modes.count(cfg.mode)) {
        throw validation_error("mode",
                               "expected one of nojump, enumerate, montecarlo, master, robustness");
    }
    if (cfg.mode == "robustness") {
        if (cfg.model.id == "spin_half") {
            throw validation_error("mode", "robustness analysis requires a gate model");
        }
        if (cfg.path.type != "gate_loop") {
            throw validation_error("path.type", "robustness analysis requires a gate_loop path");
        }
    }

    if (root.contains("max_jumps")) {
        cfg.max_jumps = get_count(root.at("max_jumps"), "max_jumps");
        if (cfg.max_jumps > 6) throw validation_error("max_jumps", "at most 6 at desk scale");
    }
    if (root.contains("n_traj")) {
        cfg.n_traj = get_count(root.at("n_traj"), "n_traj");
        if (cfg.n_traj < 1) throw validation_error("n_traj", "must be at least 1");
    }

    if (root.contains("jumps")) {
        const ojson& jj = root.at("jumps");
        if (!jj.is_array()) throw validation_error("jumps", "expected an array");
        for (std::size_t i = 0; i < jj.size(); ++i) {
            const std::string field = "jumps[" + std::to_string(i) + "]";
            const ojson& ev = jj.at(i);
            if (!ev.is_object()) throw validation_error(field, "expected an object");
            check_keys(ev, field, {"fraction", "op"});
            JumpSpecEntry e;
            e.fraction = get_number(require(ev, field, "fraction"), field + ".fraction");
            if (!(e.fraction > 0.0 && e.fraction < 1.0)) {
                throw validation_error(field + ".fraction", "must lie strictly inside (0,1)");
            }
            e.op = get_string(require(ev, field, "op"), field + ".op");
            bool known = false;
            for (const auto& nt : cfg.noise) known = known || nt.op == e.op;
            if (!known) {
                throw validation_error(field + ".op",
                                       "op \"" + e.op + "\" is not listed under noise");
            }
            cfg.jumps.push_back(std::move(e));
        }
    }

    if (root.contains("dt")) {
        cfg.dt = get_number(root.at("dt"), "dt");
        if (cfg.dt <= 0.0) throw validation_error("dt", "must be positive");
    }
    if (root.contains("total_time")) {
        cfg.total_time = get_number(root.at("total_time"), "total_time");
        if (cfg.total_time <= 0.0) throw validation_error("total_time", "must be positive");
    }
    if (root.contains("seed")) cfg.seed = get_count(root.at("seed"), "seed");

    if (root.contains("initial")) {
        const ojson& ji = root.at("initial");
        if (!ji.is_array() || ji.empty()) {
            throw validation_error("initial", "expected an array of [re, im] pairs");
        }
        std::vector<cplx> amps;
        for (std::size_t i = 0; i < ji.size(); ++i) {
            const ojson& c = ji.at(i);
            if (!c.is_array() || c.size() != 2) {
                throw validation_error("initial[" + std::to_string(i) + "]",
                                       "expected an [re, im] pair");
            }
            amps.emplace_back(get_number(c.at(0), "initial"), get_number(c.at(1), "initial"));
        }
        cfg.initial = std::move(amps);
    }

    if (root.contains("output")) {
        const ojson& jo = root.at("output");
        if (!jo.is_object()) throw validation_error("output", "expected an object");
        check_keys(jo, "output", {"dir", "structured", "tabular"});
        if (jo.contains("dir")) {
            cfg.output.dir = get_string(jo.at("dir"), "output.dir");
            if (cfg.output.dir.empty()) throw validation_error("output.dir", "must not be empty");
        }
        if (jo.contains("structured")) {
            cfg.output.structured = get_bool(jo.at("structured"), "output.structured");
        }
        if (jo.contains("tabular")) cfg.output.tabular = get_bool(jo.at("tabular"), "output.tabular");
    }

    return cfg;
}

nlohmann::ordered_json RunConfig::echo() const {
    ojson j;
    ojson jm;
    jm["id"] = model.id;
    if (model.id == "single_qubit_gate") jm["axis"] = model.axis;
    if (model.id != "spin_half") {
        jm["angle"] = model.angle;
        jm["gap"] = model.gap;
    }
    j["model"] = jm;

    ojson jp;
    jp["type"] = path.type;
    if (path.type == "waypoints") {
        jp["points"] = path.points;
        jp["closed"] = path.closed;
    } else {
        jp["segments"] = path.segments;
        if (path.type == "latitude") {
            jp["polar"] = path.polar;
            jp["phi_start"] = path.phi_start;
            jp["phi_end"] = path.phi_end;
        }
    }
    j["path"] = jp;

    ojson jn = ojson::array();
    for (const auto& nt : noise) jn.push_back({{"op", nt.op}, {"rate", nt.rate}});
    j["noise"] = jn;

    j["mode"] = mode;
    if (mode == "enumerate") j["max_jumps"] = max_jumps;
    if (mode == "montecarlo") j["n_traj"] = n_traj;
    if (mode == "robustness") {
        ojson jj = ojson::array();
        for (const auto& e : jumps) jj.push_back({{"fraction", e.fraction}, {"op", e.op}});
        j["jumps"] = jj;
    }
    j["dt"] = dt;
    j["total_time"] = total_time;
    j["seed"] = seed;
    if (initial) {
        ojson ji = ojson::array();
        for (const auto& a : *initial) ji.push_back({a.real(), a.imag()});
        j["initial"] = ji;
    }
    j["output"] = {{"dir", output.dir}, {"structured", output.structured}, {"tabular", output.tabular}};
    return j;
}

RunReport RunReport::from_text(std::string_view text) {
    RunReport r;
    try {
        r.doc = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error("", std::string("not a valid report: ") + e.what());
    }
    return r;
}

}  // namespace holosim
