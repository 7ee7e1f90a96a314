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

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>

#include "holosim/pauli.hpp"
#include "holosim/runner.hpp"

namespace holosim {

namespace {

using ojson = nlohmann::ordered_json;

ojson matrix_to_json(const ComplexMatrix& m) {
    ojson j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    ojson re = ojson::array(), im = ojson::array();
    for (const auto& e : m.entries()) {
        re.push_back(e.real());
        im.push_back(e.imag());
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

ComplexMatrix resolve_code_op(const std::string& name, std::size_t code_dim) {
    if (code_dim <= 2) {
        if (name == "sigma1") return pauli(1);
        if (name == "sigma2") return pauli(2);
        if (name == "sigma3") return pauli(3);
        if (name == "sigma_plus") return sigma_plus();
        if (name == "sigma_minus") return sigma_minus();
    } else {
        // sigmaIxsigmaJ
        return pauli_pair(name.at(5) - '0', name.at(12) - '0');
    }
    throw validation_error("noise.op", "unknown operator \"" + name + "\"");
}

IsospectralFamily build_family(const ModelSpec& model) {
    if (model.id == "spin_half") return spin_half_family();
    if (model.id == "single_qubit_gate") return single_qubit_gate_family(model.axis, model.gap);
    return two_qubit_gate_family(model.gap);
}

ParameterPath build_path(const IsospectralFamily& family, const RunConfig& cfg) {
    if (cfg.path.type == "gate_loop") {
        return gate_loop(family, cfg.model.angle, cfg.path.segments);
    }
    if (cfg.path.type == "latitude") {
        return ParameterPath::latitude_loop(cfg.path.polar, cfg.path.segments, cfg.path.phi_start,
                                            cfg.path.phi_end);
    }
    ParameterPath p;
    p.samples = cfg.path.points;
    p.closed = cfg.path.closed;
    p.validate();
    return p;
}

PureState initial_state(const IsospectralFamily& family, const ParameterPath& path,
                        const RunConfig& cfg) {
    if (cfg.initial) {
        PureState psi(*cfg.initial);
        if (psi.dim() != family.dim()) {
            throw validation_error("initial", "dimension does not match the model");
        }
        if (std::abs(psi.norm() - 1.0) > 1e-9) {
            throw validation_error("initial", "state must be normalized");
        }
        return psi;
    }
    // Default: the first tracked frame vector at the path start.
    const ComplexMatrix start = family.v_at(path.samples.front()) * family.basepoint_frame();
    PureState psi(family.dim());
    for (std::size_t i = 0; i < family.dim(); ++i) psi.amplitudes[i] = start.at(i, 0);
    return psi;
}

std::vector<ComplexMatrix> build_lindblad_ops(const IsospectralFamily& family,
                                              const RunConfig& cfg) {
    std::vector<ComplexMatrix> ops;
    const bool whole_space = family.subspace_dim() == family.dim() ||
                             cfg.model.id == "spin_half";
    const std::size_t code_dim = cfg.model.id == "two_qubit_gate" ? 4 : 2;
    for (const auto& term : cfg.noise) {
        if (term.rate == 0.0) continue;
        ComplexMatrix op = resolve_code_op(term.op, code_dim);
        ComplexMatrix full =
            whole_space ? op : embed_code_op(family, op, /*unitary_rest=*/op.is_unitary(1e-8));
        ops.push_back(std::sqrt(term.rate) * full);
    }
    return ops;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::robust:
            return "robust";
        case Verdict::sign_flip:
            return "sign_flip";
        default:
            return "destroyed";
    }
}

ojson report_to_json(const RobustnessReport& rep, const std::vector<std::string>& op_names) {
    ojson j;
    ojson pattern = ojson::array();
    for (const auto& ev : rep.pattern) {
        pattern.push_back({{"fraction", ev.fraction}, {"op", op_names.at(ev.op_index)}});
    }
    j["pattern"] = pattern;
    j["verdict"] = verdict_name(rep.verdict);
    if (rep.verdict != Verdict::destroyed) j["effective_angle"] = rep.effective_angle;
    j["fidelity"] = rep.fidelity;
    j["prediction_gap"] = rep.prediction_gap;
    if (rep.verdict == Verdict::destroyed) {
        j["residual"] = matrix_to_json(rep.actual);
        j["residual_singular_values"] = rep.residual_singular_values;
    }
    return j;
}

std::vector<TabularRow> make_rows(const std::vector<TrajectoryRecord>& records,
                                  const PureState& nojump_ref) {
    const PureState ref = nojump_ref.normalized();
    std::vector<TabularRow> rows;
    rows.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        TabularRow row;
        row.trajectory_index = i;
        row.jump_count = rec.jump_sequence.size();
        for (std::size_t k = 0; k < rec.jump_sequence.size(); ++k) {
            if (k) row.jump_steps += ';';
            row.jump_steps += std::to_string(rec.jump_sequence[k].first) + ':' +
                              std::to_string(rec.jump_sequence[k].second);
        }
        row.weight = rec.weight;
        row.fidelity = rec.weight > 0.0 ? std::norm(inner(ref, rec.final_state.normalized())) : 0.0;
        rows.push_back(std::move(row));
    }
    return rows;
}

double mean_jump_count(const std::vector<TrajectoryRecord>& records) {
    double total = 0.0;
    for (const auto& rec : records) total += static_cast<double>(rec.jump_sequence.size());
    return total / static_cast<double>(records.size());
}

}  // namespace

RunResult run(const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();

    const IsospectralFamily family = build_family(config.model);
    const ParameterPath path = build_path(family, config);
    const PureState psi0 = initial_state(family, path, config);

    LindbladModel model;
    model.hamiltonian = DrivenHamiltonian{family, path};
    model.lindblad_ops = build_lindblad_ops(family, config);
    model.total_time = config.total_time;
    model.validate();

    RunResult result;
    ojson& doc = result.report.doc;
    doc["config"] = config.echo();

    const HolonomyResult hol = holonomy(family, path);
    doc["holonomy"] = matrix_to_json(hol.u);

    ojson results;
    ojson diagnostics;

    auto scheme_diagnostics = [&](const JumpScheme& scheme) {
        double defect = 0.0;
        for (int i = 0; i <= 16; ++i) {
            defect = std::max(defect, scheme.completeness_defect(
                                          config.total_time * static_cast<double>(i) / 16.0));
        }
        diagnostics["completeness_defect"] = defect;
        diagnostics["completeness_constant"] = defect / (scheme.dt() * scheme.dt());
    };

    if (config.mode == "nojump") {
        const JumpScheme scheme = build_scheme(model, config.dt);
        const NoJumpSubspaceReport rep = no_jump_subspace_report(scheme);
        results["subspace_map"] = matrix_to_json(rep.subspace_map);
        const double vis = rep.visibility.magnitude;
        results["fidelity"] =
            vis > 0.0 ? gate_fidelity(rep.holonomy_u, (1.0 / vis) * rep.subspace_map) : 0.0;
        results["distance_to_model"] = rep.distance_to_model;
        diagnostics["leakage"] = rep.leakage;
        diagnostics["visibility_measured"] = rep.visibility.magnitude;
        diagnostics["visibility_model"] = rep.visibility_model;
        diagnostics["visibility_convention"] =
            "no-jump norm decay exp(-alpha*T/2) (kappa = alpha*1) or exp(-alpha*E*T/2) (kappa = alpha*H)";
        diagnostics["completeness_defect"] = rep.completeness_defect;
        diagnostics["completeness_constant"] = rep.completeness_constant;
    } else if (config.mode == "enumerate") {
        const JumpScheme scheme = build_scheme(model, config.dt);
        const auto records = enumerate_trajectories(scheme, psi0, config.max_jumps);
        const DensityMatrix rho = reconstruct_density(records);
        const DensityMatrix oracle =
            evolve(model, DensityMatrix::from_pure(psi0), config.total_time, config.dt);
        results["record_count"] = records.size();
        results["max_jumps"] = config.max_jumps;
        results["reconstructed_trace"] = rho.trace_real();
        results["trace_distance_to_master"] = trace_distance(rho, oracle);
        scheme_diagnostics(scheme);
        result.rows = make_rows(records, records.front().final_state);
    } else if (config.mode == "montecarlo") {
        const JumpScheme scheme = build_scheme(model, config.dt);
        const auto records = sample_trajectories(scheme, psi0, config.n_traj, config.seed);
        const DensityMatrix rho = reconstruct_density(records);
        const DensityMatrix oracle =
            evolve(model, DensityMatrix::from_pure(psi0), config.total_time, config.dt);
        results["n_traj"] = config.n_traj;
        results["mean_jumps"] = mean_jump_count(records);
        results["trace_distance_to_master"] = trace_distance(rho, oracle);
        scheme_diagnostics(scheme);
        result.rows = make_rows(records, nojump_propagate(scheme, psi0));
    } else if (config.mode == "master") {
        const DensityMatrix rho =
            evolve(model, DensityMatrix::from_pure(psi0), config.total_time, config.dt);
        results["rho"] = matrix_to_json(rho.matrix);
        results["trace"] = rho.trace_real();
        results["purity"] = rho.purity();
        results["min_eigenvalue"] = rho.min_eigenvalue();
    } else {  // robustness
        GateSpec gate;
        gate.kind = config.model.id == "two_qubit_gate" ? GateKind::two_qubit
                                                        : GateKind::single_qubit;
        gate.axis = config.model.axis;
        gate.angle = config.model.angle;
        gate.family = family;
        gate.loop = path;
        gate.generator = gate.kind == GateKind::two_qubit ? pauli_pair(1, 1) : pauli(config.model.axis);

        ErrorChannel channel;
        const std::size_t code_dim = gate.kind == GateKind::two_qubit ? 4 : 2;
        for (const auto& term : config.noise) {
            channel.ops.push_back(resolve_code_op(term.op, code_dim));
            channel.labels.push_back(term.op);
        }
        channel.rate = config.noise.empty() ? 1.0 : config.noise.front().rate;

        std::vector<JumpEvent> pattern;
        for (const auto& e : config.jumps) {
            JumpEvent ev;
            ev.fraction = e.fraction;
            ev.op_index = 0;
            for (std::size_t k = 0; k < channel.labels.size(); ++k) {
                if (channel.labels[k] == e.op) ev.op_index = k;
            }
            pattern.push_back(ev);
        }

        ojson reports = ojson::array();
        reports.push_back(report_to_json(analyze_gate(gate, channel, {}), channel.labels));
        if (!pattern.empty()) {
            reports.push_back(report_to_json(analyze_gate(gate, channel, pattern), channel.labels));
        }
        results["reports"] = reports;

        if (gate.kind == GateKind::two_qubit) {
            ojson table = ojson::array();
            for (const auto& entry : two_qubit_table(gate)) {
                table.push_back({{"op", "sigma" + std::to_string(entry.i) + "xsigma" +
                                            std::to_string(entry.j)},
                                 {"sign", entry.sign == ConjugationSign::plus ? 1 : -1}});
            }
            results["two_qubit_table"] = table;
        }
    }

    doc["results"] = results;
    doc["diagnostics"] = diagnostics;
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    doc["wall_clock_seconds"] = elapsed.count();
    return result;
}

std::vector<std::filesystem::path> emit(const RunResult& result, const OutputSpec& output) {
    namespace fs = std::filesystem;
    std::vector<fs::path> written;
    const fs::path dir(output.dir);
    fs::create_directories(dir);

    if (output.structured) {
        const fs::path p = dir / "report.json";
        std::ofstream out(p);
        if (!out) throw std::runtime_error("emit: cannot open " + p.string());
        out << result.report.to_text();
        if (!out.good()) throw std::runtime_error("emit: write failed for " + p.string());
        written.push_back(p);
    }
    if (output.tabular) {
        const fs::path p = dir / "trajectories.csv";
        std::ofstream out(p);
        if (!out) throw std::runtime_error("emit: cannot open " + p.string());
        out << "trajectory_index,jump_count,jump_steps,weight,fidelity\n";
        for (const auto& row : result.rows) {
            out << row.trajectory_index << ',' << row.jump_count << ',' << row.jump_steps << ','
                << format_double(row.weight) << ',' << format_double(row.fidelity) << '\n';
        }
        if (!out.good()) throw std::runtime_error("emit: write failed for " + p.string());
        written.push_back(p);
    }
    return written;
}

}  // namespace holosim
