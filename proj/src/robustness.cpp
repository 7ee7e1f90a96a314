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

#include "holosim/robustness.hpp"

#include <algorithm>
#include <cmath>

#include "holosim/pauli.hpp"

namespace holosim {

namespace {

const cplx kImag(0.0, 1.0);

std::size_t fraction_to_sample(double fraction, std::size_t segments) {
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw std::invalid_argument("jump fraction must lie strictly inside (0,1)");
    }
    auto idx = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(segments)));
    idx = std::clamp<std::size_t>(idx, 1, segments - 1);
    return idx;
}

}  // namespace

ComplexMatrix GateSpec::ideal() const { return matexp((kImag * angle) * generator); }

GateSpec make_single_qubit_gate(int axis, double angle, std::size_t segments, double gap) {
    GateSpec g;
    g.kind = GateKind::single_qubit;
    g.axis = axis;
    g.angle = angle;
    g.family = single_qubit_gate_family(axis, gap);
    g.loop = gate_loop(g.family, angle, segments);
    g.generator = pauli(axis);
    return g;
}

GateSpec make_two_qubit_gate(double angle, std::size_t segments, double gap) {
    GateSpec g;
    g.kind = GateKind::two_qubit;
    g.axis = 1;
    g.angle = angle;
    g.family = two_qubit_gate_family(gap);
    g.loop = gate_loop(g.family, angle, segments);
    g.generator = pauli_pair(1, 1);
    return g;
}

ErrorChannel pauli_channel(int axis, double rate) {
    if (rate < 0.0) throw std::invalid_argument("pauli_channel: rate must be non-negative");
    ErrorChannel ch;
    ch.ops = {pauli(axis)};
    ch.labels = {"sigma" + std::to_string(axis)};
    ch.rate = rate;
    return ch;
}

ErrorChannel sigma_pm_channel(double rate) {
    if (rate < 0.0) throw std::invalid_argument("sigma_pm_channel: rate must be non-negative");
    ErrorChannel ch;
    ch.ops = {sigma_plus(), sigma_minus()};
    ch.labels = {"sigma_plus", "sigma_minus"};
    ch.rate = rate;
    return ch;
}

ErrorChannel two_qubit_pauli_channel(int i, int j, double rate) {
    if (rate < 0.0) throw std::invalid_argument("two_qubit_pauli_channel: rate must be non-negative");
    ErrorChannel ch;
    ch.ops = {pauli_pair(i, j)};
    ch.labels = {"sigma" + std::to_string(i) + "xsigma" + std::to_string(j)};
    ch.rate = rate;
    return ch;
}

ConjugationSign conjugation_sign(const ComplexMatrix& gate_generator,
                                 const ComplexMatrix& jump_op) {
    if (gate_generator.rows() != jump_op.rows() || !jump_op.is_square()) {
        throw std::invalid_argument("conjugation_sign: dimension mismatch");
    }
    const std::size_t n = jump_op.rows();
    const ComplexMatrix wtw = jump_op.adjoint() * jump_op;
    const double alpha = wtw.trace().real() / static_cast<double>(n);
    if (alpha <= 0.0 ||
        (wtw - alpha * ComplexMatrix::identity(n)).max_abs() > 1e-8 * std::max(1.0, alpha)) {
        return ConjugationSign::destroyed;
    }

    const double scale = std::max(1.0, gate_generator.max_abs() * jump_op.max_abs());
    if ((jump_op * gate_generator - gate_generator * jump_op).max_abs() <= 1e-8 * scale) {
        return ConjugationSign::plus;
    }
    if ((jump_op * gate_generator + gate_generator * jump_op).max_abs() <= 1e-8 * scale) {
        return ConjugationSign::minus;
    }
    throw std::invalid_argument("conjugation_sign: op neither commutes nor anticommutes");
}

std::vector<double> solid_angle_split(const IsospectralFamily& family, const ParameterPath& loop,
                                      const std::vector<std::size_t>& jump_samples) {
    loop.validate();
    std::vector<std::size_t> bounds;
    bounds.push_back(0);
    for (std::size_t s : jump_samples) {
        if (s == 0 || s >= loop.segment_count()) {
            throw std::out_of_range("solid_angle_split: jump sample outside loop interior");
        }
        if (s <= bounds.back() && bounds.size() > 1) {
            throw std::invalid_argument("solid_angle_split: jump samples must increase");
        }
        bounds.push_back(s);
    }
    bounds.push_back(loop.segment_count());

    std::vector<double> angles;
    angles.reserve(bounds.size() - 1);
    for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
        angles.push_back(abelian_gate_angle(family, loop, bounds[b], bounds[b + 1]));
    }
    return angles;
}

double effective_angle(const std::vector<double>& segment_angles) {
    double sum = 0.0;
    double sign = 1.0;
    for (double a : segment_angles) {
        sum += sign * a;
        sign = -sign;
    }
    return sum;
}

RobustnessReport analyze_gate(const GateSpec& gate, const ErrorChannel& channel,
                              std::vector<JumpEvent> pattern) {
    std::sort(pattern.begin(), pattern.end(),
              [](const JumpEvent& a, const JumpEvent& b) { return a.fraction < b.fraction; });

    const std::size_t segments = gate.loop.segment_count();
    std::vector<JumpInsertion> insertions;
    std::vector<std::size_t> samples;
    std::vector<ConjugationSign> signs;
    bool destroyed = false;
    for (const auto& ev : pattern) {
        if (ev.op_index >= channel.ops.size()) {
            throw std::out_of_range("analyze_gate: pattern names unknown channel op");
        }
        const ComplexMatrix& op = channel.ops[ev.op_index];
        const ConjugationSign s = conjugation_sign(gate.generator, op);
        signs.push_back(s);
        destroyed = destroyed || s == ConjugationSign::destroyed;

        JumpInsertion ins;
        ins.sample_index = fraction_to_sample(ev.fraction, segments);
        if (!samples.empty() && ins.sample_index <= samples.back()) {
            throw std::invalid_argument("analyze_gate: jump positions collide on the loop grid");
        }
        samples.push_back(ins.sample_index);
        // Rates scale the trajectory weight, not the transported gate;
        // fold them in anyway so the invariance is exercised.
        const double alpha = channel.rate > 0.0 ? channel.rate : 1.0;
        ins.op = std::sqrt(alpha) * op;
        ins.alpha = alpha;
        insertions.push_back(std::move(ins));
    }

    RobustnessReport rep;
    rep.pattern = pattern;
    const HolonomyResult actual = holonomy_with_jumps(gate.family, gate.loop, insertions);
    rep.actual = actual.u;

    if (destroyed) {
        rep.verdict = Verdict::destroyed;
        rep.residual_singular_values = singular_values(actual.u);
        rep.fidelity = gate_fidelity(gate.ideal(), actual.u);
        // Consistency here means the map really collapsed.
        rep.prediction_gap = rep.residual_singular_values.size() > 1
                                 ? rep.residual_singular_values[1]
                                 : 0.0;
        if (rep.prediction_gap > 1e-4) {
            throw consistency_error("analyze_gate: sigma± jump did not collapse the gate");
        }
        return rep;
    }

    const std::vector<double> split = solid_angle_split(gate.family, gate.loop, samples);
    double theta_e = 0.0;
    double sign = 1.0;
    for (std::size_t m = 0; m < split.size(); ++m) {
        theta_e += sign * split[m];
        if (m < signs.size()) sign *= (signs[m] == ConjugationSign::minus) ? -1.0 : 1.0;
    }
    rep.effective_angle = theta_e;

    const ComplexMatrix predicted = matexp((kImag * theta_e) * gate.generator);
    rep.prediction_gap = std::max(0.0, 1.0 - gate_fidelity(predicted, actual.u));
    if (rep.prediction_gap > 1e-4) {
        throw consistency_error("analyze_gate: prediction and transported holonomy disagree");
    }

    rep.fidelity = gate_fidelity(gate.ideal(), actual.u);
    rep.verdict = rep.fidelity >= 1.0 - 1e-6 ? Verdict::robust : Verdict::sign_flip;
    return rep;
}

std::vector<TableEntry> two_qubit_table(const GateSpec& gate) {
    if (gate.kind != GateKind::two_qubit) {
        throw std::invalid_argument("two_qubit_table: gate must be the two-qubit gate");
    }
    std::vector<TableEntry> table(16);
#pragma omp parallel for schedule(static)
    for (int idx = 0; idx < 16; ++idx) {
        const int i = idx / 4;
        const int j = idx % 4;
        table[static_cast<std::size_t>(idx)] = {
            i, j, conjugation_sign(gate.generator, pauli_pair(i, j))};
    }
    return table;
}

}  // namespace holosim
