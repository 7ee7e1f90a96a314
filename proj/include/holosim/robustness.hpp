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

#include <string>
#include <vector>

#include "holosim/models.hpp"

namespace holosim {

struct consistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class GateKind { single_qubit, two_qubit };

/// A holonomic gate: exp(i angle sigma_axis) on the tracked code space
/// (single qubit, axis 1 or 2) or exp(i angle sigma1 (x) sigma1)
/// (two qubit), realized by a latitude loop of the matching family.
struct GateSpec {
    GateKind kind = GateKind::single_qubit;
    int axis = 1;
    double angle = 0.0;
    IsospectralFamily family;
    ParameterPath loop;
    ComplexMatrix generator;  // code-space sigma_axis or sigma (x) sigma

    ComplexMatrix ideal() const;  // exp(i angle generator)
};

GateSpec make_single_qubit_gate(int axis, double angle, std::size_t segments, double gap = 1.0);
GateSpec make_two_qubit_gate(double angle, std::size_t segments, double gap = 1.0);

/// Decoherence channel acting inside the code space.
struct ErrorChannel {
    std::vector<ComplexMatrix> ops;
    std::vector<std::string> labels;
    double rate = 0.0;
};

ErrorChannel pauli_channel(int axis, double rate);
ErrorChannel sigma_pm_channel(double rate);
ErrorChannel two_qubit_pauli_channel(int i, int j, double rate);

enum class ConjugationSign { plus, minus, destroyed };

/// +1 if the jump commutes with the gate generator, -1 if it
/// anticommutes, destroyed for sigma±-type (rank-deficient) operators.
ConjugationSign conjugation_sign(const ComplexMatrix& gate_generator,
                                 const ComplexMatrix& jump_op);

/// Partial gate angles accumulated per inter-jump segment of a sphere
/// family loop; their sum is the full-loop angle at the discretization's
/// own accuracy.
std::vector<double> solid_angle_split(const IsospectralFamily& family, const ParameterPath& loop,
                                      const std::vector<std::size_t>& jump_samples);

/// Alternating sum, first segment positive.
double effective_angle(const std::vector<double>& segment_angles);

struct JumpEvent {
    double fraction = 0.5;     // position along the loop, in (0,1)
    std::size_t op_index = 0;  // channel op applied there
};

enum class Verdict { robust, sign_flip, destroyed };

struct RobustnessReport {
    Verdict verdict = Verdict::robust;
    double effective_angle = 0.0;  // meaningful for robust/sign_flip
    double fidelity = 0.0;         // |tr(U_ideal^dag U_actual)| / n
    double prediction_gap = 0.0;   // 1 - fidelity(prediction, simulation)
    ComplexMatrix actual;
    std::vector<double> residual_singular_values;  // destroyed verdicts
    std::vector<JumpEvent> pattern;
};

/// Simulates the jump-conditioned holonomy and checks it against the
/// algebraic prediction (conjugation signs + effective angle). A gap
/// beyond 1e-4 raises consistency_error.
RobustnessReport analyze_gate(const GateSpec& gate, const ErrorChannel& channel,
                              std::vector<JumpEvent> pattern);

struct TableEntry {
    int i = 0;
    int j = 0;
    ConjugationSign sign = ConjugationSign::plus;
};

/// Full 16-entry Pauli-pair classification for the sigma1 (x) sigma1 gate.
std::vector<TableEntry> two_qubit_table(const GateSpec& gate);

}  // namespace holosim
