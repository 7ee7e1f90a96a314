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

#include "holosim/models.hpp"

#include <cmath>
#include <stdexcept>

#include "holosim/pauli.hpp"

namespace holosim {

namespace {

const cplx kImag(0.0, 1.0);
constexpr double kTwoPi = 6.283185307179586476925286766559;

ComplexMatrix column(std::size_t dim, const std::vector<cplx>& entries) {
    ComplexMatrix m(dim, 1);
    for (std::size_t i = 0; i < entries.size(); ++i) m.at(i, 0) = entries[i];
    return m;
}

ComplexMatrix basis_column(std::size_t dim, std::size_t index) {
    ComplexMatrix m(dim, 1);
    m.at(index, 0) = 1.0;
    return m;
}

/// Sandwich frame rule e^{-i phi G3} e^{-i theta G2} e^{+i phi G3} with
/// lambda = (theta=polar, phi=azimuth).
std::vector<FrameFactor> sandwich_rule() {
    return {{2, 1, +1.0}, {1, 0, +1.0}, {2, 1, -1.0}};
}

/// Pair generators rotating `lower` (a zero-level vector) against the
/// excited basis state: G3 = (|e><e| - |b><b|)/2, G2 the matching
/// sigma2/2 in the (excited, lower) ordering. The tracked vector sits on
/// the -1 side of G3 and picks up +Omega/2 per latitude turn.
void append_pair_generators(ComplexMatrix& g2, ComplexMatrix& g3, const ComplexMatrix& lower,
                            std::size_t excited_index) {
    const std::size_t dim = g2.rows();
    const ComplexMatrix e = basis_column(dim, excited_index);
    const ComplexMatrix bb = lower * lower.adjoint();
    const ComplexMatrix ee = e * e.adjoint();
    const ComplexMatrix eb = e * lower.adjoint();
    const ComplexMatrix be = lower * e.adjoint();
    g3 += 0.5 * (ee - bb);
    g2 += 0.5 * (-kImag * eb + kImag * be);
}

}  // namespace

IsospectralFamily spin_half_family() {
    IsospectralFamily::Spec spec;
    spec.h0 = 0.5 * pauli(3);
    spec.generators = {ComplexMatrix::zero(2, 2), 0.5 * pauli(2), 0.5 * pauli(3)};
    spec.frame_rule = sandwich_rule();
    spec.subspace_energy = 0.5;
    spec.sphere_type = true;
    spec.gate_rate_scale = -0.5;  // Berry phase -Omega/2
    spec.name = "spin_half";
    return IsospectralFamily::create(std::move(spec));
}

IsospectralFamily single_qubit_gate_family(int axis, double gap) {
    if (axis != 1 && axis != 2) {
        throw std::invalid_argument("single_qubit_gate_family: axis must be 1 or 2");
    }
    if (gap <= 0.0) throw std::invalid_argument("single_qubit_gate_family: gap must be positive");

    const std::size_t dim = 4;
    ComplexMatrix h0(dim, dim);
    h0.at(3, 3) = gap;

    const double r = 1.0 / std::sqrt(2.0);
    // Bright state: +1 eigenvector of sigma_axis inside the code {e0,e1}.
    const ComplexMatrix bright =
        (axis == 1) ? column(dim, {r, r, 0.0, 0.0}) : column(dim, {r, kImag * r, 0.0, 0.0});

    ComplexMatrix g2 = ComplexMatrix::zero(dim, dim);
    ComplexMatrix g3 = ComplexMatrix::zero(dim, dim);
    append_pair_generators(g2, g3, bright, 3);

    ComplexMatrix code(dim, 2);
    code.at(0, 0) = 1.0;
    code.at(1, 1) = 1.0;

    IsospectralFamily::Spec spec;
    spec.h0 = h0;
    spec.generators = {ComplexMatrix::zero(dim, dim), g2, g3};
    spec.frame_rule = sandwich_rule();
    spec.subspace_energy = 0.0;
    spec.basepoint_frame = code;
    spec.sphere_type = true;
    spec.gate_rate_scale = 0.25;
    spec.name = (axis == 1) ? "u1_gate" : "u2_gate";
    return IsospectralFamily::create(std::move(spec));
}

IsospectralFamily two_qubit_gate_family(double gap) {
    if (gap <= 0.0) throw std::invalid_argument("two_qubit_gate_family: gap must be positive");

    const std::size_t dim = 6;
    ComplexMatrix h0(dim, dim);
    h0.at(4, 4) = gap;
    h0.at(5, 5) = gap;

    // The two +1 eigenvectors of sigma1 (x) sigma1 on the code.
    const ComplexMatrix b1 = column(dim, {0.5, 0.5, 0.5, 0.5, 0.0, 0.0});
    const ComplexMatrix b2 = column(dim, {0.5, -0.5, -0.5, 0.5, 0.0, 0.0});

    ComplexMatrix g2 = ComplexMatrix::zero(dim, dim);
    ComplexMatrix g3 = ComplexMatrix::zero(dim, dim);
    append_pair_generators(g2, g3, b1, 4);
    append_pair_generators(g2, g3, b2, 5);

    ComplexMatrix code(dim, 4);
    for (std::size_t j = 0; j < 4; ++j) code.at(j, j) = 1.0;

    IsospectralFamily::Spec spec;
    spec.h0 = h0;
    spec.generators = {ComplexMatrix::zero(dim, dim), g2, g3};
    spec.frame_rule = sandwich_rule();
    spec.subspace_energy = 0.0;
    spec.basepoint_frame = code;
    spec.sphere_type = true;
    spec.gate_rate_scale = 0.25;
    spec.name = "u3_gate";
    return IsospectralFamily::create(std::move(spec));
}

double polar_for_gate_angle(const IsospectralFamily& family, double angle) {
    if (!family.sphere_type() || family.gate_rate_scale() == 0.0) {
        throw std::domain_error("polar_for_gate_angle: not a sphere gate family");
    }
    const double c = 1.0 - angle / (kTwoPi * family.gate_rate_scale());
    if (c <= -1.0 || c >= 1.0) {
        throw std::invalid_argument("polar_for_gate_angle: angle outside the family's range");
    }
    return std::acos(c);
}

ParameterPath gate_loop(const IsospectralFamily& family, double angle, std::size_t segments) {
    ParameterPath p = ParameterPath::latitude_loop(polar_for_gate_angle(family, angle), segments);
    p.label = family.name() + "_loop";
    return p;
}

double abelian_gate_angle(const IsospectralFamily& family, const ParameterPath& path,
                          std::size_t first_sample, std::size_t last_sample) {
    if (!family.sphere_type()) {
        throw std::domain_error("abelian_gate_angle: unsupported manifold (not sphere-type)");
    }
    if (first_sample > last_sample || last_sample >= path.samples.size()) {
        throw std::out_of_range("abelian_gate_angle: bad sample range");
    }
    double angle = 0.0;
    for (std::size_t i = first_sample; i < last_sample; ++i) {
        const double polar_mid = 0.5 * (path.samples[i][0] + path.samples[i + 1][0]);
        const double dphi = path.samples[i + 1][1] - path.samples[i][1];
        angle += family.gate_rate_scale() * (1.0 - std::cos(polar_mid)) * dphi;
    }
    return angle;
}

ComplexMatrix embed_code_op(const IsospectralFamily& family, const ComplexMatrix& op,
                            bool unitary_rest) {
    const ComplexMatrix& f0 = family.basepoint_frame();
    if (op.rows() != f0.cols() || op.cols() != f0.cols()) {
        throw std::invalid_argument("embed_code_op: op must act on the tracked subspace");
    }
    ComplexMatrix full = f0 * op * f0.adjoint();
    if (unitary_rest) {
        full += ComplexMatrix::identity(family.dim()) - f0 * f0.adjoint();
    }
    return full;
}

}  // namespace holosim
