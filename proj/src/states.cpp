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

#include "holosim/states.hpp"

#include <cmath>
#include <stdexcept>

namespace holosim {

PureState PureState::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw std::invalid_argument("PureState::basis: index out of range");
    PureState s(dim);
    s.amplitudes[index] = 1.0;
    return s;
}

double PureState::norm2() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return s;
}

double PureState::norm() const { return std::sqrt(norm2()); }

PureState PureState::normalized() const {
    const double n = norm();
    if (n == 0.0) throw std::invalid_argument("PureState: cannot normalize zero state");
    PureState s = *this;
    for (auto& a : s.amplitudes) a /= n;
    return s;
}

cplx inner(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    return s;
}

PureState apply(const ComplexMatrix& m, const PureState& psi) {
    if (m.cols() != psi.dim()) throw std::invalid_argument("apply: dimension mismatch");
    PureState out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        cplx s = 0.0;
        for (std::size_t c = 0; c < m.cols(); ++c) s += m.at(r, c) * psi.amplitudes[c];
        out.amplitudes[r] = s;
    }
    return out;
}

ComplexMatrix outer(const PureState& psi) {
    ComplexMatrix m(psi.dim(), psi.dim());
    for (std::size_t r = 0; r < psi.dim(); ++r)
        for (std::size_t c = 0; c < psi.dim(); ++c) {
            m.at(r, c) = psi.amplitudes[r] * std::conj(psi.amplitudes[c]);
        }
    return m;
}

PureState operator*(cplx scalar, PureState psi) {
    for (auto& a : psi.amplitudes) a *= scalar;
    return psi;
}

PureState operator+(PureState a, const PureState& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("state addition: dimension mismatch");
    for (std::size_t i = 0; i < a.dim(); ++i) a.amplitudes[i] += b.amplitudes[i];
    return a;
}

PureState operator-(PureState a, const PureState& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("state subtraction: dimension mismatch");
    for (std::size_t i = 0; i < a.dim(); ++i) a.amplitudes[i] -= b.amplitudes[i];
    return a;
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : matrix(std::move(m)) {
    if (!matrix.is_square()) throw std::invalid_argument("DensityMatrix: matrix not square");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) { return DensityMatrix(outer(psi)); }

double DensityMatrix::min_eigenvalue() const {
    const auto eig = eig_hermitian(ComplexMatrix(0.5 * (matrix + matrix.adjoint())));
    return eig.eigenvalues.front();
}

bool DensityMatrix::is_valid() const {
    return matrix.is_hermitian(1e-10) && min_eigenvalue() >= -1e-8;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
    ComplexMatrix diff = a.matrix - b.matrix;
    diff = 0.5 * (diff + diff.adjoint());  // strip hermiticity dust before eig
    const auto eig = eig_hermitian(diff);
    double sum = 0.0;
    for (double ev : eig.eigenvalues) sum += std::abs(ev);
    return 0.5 * sum;
}

}  // namespace holosim
