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

#include <vector>

#include "holosim/matrix.hpp"

namespace holosim {

/// Complex state vector. Trajectory states are deliberately stored
/// non-normalized; norm() is exact.
struct PureState {
    std::vector<cplx> amplitudes;

    PureState() = default;
    explicit PureState(std::size_t dim) : amplitudes(dim, cplx(0.0, 0.0)) {}
    explicit PureState(std::vector<cplx> amps) : amplitudes(std::move(amps)) {}

    static PureState basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return amplitudes.size(); }
    double norm2() const;
    double norm() const;
    PureState normalized() const;

    friend bool operator==(const PureState& a, const PureState& b) = default;
};

/// <a|b>, conjugating the first argument.
cplx inner(const PureState& a, const PureState& b);

PureState apply(const ComplexMatrix& m, const PureState& psi);

/// |psi><psi|
ComplexMatrix outer(const PureState& psi);

PureState operator*(cplx scalar, PureState psi);
PureState operator+(PureState a, const PureState& b);
PureState operator-(PureState a, const PureState& b);

struct DensityMatrix {
    ComplexMatrix matrix;

    DensityMatrix() = default;
    explicit DensityMatrix(ComplexMatrix m);
    static DensityMatrix from_pure(const PureState& psi);

    std::size_t dim() const { return matrix.rows(); }
    double trace_real() const { return matrix.trace().real(); }
    double purity() const { return (matrix * matrix).trace().real(); }
    double min_eigenvalue() const;

    /// Hermitian within 1e-10 and min eigenvalue >= -1e-8.
    bool is_valid() const;
};

/// (1/2)||a-b||_1 via the eigenvalues of the hermitian difference.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace holosim
