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

#include "holosim/pauli.hpp"

#include <stdexcept>

namespace holosim {

ComplexMatrix pauli(int index) {
    const cplx i(0.0, 1.0);
    switch (index) {
        case 0:
            return ComplexMatrix::identity(2);
        case 1:
            return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}};
        case 2:
            return ComplexMatrix{{0.0, -i}, {i, 0.0}};
        case 3:
            return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}};
        default:
            throw std::invalid_argument("pauli: index must be 0..3");
    }
}

ComplexMatrix sigma_plus() { return ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}; }

ComplexMatrix sigma_minus() { return ComplexMatrix{{0.0, 0.0}, {1.0, 0.0}}; }

ComplexMatrix pauli_pair(int i, int j) { return tensor(pauli(i), pauli(j)); }

}  // namespace holosim
