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

#include "holosim/matrix.hpp"

namespace holosim {

/// pauli(0) = identity, pauli(1..3) = sigma_x, sigma_y, sigma_z.
ComplexMatrix pauli(int index);

/// sigma_plus = (sigma1 + i sigma2)/2 = |0><1|, raises the sigma3 eigenvalue.
ComplexMatrix sigma_plus();
/// sigma_minus = (sigma1 - i sigma2)/2 = |1><0|.
ComplexMatrix sigma_minus();

/// pauli(i) (x) pauli(j), 4x4.
ComplexMatrix pauli_pair(int i, int j);

}  // namespace holosim
