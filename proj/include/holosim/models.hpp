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

#include "holosim/holonomy.hpp"

namespace holosim {

/// Spin-1/2 sphere family: H0 = sigma3/2, sandwich frame rule over
/// (polar, azimuth), tracked level E = +1/2. Abelian; a full latitude
/// turn picks up the Berry phase -Omega/2, Omega = 2 pi (1 - cos polar).
IsospectralFamily spin_half_family();

/// Four-level gate family: H0 = diag(0,0,0,gap), three-fold degenerate
/// zero level, tracked code {e0,e1}. The bright eigenvector of
/// sigma_axis (axis 1 or 2) is rotated against the excited state by the
/// sandwich rule; a latitude turn realizes exp(i (Omega/4) sigma_axis)
/// on the code, times a global U(1) phase.
IsospectralFamily single_qubit_gate_family(int axis, double gap = 1.0);

/// Six-level two-qubit family: 4-dim zero level (the code), two excited
/// states at `gap`, each paired with one +1 eigenvector of
/// sigma1 (x) sigma1. A latitude turn realizes
/// exp(i (Omega/4) sigma1 (x) sigma1) on the code, times a global phase.
IsospectralFamily two_qubit_gate_family(double gap = 1.0);

/// Polar angle whose full latitude turn yields the requested gate angle
/// for this family's gate_rate_scale.
double polar_for_gate_angle(const IsospectralFamily& family, double angle);

/// Full latitude turn realizing gate angle `angle` with `segments` steps.
ParameterPath gate_loop(const IsospectralFamily& family, double angle, std::size_t segments);

/// Abelianized gate angle accumulated between two samples of a
/// sphere-family path (midpoint rule, matching the holonomy
/// discretization). Throws std::domain_error for non-sphere families.
double abelian_gate_angle(const IsospectralFamily& family, const ParameterPath& path,
                          std::size_t first_sample, std::size_t last_sample);

/// Lift a code-space operator to the full Hilbert space: acts as `op` on
/// the tracked frame, and as identity (unitary_rest) or zero elsewhere.
ComplexMatrix embed_code_op(const IsospectralFamily& family, const ComplexMatrix& op,
                            bool unitary_rest);

}  // namespace holosim
