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

#include <stdexcept>
#include <variant>
#include <vector>

#include "holosim/holonomy.hpp"
#include "holosim/states.hpp"

namespace holosim {

/// Raised when the dense integrator detects a positivity violation (the
/// step size is too large for the requested accuracy).
struct integration_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Hamiltonian driven along a control path, mapped affinely onto [0, T].
struct DrivenHamiltonian {
    IsospectralFamily family;
    ParameterPath path;
};

/// Lindblad operators with rates folded in (L_k = sqrt(rate) x structure).
struct LindbladModel {
    std::variant<ComplexMatrix, DrivenHamiltonian> hamiltonian;
    std::vector<ComplexMatrix> lindblad_ops;
    double total_time = 1.0;

    std::size_t dim() const;
    bool driven() const { return std::holds_alternative<DrivenHamiltonian>(hamiltonian); }
    const DrivenHamiltonian& driven_source() const;
    ComplexMatrix h_at(double t) const;
    /// kappa = sum_k L_k^dag L_k
    ComplexMatrix kappa() const;
    void validate() const;
};

/// Right-hand side of the master equation:
/// (1/i)[H(t), rho] - 1/2 sum_k {L^dag L rho + rho L^dag L - 2 L rho L^dag}.
ComplexMatrix lindblad_rhs(const LindbladModel& model, const DensityMatrix& rho, double t);

/// Classical fourth-order (RK4) integration with per-step symmetrization.
/// Throws integration_error if an eigenvalue drops below -1e-6.
DensityMatrix evolve(const LindbladModel& model, const DensityMatrix& rho0, double t_final,
                     double dt);

struct KappaClassification {
    enum class Kind { identity, proportional_to_h, other };
    Kind kind = Kind::other;
    double alpha = 0.0;
};

/// Tests kappa = alpha * identity, then kappa = alpha * h0, within 1e-9
/// with least-squares alpha. `other` means the degeneracy structure of
/// the Hamiltonian is not guaranteed preserved.
KappaClassification classify_kappa(const LindbladModel& model, const ComplexMatrix& h0);

}  // namespace holosim
