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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "holosim/lindblad.hpp"

namespace holosim {

struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Kernels exist in a serial reference form and an OpenMP form; both
/// produce bit-identical output (fixed per-trajectory seeding, results
/// stored by index).
enum class Execution { serial, parallel };

/// Discrete jump decomposition of a Lindblad model: W_0 = no-jump step,
/// W_k = sqrt(dt) L_k, steps N = T/dt. The no-jump step defaults to the
/// exact substep exponential of the effective Hamiltonian; the literal
/// first-order form 1 - i H_eff dt is kept behind a comparison flag.
class JumpScheme {
   public:
    enum class W0Form { exact_exponential, first_order };

    JumpScheme(LindbladModel model, double dt, W0Form form);

    const LindbladModel& model() const { return model_; }
    double dt() const { return dt_; }
    double total_time() const { return model_.total_time; }
    std::size_t steps() const { return steps_; }
    std::size_t dim() const { return model_.dim(); }
    W0Form w0_form() const { return form_; }
    std::size_t channel_count() const { return jump_ops_.size(); }
    const std::vector<ComplexMatrix>& jump_ops() const { return jump_ops_; }

    /// H - (i/2) sum L^dag L at time t.
    ComplexMatrix h_eff_at(double t) const;
    /// No-jump substep propagator for step m (midpoint-sampled H_eff).
    ComplexMatrix step_propagator(std::size_t m) const;

    /// || sum_k W_k^dag W_k - 1 ||_2 at time t, with the first-order W_0
    /// (the literal decomposition) or the exact-exponential one.
    double completeness_defect(double t, W0Form form = W0Form::first_order) const;
    /// 2 (||H|| + ||kappa||/2)^2 dt^2, the defect bound.
    double completeness_bound(double t) const;

   private:
    LindbladModel model_;
    double dt_;
    std::size_t steps_;
    W0Form form_;
    std::vector<ComplexMatrix> jump_ops_;
    std::vector<ComplexMatrix> step_cache_;  // filled when steps are few
};

JumpScheme build_scheme(const LindbladModel& model, double dt,
                        JumpScheme::W0Form form = JumpScheme::W0Form::exact_exponential);

struct TrajectoryRecord {
    enum class Source { enumerated, sampled };

    std::vector<std::pair<std::size_t, std::size_t>> jump_sequence;  // (step m, channel k)
    PureState final_state;  // non-normalized for enumeration, normalized for sampling
    double weight = 0.0;
    Source source = Source::enumerated;
    std::optional<std::vector<PureState>> states_log;
};

/// Evolve psi0 under the effective Hamiltonian over [0, T]; returns the
/// non-normalized state (norm^2 = no-jump probability).
PureState nojump_propagate(const JumpScheme& scheme, const PureState& psi0, bool log_states = false,
                           std::vector<PureState>* states_log = nullptr);

/// Deterministic enumeration of all jump placements with at most
/// max_jumps jumps; weights follow the non-normalized state norms.
/// Throws budget_error when the record count would exceed `budget`.
std::vector<TrajectoryRecord> enumerate_trajectories(const JumpScheme& scheme,
                                                     const PureState& psi0, std::size_t max_jumps,
                                                     std::size_t budget = 2000000,
                                                     Execution exec = Execution::parallel);

/// Monte Carlo unraveling; per-trajectory stream seed is
/// splitmix64(seed XOR 0x9E3779B97F4A7C15 * (index+1)) feeding a
/// mt19937_64, so results are reproducible and independent of the
/// execution policy. With log_states the full per-step chain is kept on
/// each record.
std::vector<TrajectoryRecord> sample_trajectories(const JumpScheme& scheme, const PureState& psi0,
                                                  std::size_t n_traj, std::uint64_t seed,
                                                  Execution exec = Execution::parallel,
                                                  bool log_states = false);

/// Incoherent sum of the trajectory projectors: enumerated records are
/// summed as-is (trace <= 1 reports the truncation deficit), sampled
/// records are averaged after normalization.
DensityMatrix reconstruct_density(const std::vector<TrajectoryRecord>& records);

struct VisibilityFactor {
    double magnitude = 1.0;
    KappaClassification::Kind model_class = KappaClassification::Kind::identity;
};

/// No-jump propagator restricted to the tracked subspace of a driven
/// model, compared against visibility x dynamical phase x holonomy.
struct NoJumpSubspaceReport {
    ComplexMatrix subspace_map;      // <phi_r(end) | evolved psi0_c>
    ComplexMatrix holonomy_u;        // closed-system transport of the same path
    double leakage = 0.0;            // worst relative out-of-subspace norm at the endpoint
    VisibilityFactor visibility;     // measured magnitude (largest singular value)
    double visibility_model = 1.0;   // e^{-alpha T/2} or e^{-alpha E T/2}
    double distance_to_model = 0.0;  // || M - vis * e^{-iET} * U_C ||_2
    double completeness_defect = 0.0;
    double completeness_constant = 0.0;  // defect / dt^2
};

NoJumpSubspaceReport no_jump_subspace_report(const JumpScheme& scheme);

}  // namespace holosim
