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

// Compares the serial reference trajectory kernels against the OpenMP
// ones on a driven dephasing model and reports throughput and agreement.

#include <chrono>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "holosim/jump.hpp"
#include "holosim/models.hpp"
#include "holosim/pauli.hpp"

using namespace holosim;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_state_diff(const std::vector<TrajectoryRecord>& a,
                      const std::vector<TrajectoryRecord>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& x = a[i].final_state.amplitudes;
        const auto& y = b[i].final_state.amplitudes;
        for (std::size_t k = 0; k < x.size(); ++k) m = std::max(m, std::abs(x[k] - y[k]));
    }
    return m;
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t n_traj = 4000;
    std::size_t steps = 400;
    if (argc > 1) n_traj = std::stoul(argv[1]);
    if (argc > 2) steps = std::stoul(argv[2]);

    const IsospectralFamily family = single_qubit_gate_family(1, 1.0);
    LindbladModel model;
    model.hamiltonian = DrivenHamiltonian{family, gate_loop(family, 0.7, 64)};
    model.lindblad_ops = {embed_code_op(family, pauli(3), true)};
    model.total_time = 1.0;
    const JumpScheme scheme = build_scheme(model, model.total_time / static_cast<double>(steps));

    PureState psi0(family.dim());
    psi0.amplitudes[0] = 1.0;

#ifdef _OPENMP
    std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "threads: 1 (OpenMP disabled)\n";
#endif
    std::cout << "trajectories: " << n_traj << ", steps: " << scheme.steps() << "\n";

    auto t0 = std::chrono::steady_clock::now();
    const auto serial = sample_trajectories(scheme, psi0, n_traj, 7, Execution::serial);
    const double t_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const auto parallel = sample_trajectories(scheme, psi0, n_traj, 7, Execution::parallel);
    const double t_parallel = seconds_since(t0);

    std::cout << "serial:   " << t_serial << " s  ("
              << static_cast<double>(n_traj) / t_serial << " traj/s)\n";
    std::cout << "parallel: " << t_parallel << " s  ("
              << static_cast<double>(n_traj) / t_parallel << " traj/s)\n";
    std::cout << "speedup:  " << t_serial / t_parallel << "x\n";
    std::cout << "max state difference: " << max_state_diff(serial, parallel) << "\n";
    return max_state_diff(serial, parallel) == 0.0 ? 0 : 1;
}
