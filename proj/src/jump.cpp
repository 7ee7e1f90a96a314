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

#include "holosim/jump.hpp"

#include <cmath>
#include <random>

namespace holosim {

namespace {

const cplx kImag(0.0, 1.0);

// Steps below this count get their substep propagators cached up front;
// trajectory kernels reuse them across records.
constexpr std::size_t kStepCacheLimit = 16384;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t trajectory_seed(std::uint64_t master, std::size_t index) {
    return splitmix64(master ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1)));
}

double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace

JumpScheme::JumpScheme(LindbladModel model, double dt, W0Form form)
    : model_(std::move(model)), dt_(dt), form_(form) {
    if (dt_ <= 0.0) throw std::invalid_argument("build_scheme: dt must be positive");
    model_.validate();
    const double ratio = model_.total_time / dt_;
    steps_ = static_cast<std::size_t>(std::llround(ratio));
    if (steps_ == 0) steps_ = 1;
    dt_ = model_.total_time / static_cast<double>(steps_);

    jump_ops_.reserve(model_.lindblad_ops.size());
    for (const auto& l : model_.lindblad_ops) {
        jump_ops_.push_back(std::sqrt(dt_) * l);
    }

    if (steps_ <= kStepCacheLimit) {
        step_cache_.reserve(steps_);
        for (std::size_t m = 0; m < steps_; ++m) {
            const double t_mid = (static_cast<double>(m) + 0.5) * dt_;
            step_cache_.push_back(form_ == W0Form::exact_exponential
                                      ? matexp((-kImag * dt_) * h_eff_at(t_mid))
                                      : ComplexMatrix::identity(dim()) -
                                            (kImag * dt_) * h_eff_at(t_mid));
        }
    }
}

ComplexMatrix JumpScheme::h_eff_at(double t) const {
    return model_.h_at(t) - (0.5 * kImag) * model_.kappa();
}

ComplexMatrix JumpScheme::step_propagator(std::size_t m) const {
    if (m >= steps_) throw std::out_of_range("step_propagator: step out of range");
    if (!step_cache_.empty()) return step_cache_[m];
    const double t_mid = (static_cast<double>(m) + 0.5) * dt_;
    return form_ == W0Form::exact_exponential
               ? matexp((-kImag * dt_) * h_eff_at(t_mid))
               : ComplexMatrix::identity(dim()) - (kImag * dt_) * h_eff_at(t_mid);
}

double JumpScheme::completeness_defect(double t, W0Form form) const {
    const ComplexMatrix heff = h_eff_at(t);
    const ComplexMatrix w0 = form == W0Form::exact_exponential
                                 ? matexp((-kImag * dt_) * heff)
                                 : ComplexMatrix::identity(dim()) - (kImag * dt_) * heff;
    ComplexMatrix sum = w0.adjoint() * w0;
    for (const auto& w : jump_ops_) sum += w.adjoint() * w;
    return hermitian_opnorm(sum - ComplexMatrix::identity(dim()));
}

double JumpScheme::completeness_bound(double t) const {
    const double hn = hermitian_opnorm(model_.h_at(t));
    const double kn = hermitian_opnorm(model_.kappa());
    const double b = hn + 0.5 * kn;
    return 2.0 * b * b * dt_ * dt_;
}

JumpScheme build_scheme(const LindbladModel& model, double dt, JumpScheme::W0Form form) {
    return JumpScheme(model, dt, form);
}

PureState nojump_propagate(const JumpScheme& scheme, const PureState& psi0, bool log_states,
                           std::vector<PureState>* states_log) {
    if (psi0.dim() != scheme.dim()) {
        throw std::invalid_argument("nojump_propagate: dimension mismatch");
    }
    if (std::abs(psi0.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("nojump_propagate: psi0 must be normalized");
    }
    PureState psi = psi0;
    if (log_states && states_log) states_log->push_back(psi);
    for (std::size_t m = 0; m < scheme.steps(); ++m) {
        psi = apply(scheme.step_propagator(m), psi);
        if (log_states && states_log) states_log->push_back(psi);
    }
    return psi;
}

namespace {

TrajectoryRecord propagate_placement(const JumpScheme& scheme, const PureState& psi0,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& jumps) {
    PureState psi = psi0;
    std::size_t next = 0;
    for (std::size_t m = 0; m < scheme.steps(); ++m) {
        if (next < jumps.size() && jumps[next].first == m) {
            psi = apply(scheme.jump_ops()[jumps[next].second], psi);
            ++next;
        } else {
            psi = apply(scheme.step_propagator(m), psi);
        }
    }
    TrajectoryRecord rec;
    rec.jump_sequence = jumps;
    rec.weight = psi.norm2();
    rec.final_state = std::move(psi);
    rec.source = TrajectoryRecord::Source::enumerated;
    return rec;
}

}  // namespace

std::vector<TrajectoryRecord> enumerate_trajectories(const JumpScheme& scheme,
                                                     const PureState& psi0, std::size_t max_jumps,
                                                     std::size_t budget, Execution exec) {
    if (psi0.dim() != scheme.dim()) {
        throw std::invalid_argument("enumerate_trajectories: dimension mismatch");
    }
    if (std::abs(psi0.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("enumerate_trajectories: psi0 must be normalized");
    }
    const std::size_t n_steps = scheme.steps();
    const std::size_t n_chan = scheme.channel_count();

    // Count sum_j C(N, j) K^j before generating anything.
    double count = 0.0;
    {
        double binom = 1.0, chan_pow = 1.0;
        for (std::size_t j = 0; j <= max_jumps; ++j) {
            count += binom * chan_pow;
            if (count > static_cast<double>(budget)) {
                throw budget_error("enumerate_trajectories: placement count exceeds budget");
            }
            binom *= static_cast<double>(n_steps - j) / static_cast<double>(j + 1);
            chan_pow *= static_cast<double>(n_chan);
        }
    }

    // Placement list in deterministic order: jump count ascending, step
    // combinations lexicographic, channel digits last-fastest.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> placements;
    placements.push_back({});
    std::vector<std::size_t> steps_combo;
    for (std::size_t j = 1; j <= max_jumps && n_chan > 0; ++j) {
        steps_combo.assign(j, 0);
        for (std::size_t i = 0; i < j; ++i) steps_combo[i] = i;
        if (j > n_steps) break;
        while (true) {
            std::vector<std::size_t> channels(j, 0);
            while (true) {
                std::vector<std::pair<std::size_t, std::size_t>> placement(j);
                for (std::size_t i = 0; i < j; ++i) placement[i] = {steps_combo[i], channels[i]};
                placements.push_back(std::move(placement));
                std::size_t d = j;
                while (d > 0 && ++channels[d - 1] == n_chan) channels[--d] = 0;
                if (d == 0) break;
            }
            // next step combination
            std::size_t i = j;
            while (i > 0 && steps_combo[i - 1] == n_steps - (j - i) - 1) --i;
            if (i == 0) break;
            ++steps_combo[i - 1];
            for (std::size_t k = i; k < j; ++k) steps_combo[k] = steps_combo[k - 1] + 1;
        }
    }

    std::vector<TrajectoryRecord> records(placements.size());
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long long idx = 0; idx < static_cast<long long>(placements.size()); ++idx) {
            records[static_cast<std::size_t>(idx)] =
                propagate_placement(scheme, psi0, placements[static_cast<std::size_t>(idx)]);
        }
    } else {
        for (std::size_t idx = 0; idx < placements.size(); ++idx) {
            records[idx] = propagate_placement(scheme, psi0, placements[idx]);
        }
    }
    return records;
}

namespace {

TrajectoryRecord sample_one(const JumpScheme& scheme, const PureState& psi0, std::uint64_t seed,
                            bool log_states) {
    std::mt19937_64 eng(seed);
    PureState psi = psi0;
    TrajectoryRecord rec;
    rec.source = TrajectoryRecord::Source::sampled;
    if (log_states) rec.states_log.emplace({psi});

    const std::size_t n_chan = scheme.channel_count();
    std::vector<PureState> candidates(n_chan + 1);
    std::vector<double> weights(n_chan + 1);

    for (std::size_t m = 0; m < scheme.steps(); ++m) {
        candidates[0] = apply(scheme.step_propagator(m), psi);
        weights[0] = candidates[0].norm2();
        double total = weights[0];
        for (std::size_t k = 0; k < n_chan; ++k) {
            candidates[k + 1] = apply(scheme.jump_ops()[k], psi);
            weights[k + 1] = candidates[k + 1].norm2();
            total += weights[k + 1];
        }
        if (!(total > 0.0)) {
            throw std::runtime_error("sample_trajectories: all step candidates vanished");
        }
        const double r = uniform01(eng) * total;
        std::size_t last_positive = 0;
        for (std::size_t k = 0; k <= n_chan; ++k) {
            if (weights[k] > 0.0) last_positive = k;
        }
        std::size_t pick = last_positive;  // rounding fallback
        double cum = 0.0;
        for (std::size_t k = 0; k <= n_chan; ++k) {
            cum += weights[k];
            if (weights[k] > 0.0 && r <= cum) {
                pick = k;
                break;
            }
        }
        if (pick > 0) rec.jump_sequence.emplace_back(m, pick - 1);
        psi = (1.0 / std::sqrt(weights[pick])) * candidates[pick];
        if (log_states) rec.states_log->push_back(psi);
    }
    rec.final_state = std::move(psi);
    rec.weight = rec.final_state.norm2();
    return rec;
}

}  // namespace

std::vector<TrajectoryRecord> sample_trajectories(const JumpScheme& scheme, const PureState& psi0,
                                                  std::size_t n_traj, std::uint64_t seed,
                                                  Execution exec, bool log_states) {
    if (n_traj == 0) throw std::invalid_argument("sample_trajectories: n_traj must be >= 1");
    if (psi0.dim() != scheme.dim()) {
        throw std::invalid_argument("sample_trajectories: dimension mismatch");
    }
    if (std::abs(psi0.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("sample_trajectories: psi0 must be normalized");
    }

    std::vector<TrajectoryRecord> records(n_traj);
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (long long i = 0; i < static_cast<long long>(n_traj); ++i) {
            records[static_cast<std::size_t>(i)] = sample_one(
                scheme, psi0, trajectory_seed(seed, static_cast<std::size_t>(i)), log_states);
        }
    } else {
        for (std::size_t i = 0; i < n_traj; ++i) {
            records[i] = sample_one(scheme, psi0, trajectory_seed(seed, i), log_states);
        }
    }
    return records;
}

DensityMatrix reconstruct_density(const std::vector<TrajectoryRecord>& records) {
    if (records.empty()) {
        throw std::invalid_argument("reconstruct_density: empty record list");
    }
    const auto source = records.front().source;
    const std::size_t dim = records.front().final_state.dim();
    ComplexMatrix rho = ComplexMatrix::zero(dim, dim);
    for (const auto& rec : records) {
        if (rec.source != source || rec.final_state.dim() != dim) {
            throw std::invalid_argument("reconstruct_density: mixed record kinds");
        }
        if (source == TrajectoryRecord::Source::enumerated) {
            rho += outer(rec.final_state);
        } else {
            rho += (1.0 / static_cast<double>(records.size())) *
                   outer(rec.final_state.normalized());
        }
    }
    return DensityMatrix(std::move(rho));
}

NoJumpSubspaceReport no_jump_subspace_report(const JumpScheme& scheme) {
    if (!scheme.model().driven()) {
        throw std::invalid_argument("no_jump_subspace_report: model must be path-driven");
    }
    const auto& src = scheme.model().driven_source();
    const IsospectralFamily& family = src.family;
    const std::size_t n = family.subspace_dim();

    // Evolve the whole tracked frame at once under H_eff, starting from
    // the local frame at the path's first sample.
    ComplexMatrix evolved = family.v_at(src.path.samples.front()) * family.basepoint_frame();
    for (std::size_t m = 0; m < scheme.steps(); ++m) {
        evolved = scheme.step_propagator(m) * evolved;
    }

    const ComplexMatrix frame_end = family.v_at(src.path.samples.back()) * family.basepoint_frame();

    NoJumpSubspaceReport rep;
    rep.subspace_map = frame_end.adjoint() * evolved;
    rep.holonomy_u = holonomy(family, src.path).u;

    const ComplexMatrix ortho =
        evolved - frame_end * rep.subspace_map;  // out-of-subspace remainder
    rep.leakage = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        double perp = 0.0, total = 0.0;
        for (std::size_t r = 0; r < family.dim(); ++r) {
            perp += std::norm(ortho.at(r, c));
            total += std::norm(evolved.at(r, c));
        }
        if (total > 0.0) rep.leakage = std::max(rep.leakage, std::sqrt(perp / total));
    }

    const auto cls = classify_kappa(scheme.model(), family.h0());
    rep.visibility.model_class = cls.kind;
    rep.visibility.magnitude = singular_values(rep.subspace_map).front();
    const double t = scheme.total_time();
    const double exponent = (cls.kind == KappaClassification::Kind::proportional_to_h)
                                ? cls.alpha * family.subspace_energy() * t / 2.0
                                : cls.alpha * t / 2.0;
    rep.visibility_model = std::exp(-exponent);

    const cplx dyn_phase = std::exp(-kImag * family.subspace_energy() * t);
    rep.distance_to_model =
        opnorm(rep.subspace_map - (rep.visibility_model * dyn_phase) * rep.holonomy_u);

    rep.completeness_defect = 0.0;
    for (int i = 0; i <= 16; ++i) {
        rep.completeness_defect = std::max(
            rep.completeness_defect, scheme.completeness_defect(t * static_cast<double>(i) / 16.0));
    }
    rep.completeness_constant = rep.completeness_defect / (scheme.dt() * scheme.dt());
    return rep;
}

}  // namespace holosim
