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

#include "holosim/holonomy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace holosim {

namespace {

const cplx kImag(0.0, 1.0);

double vec_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

ComplexMatrix gram(const ComplexMatrix& frame) {
    return frame.adjoint() * frame;
}

}  // namespace

IsospectralFamily IsospectralFamily::create(Spec spec) {
    if (!spec.h0.is_hermitian(1e-10)) {
        throw std::domain_error("IsospectralFamily: h0 must be hermitian");
    }
    for (const auto& g : spec.generators) {
        if (!g.is_hermitian(1e-10) || g.rows() != spec.h0.rows()) {
            throw std::domain_error("IsospectralFamily: generators must be hermitian, same dim");
        }
    }
    for (const auto& f : spec.frame_rule) {
        if (f.generator >= spec.generators.size()) {
            throw std::invalid_argument("IsospectralFamily: frame factor names unknown generator");
        }
    }

    IsospectralFamily fam(std::move(spec));
    const Spec& s = fam.spec_;
    const std::size_t n = s.h0.rows();

    if (s.basepoint_frame) {
        const ComplexMatrix& f = *s.basepoint_frame;
        if (f.rows() != n || f.cols() == 0 || f.cols() > n) {
            throw std::invalid_argument("IsospectralFamily: bad explicit frame shape");
        }
        if ((gram(f) - ComplexMatrix::identity(f.cols())).max_abs() > 1e-9) {
            throw std::domain_error("IsospectralFamily: explicit frame not orthonormal");
        }
        if ((s.h0 * f - f * (s.subspace_energy * ComplexMatrix::identity(f.cols()))).max_abs() >
            1e-9) {
            throw std::domain_error(
                "IsospectralFamily: explicit frame is not an eigenframe at the selected energy");
        }
        fam.frame0_ = f;
        return fam;
    }

    const auto eig = eig_hermitian(s.h0);
    const auto clusters = cluster_eigenvalues(eig.eigenvalues, s.cluster_tol);
    const EigenCluster* level = nullptr;
    for (const auto& cl : clusters) {
        if (std::abs(cl.value - s.subspace_energy) <= std::max(s.cluster_tol, 1e-8)) {
            level = &cl;
            break;
        }
    }
    if (!level) {
        throw std::domain_error("IsospectralFamily: selected energy not found in spectrum");
    }

    std::vector<std::size_t> columns = level->indices;
    if (s.tracked_columns) {
        std::vector<std::size_t> picked;
        for (std::size_t t : *s.tracked_columns) {
            if (t >= columns.size()) {
                throw std::invalid_argument("IsospectralFamily: tracked column out of range");
            }
            picked.push_back(columns[t]);
        }
        columns = picked;
    }

    fam.frame0_ = ComplexMatrix(n, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) {
            fam.frame0_.at(i, j) = eig.eigenvectors.at(i, columns[j]);
        }
    return fam;
}

std::size_t IsospectralFamily::coord_count() const {
    std::size_t c = 0;
    for (const auto& f : spec_.frame_rule) c = std::max(c, f.coord + 1);
    return c;
}

namespace {

struct FrameMotion {
    ComplexMatrix v;
    ComplexMatrix v_dot;
};

FrameMotion frame_motion(const IsospectralFamily::Spec& spec, std::size_t dim,
                         const std::vector<double>& lambda, const std::vector<double>* dir) {
    const auto& rule = spec.frame_rule;
    std::vector<ComplexMatrix> factors;
    factors.reserve(rule.size());
    for (const auto& f : rule) {
        factors.push_back(matexp((-kImag * f.sign * lambda.at(f.coord)) * spec.generators[f.generator]));
    }

    FrameMotion out;
    out.v = ComplexMatrix::identity(dim);
    for (const auto& m : factors) out.v = out.v * m;
    if (!dir) return out;

    // prefix[k] = M_0 ... M_{k-1}, suffix[k] = M_{k+1} ... M_end
    std::vector<ComplexMatrix> prefix(rule.size() + 1), suffix(rule.size() + 1);
    prefix[0] = ComplexMatrix::identity(dim);
    for (std::size_t k = 0; k < rule.size(); ++k) prefix[k + 1] = prefix[k] * factors[k];
    suffix[rule.size()] = ComplexMatrix::identity(dim);
    for (std::size_t k = rule.size(); k-- > 0;) suffix[k] = factors[k] * suffix[k + 1];

    out.v_dot = ComplexMatrix::zero(dim, dim);
    for (std::size_t k = 0; k < rule.size(); ++k) {
        const double rate = rule[k].sign * dir->at(rule[k].coord);
        if (rate == 0.0) continue;
        out.v_dot += prefix[k] * ((-kImag * rate) * spec.generators[rule[k].generator]) *
                     factors[k] * suffix[k + 1];
    }
    return out;
}

}  // namespace

ComplexMatrix IsospectralFamily::v_at(const std::vector<double>& lambda) const {
    return frame_motion(spec_, dim(), lambda, nullptr).v;
}

ComplexMatrix IsospectralFamily::v_dot(const std::vector<double>& lambda,
                                       const std::vector<double>& dir) const {
    return frame_motion(spec_, dim(), lambda, &dir).v_dot;
}

ComplexMatrix IsospectralFamily::h_at(const std::vector<double>& lambda) const {
    const ComplexMatrix v = v_at(lambda);
    return v * spec_.h0 * v.adjoint();
}

void ParameterPath::validate() const {
    if (samples.size() < 2) throw std::invalid_argument("ParameterPath: need at least 2 samples");
    const std::size_t d = samples.front().size();
    for (const auto& s : samples) {
        if (s.size() != d) throw std::invalid_argument("ParameterPath: ragged samples");
    }
    if (closed && samples.front() != samples.back()) {
        throw std::invalid_argument("ParameterPath: closed path must end exactly at its start");
    }
    for (std::size_t i = 0; i < markers.size(); ++i) {
        if (markers[i] == 0 || markers[i] >= samples.size() - 1 ||
            (i > 0 && markers[i] <= markers[i - 1])) {
            throw std::invalid_argument("ParameterPath: markers must be strictly increasing interior samples");
        }
    }
}

std::vector<double> ParameterPath::point_at(double t) const {
    const double x = std::clamp(t, 0.0, 1.0) * static_cast<double>(samples.size() - 1);
    const std::size_t i = std::min(static_cast<std::size_t>(x), samples.size() - 2);
    const double f = x - static_cast<double>(i);
    std::vector<double> p(samples[i].size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        p[k] = (1.0 - f) * samples[i][k] + f * samples[i + 1][k];
    }
    return p;
}

ParameterPath ParameterPath::subpath(std::size_t first_sample, std::size_t last_sample) const {
    if (first_sample >= last_sample || last_sample >= samples.size()) {
        throw std::out_of_range("ParameterPath::subpath: bad sample range");
    }
    ParameterPath p;
    p.samples.assign(samples.begin() + static_cast<std::ptrdiff_t>(first_sample),
                     samples.begin() + static_cast<std::ptrdiff_t>(last_sample) + 1);
    p.closed = p.samples.front() == p.samples.back();
    return p;
}

ParameterPath ParameterPath::reversed() const {
    ParameterPath p = *this;
    std::reverse(p.samples.begin(), p.samples.end());
    p.markers.clear();
    return p;
}

ParameterPath ParameterPath::latitude_loop(double polar, std::size_t segments, double phi0,
                                           double phi1) {
    if (segments < 1) throw std::invalid_argument("latitude_loop: need at least one segment");
    ParameterPath p;
    p.samples.reserve(segments + 1);
    for (std::size_t k = 0; k <= segments; ++k) {
        const double phi = phi0 + (phi1 - phi0) * static_cast<double>(k) / static_cast<double>(segments);
        p.samples.push_back({polar, phi});
    }
    // A full turn closes the frame but not the coordinates; kept open.
    p.closed = false;
    return p;
}

LocalFrame frame_at(const IsospectralFamily& family, const std::vector<double>& lambda) {
    const ComplexMatrix f = family.v_at(lambda) * family.basepoint_frame();
    LocalFrame out;
    out.vectors.reserve(f.cols());
    for (std::size_t j = 0; j < f.cols(); ++j) {
        PureState s(f.rows());
        for (std::size_t i = 0; i < f.rows(); ++i) s.amplitudes[i] = f.at(i, j);
        out.vectors.push_back(std::move(s));
    }
    out.orthonormal = (gram(f) - ComplexMatrix::identity(f.cols())).max_abs() <= 1e-9;
    return out;
}

ConnectionSample connection_at(const IsospectralFamily& family, const std::vector<double>& lambda,
                               const std::vector<double>& direction, DerivativeMode mode) {
    const std::size_t n = family.subspace_dim();
    const ComplexMatrix& f0 = family.basepoint_frame();

    ConnectionSample out;
    const double len = vec_norm(direction);
    if (len == 0.0) {
        out.a = ComplexMatrix::zero(n, n);
        const ComplexMatrix frame = family.v_at(lambda) * f0;
        out.p = gram(frame);
        return out;
    }

    if (mode == DerivativeMode::analytic) {
        const ComplexMatrix v = family.v_at(lambda);
        const ComplexMatrix vd = family.v_dot(lambda, direction);
        out.a = f0.adjoint() * v.adjoint() * vd * f0;
        out.p = gram(v * f0);
        return out;
    }

    // Central finite differences along the normalized direction, rescaled
    // back to the requested magnitude.
    const double h = kFrameDerivativeStep;
    std::vector<double> lp = lambda, lm = lambda;
    for (std::size_t k = 0; k < lambda.size(); ++k) {
        lp[k] += h * direction[k] / len;
        lm[k] -= h * direction[k] / len;
    }
    const ComplexMatrix frame = family.v_at(lambda) * f0;
    const ComplexMatrix dframe =
        (len / (2.0 * h)) * (family.v_at(lp) * f0 - family.v_at(lm) * f0);
    out.a = frame.adjoint() * dframe;
    out.p = gram(frame);
    return out;
}

namespace {

/// One midpoint transport factor for the segment [from, to].
ComplexMatrix segment_factor(const IsospectralFamily& family, const std::vector<double>& from,
                             const std::vector<double>& to, DerivativeMode mode,
                             bool* rank_deficient) {
    std::vector<double> mid(from.size()), dir(from.size());
    for (std::size_t k = 0; k < from.size(); ++k) {
        mid[k] = 0.5 * (from[k] + to[k]);
        dir[k] = to[k] - from[k];
    }
    const ConnectionSample cs = connection_at(family, mid, dir, mode);
    const std::size_t n = cs.a.rows();
    if ((cs.p - ComplexMatrix::identity(n)).max_abs() <= 1e-12) {
        return matexp(-cs.a);
    }
    const PseudoInverse pinv = pseudo_inverse_hermitian(cs.p);
    if (pinv.rank < n && rank_deficient) *rank_deficient = true;
    return matexp(-(cs.a * pinv.matrix));
}

ComplexMatrix transport_range(const IsospectralFamily& family, const ParameterPath& path,
                              std::size_t first, std::size_t last, DerivativeMode mode,
                              bool* rank_deficient) {
    ComplexMatrix u = ComplexMatrix::identity(family.subspace_dim());
    for (std::size_t i = first; i < last; ++i) {
        u = segment_factor(family, path.samples[i], path.samples[i + 1], mode, rank_deficient) * u;
    }
    return u;
}

}  // namespace

HolonomyResult holonomy(const IsospectralFamily& family, const ParameterPath& path,
                        DerivativeMode mode) {
    path.validate();
    HolonomyResult res;
    res.step_count = path.segment_count();
    res.path_label = path.label;
    res.u = transport_range(family, path, 0, path.segment_count(), mode, &res.rank_deficient);
    return res;
}

HolonomyResult holonomy_with_jumps(const IsospectralFamily& family, const ParameterPath& path,
                                   const std::vector<JumpInsertion>& jumps, DerivativeMode mode) {
    path.validate();
    const std::size_t n = family.subspace_dim();
    for (std::size_t l = 0; l < jumps.size(); ++l) {
        if (jumps[l].sample_index == 0 || jumps[l].sample_index >= path.samples.size() - 1) {
            throw std::out_of_range("holonomy_with_jumps: jump index outside path interior");
        }
        if (l > 0 && jumps[l].sample_index <= jumps[l - 1].sample_index) {
            throw std::invalid_argument("holonomy_with_jumps: jump indices must increase");
        }
        if (jumps[l].op.rows() != n || jumps[l].op.cols() != n) {
            throw std::invalid_argument("holonomy_with_jumps: jump op must act on the subspace");
        }
        if (jumps[l].alpha <= 0.0) {
            throw std::invalid_argument("holonomy_with_jumps: alpha must be positive");
        }
    }

    bool unitary_branch = true;
    for (const auto& j : jumps) {
        const ComplexMatrix wtw = j.op.adjoint() * j.op;
        const ComplexMatrix target = j.alpha * ComplexMatrix::identity(n);
        if ((wtw - target).max_abs() > 1e-8 * std::max(1.0, j.alpha)) {
            unitary_branch = false;
            break;
        }
    }

    HolonomyResult res;
    res.step_count = path.segment_count();
    res.path_label = path.label;

    if (unitary_branch) {
        // Segment transports with accumulated conjugation: segment l+1
        // enters as C_l^dag T C_l, C_l the product of the first l
        // normalized jumps. Reproduces the alternating-angle law for
        // anticommuting jumps and is exactly the transport seen by the
        // jumped frame.
        ComplexMatrix u = ComplexMatrix::identity(n);
        ComplexMatrix conj_acc = ComplexMatrix::identity(n);
        std::size_t cursor = 0;
        for (const auto& j : jumps) {
            const ComplexMatrix t =
                transport_range(family, path, cursor, j.sample_index, mode, &res.rank_deficient);
            u = conj_acc.adjoint() * t * conj_acc * u;
            conj_acc = (1.0 / std::sqrt(j.alpha)) * j.op * conj_acc;
            cursor = j.sample_index;
        }
        const ComplexMatrix t =
            transport_range(family, path, cursor, path.segment_count(), mode, &res.rank_deficient);
        res.u = conj_acc.adjoint() * t * conj_acc * u;
        return res;
    }

    // sigma±-like branch: the jumped frame has a singular Gram matrix, so
    // no conjugated connection exists. Compose the raw transported map
    // with ops normalized by their top singular value and flag it.
    res.rank_deficient = true;
    ComplexMatrix u = ComplexMatrix::identity(n);
    std::size_t cursor = 0;
    for (const auto& j : jumps) {
        u = transport_range(family, path, cursor, j.sample_index, mode, nullptr) * u;
        const double smax = singular_values(j.op).front();
        if (smax <= 0.0) throw std::invalid_argument("holonomy_with_jumps: zero jump operator");
        u = ((1.0 / smax) * j.op) * u;
        cursor = j.sample_index;
    }
    res.u = transport_range(family, path, cursor, path.segment_count(), mode, nullptr) * u;
    return res;
}

ComplexMatrix transport_jumped_frame(const IsospectralFamily& family, const ParameterPath& path,
                                     const std::vector<JumpInsertion>& jumps) {
    path.validate();
    const std::size_t n = family.subspace_dim();
    const ComplexMatrix& f0 = family.basepoint_frame();
    const double h = kFrameDerivativeStep;

    // Physical frame columns, jumps included; starts as the local frame
    // at the path's first sample.
    ComplexMatrix frame = family.v_at(path.samples.front()) * f0;
    std::size_t cursor = 0;

    auto run_segment = [&](std::size_t first, std::size_t last) {
        if (first == last) return;
        // Drag the current frame with V(lambda) V(seg start)^-1 and
        // parallel-transport the coefficients against finite-difference
        // connections of the explicit vectors.
        const ComplexMatrix q = family.v_at(path.samples[first]).adjoint() * frame;
        ComplexMatrix s = ComplexMatrix::identity(n);
        for (std::size_t i = first; i < last; ++i) {
            const auto& from = path.samples[i];
            const auto& to = path.samples[i + 1];
            std::vector<double> mid(from.size()), dir(from.size());
            for (std::size_t k = 0; k < from.size(); ++k) {
                mid[k] = 0.5 * (from[k] + to[k]);
                dir[k] = to[k] - from[k];
            }
            const double len = vec_norm(dir);
            if (len == 0.0) continue;
            std::vector<double> lp = mid, lm = mid;
            for (std::size_t k = 0; k < mid.size(); ++k) {
                lp[k] += h * dir[k] / len;
                lm[k] -= h * dir[k] / len;
            }
            const ComplexMatrix chi = family.v_at(mid) * q;
            const ComplexMatrix dchi =
                (len / (2.0 * h)) * ((family.v_at(lp) - family.v_at(lm)) * q);
            const ComplexMatrix a = chi.adjoint() * dchi;
            const ComplexMatrix p = gram(chi);
            const PseudoInverse pinv = pseudo_inverse_hermitian(p);
            s = matexp(-(a * pinv.matrix)) * s;
        }
        frame = family.v_at(path.samples[last]) * q * s;
    };

    for (const auto& j : jumps) {
        if (j.sample_index == 0 || j.sample_index >= path.samples.size() - 1) {
            throw std::out_of_range("transport_jumped_frame: jump index outside path interior");
        }
        run_segment(cursor, j.sample_index);
        cursor = j.sample_index;
        // Jump acting on the instantaneous code subspace.
        const ComplexMatrix v = family.v_at(path.samples[cursor]);
        const ComplexMatrix w_phys = v * (f0 * j.op * f0.adjoint()) * v.adjoint();
        frame = w_phys * frame;
    }
    run_segment(cursor, path.segment_count());
    const ComplexMatrix frame_end = family.v_at(path.samples.back()) * f0;
    return frame_end.adjoint() * frame;
}

HolonomyResult gauge_transform(const HolonomyResult& result, const ComplexMatrix& g) {
    if (!g.is_square() || g.rows() != result.u.rows() || !g.is_unitary(1e-8)) {
        throw std::domain_error("gauge_transform: g must be a unitary of matching dimension");
    }
    HolonomyResult out = result;
    out.u = g * result.u * g.adjoint();
    return out;
}

double phase_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    const cplx t = (b.adjoint() * a).trace();
    const cplx phase = (std::abs(t) == 0.0) ? cplx(1.0, 0.0) : t / std::abs(t);
    return (a - phase * b).frobenius_norm();
}

double gate_fidelity(const ComplexMatrix& ideal, const ComplexMatrix& actual) {
    if (ideal.rows() != actual.rows() || ideal.cols() != actual.cols()) {
        throw std::invalid_argument("gate_fidelity: shape mismatch");
    }
    const double f =
        std::abs((ideal.adjoint() * actual).trace()) / static_cast<double>(ideal.rows());
    return std::min(f, 1.0);
}

}  // namespace holosim
