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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "holosim/matrix.hpp"
#include "holosim/states.hpp"

namespace holosim {

/// One factor of the frame rule: exp(-i * sign * lambda[coord] * G[generator]).
/// The frame unitary V(lambda) is the ordered product of the factors,
/// leftmost first.
struct FrameFactor {
    std::size_t generator = 0;
    std::size_t coord = 0;
    double sign = 1.0;
};

/// An isospectral Hamiltonian family H(lambda) = V(lambda) H0 V(lambda)^dag
/// together with the tracked degenerate subspace of H0.
///
/// The frame rule must satisfy V = identity whenever every coordinate it
/// touches vanishes, so the frame is single valued at the root point. The
/// sandwich rule e^{-i phi G3} e^{-i theta G2} e^{+i phi G3} used by the
/// built-in sphere families has this property for theta = 0.
class IsospectralFamily {
   public:
    struct Spec {
        ComplexMatrix h0;
        std::vector<ComplexMatrix> generators;
        std::vector<FrameFactor> frame_rule;
        double subspace_energy = 0.0;
        // Restrict the tracked frame to these columns of the level
        // eigenbasis (default: the whole level).
        std::optional<std::vector<std::size_t>> tracked_columns;
        // Explicit basepoint frame (columns); must be orthonormal
        // eigenvectors of h0 at subspace_energy. Overrides the
        // eigensolver-chosen basis.
        std::optional<ComplexMatrix> basepoint_frame;
        double cluster_tol = 1e-8;
        // Sphere-type metadata: lambda = (polar, azimuth) and the abelian
        // gate angle accumulates as gate_rate_scale * (1 - cos polar) * d azimuth.
        bool sphere_type = false;
        double gate_rate_scale = 0.0;
        std::string name;
    };

    static IsospectralFamily create(Spec spec);

    /// Empty family; usable only as a placeholder before assignment.
    IsospectralFamily() = default;

    std::size_t dim() const { return spec_.h0.rows(); }
    std::size_t subspace_dim() const { return frame0_.cols(); }
    std::size_t coord_count() const;
    double subspace_energy() const { return spec_.subspace_energy; }
    bool sphere_type() const { return spec_.sphere_type; }
    double gate_rate_scale() const { return spec_.gate_rate_scale; }
    const std::string& name() const { return spec_.name; }
    const ComplexMatrix& h0() const { return spec_.h0; }

    /// Basepoint frame: columns are the tracked eigenvectors of H0.
    const ComplexMatrix& basepoint_frame() const { return frame0_; }

    ComplexMatrix v_at(const std::vector<double>& lambda) const;
    /// Directional derivative of V along dir (analytic, from the ordered
    /// product rule).
    ComplexMatrix v_dot(const std::vector<double>& lambda, const std::vector<double>& dir) const;
    ComplexMatrix h_at(const std::vector<double>& lambda) const;

   private:
    explicit IsospectralFamily(Spec spec) : spec_(std::move(spec)) {}

    Spec spec_;
    ComplexMatrix frame0_;  // dim x n, orthonormal columns
};

/// Discretized curve in the control manifold.
struct ParameterPath {
    std::vector<std::vector<double>> samples;
    bool closed = false;
    std::vector<std::size_t> markers;  // strictly increasing sample indices
    std::string label;

    void validate() const;
    std::size_t segment_count() const { return samples.empty() ? 0 : samples.size() - 1; }

    /// Piecewise-linear interpolation, t in [0,1] spanning the samples.
    std::vector<double> point_at(double t) const;

    ParameterPath subpath(std::size_t first_sample, std::size_t last_sample) const;
    ParameterPath reversed() const;

    /// Latitude loop on a sphere family: fixed polar angle, azimuth from
    /// phi0 to phi1 over `segments` equal steps. Closed when the azimuth
    /// span is a full turn.
    static ParameterPath latitude_loop(double polar, std::size_t segments, double phi0 = 0.0,
                                       double phi1 = 6.283185307179586476925286766559);
};

struct LocalFrame {
    std::vector<PureState> vectors;
    bool orthonormal = false;
};

/// Wilczek-Zee data at one path point: a[r][c] = <phi_r | d/ds phi_c>
/// contracted with the direction, p[r][c] = <phi_r | phi_c>.
struct ConnectionSample {
    ComplexMatrix a;
    ComplexMatrix p;
};

struct HolonomyResult {
    ComplexMatrix u;
    std::size_t step_count = 0;
    int scheme_order = 2;
    bool rank_deficient = false;
    std::string path_label;
};

enum class DerivativeMode { analytic, finite_difference };

/// Central finite-difference step used by the finite_difference mode.
inline constexpr double kFrameDerivativeStep = 1e-5;

LocalFrame frame_at(const IsospectralFamily& family, const std::vector<double>& lambda);

ConnectionSample connection_at(const IsospectralFamily& family, const std::vector<double>& lambda,
                               const std::vector<double>& direction,
                               DerivativeMode mode = DerivativeMode::analytic);

/// Path-ordered product of midpoint exponentials exp(-a * pinv(p)) over
/// the path segments; later segments compose on the left.
HolonomyResult holonomy(const IsospectralFamily& family, const ParameterPath& path,
                        DerivativeMode mode = DerivativeMode::analytic);

/// A jump inserted at a path sample: `op` acts on subspace coefficients
/// in the basepoint frame and must satisfy op^dag op = alpha * identity
/// (within 1e-8) for the unitary branch. Rank-deficient ops (sigma±-like)
/// switch the whole transport to the rank-deficient branch.
struct JumpInsertion {
    std::size_t sample_index = 0;
    ComplexMatrix op;
    double alpha = 1.0;
};

/// Jump-conditioned holonomy. Unitary branch: segment transports composed
/// with accumulated conjugation by the normalized jump operators, i.e.
/// segment l+1 enters as C_l^dag T_{l+1} C_l with C_l the product of the
/// first l jumps. Rank-deficient branch: plain composition T w T ... with
/// ops normalized by their largest singular value, flagged in the result.
HolonomyResult holonomy_with_jumps(const IsospectralFamily& family, const ParameterPath& path,
                                   const std::vector<JumpInsertion>& jumps,
                                   DerivativeMode mode = DerivativeMode::analytic);

/// Independent route for the same quantity: transports the explicitly
/// jumped frame vectors with finite-difference connections and Gram
/// pseudo-inversion, never forming conjugated connections. Returns the
/// raw coefficient map <psi0_r | evolved psi0_c> including jump
/// magnitudes.
ComplexMatrix transport_jumped_frame(const IsospectralFamily& family, const ParameterPath& path,
                                     const std::vector<JumpInsertion>& jumps);

/// g u g^dag for unitary g; throws std::domain_error otherwise.
HolonomyResult gauge_transform(const HolonomyResult& result, const ComplexMatrix& g);

/// min over global phase of ||a - e^{i phi} b||_F; the natural distance
/// for gate comparisons with the dynamical/global phase stripped.
double phase_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// |tr(ideal^dag actual)| / n, in [0,1]; phase-insensitive.
double gate_fidelity(const ComplexMatrix& ideal, const ComplexMatrix& actual);

}  // namespace holosim
