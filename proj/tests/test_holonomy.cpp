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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "holosim/models.hpp"
#include "test_helpers.hpp"

using namespace holosim;
using namespace holosim::testing;

namespace {

const cplx I(0.0, 1.0);
constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kTwoPi = 2.0 * kPi;

PureState frame_vector(const LocalFrame& f, std::size_t idx) { return f.vectors.at(idx); }

/// Independent finite-difference oracle for the connection entry
/// <phi_r | d phi_c / ds>, with its own step size.
cplx fd_connection_entry(const IsospectralFamily& fam, const std::vector<double>& lambda,
                         const std::vector<double>& dir, std::size_t r, std::size_t c) {
    const double h = 1e-6;
    double len = 0.0;
    for (double d : dir) len += d * d;
    len = std::sqrt(len);
    std::vector<double> lp = lambda, lm = lambda;
    for (std::size_t k = 0; k < lambda.size(); ++k) {
        lp[k] += h * dir[k] / len;
        lm[k] -= h * dir[k] / len;
    }
    const PureState up = frame_vector(frame_at(fam, lp), c);
    const PureState um = frame_vector(frame_at(fam, lm), c);
    const PureState mid = frame_vector(frame_at(fam, lambda), r);
    return inner(mid, up - um) * (len / (2.0 * h));
}

/// Loop with a varying polar angle, so the midpoint quadrature has a
/// genuine O(h^2) error; `warp` reparameterizes the same geometric curve.
ParameterPath wobbly_loop(std::size_t segments, bool warp) {
    ParameterPath p;
    for (std::size_t k = 0; k <= segments; ++k) {
        double s = static_cast<double>(k) / static_cast<double>(segments);
        if (warp) s = s * s * (3.0 - 2.0 * s);  // monotone smoothstep
        p.samples.push_back({1.0 + 0.3 * std::sin(kTwoPi * s), kTwoPi * s});
    }
    return p;
}

/// The u1 gate family rebuilt with its code frame rotated by g.
IsospectralFamily rotated_u1_family(const ComplexMatrix& g) {
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix bright(4, 1);
    bright.at(0, 0) = r;
    bright.at(1, 0) = r;
    ComplexMatrix e(4, 1);
    e.at(3, 0) = 1.0;

    IsospectralFamily::Spec spec;
    spec.h0 = ComplexMatrix(4, 4);
    spec.h0.at(3, 3) = 1.0;
    spec.generators = {ComplexMatrix::zero(4, 4),
                       0.5 * ((-I) * (e * bright.adjoint()) + I * (bright * e.adjoint())),
                       0.5 * (e * e.adjoint() - bright * bright.adjoint())};
    spec.frame_rule = {{2, 1, +1.0}, {1, 0, +1.0}, {2, 1, -1.0}};
    spec.subspace_energy = 0.0;
    ComplexMatrix code(4, 2);
    code.at(0, 0) = 1.0;
    code.at(1, 1) = 1.0;
    spec.basepoint_frame = code * g;
    spec.sphere_type = true;
    spec.gate_rate_scale = 0.25;
    return IsospectralFamily::create(std::move(spec));
}

}  // namespace

TEST_CASE("family invariants: frame at the root, unitarity, isospectrality") {
    const IsospectralFamily fam = spin_half_family();
    CHECK(fam.subspace_dim() == 1);

    // V = identity at the root (polar = 0), regardless of azimuth.
    CHECK(entry_distance(fam.v_at({0.0, 0.0}), ComplexMatrix::identity(2)) < 1e-12);
    CHECK(entry_distance(fam.v_at({0.0, 1.7}), ComplexMatrix::identity(2)) < 1e-12);

    std::mt19937_64 eng(21);
    std::uniform_real_distribution<double> ang(-3.0, 3.0);
    for (int t = 0; t < 20; ++t) {
        const std::vector<double> lambda = {std::abs(ang(eng)), ang(eng)};
        CHECK(fam.v_at(lambda).is_unitary(1e-10));
        const auto spec = eig_hermitian(fam.h_at(lambda)).eigenvalues;
        CHECK(spec[0] == doctest::Approx(-0.5).epsilon(1e-9));
        CHECK(spec[1] == doctest::Approx(0.5).epsilon(1e-9));
    }

    // Selected energy must exist in the spectrum.
    IsospectralFamily::Spec bad;
    bad.h0 = 0.5 * pauli(3);
    bad.generators = {0.5 * pauli(2)};
    bad.frame_rule = {{0, 0, 1.0}};
    bad.subspace_energy = 0.25;
    CHECK_THROWS_AS(IsospectralFamily::create(bad), std::domain_error);
}

TEST_CASE("frame_at: root frame, rotated frame, orthonormality") {
    const IsospectralFamily fam = spin_half_family();

    const LocalFrame root = frame_at(fam, {0.0, 0.0});
    REQUIRE(root.vectors.size() == 1);
    CHECK(std::abs(root.vectors[0].amplitudes[0] - 1.0) < 1e-12);
    CHECK(std::abs(root.vectors[0].amplitudes[1]) < 1e-12);

    // polar = pi rotates the tracked vector to |1> up to phase.
    const LocalFrame south = frame_at(fam, {kPi, 0.0});
    CHECK(std::abs(south.vectors[0].amplitudes[0]) < 1e-12);
    CHECK(std::abs(std::abs(south.vectors[0].amplitudes[1]) - 1.0) < 1e-12);

    std::mt19937_64 eng(22);
    std::uniform_real_distribution<double> ang(0.1, 3.0);
    for (int t = 0; t < 10; ++t) {
        const LocalFrame f = frame_at(fam, {ang(eng), ang(eng)});
        CHECK(f.orthonormal);
    }
    const LocalFrame code = frame_at(single_qubit_gate_family(1), {1.0, 2.0});
    CHECK(code.vectors.size() == 2);
    CHECK(code.orthonormal);
}

TEST_CASE("connection_at: zero direction, spin-half value, Gram identity") {
    const IsospectralFamily fam = spin_half_family();

    const ConnectionSample zero = connection_at(fam, {1.0, 0.5}, {0.0, 0.0});
    CHECK(zero.a.max_abs() == 0.0);

    // a(theta, phi; d/dphi) = (i/2)(1 - cos theta); theta = pi/3 gives i/4.
    const ConnectionSample cs = connection_at(fam, {kPi / 3.0, 0.9}, {0.0, 1.0});
    CHECK(std::abs(cs.a.at(0, 0) - I * 0.25) < 1e-10);
    CHECK(std::abs(cs.p.at(0, 0) - 1.0) < 1e-12);

    // Independent finite-difference oracle agrees.
    const cplx fd = fd_connection_entry(fam, {kPi / 3.0, 0.9}, {0.0, 1.0}, 0, 0);
    CHECK(std::abs(cs.a.at(0, 0) - fd) < 1e-8);
}

TEST_CASE("connection_at: analytic and finite-difference modes agree to 1e-6") {
    std::mt19937_64 eng(23);
    std::uniform_real_distribution<double> ang(0.2, 2.9);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    const IsospectralFamily fams[] = {spin_half_family(), single_qubit_gate_family(1),
                                      single_qubit_gate_family(2), two_qubit_gate_family()};
    for (const auto& fam : fams) {
        for (int t = 0; t < 8; ++t) {
            const std::vector<double> lambda = {ang(eng), ang(eng)};
            const std::vector<double> dir = {d(eng), d(eng)};
            const ConnectionSample an = connection_at(fam, lambda, dir, DerivativeMode::analytic);
            const ConnectionSample fd =
                connection_at(fam, lambda, dir, DerivativeMode::finite_difference);
            CHECK(entry_distance(an.a, fd.a) < 1e-6);
            CHECK(an.p.is_hermitian(1e-10));
            // orthonormal frames: Gram = identity, connection anti-hermitian
            CHECK(entry_distance(an.p, ComplexMatrix::identity(an.p.rows())) < 1e-9);
            CHECK((an.a + an.a.adjoint()).max_abs() < 1e-8);
        }
    }
}

TEST_CASE("holonomy: constant path is the identity") {
    const IsospectralFamily fam = spin_half_family();
    ParameterPath p;
    p.samples = {{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}};
    p.closed = true;
    const HolonomyResult res = holonomy(fam, p);
    CHECK(entry_distance(res.u, ComplexMatrix::identity(1)) == 0.0);
}

TEST_CASE("holonomy: spin-half latitude loops reproduce the -Omega/2 phase") {
    const IsospectralFamily fam = spin_half_family();
    for (double polar : {kPi / 6.0, kPi / 3.0, kPi / 2.0}) {
        const ParameterPath loop = ParameterPath::latitude_loop(polar, 4096);
        const HolonomyResult res = holonomy(fam, loop);
        const double omega = kTwoPi * (1.0 - std::cos(polar));
        const cplx expected = std::exp(-I * omega / 2.0);
        CHECK(std::abs(res.u.at(0, 0) - expected) < 1e-9);
        CHECK(res.step_count == 4096);
    }
    // theta = pi/2: u = exp(-i pi) = -1.
    const HolonomyResult eq = holonomy(fam, ParameterPath::latitude_loop(kPi / 2.0, 1024));
    CHECK(std::abs(eq.u.at(0, 0) + 1.0) < 1e-9);
}

TEST_CASE("holonomy: Wilson-line overlap product cross-check at 1e4 steps") {
    // Independent of the connection/exponential machinery: the Berry
    // phase is the argument of the product of successive frame overlaps.
    const IsospectralFamily fam = spin_half_family();
    const double polar = kPi / 3.0;
    const std::size_t n = 10000;
    cplx prod = 1.0;
    PureState prev = frame_vector(frame_at(fam, {polar, 0.0}), 0);
    for (std::size_t k = 1; k <= n; ++k) {
        const double phi = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
        const PureState cur = frame_vector(frame_at(fam, {polar, phi}), 0);
        prod *= inner(prev, cur);
        prev = cur;
    }
    const HolonomyResult res = holonomy(fam, ParameterPath::latitude_loop(polar, n));
    // The overlap product approximates exp(+int <phi|dphi>), the
    // conjugate of the transported factor.
    CHECK(std::abs(std::conj(prod) / std::abs(prod) - res.u.at(0, 0)) < 1e-4);
}

TEST_CASE("holonomy: forward-then-back path is the identity") {
    const IsospectralFamily fam = single_qubit_gate_family(1);
    ParameterPath p;
    const std::size_t n = 128;
    for (std::size_t k = 0; k <= n; ++k) {
        p.samples.push_back({1.2, 2.5 * static_cast<double>(k) / static_cast<double>(n)});
    }
    for (std::size_t k = n; k-- > 0;) p.samples.push_back(p.samples[k]);
    p.closed = true;
    p.validate();
    const HolonomyResult res = holonomy(fam, p);
    CHECK(entry_distance(res.u, ComplexMatrix::identity(2)) < 1e-8);
    CHECK(res.u.is_unitary(1e-10));
}

TEST_CASE("holonomy: reparameterization invariance at 4096 steps") {
    const IsospectralFamily fam = spin_half_family();
    const HolonomyResult uniform = holonomy(fam, wobbly_loop(4096, false));
    const HolonomyResult warped = holonomy(fam, wobbly_loop(4096, true));
    CHECK(entry_distance(uniform.u, warped.u) < 1e-6);
}

TEST_CASE("holonomy: second-order convergence against a 1e5-step reference") {
    const IsospectralFamily fam = spin_half_family();
    const ComplexMatrix ref = holonomy(fam, wobbly_loop(100000, false)).u;
    const double e256 = entry_distance(holonomy(fam, wobbly_loop(256, false)).u, ref);
    const double e512 = entry_distance(holonomy(fam, wobbly_loop(512, false)).u, ref);
    CHECK(e256 / e512 >= 3.5);
}

TEST_CASE("holonomy: unitarity defect is far below the O(steps^-2) contract") {
    const IsospectralFamily fam = two_qubit_gate_family();
    for (std::size_t n : {std::size_t{64}, std::size_t{128}, std::size_t{256}}) {
        const HolonomyResult res = holonomy(fam, ParameterPath::latitude_loop(1.0, n));
        const double defect = (res.u.adjoint() * res.u - ComplexMatrix::identity(4)).max_abs();
        CHECK(defect <= 1.0 / (static_cast<double>(n) * static_cast<double>(n)));
    }
}

TEST_CASE("holonomy: concatenation composes with later factors on the left") {
    const IsospectralFamily fam = single_qubit_gate_family(2);
    const ParameterPath loop = gate_loop(fam, 0.9, 512);
    const ParameterPath first = loop.subpath(0, 200);
    const ParameterPath second = loop.subpath(200, 512);
    const ComplexMatrix whole = holonomy(fam, loop).u;
    const ComplexMatrix composed = holonomy(fam, second).u * holonomy(fam, first).u;
    CHECK(entry_distance(whole, composed) < 1e-8);
}

TEST_CASE("holonomy: gauge covariance under basepoint rotation") {
    std::mt19937_64 eng(24);
    const ComplexMatrix g = random_unitary(eng, 2);

    const IsospectralFamily base = single_qubit_gate_family(1);
    const IsospectralFamily rotated = rotated_u1_family(g);
    const ParameterPath loop = gate_loop(base, 0.7, 512);

    const ComplexMatrix u = holonomy(base, loop).u;
    const ComplexMatrix u_rot = holonomy(rotated, loop).u;
    CHECK(entry_distance(u, g * u_rot * g.adjoint()) < 1e-8);
}

TEST_CASE("holonomy_with_jumps: no jumps reduces to plain transport") {
    const IsospectralFamily fam = single_qubit_gate_family(1);
    const ParameterPath loop = gate_loop(fam, 0.7, 256);
    CHECK(entry_distance(holonomy_with_jumps(fam, loop, {}).u, holonomy(fam, loop).u) == 0.0);
}

TEST_CASE("holonomy_with_jumps: midpoint sigma3 jump cancels the sigma1 gate") {
    const IsospectralFamily fam = single_qubit_gate_family(1);
    const ParameterPath loop = gate_loop(fam, 0.8, 1024);
    const HolonomyResult res = holonomy_with_jumps(fam, loop, {{512, pauli(3), 1.0}});
    CHECK(phase_distance(res.u, ComplexMatrix::identity(2)) < 1e-8);
    CHECK_FALSE(res.rank_deficient);
}

TEST_CASE("holonomy_with_jumps: same-axis jump leaves the gate unchanged") {
    const IsospectralFamily fam = single_qubit_gate_family(1);
    const ParameterPath loop = gate_loop(fam, 0.7, 1024);
    const ComplexMatrix plain = holonomy(fam, loop).u;
    for (std::size_t idx : {std::size_t{100}, std::size_t{512}, std::size_t{900}}) {
        const HolonomyResult res = holonomy_with_jumps(fam, loop, {{idx, pauli(1), 1.0}});
        CHECK(entry_distance(res.u, plain) < 1e-8);
    }
}

TEST_CASE("holonomy_with_jumps: jump index must be interior") {
    const IsospectralFamily fam = single_qubit_gate_family(1);
    const ParameterPath loop = gate_loop(fam, 0.7, 64);
    CHECK_THROWS_AS(holonomy_with_jumps(fam, loop, {{0, pauli(3), 1.0}}), std::out_of_range);
    CHECK_THROWS_AS(holonomy_with_jumps(fam, loop, {{64, pauli(3), 1.0}}), std::out_of_range);
}

TEST_CASE("holonomy_with_jumps agrees with direct transport of the jumped frame") {
    std::mt19937_64 eng(25);
    std::uniform_real_distribution<double> alpha_dist(0.5, 2.0);

    const IsospectralFamily fam = single_qubit_gate_family(1);
    const ParameterPath loop = gate_loop(fam, 0.9, 256);

    SUBCASE("unitary Pauli jumps with rates folded in") {
        for (int trial = 0; trial < 4; ++trial) {
            const double a1 = alpha_dist(eng), a2 = alpha_dist(eng);
            const std::vector<JumpInsertion> jumps = {
                {64, std::sqrt(a1) * pauli(3), a1},
                {180, std::sqrt(a2) * pauli(2), a2},
            };
            const ComplexMatrix via_composition = holonomy_with_jumps(fam, loop, jumps).u;

            const ComplexMatrix direct_raw = transport_jumped_frame(fam, loop, jumps);
            // Undo the frame's own jump factors: U = C^dag * direct / prod sqrt(alpha).
            ComplexMatrix conj_acc = ComplexMatrix::identity(2);
            double scale = 1.0;
            for (const auto& j : jumps) {
                conj_acc = (1.0 / std::sqrt(j.alpha)) * j.op * conj_acc;
                scale *= std::sqrt(j.alpha);
            }
            const ComplexMatrix oracle = conj_acc.adjoint() * ((1.0 / scale) * direct_raw);
            CHECK(entry_distance(via_composition, oracle) < 1e-8);
        }
    }

    SUBCASE("sigma± jumps: rank-deficient map, checked against direct segment transports") {
        const std::vector<JumpInsertion> jumps = {{128, sigma_plus(), 1.0}};
        const HolonomyResult res = holonomy_with_jumps(fam, loop, jumps);
        CHECK(res.rank_deficient);

        // The state stays inside the degenerate subspace, so the oracle
        // composes jump-free direct frame transports around the jump.
        const ComplexMatrix t1 = transport_jumped_frame(fam, loop.subpath(0, 128), {});
        const ComplexMatrix t2 = transport_jumped_frame(fam, loop.subpath(128, 256), {});
        CHECK(entry_distance(res.u, t2 * sigma_plus() * t1) < 1e-8);

        const auto sv = singular_values(res.u);
        CHECK(sv[0] == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(sv[1] <= 1e-8);
    }
}

TEST_CASE("conjugated-connection transport equals conjugating the transport") {
    // P e^{-(1/alpha) W^dag A W} over a segment equals
    // (1/alpha) W^dag (P e^{-int A}) W for W^dag W = alpha 1.
    std::mt19937_64 eng(26);
    std::uniform_real_distribution<double> alpha_dist(0.5, 2.0);
    std::uniform_int_distribution<int> axis(1, 3);
    std::uniform_int_distribution<std::size_t> cut(10, 200);

    const IsospectralFamily fam = single_qubit_gate_family(2);
    const ParameterPath loop = gate_loop(fam, 1.1, 256);

    for (int trial = 0; trial < 20; ++trial) {
        std::size_t i = cut(eng), j = cut(eng);
        if (i == j) continue;
        if (i > j) std::swap(i, j);
        const double alpha = alpha_dist(eng);
        const ComplexMatrix w = std::sqrt(alpha) * pauli(axis(eng));

        ComplexMatrix lhs = ComplexMatrix::identity(2);
        ComplexMatrix plain = ComplexMatrix::identity(2);
        for (std::size_t k = i; k < j; ++k) {
            std::vector<double> mid(2), dir(2);
            for (std::size_t q = 0; q < 2; ++q) {
                mid[q] = 0.5 * (loop.samples[k][q] + loop.samples[k + 1][q]);
                dir[q] = loop.samples[k + 1][q] - loop.samples[k][q];
            }
            const ComplexMatrix a = connection_at(fam, mid, dir).a;
            lhs = matexp((-1.0 / alpha) * (w.adjoint() * a * w)) * lhs;
            plain = matexp(-a) * plain;
        }
        const ComplexMatrix rhs = (1.0 / alpha) * w.adjoint() * plain * w;
        CHECK(entry_distance(lhs, rhs) <= 1e-8);
    }
}

TEST_CASE("gauge_transform") {
    const IsospectralFamily fam = single_qubit_gate_family(1);
    const HolonomyResult res = holonomy(fam, gate_loop(fam, 0.7, 128));

    CHECK(entry_distance(gauge_transform(res, ComplexMatrix::identity(2)).u, res.u) == 0.0);
    CHECK(entry_distance(gauge_transform(res, res.u).u, res.u) < 1e-10);

    HolonomyResult zrot;
    zrot.u = matexp((I * 0.4) * pauli(3));
    const HolonomyResult flipped = gauge_transform(zrot, pauli(1));
    CHECK(entry_distance(flipped.u, matexp((-I * 0.4) * pauli(3))) < 1e-12);

    CHECK_THROWS_AS(gauge_transform(res, 2.0 * ComplexMatrix::identity(2)), std::domain_error);
}

TEST_CASE("path validation rules") {
    ParameterPath p;
    p.samples = {{0.0, 0.0}};
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    p.samples = {{0.0, 0.0}, {1.0, 0.0}};
    p.closed = true;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.closed = false;
    CHECK_NOTHROW(p.validate());

    p.samples = {{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}};
    p.markers = {2, 1};
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.markers = {1, 2};
    CHECK_NOTHROW(p.validate());
}
