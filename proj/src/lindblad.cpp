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

#include "holosim/lindblad.hpp"

#include <cmath>

namespace holosim {

std::size_t LindbladModel::dim() const {
    if (driven()) return std::get<DrivenHamiltonian>(hamiltonian).family.dim();
    return std::get<ComplexMatrix>(hamiltonian).rows();
}

const DrivenHamiltonian& LindbladModel::driven_source() const {
    return std::get<DrivenHamiltonian>(hamiltonian);
}

ComplexMatrix LindbladModel::h_at(double t) const {
    if (!driven()) return std::get<ComplexMatrix>(hamiltonian);
    const auto& src = std::get<DrivenHamiltonian>(hamiltonian);
    return src.family.h_at(src.path.point_at(t / total_time));
}

ComplexMatrix LindbladModel::kappa() const {
    ComplexMatrix k = ComplexMatrix::zero(dim(), dim());
    for (const auto& l : lindblad_ops) k += l.adjoint() * l;
    return k;
}

void LindbladModel::validate() const {
    const std::size_t n = dim();
    if (!driven() && !std::get<ComplexMatrix>(hamiltonian).is_square()) {
        throw std::invalid_argument("LindbladModel: Hamiltonian must be square");
    }
    for (const auto& l : lindblad_ops) {
        if (l.rows() != n || l.cols() != n) {
            throw std::invalid_argument("LindbladModel: Lindblad operator dimension mismatch");
        }
    }
    if (total_time <= 0.0) throw std::invalid_argument("LindbladModel: total_time must be positive");
    const ComplexMatrix k = kappa();
    if (!k.is_hermitian(1e-10)) {
        throw std::domain_error("LindbladModel: kappa not hermitian");
    }
    if (!lindblad_ops.empty() && eig_hermitian(k).eigenvalues.front() < -1e-10) {
        throw std::domain_error("LindbladModel: kappa not positive semidefinite");
    }
}

ComplexMatrix lindblad_rhs(const LindbladModel& model, const DensityMatrix& rho, double t) {
    if (rho.dim() != model.dim()) throw std::invalid_argument("lindblad_rhs: dimension mismatch");
    const cplx mi(0.0, -1.0);
    const ComplexMatrix h = model.h_at(t);
    ComplexMatrix out = mi * (h * rho.matrix - rho.matrix * h);
    for (const auto& l : model.lindblad_ops) {
        const ComplexMatrix ldl = l.adjoint() * l;
        out -= 0.5 * (ldl * rho.matrix + rho.matrix * ldl);
        out += l * rho.matrix * l.adjoint();
    }
    return out;
}

DensityMatrix evolve(const LindbladModel& model, const DensityMatrix& rho0, double t_final,
                     double dt) {
    if (dt <= 0.0) throw std::invalid_argument("evolve: dt must be positive");
    if (t_final < 0.0) throw std::invalid_argument("evolve: t_final must be non-negative");
    if (rho0.dim() != model.dim()) throw std::invalid_argument("evolve: dimension mismatch");
    if (t_final == 0.0) return rho0;

    const auto steps = static_cast<std::size_t>(std::ceil(t_final / dt - 1e-12));
    DensityMatrix rho = rho0;
    double t = 0.0;
    auto rhs = [&](const ComplexMatrix& m, double at) {
        DensityMatrix tmp;
        tmp.matrix = m;
        return lindblad_rhs(model, tmp, at);
    };

    for (std::size_t s = 0; s < steps; ++s) {
        const double h = std::min(dt, t_final - t);
        const ComplexMatrix k1 = rhs(rho.matrix, t);
        const ComplexMatrix k2 = rhs(rho.matrix + (0.5 * h) * k1, t + 0.5 * h);
        const ComplexMatrix k3 = rhs(rho.matrix + (0.5 * h) * k2, t + 0.5 * h);
        const ComplexMatrix k4 = rhs(rho.matrix + h * k3, t + h);
        rho.matrix += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        rho.matrix = 0.5 * (rho.matrix + rho.matrix.adjoint());
        t += h;

        if (rho.min_eigenvalue() < -1e-6) {
            throw integration_error("evolve: positivity violated, dt too large");
        }
    }
    return rho;
}

KappaClassification classify_kappa(const LindbladModel& model, const ComplexMatrix& h0) {
    const ComplexMatrix k = model.kappa();
    const auto n = static_cast<double>(k.rows());

    KappaClassification out;
    const double alpha_id = k.trace().real() / n;
    if ((k - alpha_id * ComplexMatrix::identity(k.rows())).max_abs() <= 1e-9) {
        out.kind = KappaClassification::Kind::identity;
        out.alpha = alpha_id;
        return out;
    }

    if (h0.rows() == k.rows()) {
        const double hh = (h0 * h0).trace().real();
        if (hh > 0.0) {
            const double alpha_h = (h0 * k).trace().real() / hh;
            if ((k - alpha_h * h0).max_abs() <= 1e-9) {
                out.kind = KappaClassification::Kind::proportional_to_h;
                out.alpha = alpha_h;
                return out;
            }
        }
    }
    return out;
}

}  // namespace holosim
