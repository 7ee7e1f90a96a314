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

#include "holosim/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace holosim {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, cplx(0.0, 0.0)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw std::invalid_argument("ComplexMatrix: entry count does not match rows*cols");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw std::invalid_argument("ComplexMatrix: ragged initializer");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m.at(c, r) = std::conj(at(r, c));
    return m;
}

ComplexMatrix ComplexMatrix::transposed() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
    return m;
}

ComplexMatrix ComplexMatrix::conjugated() const {
    ComplexMatrix m = *this;
    for (auto& e : m.entries_) e = std::conj(e);
    return m;
}

cplx ComplexMatrix::trace() const {
    if (!is_square()) throw std::invalid_argument("trace: matrix not square");
    cplx t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& e : entries_) s += std::norm(e);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, std::abs(e));
    return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (!is_square()) return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r; c < cols_; ++c)
            if (std::abs(at(r, c) - std::conj(at(c, r))) > tol) return false;
    return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
    if (!is_square()) return false;
    return (adjoint() * (*this) - identity(rows_)).max_abs() <= tol;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("matrix addition: shape mismatch");
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("matrix subtraction: shape mismatch");
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scalar) {
    for (auto& e : entries_) e *= scalar;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, cplx scalar) { return a *= scalar; }
ComplexMatrix operator*(cplx scalar, ComplexMatrix a) { return a *= scalar; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= cplx(-1.0, 0.0); }

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matmul: inner dimensions do not match");
    }
    ComplexMatrix m(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx ark = a.at(r, k);
            if (ark == cplx(0.0, 0.0)) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) {
                m.at(r, c) += ark * b.at(k, c);
            }
        }
    }
    return m;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ra = 0; ra < a.rows(); ++ra)
        for (std::size_t ca = 0; ca < a.cols(); ++ca) {
            const cplx v = a.at(ra, ca);
            if (v == cplx(0.0, 0.0)) continue;
            for (std::size_t rb = 0; rb < b.rows(); ++rb)
                for (std::size_t cb = 0; cb < b.cols(); ++cb) {
                    m.at(ra * b.rows() + rb, ca * b.cols() + cb) = v * b.at(rb, cb);
                }
        }
    return m;
}

namespace {

double inf_norm(const ComplexMatrix& a) {
    double m = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < a.cols(); ++c) s += std::abs(a.at(r, c));
        m = std::max(m, s);
    }
    return m;
}

}  // namespace

ComplexMatrix matexp(const ComplexMatrix& a) {
    if (!a.is_square()) throw std::invalid_argument("matexp: matrix not square");
    const std::size_t n = a.rows();

    // Scale down to norm <= 0.25, run the series to machine precision,
    // square back up.
    int squarings = 0;
    double norm = inf_norm(a);
    while (norm > 0.25) {
        norm *= 0.5;
        ++squarings;
    }
    ComplexMatrix b = a;
    b *= cplx(std::ldexp(1.0, -squarings), 0.0);

    ComplexMatrix result = ComplexMatrix::identity(n);
    ComplexMatrix term = ComplexMatrix::identity(n);
    for (int k = 1; k <= 64; ++k) {
        term = term * b;
        term *= cplx(1.0 / k, 0.0);
        result += term;
        if (term.max_abs() <= 1e-18 * (1.0 + result.max_abs())) break;
    }
    for (int i = 0; i < squarings; ++i) result = result * result;
    return result;
}

EigenDecomposition eig_hermitian(const ComplexMatrix& input) {
    if (!input.is_square()) throw std::domain_error("eig_hermitian: matrix not square");
    if (!input.is_hermitian(1e-10)) throw std::domain_error("eig_hermitian: matrix not hermitian");

    const std::size_t n = input.rows();
    ComplexMatrix a = input;
    ComplexMatrix v = ComplexMatrix::identity(n);

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) s += std::norm(a.at(p, q));
        return std::sqrt(2.0 * s);
    };

    const double stop = 1e-14 * std::max(1.0, a.frobenius_norm());
    for (int sweep = 0; sweep < 60 && off_norm() > stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx g = a.at(p, q);
                const double ag = std::abs(g);
                if (ag <= 1e-300) continue;

                // Phase out the pivot, then a real Jacobi rotation.
                const cplx phase = g / ag;
                const double alpha = a.at(p, p).real();
                const double beta = a.at(q, q).real();
                const double tau = (beta - alpha) / (2.0 * ag);
                const double t = (tau >= 0.0) ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const cplx half = std::sqrt(phase);
                const cplx upp = c * half;
                const cplx upq = -s * half;
                const cplx uqp = s * std::conj(half);
                const cplx uqq = c * std::conj(half);

                for (std::size_t k = 0; k < n; ++k) {  // A <- A U, V <- V U
                    const cplx akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = akp * upp + akq * uqp;
                    a.at(k, q) = akp * upq + akq * uqq;
                    const cplx vkp = v.at(k, p), vkq = v.at(k, q);
                    v.at(k, p) = vkp * upp + vkq * uqp;
                    v.at(k, q) = vkp * upq + vkq * uqq;
                }
                for (std::size_t k = 0; k < n; ++k) {  // A <- U^dag A
                    const cplx apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
                    a.at(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
                }
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a.at(i, i).real() < a.at(j, j).real();
    });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = a.at(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors.at(i, j) = v.at(i, order[j]);
    }
    return out;
}

double hermitian_opnorm(const ComplexMatrix& a) {
    if (a.rows() == 0) return 0.0;
    const auto eig = eig_hermitian(a);
    double m = 0.0;
    for (double ev : eig.eigenvalues) m = std::max(m, std::abs(ev));
    return m;
}

std::vector<double> singular_values(const ComplexMatrix& a) {
    const auto eig = eig_hermitian(a.adjoint() * a);
    std::vector<double> svals;
    svals.reserve(eig.eigenvalues.size());
    for (auto it = eig.eigenvalues.rbegin(); it != eig.eigenvalues.rend(); ++it) {
        svals.push_back(std::sqrt(std::max(0.0, *it)));
    }
    return svals;
}

double opnorm(const ComplexMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    return singular_values(a).front();
}

PseudoInverse pseudo_inverse_hermitian(const ComplexMatrix& a, double rel_cutoff) {
    const auto eig = eig_hermitian(a);
    const std::size_t n = a.rows();
    double max_mag = 0.0;
    for (double ev : eig.eigenvalues) max_mag = std::max(max_mag, std::abs(ev));

    PseudoInverse out;
    out.cutoff = rel_cutoff * max_mag;
    out.matrix = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(eig.eigenvalues[j]) <= out.cutoff) continue;
        ++out.rank;
        const double inv = 1.0 / eig.eigenvalues[j];
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                out.matrix.at(r, c) += inv * eig.eigenvectors.at(r, j) *
                                       std::conj(eig.eigenvectors.at(c, j));
            }
    }
    return out;
}

std::vector<EigenCluster> cluster_eigenvalues(const std::vector<double>& eigenvalues,
                                              double gap_tol) {
    std::vector<EigenCluster> clusters;
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        if (clusters.empty() ||
            eigenvalues[i] - eigenvalues[clusters.back().indices.back()] > gap_tol) {
            clusters.push_back({eigenvalues[i], {i}});
        } else {
            clusters.back().indices.push_back(i);
        }
    }
    for (auto& cl : clusters) {
        double sum = 0.0;
        for (std::size_t idx : cl.indices) sum += eigenvalues[idx];
        cl.value = sum / static_cast<double>(cl.indices.size());
    }
    return clusters;
}

}  // namespace holosim
