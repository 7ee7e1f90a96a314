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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace holosim {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. Sized for small quantum systems
/// (dims up to ~64); no sparse storage, no BLAS.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const cplx& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    const std::vector<cplx>& entries() const { return entries_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transposed() const;
    ComplexMatrix conjugated() const;

    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    bool is_hermitian(double tol) const;
    bool is_unitary(double tol) const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx scalar);

    friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, cplx scalar);
ComplexMatrix operator*(cplx scalar, ComplexMatrix a);
ComplexMatrix operator-(ComplexMatrix a);

/// Exact matrix product; throws std::invalid_argument on shape mismatch.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product; dimensions multiply.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Matrix exponential by scaling-and-squaring with a truncated series
/// kernel. Relative accuracy <= 1e-12 for norms up to ~10.
ComplexMatrix matexp(const ComplexMatrix& a);

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // columns, same order
};

/// Cyclic Jacobi eigensolver for hermitian matrices. Input must be
/// hermitian within 1e-10, otherwise throws std::domain_error.
EigenDecomposition eig_hermitian(const ComplexMatrix& a);

/// Operator 2-norm of a hermitian matrix (max |eigenvalue|).
double hermitian_opnorm(const ComplexMatrix& a);

/// Operator 2-norm of a general matrix (largest singular value).
double opnorm(const ComplexMatrix& a);

/// Singular values, descending.
std::vector<double> singular_values(const ComplexMatrix& a);

struct PseudoInverse {
    ComplexMatrix matrix;
    std::size_t rank = 0;
    double cutoff = 0.0;
};

/// Moore-Penrose pseudo-inverse of a hermitian matrix with relative
/// singular-value cutoff (default 1e-10 of the largest eigenvalue
/// magnitude). rank < dim signals rank-deficient transport upstream.
PseudoInverse pseudo_inverse_hermitian(const ComplexMatrix& a, double rel_cutoff = 1e-10);

struct EigenCluster {
    double value = 0.0;               // representative (mean) eigenvalue
    std::vector<std::size_t> indices; // positions in the ascending spectrum
};

/// Group an ascending spectrum into degenerate clusters using an
/// absolute gap tolerance.
std::vector<EigenCluster> cluster_eigenvalues(const std::vector<double>& eigenvalues,
                                              double gap_tol = 1e-8);

}  // namespace holosim
