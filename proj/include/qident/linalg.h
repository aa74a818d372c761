// Copyright 2026 The qident Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QIDENT_LINALG_H
#define QIDENT_LINALG_H

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qident {

using Complex = std::complex<double>;

/// Dense complex square matrix. Storage is row-major so that entry (r, c)
/// sits at offset r * dim + c, matching the tensor-product basis ordering
/// used throughout the library.
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kIdentityTol = 1e-10;
inline constexpr double kEigenClamp = 1e-10;

struct EigenDecomposition {
    RealVector eigenvalues;     // ascending
    ComplexMatrix eigenvectors; // columns, unitary
};

ComplexMatrix identity(std::size_t dim);
ComplexMatrix zeros(std::size_t dim);

/// Kronecker product: entry (i*db + k, j*db + l) = a(i, j) * b(k, l).
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Largest entrywise |m - m^dagger|.
double hermiticity_defect(const ComplexMatrix &m);
bool is_hermitian(const ComplexMatrix &m, double tol = kHermiticityTol);

/// Throws NonHermitianInput when hermiticity_defect(m) > kHermiticityTol.
EigenDecomposition hermitian_eig(const ComplexMatrix &m);
RealVector hermitian_eigenvalues(const ComplexMatrix &m);

/// Throws NotPositive when the smallest eigenvalue is below -kEigenClamp.
ComplexMatrix psd_sqrt(const ComplexMatrix &m);

/// Spectral norm. Hermitian inputs use the largest |eigenvalue|; anything
/// else goes through the largest eigenvalue of m^dagger m.
double operator_norm(const ComplexMatrix &m);

/// Real part of tr(a * b) without forming the product.
double trace_product(const ComplexMatrix &a, const ComplexMatrix &b);

/// Q^dagger m Q where the columns of Q span the eigenvalue-1 space of the
/// projector.
ComplexMatrix compress_to_range(const ComplexMatrix &m, const ComplexMatrix &projector);

/// <v| m |v>, real part.
double expectation(const ComplexMatrix &m, const ComplexVector &v);

/// Result(r, c) = m(perm[r], perm[c]), i.e. P m P^T with P(r, perm[r]) = 1.
ComplexMatrix permute_indices(const ComplexMatrix &m, std::span<const std::size_t> perm);

}  // namespace qident

#endif  // QIDENT_LINALG_H
