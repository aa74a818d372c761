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

#include "qident/linalg.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "qident/errors.h"

namespace qident {

namespace {

void require_square(const ComplexMatrix &m, const char *what) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::kDimensionMismatch, std::string(what) + " requires a square matrix");
    }
}

void require_hermitian(const ComplexMatrix &m) {
    require_square(m, "hermitian_eig");
    double defect = hermiticity_defect(m);
    if (defect > kHermiticityTol) {
        throw Error(ErrorCode::kNonHermitianInput, "max |M - M^dagger| = " + std::to_string(defect));
    }
}

}  // namespace

ComplexMatrix identity(std::size_t dim) {
    return ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

ComplexMatrix zeros(std::size_t dim) {
    return ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
    ComplexMatrix out(ra * rb, ca * cb);
    for (Eigen::Index i = 0; i < ra; i++) {
        for (Eigen::Index j = 0; j < ca; j++) {
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
        }
    }
    return out;
}

double hermiticity_defect(const ComplexMatrix &m) {
    require_square(m, "hermiticity_defect");
    if (m.size() == 0) {
        return 0.0;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

EigenDecomposition hermitian_eig(const ComplexMatrix &m) {
    require_hermitian(m);
    // Symmetrize so rounding noise below the tolerance cannot leak in.
    ComplexMatrix h = (m + m.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::ComputeEigenvectors);
    return EigenDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const ComplexMatrix &m) {
    require_hermitian(m);
    ComplexMatrix h = (m + m.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

ComplexMatrix psd_sqrt(const ComplexMatrix &m) {
    EigenDecomposition eig = hermitian_eig(m);
    if (eig.eigenvalues.size() == 0) {
        return m;
    }
    double lowest = eig.eigenvalues.minCoeff();
    if (lowest < -kEigenClamp) {
        throw Error(ErrorCode::kNotPositive, "min eigenvalue " + std::to_string(lowest));
    }
    RealVector roots = eig.eigenvalues.unaryExpr([](double x) { return std::sqrt(std::max(x, 0.0)); });
    const ComplexMatrix &v = eig.eigenvectors;
    ComplexMatrix r = v * roots.cast<Complex>().asDiagonal() * v.adjoint();
    return (r + r.adjoint()) * 0.5;
}

double operator_norm(const ComplexMatrix &m) {
    require_square(m, "operator_norm");
    if (m.size() == 0) {
        return 0.0;
    }
    if (is_hermitian(m)) {
        return hermitian_eigenvalues(m).cwiseAbs().maxCoeff();
    }
    ComplexMatrix gram = m.adjoint() * m;
    double top = hermitian_eigenvalues(gram).maxCoeff();
    return std::sqrt(std::max(top, 0.0));
}

double trace_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) {
        throw Error(ErrorCode::kDimensionMismatch, "trace_product shape mismatch");
    }
    // tr(ab) = sum_ij a(i,j) b(j,i)
    return a.cwiseProduct(b.transpose()).sum().real();
}

ComplexMatrix compress_to_range(const ComplexMatrix &m, const ComplexMatrix &projector) {
    EigenDecomposition eig = hermitian_eig(projector);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < eig.eigenvalues.size(); k++) {
        if (eig.eigenvalues[k] > 0.5) {
            keep.push_back(k);
        }
    }
    ComplexMatrix q(projector.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); c++) {
        q.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors.col(keep[c]);
    }
    return q.adjoint() * m * q;
}

double expectation(const ComplexMatrix &m, const ComplexVector &v) {
    if (m.cols() != v.size()) {
        throw Error(ErrorCode::kDimensionMismatch, "expectation shape mismatch");
    }
    return v.dot(m * v).real();
}

ComplexMatrix permute_indices(const ComplexMatrix &m, std::span<const std::size_t> perm) {
    require_square(m, "permute_indices");
    const auto n = static_cast<std::size_t>(m.rows());
    if (perm.size() != n) {
        throw Error(ErrorCode::kDimensionMismatch, "permutation length differs from matrix dimension");
    }
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < n; r++) {
        for (std::size_t c = 0; c < n; c++) {
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                m(static_cast<Eigen::Index>(perm[r]), static_cast<Eigen::Index>(perm[c]));
        }
    }
    return out;
}

}  // namespace qident
