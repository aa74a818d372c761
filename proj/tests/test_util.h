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

#ifndef QIDENT_TESTS_TEST_UTIL_H
#define QIDENT_TESTS_TEST_UTIL_H

// Test-only oracles. Nothing here goes through the library's index maps,
// so comparisons against library output are two independent routes.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "qident/linalg.h"

namespace qident::oracle {

/// |r><c| on C^n.
inline ComplexMatrix unit(int n, int r, int c) {
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    m(r, c) = 1.0;
    return m;
}

/// Swap of factors i and j on (C^d)^{tensor 3} as
/// sum_{a,b} (|a><b| on i) (x) (|b><a| on j) (x) (1 on the third system).
inline ComplexMatrix swap_by_kron(int i, int j, int d) {
    ComplexMatrix out = ComplexMatrix::Zero(d * d * d, d * d * d);
    for (int a = 0; a < d; a++) {
        for (int b = 0; b < d; b++) {
            ComplexMatrix f[3] = {ComplexMatrix::Identity(d, d), ComplexMatrix::Identity(d, d),
                                  ComplexMatrix::Identity(d, d)};
            f[i] = unit(d, a, b);
            f[j] = unit(d, b, a);
            out += kron(kron(f[0], f[1]), f[2]);
        }
    }
    return out;
}

/// Haar unitary: QR of a complex Ginibre matrix with the phases of R's
/// diagonal moved into Q.
inline ComplexMatrix haar_unitary(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    ComplexMatrix z(n, n);
    for (int r = 0; r < n; r++) {
        for (int c = 0; c < n; c++) {
            z(r, c) = Complex(g(rng), g(rng));
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix rmat = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < n; k++) {
        const Complex diag = rmat(k, k);
        q.col(k) *= diag / std::abs(diag);
    }
    return q;
}

inline ComplexMatrix cube(const ComplexMatrix &u) {
    return kron(kron(u, u), u);
}

/// Number of eigenvalues of a Hermitian matrix within tol of value.
inline int count_eigenvalues_near(const RealVector &eigs, double value, double tol) {
    int n = 0;
    for (Eigen::Index k = 0; k < eigs.size(); k++) {
        if (std::abs(eigs[k] - value) <= tol) {
            n++;
        }
    }
    return n;
}

inline double max_abs(const ComplexMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace qident::oracle

#endif  // QIDENT_TESTS_TEST_UTIL_H
