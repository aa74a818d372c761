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

#ifndef QIDENT_POVM_H
#define QIDENT_POVM_H

#include <array>
#include <cstdint>

#include "qident/linalg.h"
#include "qident/symmetry.h"

namespace qident {

/// Outcome 0 is inconclusive; outcome mu = 1, 2 names reference state mu.
inline constexpr int kNumOutcomes = 3;

struct Povm {
    std::array<ComplexMatrix, kNumOutcomes> elements;

    const ComplexMatrix &operator[](int outcome) const {
        return elements[static_cast<std::size_t>(outcome)];
    }
    std::size_t dim() const {
        return static_cast<std::size_t>(elements[0].rows());
    }
};

/// Weights of the six party-product terms allowed in the first element of an
/// exchange-symmetric, locally unitary-invariant, error-free separable POVM:
///
///   alpha[0] S^a        (x) M^b A^b(02)
///   alpha[1] A^a        (x) M^b S^b(02)
///   alpha[2] M^a S^a(02) (x) A^b
///   alpha[3] M^a A^a(02) (x) S^b
///   beta1    M^a S^a(02) (x) M^b A^b(02)
///   beta2    M^a A^a(02) (x) M^b S^b(02)
///
/// where S, A, M without pair labels are the three-system sector projectors.
struct SeparableCoefficients {
    std::array<double, 4> alpha{};
    double beta1 = 0.0;
    double beta2 = 0.0;

    double beta_mean() const {
        return 0.5 * (beta1 + beta2);
    }
    double beta_half_difference() const {
        return 0.5 * (beta1 - beta2);
    }

    /// Largest eigenvalue of the first-plus-second element on the
    /// mixed (x) mixed block.
    double mixed_block_top_eigenvalue() const;

    /// alpha_i in [0, 2/3] and the mixed-block top eigenvalue at most 1.
    bool feasible(double tol = 1e-12) const;

    static SeparableCoefficients optimal();
};

struct ValidationReport {
    std::array<double, kNumOutcomes> min_eigenvalue{};
    std::array<double, kNumOutcomes> hermiticity_defect{};
    double completeness_residual = 0.0;
    /// ||E1 S(02)||, ||E2 S(01)||.
    std::array<double, 2> no_error_residuals{};
    bool pass = false;
};

/// E1 = 2/3 M A(02), E2 = 2/3 M A(01), E0 = 1/3 M (1 + 2 A) + S + A_3 on
/// (C^d)^{tensor 3}, with A the exchange average.
Povm global_optimal_povm(int d);

/// Throws InfeasibleCoefficients if !c.feasible().
Povm separable_povm(const SpaceSpec &spec, const SeparableCoefficients &c);

Povm optimal_separable_povm(const SpaceSpec &spec);

/// (1 / (2 d_2 d_1)) (tr[E1 S(01)] + tr[E2 S(02)]) for global dimension
/// spec.d(). Throws DimensionMismatch.
double exact_success_probability(const Povm &p, const SpaceSpec &spec);

/// tr[E S(ij)] using the permutation structure of S(ij).
double trace_with_pair_symmetric(const ComplexMatrix &e, int i, int j, int d);

/// Success probability of separable_povm(spec, c) from sector dimensions alone.
double separable_success_closed_form(const SpaceSpec &spec, const SeparableCoefficients &c);

/// (d - 1) / (3 d).
double closed_form_global(std::int64_t d);

/// (11 da^2 db^2 + da^2 + db^2 - 13) / (36 da db (da db + 1)).
double closed_form_separable(std::int64_t d_a, std::int64_t d_b);

/// The four block eigenvalues {0, 3/2 beta, lambda_+, lambda_-} of the
/// mixed (x) mixed part of E1 + E2 with
///   lambda_pm = 5/4 beta +- sqrt(9/16 beta^2 + delta^2).
std::array<double, 4> x_spectrum(double beta1, double beta2);

/// The same block operator built numerically on the global space:
/// (M^a (x) M^b) X (M^a (x) M^b) with
///   X = beta1 (S^a(02) A^b(02) + S^a(01) A^b(01))
///     + beta2 (A^a(02) S^b(02) + A^a(01) S^b(01)).
ComplexMatrix mixed_block_operator(const SpaceSpec &spec, double beta1, double beta2);

ValidationReport validate(const Povm &p, const SpaceSpec &spec);

/// max(||E2 - T(12) E1 T(12)||, ||E0 - T(12) E0 T(12)||).
double exchange_symmetry_residual(const Povm &p, const SpaceSpec &spec);

}  // namespace qident

#endif  // QIDENT_POVM_H
