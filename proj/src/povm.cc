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

#include "qident/povm.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "qident/errors.h"

namespace qident {

namespace {

void require_povm_dim(const Povm &p, const SpaceSpec &spec) {
    for (const ComplexMatrix &e : p.elements) {
        if (static_cast<std::size_t>(e.rows()) != spec.global_dim() ||
            static_cast<std::size_t>(e.cols()) != spec.global_dim()) {
            throw Error(ErrorCode::kDimensionMismatch, "POVM element has dimension " + std::to_string(e.rows()) +
                                                           ", expected " + std::to_string(spec.global_dim()));
        }
    }
}

// e * T(ij): column c of the product is column tau(c) of e.
ComplexMatrix times_transposition(const ComplexMatrix &e, int i, int j, int d) {
    std::vector<std::size_t> tau = transposition_map(i, j, d);
    ComplexMatrix out(e.rows(), e.cols());
    for (std::size_t c = 0; c < tau.size(); c++) {
        out.col(static_cast<Eigen::Index>(c)) = e.col(static_cast<Eigen::Index>(tau[c]));
    }
    return out;
}

// Local pieces shared by the separable builders.
struct PartyBlocks {
    explicit PartyBlocks(int d) : ops(d) {
        mixed_sym02 = ops.sectors.mixed * ops.pair02.symmetric;
        mixed_anti02 = ops.sectors.mixed * ops.pair02.antisymmetric;
    }

    ThreeSystemOperators ops;
    ComplexMatrix mixed_sym02;
    ComplexMatrix mixed_anti02;
};

}  // namespace

double SeparableCoefficients::mixed_block_top_eigenvalue() const {
    return x_spectrum(beta1, beta2)[2];
}

bool SeparableCoefficients::feasible(double tol) const {
    for (double a : alpha) {
        if (!(a >= 0.0 && a <= 2.0 / 3.0 + tol)) {
            return false;
        }
    }
    if (!(beta1 >= 0.0 && beta2 >= 0.0)) {
        return false;
    }
    return mixed_block_top_eigenvalue() <= 1.0 + tol;
}

SeparableCoefficients SeparableCoefficients::optimal() {
    SeparableCoefficients c;
    c.alpha = {2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0};
    c.beta1 = 0.5;
    c.beta2 = 0.5;
    return c;
}

Povm global_optimal_povm(int d) {
    ThreeSystemOperators ops(d);
    const ComplexMatrix &mixed = ops.sectors.mixed;
    Povm p;
    p.elements[1] = (2.0 / 3.0) * mixed * ops.pair02.antisymmetric;
    p.elements[2] = (2.0 / 3.0) * mixed * ops.pair01.antisymmetric;
    p.elements[0] = (1.0 / 3.0) * mixed * (ops.identity + 2.0 * ops.exchange.average) + ops.sectors.symmetric +
                    ops.sectors.antisymmetric;
    return p;
}

Povm separable_povm(const SpaceSpec &spec, const SeparableCoefficients &c) {
    if (!c.feasible()) {
        throw Error(ErrorCode::kInfeasibleCoefficients,
                    "alpha must lie in [0, 2/3] and the mixed-block top eigenvalue " +
                        std::to_string(c.mixed_block_top_eigenvalue()) + " must not exceed 1");
    }
    PartyBlocks a(spec.d_a());
    PartyBlocks b(spec.d_b());

    ComplexMatrix e1 = zeros(spec.global_dim());
    auto add = [&](double w, const ComplexMatrix &alice, const ComplexMatrix &bob) {
        if (w != 0.0) {
            e1 += w * embed_product(alice, bob, spec);
        }
    };
    add(c.alpha[0], a.ops.sectors.symmetric, b.mixed_anti02);
    add(c.alpha[1], a.ops.sectors.antisymmetric, b.mixed_sym02);
    add(c.alpha[2], a.mixed_sym02, b.ops.sectors.antisymmetric);
    add(c.alpha[3], a.mixed_anti02, b.ops.sectors.symmetric);
    add(c.beta1, a.mixed_sym02, b.mixed_anti02);
    add(c.beta2, a.mixed_anti02, b.mixed_sym02);

    Povm p;
    p.elements[2] = permute_indices(e1, transposition_map(1, 2, spec.d()));
    p.elements[0] = identity(spec.global_dim()) - e1 - p.elements[2];
    p.elements[1] = std::move(e1);
    return p;
}

Povm optimal_separable_povm(const SpaceSpec &spec) {
    return separable_povm(spec, SeparableCoefficients::optimal());
}

double trace_with_pair_symmetric(const ComplexMatrix &e, int i, int j, int d) {
    std::vector<std::size_t> tau = transposition_map(i, j, d);
    if (static_cast<std::size_t>(e.rows()) != tau.size() || e.rows() != e.cols()) {
        throw Error(ErrorCode::kDimensionMismatch, "operator dimension does not match (C^d)^3");
    }
    // tr[e (1 + T) / 2] with tr[e T] = sum_r e(r, tau(r)).
    Complex swapped = 0;
    for (std::size_t r = 0; r < tau.size(); r++) {
        swapped += e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(tau[r]));
    }
    return 0.5 * (e.trace() + swapped).real();
}

double exact_success_probability(const Povm &p, const SpaceSpec &spec) {
    require_povm_dim(p, spec);
    const double d1 = spec.d();
    const double d2 = d1 * (d1 + 1) / 2;
    const double t1 = trace_with_pair_symmetric(p[1], 0, 1, spec.d());
    const double t2 = trace_with_pair_symmetric(p[2], 0, 2, spec.d());
    return (t1 + t2) / (2 * d2 * d1);
}

double separable_success_closed_form(const SpaceSpec &spec, const SeparableCoefficients &c) {
    const DimensionTable a = dimension_table(spec.d_a());
    const DimensionTable b = dimension_table(spec.d_b());
    const double sector_terms = c.alpha[0] * static_cast<double>(a.symmetric * b.mixed) +
                                c.alpha[1] * static_cast<double>(a.antisymmetric * b.mixed) +
                                c.alpha[2] * static_cast<double>(a.mixed * b.antisymmetric) +
                                c.alpha[3] * static_cast<double>(a.mixed * b.symmetric);
    const double trace = 3.0 / 8.0 * sector_terms + 3.0 / 32.0 * (c.beta1 + c.beta2) * static_cast<double>(a.mixed * b.mixed);
    const double d1 = spec.d();
    const double d2 = d1 * (d1 + 1) / 2;
    return trace / (d2 * d1);
}

double closed_form_global(std::int64_t d) {
    if (d < 1) {
        throw Error(ErrorCode::kInvalidDimension, "closed_form_global needs d >= 1");
    }
    const auto x = static_cast<double>(d);
    return (x - 1) / (3 * x);
}

double closed_form_separable(std::int64_t d_a, std::int64_t d_b) {
    if (d_a < 1 || d_b < 1) {
        throw Error(ErrorCode::kInvalidDimension, "closed_form_separable needs d_a, d_b >= 1");
    }
    const auto a = static_cast<double>(d_a);
    const auto b = static_cast<double>(d_b);
    return (11 * a * a * b * b + a * a + b * b - 13) / (36 * a * b * (a * b + 1));
}

std::array<double, 4> x_spectrum(double beta1, double beta2) {
    const double beta = 0.5 * (beta1 + beta2);
    const double delta = 0.5 * (beta1 - beta2);
    const double root = std::sqrt(9.0 / 16.0 * beta * beta + delta * delta);
    return {0.0, 1.5 * beta, 1.25 * beta + root, 1.25 * beta - root};
}

ComplexMatrix mixed_block_operator(const SpaceSpec &spec, double beta1, double beta2) {
    ThreeSystemOperators a(spec.d_a());
    ThreeSystemOperators b(spec.d_b());
    ComplexMatrix x = beta1 * (embed_product(a.pair02.symmetric, b.pair02.antisymmetric, spec) +
                               embed_product(a.pair01.symmetric, b.pair01.antisymmetric, spec)) +
                      beta2 * (embed_product(a.pair02.antisymmetric, b.pair02.symmetric, spec) +
                               embed_product(a.pair01.antisymmetric, b.pair01.symmetric, spec));
    ComplexMatrix block = embed_product(a.sectors.mixed, b.sectors.mixed, spec);
    return block * x * block;
}

ValidationReport validate(const Povm &p, const SpaceSpec &spec) {
    require_povm_dim(p, spec);
    ValidationReport r;
    ComplexMatrix total = zeros(spec.global_dim());
    bool ok = true;
    for (std::size_t k = 0; k < p.elements.size(); k++) {
        const ComplexMatrix &e = p.elements[k];
        r.hermiticity_defect[k] = hermiticity_defect(e);
        ComplexMatrix h = (e + e.adjoint()) * 0.5;
        r.min_eigenvalue[k] = h.rows() == 0 ? 0.0 : hermitian_eigenvalues(h).minCoeff();
        ok = ok && r.hermiticity_defect[k] <= kHermiticityTol && r.min_eigenvalue[k] >= -kEigenClamp;
        total += e;
    }
    r.completeness_residual = operator_norm(total - identity(spec.global_dim()));
    ComplexMatrix e1s02 = (p[1] + times_transposition(p[1], 0, 2, spec.d())) * 0.5;
    ComplexMatrix e2s01 = (p[2] + times_transposition(p[2], 0, 1, spec.d())) * 0.5;
    r.no_error_residuals = {operator_norm(e1s02), operator_norm(e2s01)};
    r.pass = ok && r.completeness_residual <= kIdentityTol && r.no_error_residuals[0] <= kIdentityTol &&
             r.no_error_residuals[1] <= kIdentityTol;
    return r;
}

double exchange_symmetry_residual(const Povm &p, const SpaceSpec &spec) {
    require_povm_dim(p, spec);
    std::vector<std::size_t> tau = transposition_map(1, 2, spec.d());
    double first = operator_norm(p[2] - permute_indices(p[1], tau));
    double inconclusive = operator_norm(p[0] - permute_indices(p[0], tau));
    return std::max(first, inconclusive);
}

}  // namespace qident
