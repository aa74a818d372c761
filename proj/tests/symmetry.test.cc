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

#include "qident/symmetry.h"

#include <random>

#include "gtest/gtest.h"
#include "qident/errors.h"
#include "test_util.h"

using namespace qident;
using qident::oracle::count_eigenvalues_near;
using qident::oracle::max_abs;
using qident::oracle::swap_by_kron;

namespace {

double projector_defect(const ComplexMatrix &p) {
    return std::max(operator_norm(p * p - p), operator_norm(p - p.adjoint()));
}

ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) {
    return a * b - b * a;
}

template <typename F>
void expect_error(ErrorCode code, F f) {
    try {
        f();
        ADD_FAILURE() << "expected " << error_code_name(code);
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

}  // namespace

TEST(symmetry, transposition_defining_action_d2) {
    ComplexMatrix t = transposition(1, 2, 2);
    for (int a = 0; a < 2; a++) {
        for (int b = 0; b < 2; b++) {
            for (int c = 0; c < 2; c++) {
                ComplexVector in = ComplexVector::Zero(8);
                in[a * 4 + b * 2 + c] = 1;
                ComplexVector expected = ComplexVector::Zero(8);
                expected[a * 4 + c * 2 + b] = 1;
                EXPECT_EQ(t * in, expected) << a << b << c;
            }
        }
    }
}

TEST(symmetry, transposition_matches_kron_construction) {
    for (int d = 1; d <= 4; d++) {
        for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
            EXPECT_EQ(transposition(i, j, d), swap_by_kron(i, j, d)) << d << " " << i << j;
            EXPECT_EQ(transposition(j, i, d), transposition(i, j, d));
        }
    }
}

TEST(symmetry, transposition_is_involution) {
    for (int d = 2; d <= 4; d++) {
        for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
            ComplexMatrix t = transposition(i, j, d);
            EXPECT_EQ(t * t, identity(static_cast<std::size_t>(d * d * d)));
            EXPECT_EQ(t, t.adjoint());
        }
    }
}

TEST(symmetry, transposition_trace_matches_basis_count) {
    for (int d = 1; d <= 5; d++) {
        // Oracle: basis states fixed by the swap of systems 0 and 1.
        int fixed = 0;
        for (int a = 0; a < d; a++) {
            for (int b = 0; b < d; b++) {
                for (int c = 0; c < d; c++) {
                    fixed += a == b;
                }
            }
        }
        EXPECT_EQ(fixed, d * d);
        EXPECT_DOUBLE_EQ(transposition(0, 1, d).trace().real(), fixed);
    }
}

TEST(symmetry, transposition_rejects_bad_indices) {
    expect_error(ErrorCode::kBadSystemIndex, [] { transposition(1, 1, 2); });
    expect_error(ErrorCode::kBadSystemIndex, [] { transposition(0, 3, 2); });
    expect_error(ErrorCode::kBadSystemIndex, [] { transposition(-1, 2, 2); });
    expect_error(ErrorCode::kBadSystemIndex, [] { pair_projectors(2, 2, 3); });
}

TEST(symmetry, young_projector_traces) {
    SectorProjectors p2 = young_projectors(2);
    EXPECT_NEAR(p2.symmetric.trace().real(), 4, 1e-12);
    EXPECT_NEAR(p2.antisymmetric.trace().real(), 0, 1e-12);
    EXPECT_NEAR(p2.mixed.trace().real(), 4, 1e-12);

    SectorProjectors p3 = young_projectors(3);
    EXPECT_NEAR(p3.symmetric.trace().real(), 10, 1e-12);
    EXPECT_NEAR(p3.antisymmetric.trace().real(), 1, 1e-12);
    EXPECT_NEAR(p3.mixed.trace().real(), 16, 1e-12);

    for (int d = 1; d <= 5; d++) {
        SectorProjectors p = young_projectors(d);
        DimensionTable t = dimension_table(d);
        for (Sector s : {Sector::kSymmetric, Sector::kAntisymmetric, Sector::kMixed}) {
            EXPECT_NEAR(p[s].trace().real(), static_cast<double>(t.sector(s)), 1e-10);
        }
    }
}

TEST(symmetry, young_projectors_match_products_of_swaps) {
    for (int d = 1; d <= 4; d++) {
        ComplexMatrix t01 = swap_by_kron(0, 1, d), t02 = swap_by_kron(0, 2, d), t12 = swap_by_kron(1, 2, d);
        ComplexMatrix id = identity(static_cast<std::size_t>(d * d * d));
        ComplexMatrix cycles = t01 * t02 + t02 * t01;
        SectorProjectors p = young_projectors(d);
        EXPECT_LE(max_abs(p.symmetric - (id + t01 + t02 + t12 + cycles) / 6.0), 1e-15);
        EXPECT_LE(max_abs(p.antisymmetric - (id - t01 - t02 - t12 + cycles) / 6.0), 1e-15);
    }
}

TEST(symmetry, sector_projectors_are_orthogonal_and_complete) {
    for (int d = 1; d <= 4; d++) {
        SectorProjectors p = young_projectors(d);
        const auto n = static_cast<std::size_t>(d * d * d);
        EXPECT_LE(projector_defect(p.symmetric), 1e-12);
        EXPECT_LE(projector_defect(p.antisymmetric), 1e-12);
        EXPECT_LE(projector_defect(p.mixed), 1e-12);
        EXPECT_LE(operator_norm(p.symmetric * p.antisymmetric), 1e-12);
        EXPECT_LE(operator_norm(p.symmetric * p.mixed), 1e-12);
        EXPECT_LE(operator_norm(p.antisymmetric * p.mixed), 1e-12);
        EXPECT_LE(operator_norm(p.symmetric + p.antisymmetric + p.mixed - identity(n)), 1e-12);
    }
}

TEST(symmetry, pair_projectors) {
    for (int d = 1; d <= 4; d++) {
        // Oracle: tr S(01) = sum over basis of (1 + [x0 == x1]) / 2.
        double oracle = 0;
        for (int a = 0; a < d; a++) {
            for (int b = 0; b < d; b++) {
                for (int c = 0; c < d; c++) {
                    oracle += 0.5 * (1 + (a == b));
                }
            }
        }
        EXPECT_DOUBLE_EQ(oracle, d * d * (d + 1) / 2.0);
        for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
            PairProjectors p = pair_projectors(i, j, d);
            EXPECT_NEAR(p.symmetric.trace().real(), oracle, 1e-12);
            EXPECT_LE(operator_norm(p.antisymmetric * p.symmetric), 1e-12);
            EXPECT_LE(operator_norm(p.symmetric + p.antisymmetric - identity(static_cast<std::size_t>(d * d * d))),
                      1e-12);
            EXPECT_LE(projector_defect(p.symmetric), 1e-12);
            EXPECT_LE(projector_defect(p.antisymmetric), 1e-12);
        }
    }
    RealVector e = hermitian_eigenvalues(pair_projectors(0, 1, 2).symmetric);
    EXPECT_EQ(count_eigenvalues_near(e, 1.0, 1e-10), 3 * 2);
}

TEST(symmetry, exchange_operator_identities) {
    for (int d = 2; d <= 4; d++) {
        ExchangeOperators x = build_exchange_operators(d);
        SectorProjectors p = young_projectors(d);
        const ComplexMatrix &dm = x.difference;
        const ComplexMatrix &am = x.average;
        const auto n = static_cast<std::size_t>(d * d * d);
        EXPECT_TRUE(is_hermitian(dm, 1e-15));
        EXPECT_TRUE(is_hermitian(am, 1e-15));
        EXPECT_LE(operator_norm(dm * dm - 0.75 * p.mixed), 1e-12);
        EXPECT_LE(operator_norm(am * am + dm * dm - identity(n)), 1e-12);
        EXPECT_LE(operator_norm(dm * am + am * dm), 1e-12);
    }
}

TEST(symmetry, exchange_average_on_mixed_sector_is_plus_minus_half) {
    for (int d = 2; d <= 4; d++) {
        ExchangeOperators x = build_exchange_operators(d);
        SectorProjectors p = young_projectors(d);
        const auto half = static_cast<int>(dimension_table(d).mixed / 2);
        RealVector a_eigs = hermitian_eigenvalues(compress_to_range(x.average, p.mixed));
        EXPECT_EQ(count_eigenvalues_near(a_eigs, 0.5, 1e-8), half);
        EXPECT_EQ(count_eigenvalues_near(a_eigs, -0.5, 1e-8), half);
        RealVector d_eigs = hermitian_eigenvalues(compress_to_range(x.difference, p.mixed));
        EXPECT_EQ(count_eigenvalues_near(d_eigs, std::sqrt(3.0) / 2, 1e-8), half);
        EXPECT_EQ(count_eigenvalues_near(d_eigs, -std::sqrt(3.0) / 2, 1e-8), half);
    }
}

TEST(symmetry, dimension_table_formulas) {
    for (std::int64_t d = 1; d <= 8; d++) {
        // Oracle: count nondecreasing index tuples (multisets) of length n.
        std::array<std::int64_t, 3> multisets{};
        for (std::int64_t a = 0; a < d; a++) {
            multisets[0]++;
            for (std::int64_t b = a; b < d; b++) {
                multisets[1]++;
                for (std::int64_t c = b; c < d; c++) {
                    multisets[2]++;
                }
            }
        }
        DimensionTable t = dimension_table(d);
        EXPECT_EQ(t.symmetric_power, multisets);
        EXPECT_EQ(t.symmetric, multisets[2]);
        EXPECT_EQ(t.symmetric + t.antisymmetric + t.mixed, d * d * d);
        EXPECT_EQ(t.antisymmetric, d * (d - 1) * (d - 2) / 6);
        EXPECT_EQ(3 * t.mixed, 2 * d * (d * d - 1));
    }
}

TEST(symmetry, mixed_dimension_split_exact) {
    for (int da = 1; da <= 6; da++) {
        for (int db = 1; db <= 6; db++) {
            MixedDimensionSplit s = mixed_dimension_split(da, db);
            EXPECT_TRUE(s.holds()) << da << "x" << db << ": " << s.lhs_twice << " vs " << s.rhs_twice;
        }
    }
}

TEST(symmetry, space_spec_rejects_bad_dimensions) {
    expect_error(ErrorCode::kInvalidDimension, [] { SpaceSpec(0, 2); });
    expect_error(ErrorCode::kInvalidDimension, [] { SpaceSpec(2, -1); });
}

TEST(symmetry, space_spec_index_maps_round_trip) {
    SpaceSpec spec(2, 3);
    EXPECT_EQ(spec.d(), 6);
    EXPECT_EQ(spec.global_dim(), 216u);
    EXPECT_EQ(spec.party_space_dim(Party::kAlice), 8u);
    EXPECT_EQ(spec.party_space_dim(Party::kBob), 27u);
    for (std::size_t g = 0; g < spec.global_dim(); g++) {
        EXPECT_EQ(spec.global_index(spec.party_index(Party::kAlice, g), spec.party_index(Party::kBob, g)), g);
    }
    // |x0 x1 x2> with x_k = a_k * 3 + b_k: take a = (1, 0, 1), b = (2, 0, 1).
    const std::size_t g = ((1 * 3 + 2) * 6 + 0) * 6 + (1 * 3 + 1);
    EXPECT_EQ(spec.party_index(Party::kAlice, g), 0b101u);
    EXPECT_EQ(spec.party_index(Party::kBob, g), (2u * 3 + 0) * 3 + 1);
}

TEST(symmetry, embed_identity_is_identity) {
    SpaceSpec spec(2, 3);
    EXPECT_EQ(embed_party_operator(identity(8), Party::kAlice, spec), identity(216));
    EXPECT_EQ(embed_party_operator(identity(27), Party::kBob, spec), identity(216));
}

TEST(symmetry, embed_matches_interleave_conjugation) {
    std::mt19937_64 rng(21);
    for (auto [da, db] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{1, 2}}) {
        SpaceSpec spec(da, db);
        ComplexMatrix pi = interleave_permutation(spec);
        const auto na = static_cast<int>(spec.party_space_dim(Party::kAlice));
        const auto nb = static_cast<int>(spec.party_space_dim(Party::kBob));
        ComplexMatrix a = oracle::haar_unitary(na, rng);
        ComplexMatrix b = oracle::haar_unitary(nb, rng);
        EXPECT_LE(max_abs(embed_party_operator(a, Party::kAlice, spec) -
                          pi.adjoint() * kron(a, ComplexMatrix::Identity(nb, nb)) * pi),
                  1e-14);
        EXPECT_LE(max_abs(embed_party_operator(b, Party::kBob, spec) -
                          pi.adjoint() * kron(ComplexMatrix::Identity(na, na), b) * pi),
                  1e-14);
        EXPECT_LE(max_abs(embed_product(a, b, spec) - pi.adjoint() * kron(a, b) * pi), 1e-14);
    }
}

TEST(symmetry, embed_rejects_wrong_dimension) {
    SpaceSpec spec(2, 3);
    expect_error(ErrorCode::kDimensionMismatch, [&] { embed_party_operator(identity(27), Party::kAlice, spec); });
    expect_error(ErrorCode::kDimensionMismatch, [&] { embed_product(identity(8), identity(8), spec); });
}

TEST(symmetry, global_swap_factorizes_into_party_swaps) {
    for (auto [da, db] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}, std::pair{1, 3}}) {
        SpaceSpec spec(da, db);
        for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
            ComplexMatrix product = embed_party_operator(transposition(i, j, da), Party::kAlice, spec) *
                                    embed_party_operator(transposition(i, j, db), Party::kBob, spec);
            EXPECT_EQ(product, transposition(i, j, spec.d()));
        }
    }
}

TEST(symmetry, global_pair_projector_decomposes_into_local_ones) {
    for (auto [da, db] : {std::pair{2, 2}, std::pair{2, 3}}) {
        SpaceSpec spec(da, db);
        PairProjectors a = pair_projectors(0, 2, da), b = pair_projectors(0, 2, db);
        ComplexMatrix local = embed_party_operator(a.symmetric, Party::kAlice, spec) *
                                  embed_party_operator(b.symmetric, Party::kBob, spec) +
                              embed_party_operator(a.antisymmetric, Party::kAlice, spec) *
                                  embed_party_operator(b.antisymmetric, Party::kBob, spec);
        EXPECT_LE(operator_norm(local - pair_projectors(0, 2, spec.d()).symmetric), 1e-12);
    }
}

TEST(symmetry, global_sectors_commute_with_embedded_party_sectors) {
    SpaceSpec spec(2, 2);
    SectorProjectors g = young_projectors(4);
    SectorProjectors a = young_projectors(2);
    for (Sector gs : {Sector::kSymmetric, Sector::kAntisymmetric, Sector::kMixed}) {
        for (Sector ls : {Sector::kSymmetric, Sector::kMixed}) {
            EXPECT_LE(operator_norm(commutator(g[gs], embed_party_operator(a[ls], Party::kAlice, spec))), 1e-12);
            EXPECT_LE(operator_norm(commutator(g[gs], embed_party_operator(a[ls], Party::kBob, spec))), 1e-12);
        }
    }
}

TEST(symmetry, apply_party_operator_matches_embedding) {
    std::mt19937_64 rng(4);
    SpaceSpec spec(2, 3);
    ComplexMatrix a = oracle::haar_unitary(8, rng);
    ComplexMatrix b = oracle::haar_unitary(27, rng);
    ComplexVector v = oracle::haar_unitary(216, rng).col(0);
    EXPECT_LE((apply_party_operator(a, Party::kAlice, spec, v) - embed_party_operator(a, Party::kAlice, spec) * v)
                  .cwiseAbs()
                  .maxCoeff(),
              1e-13);
    EXPECT_LE((apply_party_operator(b, Party::kBob, spec, v) - embed_party_operator(b, Party::kBob, spec) * v)
                  .cwiseAbs()
                  .maxCoeff(),
              1e-13);
}

TEST(symmetry, symmetric_projector_small_n) {
    EXPECT_EQ(symmetric_projector(1, 3), identity(3));
    for (int d = 1; d <= 4; d++) {
        ComplexMatrix s2 = symmetric_projector(2, d);
        EXPECT_NEAR(s2.trace().real(), d * (d + 1) / 2.0, 1e-12);
        EXPECT_LE(projector_defect(s2), 1e-12);
    }
    EXPECT_EQ(symmetric_projector(3, 3), young_projectors(3).symmetric);
}

TEST(symmetry, three_system_bundle_is_consistent) {
    ThreeSystemOperators ops(3);
    EXPECT_EQ(ops.swap12, transposition(1, 2, 3));
    EXPECT_LE(max_abs(ops.pair02.antisymmetric - pair_projectors(0, 2, 3).antisymmetric), 1e-15);
    EXPECT_LE(max_abs(ops.exchange.average - build_exchange_operators(3).average), 1e-15);
}
