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

#ifndef QIDENT_SYMMETRY_H
#define QIDENT_SYMMETRY_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "qident/linalg.h"

namespace qident {

enum class Party { kAlice, kBob };
enum class Sector { kSymmetric, kAntisymmetric, kMixed };

inline constexpr int kNumSystems = 3;

/// Integer dimensions attached to three copies of C^d.
struct DimensionTable {
    std::int64_t d = 0;
    /// Symmetric-subspace dimensions d_1, d_2, d_3 of (C^d)^{tensor n}.
    std::array<std::int64_t, 3> symmetric_power{};
    std::int64_t symmetric = 0;
    std::int64_t antisymmetric = 0;
    std::int64_t mixed = 0;

    std::int64_t sector(Sector s) const;
};

DimensionTable dimension_table(std::int64_t d);

/// Binomial C(n + d - 1, d - 1).
std::int64_t symmetric_power_dimension(int n, std::int64_t d);

/// Both sides of the mixed-sector factorization, doubled so that the
/// half-weight term stays integral:
///   2 dim V_M = 2 (S_a M_b + A_a M_b + M_a A_b + M_a S_b) + M_a M_b.
struct MixedDimensionSplit {
    std::int64_t lhs_twice = 0;
    std::int64_t rhs_twice = 0;
    bool holds() const {
        return lhs_twice == rhs_twice;
    }
};

MixedDimensionSplit mixed_dimension_split(std::int64_t d_a, std::int64_t d_b);

/// Bipartite split C^d = C^{d_a} (x) C^{d_b} of each of the three systems.
///
/// Global basis index of |x0 x1 x2> is (x0 d + x1) d + x2 and each system
/// index decomposes as x_k = x_k^a d_b + x_k^b. The maps between the global
/// index and the two party-local triple indices are built once and shared by
/// copies.
class SpaceSpec {
   public:
    SpaceSpec(int d_a, int d_b);

    int d_a() const {
        return d_a_;
    }
    int d_b() const {
        return d_b_;
    }
    int d() const {
        return d_a_ * d_b_;
    }
    int party_dim(Party p) const {
        return p == Party::kAlice ? d_a_ : d_b_;
    }
    std::size_t global_dim() const;
    std::size_t party_space_dim(Party p) const;

    std::size_t party_index(Party p, std::size_t global) const {
        return (p == Party::kAlice ? maps_->alice : maps_->bob)[global];
    }
    std::size_t global_index(std::size_t alice, std::size_t bob) const {
        return maps_->global[alice * party_space_dim(Party::kBob) + bob];
    }

   private:
    struct InterleaveMaps {
        std::vector<std::size_t> alice;
        std::vector<std::size_t> bob;
        std::vector<std::size_t> global;  // indexed by alice * db^3 + bob
    };

    int d_a_;
    int d_b_;
    std::shared_ptr<const InterleaveMaps> maps_;
};

/// Basis index map of the permutation operator on n systems of dimension d
/// that moves the content of system k to system images[k].
/// T |x> = |map[x]>.
std::vector<std::size_t> permutation_index_map(std::span<const int> images, int d);

ComplexMatrix permutation_operator(std::span<const int> images, int d);

/// Swap of tensor factors i and j of (C^d)^{tensor 3}. Throws BadSystemIndex.
ComplexMatrix transposition(int i, int j, int d);
std::vector<std::size_t> transposition_map(int i, int j, int d);

/// Projector onto the totally symmetric subspace of (C^d)^{tensor n}.
ComplexMatrix symmetric_projector(int n, int d);

struct SectorProjectors {
    ComplexMatrix symmetric;
    ComplexMatrix antisymmetric;
    ComplexMatrix mixed;

    const ComplexMatrix &operator[](Sector s) const;
};

SectorProjectors young_projectors(int d);

struct PairProjectors {
    ComplexMatrix symmetric;      // (1 + T(ij)) / 2
    ComplexMatrix antisymmetric;  // (1 - T(ij)) / 2
};

PairProjectors pair_projectors(int i, int j, int d);

/// difference = (T(01) - T(02)) / 2, average = (T(01) + T(02)) / 2.
struct ExchangeOperators {
    ComplexMatrix difference;
    ComplexMatrix average;
};

ExchangeOperators build_exchange_operators(int d);

/// Everything above for a single dimension, built once.
struct ThreeSystemOperators {
    explicit ThreeSystemOperators(int d);

    int d;
    ComplexMatrix identity;
    ComplexMatrix swap01, swap02, swap12;
    SectorProjectors sectors;
    PairProjectors pair01, pair02;
    ExchangeOperators exchange;
};

/// op acting on party p's triple (C^{d_p})^{tensor 3}, identity on the other
/// party. Throws DimensionMismatch.
ComplexMatrix embed_party_operator(const ComplexMatrix &op, Party p, const SpaceSpec &spec);

/// embed(alice_op, Alice) * embed(bob_op, Bob), built in one pass.
ComplexMatrix embed_product(const ComplexMatrix &alice_op, const ComplexMatrix &bob_op, const SpaceSpec &spec);

/// Permutation matrix Pi with embed_party_operator(op, Alice) equal to
/// Pi^dagger (op (x) I) Pi, mapping |global> to |alice * db^3 + bob>.
ComplexMatrix interleave_permutation(const SpaceSpec &spec);

/// (op on party p) |v> without materializing the global operator.
ComplexVector apply_party_operator(const ComplexMatrix &op, Party p, const SpaceSpec &spec, const ComplexVector &v);

}  // namespace qident

#endif  // QIDENT_SYMMETRY_H
