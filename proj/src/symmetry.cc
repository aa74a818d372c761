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

#include <algorithm>
#include <numeric>
#include <string>

#include "qident/errors.h"

namespace qident {

namespace {

std::size_t ipow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int k = 0; k < exp; k++) {
        r *= base;
    }
    return r;
}

void require_dimension(int d) {
    if (d < 1) {
        throw Error(ErrorCode::kInvalidDimension, "dimension must be >= 1, got " + std::to_string(d));
    }
}

int permutation_sign(std::span<const int> images) {
    int inversions = 0;
    for (std::size_t i = 0; i < images.size(); i++) {
        for (std::size_t j = i + 1; j < images.size(); j++) {
            if (images[i] > images[j]) {
                inversions++;
            }
        }
    }
    return inversions % 2 == 0 ? 1 : -1;
}

// sum over all permutations pi of n systems of weight(pi) * T_pi
template <typename Weight>
ComplexMatrix permutation_sum(int n, int d, Weight weight) {
    const std::size_t dim = ipow(static_cast<std::size_t>(d), n);
    ComplexMatrix out = zeros(dim);
    std::vector<int> images(static_cast<std::size_t>(n));
    std::iota(images.begin(), images.end(), 0);
    do {
        double w = weight(std::span<const int>(images));
        if (w == 0.0) {
            continue;
        }
        std::vector<std::size_t> map = permutation_index_map(images, d);
        for (std::size_t x = 0; x < dim; x++) {
            out(static_cast<Eigen::Index>(map[x]), static_cast<Eigen::Index>(x)) += w;
        }
    } while (std::next_permutation(images.begin(), images.end()));
    return out;
}

double factorial(int n) {
    double f = 1;
    for (int k = 2; k <= n; k++) {
        f *= k;
    }
    return f;
}

}  // namespace

std::int64_t DimensionTable::sector(Sector s) const {
    switch (s) {
        case Sector::kSymmetric:
            return symmetric;
        case Sector::kAntisymmetric:
            return antisymmetric;
        case Sector::kMixed:
            return mixed;
    }
    return 0;
}

std::int64_t symmetric_power_dimension(int n, std::int64_t d) {
    // C(n + d - 1, n), computed incrementally to stay exact.
    std::int64_t r = 1;
    for (int k = 1; k <= n; k++) {
        r = r * (d - 1 + k) / k;
    }
    return r;
}

DimensionTable dimension_table(std::int64_t d) {
    DimensionTable t;
    t.d = d;
    for (int n = 1; n <= 3; n++) {
        t.symmetric_power[static_cast<std::size_t>(n - 1)] = symmetric_power_dimension(n, d);
    }
    t.symmetric = d * (d + 1) * (d + 2) / 6;
    t.antisymmetric = d * (d - 1) * (d - 2) / 6;
    t.mixed = 2 * d * (d * d - 1) / 3;
    return t;
}

MixedDimensionSplit mixed_dimension_split(std::int64_t d_a, std::int64_t d_b) {
    DimensionTable a = dimension_table(d_a);
    DimensionTable b = dimension_table(d_b);
    DimensionTable g = dimension_table(d_a * d_b);
    MixedDimensionSplit out;
    out.lhs_twice = 2 * g.mixed;
    out.rhs_twice = 2 * (a.symmetric * b.mixed + a.antisymmetric * b.mixed + a.mixed * b.antisymmetric +
                         a.mixed * b.symmetric) +
                    a.mixed * b.mixed;
    return out;
}

SpaceSpec::SpaceSpec(int d_a, int d_b) : d_a_(d_a), d_b_(d_b) {
    require_dimension(d_a);
    require_dimension(d_b);
    auto maps = std::make_shared<InterleaveMaps>();
    const auto da = static_cast<std::size_t>(d_a);
    const auto db = static_cast<std::size_t>(d_b);
    const std::size_t dd = da * db;
    const std::size_t n = dd * dd * dd;
    maps->alice.resize(n);
    maps->bob.resize(n);
    maps->global.resize(n);
    for (std::size_t g = 0; g < n; g++) {
        std::size_t alice = 0;
        std::size_t bob = 0;
        std::size_t rest = g;
        std::array<std::size_t, kNumSystems> x{};
        for (int k = kNumSystems - 1; k >= 0; k--) {
            x[static_cast<std::size_t>(k)] = rest % dd;
            rest /= dd;
        }
        for (std::size_t xk : x) {
            alice = alice * da + xk / db;
            bob = bob * db + xk % db;
        }
        maps->alice[g] = alice;
        maps->bob[g] = bob;
        maps->global[alice * db * db * db + bob] = g;
    }
    maps_ = std::move(maps);
}

std::size_t SpaceSpec::global_dim() const {
    return ipow(static_cast<std::size_t>(d()), kNumSystems);
}

std::size_t SpaceSpec::party_space_dim(Party p) const {
    return ipow(static_cast<std::size_t>(party_dim(p)), kNumSystems);
}

std::vector<std::size_t> permutation_index_map(std::span<const int> images, int d) {
    require_dimension(d);
    const int n = static_cast<int>(images.size());
    std::vector<int> seen(images.size(), 0);
    for (int img : images) {
        if (img < 0 || img >= n || seen[static_cast<std::size_t>(img)]++) {
            throw Error(ErrorCode::kBadSystemIndex, "not a permutation of the systems");
        }
    }
    const auto ud = static_cast<std::size_t>(d);
    const std::size_t dim = ipow(ud, n);
    std::vector<std::size_t> map(dim);
    std::vector<std::size_t> x(images.size()), y(images.size());
    for (std::size_t idx = 0; idx < dim; idx++) {
        std::size_t rest = idx;
        for (int k = n - 1; k >= 0; k--) {
            x[static_cast<std::size_t>(k)] = rest % ud;
            rest /= ud;
        }
        for (std::size_t k = 0; k < images.size(); k++) {
            y[static_cast<std::size_t>(images[k])] = x[k];
        }
        std::size_t out = 0;
        for (std::size_t yk : y) {
            out = out * ud + yk;
        }
        map[idx] = out;
    }
    return map;
}

ComplexMatrix permutation_operator(std::span<const int> images, int d) {
    std::vector<std::size_t> map = permutation_index_map(images, d);
    ComplexMatrix out = zeros(map.size());
    for (std::size_t x = 0; x < map.size(); x++) {
        out(static_cast<Eigen::Index>(map[x]), static_cast<Eigen::Index>(x)) = 1.0;
    }
    return out;
}

std::vector<std::size_t> transposition_map(int i, int j, int d) {
    if (i == j || i < 0 || j < 0 || i >= kNumSystems || j >= kNumSystems) {
        throw Error(ErrorCode::kBadSystemIndex,
                    "transposition needs two distinct systems in {0,1,2}, got (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
    }
    std::array<int, kNumSystems> images{0, 1, 2};
    std::swap(images[static_cast<std::size_t>(i)], images[static_cast<std::size_t>(j)]);
    return permutation_index_map(images, d);
}

ComplexMatrix transposition(int i, int j, int d) {
    std::vector<std::size_t> map = transposition_map(i, j, d);
    ComplexMatrix out = zeros(map.size());
    for (std::size_t x = 0; x < map.size(); x++) {
        out(static_cast<Eigen::Index>(map[x]), static_cast<Eigen::Index>(x)) = 1.0;
    }
    return out;
}

ComplexMatrix symmetric_projector(int n, int d) {
    require_dimension(d);
    if (n < 1) {
        throw Error(ErrorCode::kBadSystemIndex, "need at least one system");
    }
    const double w = 1.0 / factorial(n);
    return permutation_sum(n, d, [w](std::span<const int>) { return w; });
}

const ComplexMatrix &SectorProjectors::operator[](Sector s) const {
    switch (s) {
        case Sector::kSymmetric:
            return symmetric;
        case Sector::kAntisymmetric:
            return antisymmetric;
        case Sector::kMixed:
            break;
    }
    return mixed;
}

SectorProjectors young_projectors(int d) {
    SectorProjectors out;
    out.symmetric = symmetric_projector(kNumSystems, d);
    out.antisymmetric =
        permutation_sum(kNumSystems, d, [](std::span<const int> images) { return permutation_sign(images) / 6.0; });
    out.mixed = identity(static_cast<std::size_t>(out.symmetric.rows())) - out.symmetric - out.antisymmetric;
    return out;
}

PairProjectors pair_projectors(int i, int j, int d) {
    ComplexMatrix t = transposition(i, j, d);
    ComplexMatrix id = identity(static_cast<std::size_t>(t.rows()));
    return PairProjectors{(id + t) * 0.5, (id - t) * 0.5};
}

ExchangeOperators build_exchange_operators(int d) {
    ComplexMatrix t01 = transposition(0, 1, d);
    ComplexMatrix t02 = transposition(0, 2, d);
    return ExchangeOperators{(t01 - t02) * 0.5, (t01 + t02) * 0.5};
}

ThreeSystemOperators::ThreeSystemOperators(int dim)
    : d(dim),
      identity(qident::identity(ipow(static_cast<std::size_t>(dim), kNumSystems))),
      swap01(transposition(0, 1, dim)),
      swap02(transposition(0, 2, dim)),
      swap12(transposition(1, 2, dim)),
      sectors(young_projectors(dim)),
      pair01{(identity + swap01) * 0.5, (identity - swap01) * 0.5},
      pair02{(identity + swap02) * 0.5, (identity - swap02) * 0.5},
      exchange{(swap01 - swap02) * 0.5, (swap01 + swap02) * 0.5} {
}

ComplexMatrix embed_party_operator(const ComplexMatrix &op, Party p, const SpaceSpec &spec) {
    const std::size_t local = spec.party_space_dim(p);
    if (static_cast<std::size_t>(op.rows()) != local || static_cast<std::size_t>(op.cols()) != local) {
        throw Error(ErrorCode::kDimensionMismatch, "party operator has dimension " + std::to_string(op.rows()) +
                                                       ", expected " + std::to_string(local));
    }
    const Party other = p == Party::kAlice ? Party::kBob : Party::kAlice;
    const std::size_t n = spec.global_dim();
    ComplexMatrix out = zeros(n);
    for (std::size_t row = 0; row < n; row++) {
        const std::size_t mine = spec.party_index(p, row);
        const std::size_t theirs = spec.party_index(other, row);
        for (std::size_t c = 0; c < local; c++) {
            const std::size_t col = p == Party::kAlice ? spec.global_index(c, theirs) : spec.global_index(theirs, c);
            out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
                op(static_cast<Eigen::Index>(mine), static_cast<Eigen::Index>(c));
        }
    }
    return out;
}

ComplexMatrix embed_product(const ComplexMatrix &alice_op, const ComplexMatrix &bob_op, const SpaceSpec &spec) {
    const std::size_t na = spec.party_space_dim(Party::kAlice);
    const std::size_t nb = spec.party_space_dim(Party::kBob);
    if (static_cast<std::size_t>(alice_op.rows()) != na || static_cast<std::size_t>(alice_op.cols()) != na ||
        static_cast<std::size_t>(bob_op.rows()) != nb || static_cast<std::size_t>(bob_op.cols()) != nb) {
        throw Error(ErrorCode::kDimensionMismatch, "embed_product operand dimensions do not match the space");
    }
    const std::size_t n = spec.global_dim();
    ComplexMatrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t row = 0; row < n; row++) {
        const auto ra = static_cast<Eigen::Index>(spec.party_index(Party::kAlice, row));
        const auto rb = static_cast<Eigen::Index>(spec.party_index(Party::kBob, row));
        for (std::size_t col = 0; col < n; col++) {
            const auto ca = static_cast<Eigen::Index>(spec.party_index(Party::kAlice, col));
            const auto cb = static_cast<Eigen::Index>(spec.party_index(Party::kBob, col));
            out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = alice_op(ra, ca) * bob_op(rb, cb);
        }
    }
    return out;
}

ComplexMatrix interleave_permutation(const SpaceSpec &spec) {
    const std::size_t n = spec.global_dim();
    const std::size_t nb = spec.party_space_dim(Party::kBob);
    ComplexMatrix out = zeros(n);
    for (std::size_t g = 0; g < n; g++) {
        const std::size_t party_major = spec.party_index(Party::kAlice, g) * nb + spec.party_index(Party::kBob, g);
        out(static_cast<Eigen::Index>(party_major), static_cast<Eigen::Index>(g)) = 1.0;
    }
    return out;
}

ComplexVector apply_party_operator(const ComplexMatrix &op, Party p, const SpaceSpec &spec, const ComplexVector &v) {
    const std::size_t local = spec.party_space_dim(p);
    const std::size_t n = spec.global_dim();
    if (static_cast<std::size_t>(op.rows()) != local || static_cast<std::size_t>(op.cols()) != local ||
        static_cast<std::size_t>(v.size()) != n) {
        throw Error(ErrorCode::kDimensionMismatch, "apply_party_operator operand dimensions do not match the space");
    }
    const Party other = p == Party::kAlice ? Party::kBob : Party::kAlice;
    ComplexVector out = ComplexVector::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t row = 0; row < n; row++) {
        const auto mine = static_cast<Eigen::Index>(spec.party_index(p, row));
        const std::size_t theirs = spec.party_index(other, row);
        Complex acc = 0;
        for (std::size_t c = 0; c < local; c++) {
            const std::size_t col = p == Party::kAlice ? spec.global_index(c, theirs) : spec.global_index(theirs, c);
            acc += op(mine, static_cast<Eigen::Index>(c)) * v[static_cast<Eigen::Index>(col)];
        }
        out[static_cast<Eigen::Index>(row)] = acc;
    }
    return out;
}

}  // namespace qident
