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

#ifndef QIDENT_LOCC_H
#define QIDENT_LOCC_H

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qident/linalg.h"
#include "qident/montecarlo.h"
#include "qident/povm.h"
#include "qident/symmetry.h"

namespace qident {

enum class StepKind { kProjective, kGeneral };

struct StepElement {
    std::string label;
    ComplexMatrix op;       // on the party's triple (C^{d_p})^{tensor 3}
    ComplexMatrix sqrt_op;  // square-root instrument
};

/// One local measurement. The elements sum to `support`, which is the
/// identity for the sector measurements and the party's current sector
/// projector for the follow-up measurements.
struct MeasurementStep {
    std::string id;
    Party party;
    StepKind kind;
    std::vector<StepElement> elements;
    ComplexMatrix support;
};

/// Position in the decision tree. Each outgoing edge corresponds to the
/// element with the same index in the node's step and either continues to
/// another node or terminates with a final label.
struct ProtocolNode {
    struct Edge {
        std::optional<std::size_t> child;
        int final_label = 0;
        /// Branch whose operator lies in the globally antisymmetric sector;
        /// no input of the form phi (x) phi1 (x) phi2 with phi in {phi1, phi2}
        /// can reach it.
        bool unreachable = false;
    };

    std::size_t step = 0;
    std::vector<Edge> edges;
};

struct PathStep {
    std::size_t step = 0;
    std::size_t element = 0;
};

/// A complete root-to-terminal path with its accumulated local operators.
struct ProtocolLeaf {
    std::vector<PathStep> path;
    int final_label = 0;
    bool unreachable = false;
    std::string branch;
    ComplexMatrix alice_product;
    ComplexMatrix bob_product;
};

/// The two-party identification protocol:
///
///  1. Alice and Bob each measure {S, M, A} on their local triple.
///  2. (S,S), (A,A), and the unreachable (S,A), (A,S): inconclusive.
///  3. One side S and the other M: the M side measures
///       e1 = 2/3 M A(02), e2 = 2/3 M A(01), e0 = 1/3 M (1 + 2 A).
///     One side A and the other M: the M side measures
///       e1' = 2/3 M S(02), e2' = 2/3 M S(01), e0' = 1/3 M (1 - 2 A).
///     The outcome is the final label.
///  4. (M,M): Alice measures e_{a1 a2} = 1/2 M X^a(0 k) with k = 3 - a1 and
///     X = A for a2 = 1, S for a2 = 2. Bob then measures {M S(0k), M A(0k)}
///     and the final label is a1 when Bob's outcome equals a2, else 0.
class ProtocolTree {
   public:
    const SpaceSpec &spec() const {
        return spec_;
    }
    const std::vector<MeasurementStep> &steps() const {
        return steps_;
    }
    const std::vector<ProtocolNode> &nodes() const {
        return nodes_;
    }
    const std::vector<ProtocolLeaf> &leaves() const {
        return leaves_;
    }
    const MeasurementStep &step(const std::string &id) const;

    /// Operator of a leaf on the global space.
    ComplexMatrix leaf_operator(const ProtocolLeaf &leaf) const;

   private:
    friend ProtocolTree build_protocol(const SpaceSpec &spec);
    explicit ProtocolTree(SpaceSpec spec) : spec_(std::move(spec)) {
    }

    SpaceSpec spec_;
    std::vector<MeasurementStep> steps_;
    std::vector<ProtocolNode> nodes_;  // nodes_[0] is the root
    std::vector<ProtocolLeaf> leaves_;
};

ProtocolTree build_protocol(const SpaceSpec &spec);

/// Sum of leaf operators grouped by final label.
Povm induced_povm(const ProtocolTree &tree);

struct TranscriptEntry {
    Party party;
    std::string step_id;
    std::string outcome;
};

struct Transcript {
    std::vector<TranscriptEntry> entries;
    int final_label = 0;

    /// "a.sector=M/b.sector=S/a.e=1"; never contains a comma.
    std::string branch() const;
};

/// Minimum probability an outcome needs in order to be sampled.
inline constexpr double kMinBranchProbability = 1e-14;

/// Runs the protocol on phi_in (x) phi1 (x) phi2. Each step samples its
/// outcome by inverse CDF over the elements in order, then applies the
/// square-root instrument. Outcomes below kMinBranchProbability are
/// excluded; NumericalUnderflow if nothing remains.
Transcript simulate_run(const ProtocolTree &tree, const StateVector &phi_in, const StateVector &phi1,
                        const StateVector &phi2, SampleStream &rng);

struct EquivalenceReport {
    /// ||induced E_mu - closed-form separable E_mu||, mu = 0, 1, 2.
    std::array<double, kNumOutcomes> residuals{};
    /// exact_success_probability(induced) - closed_form_separable(d_a, d_b).
    double probability_difference = 0.0;
    /// max over steps of ||sum of elements - support||.
    double step_completeness_residual = 0.0;
    /// max over leaves of the commutator norm of any two embedded elements on the path.
    double max_commutator = 0.0;
    /// max over unreachable leaves of tr[L S(01)] + tr[L S(02)].
    double unreachable_mass = 0.0;

    double max_residual() const;
};

EquivalenceReport verify_equivalence(const ProtocolTree &tree);

/// One protocol run on a fresh Haar pair. Run i uses SampleStream(seed, i):
/// phi1, phi2, then a uniform draw choosing the input (< 1/2 selects phi1),
/// then the protocol's own draws.
struct ProtocolRun {
    std::uint64_t index = 0;
    int true_label = 0;
    Transcript transcript;
};

struct ProtocolRunSummary {
    std::vector<ProtocolRun> runs;
    std::array<std::uint64_t, kNumOutcomes> label_counts{};
    std::uint64_t correct = 0;
    std::uint64_t misidentified = 0;
};

ProtocolRunSummary run_protocol(const ProtocolTree &tree, std::uint64_t n_runs, std::uint64_t seed, int workers = 1);

}  // namespace qident

#endif  // QIDENT_LOCC_H
