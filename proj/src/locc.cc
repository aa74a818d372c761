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

#include "qident/locc.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <thread>
#include <utility>

#include "qident/errors.h"

namespace qident {

namespace {

struct ElementSpec {
    std::string label;
    ComplexMatrix op;
};

MeasurementStep make_step(std::string id, Party party, StepKind kind, ComplexMatrix support,
                          std::vector<ElementSpec> elements) {
    MeasurementStep step{std::move(id), party, kind, {}, std::move(support)};
    for (ElementSpec &e : elements) {
        ComplexMatrix root = psd_sqrt(e.op);
        step.elements.push_back(StepElement{std::move(e.label), std::move(e.op), std::move(root)});
    }
    return step;
}

// Steps that depend only on one party's local operators.
struct LocalSteps {
    MeasurementStep sector;
    MeasurementStep e;
    MeasurementStep e_prime;
};

LocalSteps local_steps(Party party, int d) {
    const std::string prefix = party == Party::kAlice ? "a." : "b.";
    ThreeSystemOperators ops(d);
    const ComplexMatrix &m = ops.sectors.mixed;
    const ComplexMatrix &a = ops.exchange.average;
    LocalSteps s{
        make_step(prefix + "sector", party, StepKind::kProjective, ops.identity,
                  {{"S", ops.sectors.symmetric}, {"M", m}, {"A", ops.sectors.antisymmetric}}),
        make_step(prefix + "e", party, StepKind::kGeneral, m,
                  {{"0", (1.0 / 3.0) * m * (ops.identity + 2.0 * a)},
                   {"1", (2.0 / 3.0) * m * ops.pair02.antisymmetric},
                   {"2", (2.0 / 3.0) * m * ops.pair01.antisymmetric}}),
        make_step(prefix + "e_prime", party, StepKind::kGeneral, m,
                  {{"0", (1.0 / 3.0) * m * (ops.identity - 2.0 * a)},
                   {"1", (2.0 / 3.0) * m * ops.pair02.symmetric},
                   {"2", (2.0 / 3.0) * m * ops.pair01.symmetric}}),
    };
    return s;
}

using Edge = ProtocolNode::Edge;

Edge terminal(int label) {
    return Edge{std::nullopt, label, false};
}
Edge unreachable() {
    return Edge{std::nullopt, 0, true};
}
Edge go(std::size_t node) {
    return Edge{node, 0, false};
}

}  // namespace

const MeasurementStep &ProtocolTree::step(const std::string &id) const {
    for (const MeasurementStep &s : steps_) {
        if (s.id == id) {
            return s;
        }
    }
    throw Error(ErrorCode::kBadSystemIndex, "no protocol step named " + id);
}

ComplexMatrix ProtocolTree::leaf_operator(const ProtocolLeaf &leaf) const {
    return embed_product(leaf.alice_product, leaf.bob_product, spec_);
}

ProtocolTree build_protocol(const SpaceSpec &spec) {
    ProtocolTree tree(spec);
    LocalSteps alice = local_steps(Party::kAlice, spec.d_a());
    LocalSteps bob = local_steps(Party::kBob, spec.d_b());

    ThreeSystemOperators a_ops(spec.d_a());
    ThreeSystemOperators b_ops(spec.d_b());
    const ComplexMatrix &ma = a_ops.sectors.mixed;
    const ComplexMatrix &mb = b_ops.sectors.mixed;
    MeasurementStep alice_mm = make_step("a.mm", Party::kAlice, StepKind::kGeneral, ma,
                                         {{"11", 0.5 * ma * a_ops.pair02.antisymmetric},
                                          {"12", 0.5 * ma * a_ops.pair02.symmetric},
                                          {"21", 0.5 * ma * a_ops.pair01.antisymmetric},
                                          {"22", 0.5 * ma * a_ops.pair01.symmetric}});
    MeasurementStep bob_f = make_step("b.f", Party::kBob, StepKind::kProjective, mb,
                                      {{"1", mb * b_ops.pair02.symmetric}, {"2", mb * b_ops.pair02.antisymmetric}});
    MeasurementStep bob_f_prime =
        make_step("b.f_prime", Party::kBob, StepKind::kProjective, mb,
                  {{"1", mb * b_ops.pair01.symmetric}, {"2", mb * b_ops.pair01.antisymmetric}});

    enum StepIndex : std::size_t { kASector, kBSector, kAE, kAEPrime, kBE, kBEPrime, kAMM, kBF, kBFPrime };
    tree.steps_ = {std::move(alice.sector), std::move(bob.sector), std::move(alice.e),      std::move(alice.e_prime),
                   std::move(bob.e),        std::move(bob.e_prime), std::move(alice_mm),     std::move(bob_f),
                   std::move(bob_f_prime)};

    auto &nodes = tree.nodes_;
    auto add = [&nodes](std::size_t step, std::vector<Edge> edges) {
        nodes.push_back(ProtocolNode{step, std::move(edges)});
        return nodes.size() - 1;
    };
    auto outcome_is_label = [&](std::size_t step) {
        return add(step, {terminal(0), terminal(1), terminal(2)});
    };

    // Leaves first so that parents can refer to them; the root is moved to
    // the front afterwards.
    const std::size_t a_e = outcome_is_label(kAE);
    const std::size_t a_e_prime = outcome_is_label(kAEPrime);
    const std::size_t b_e = outcome_is_label(kBE);
    const std::size_t b_e_prime = outcome_is_label(kBEPrime);
    // Bob's outcome b in {1, 2} against Alice's a2.
    const std::size_t f_a2_1 = add(kBF, {terminal(1), terminal(0)});
    const std::size_t f_a2_2 = add(kBF, {terminal(0), terminal(1)});
    const std::size_t fp_a2_1 = add(kBFPrime, {terminal(2), terminal(0)});
    const std::size_t fp_a2_2 = add(kBFPrime, {terminal(0), terminal(2)});
    const std::size_t mm = add(kAMM, {go(f_a2_1), go(f_a2_2), go(fp_a2_1), go(fp_a2_2)});
    // Bob's sector given Alice's sector; element order S, M, A.
    const std::size_t bob_after_s = add(kBSector, {terminal(0), go(b_e), unreachable()});
    const std::size_t bob_after_m = add(kBSector, {go(a_e), go(mm), go(a_e_prime)});
    const std::size_t bob_after_a = add(kBSector, {unreachable(), go(b_e_prime), terminal(0)});
    add(kASector, {go(bob_after_s), go(bob_after_m), go(bob_after_a)});

    std::rotate(nodes.rbegin(), nodes.rbegin() + 1, nodes.rend());
    for (ProtocolNode &n : nodes) {
        for (Edge &e : n.edges) {
            if (e.child) {
                *e.child += 1;
            }
        }
    }

    // Enumerate leaves depth-first.
    const std::size_t na = spec.party_space_dim(Party::kAlice);
    const std::size_t nb = spec.party_space_dim(Party::kBob);
    struct Frame {
        std::size_t node;
        std::vector<PathStep> path;
        ComplexMatrix alice;
        ComplexMatrix bob;
    };
    std::vector<Frame> stack;
    stack.push_back({0, {}, identity(na), identity(nb)});
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        const ProtocolNode &node = nodes[f.node];
        const MeasurementStep &s = tree.steps_[node.step];
        for (std::size_t k = node.edges.size(); k-- > 0;) {
            Frame next{0, f.path, f.alice, f.bob};
            next.path.push_back({node.step, k});
            if (s.party == Party::kAlice) {
                next.alice = next.alice * s.elements[k].op;
            } else {
                next.bob = next.bob * s.elements[k].op;
            }
            const Edge &e = node.edges[k];
            if (e.child) {
                next.node = *e.child;
                stack.push_back(std::move(next));
                continue;
            }
            ProtocolLeaf leaf;
            leaf.final_label = e.final_label;
            leaf.unreachable = e.unreachable;
            for (const PathStep &ps : next.path) {
                const MeasurementStep &st = tree.steps_[ps.step];
                if (!leaf.branch.empty()) {
                    leaf.branch += '/';
                }
                leaf.branch += st.id + "=" + st.elements[ps.element].label;
            }
            leaf.path = std::move(next.path);
            leaf.alice_product = std::move(next.alice);
            leaf.bob_product = std::move(next.bob);
            tree.leaves_.push_back(std::move(leaf));
        }
    }
    return tree;
}

Povm induced_povm(const ProtocolTree &tree) {
    const std::size_t n = tree.spec().global_dim();
    Povm p;
    for (ComplexMatrix &e : p.elements) {
        e = zeros(n);
    }
    for (const ProtocolLeaf &leaf : tree.leaves()) {
        p.elements[static_cast<std::size_t>(leaf.final_label)] += tree.leaf_operator(leaf);
    }
    return p;
}

std::string Transcript::branch() const {
    std::string out;
    for (const TranscriptEntry &e : entries) {
        if (!out.empty()) {
            out += '/';
        }
        out += e.step_id + "=" + e.outcome;
    }
    return out;
}

Transcript simulate_run(const ProtocolTree &tree, const StateVector &phi_in, const StateVector &phi1,
                        const StateVector &phi2, SampleStream &rng) {
    const SpaceSpec &spec = tree.spec();
    const auto d = static_cast<std::size_t>(spec.d());
    if (phi_in.dim() != d || phi1.dim() != d || phi2.dim() != d) {
        throw Error(ErrorCode::kDimensionMismatch, "states must have dimension " + std::to_string(d));
    }
    const std::array<const StateVector *, 3> factors{&phi_in, &phi1, &phi2};
    ComplexVector psi = tensor_product(factors);

    Transcript t;
    std::size_t node_index = 0;
    std::vector<ComplexVector> branches;
    std::vector<double> weights;
    while (true) {
        const ProtocolNode &node = tree.nodes()[node_index];
        const MeasurementStep &step = tree.steps()[node.step];
        branches.clear();
        weights.clear();
        double total = 0.0;
        for (const StepElement &e : step.elements) {
            branches.push_back(apply_party_operator(e.sqrt_op, step.party, spec, psi));
            double w = branches.back().squaredNorm();
            if (w < kMinBranchProbability) {
                w = 0.0;
            }
            weights.push_back(w);
            total += w;
        }
        if (!(total > 0.0)) {
            throw Error(ErrorCode::kNumericalUnderflow, "every outcome of " + step.id + " has negligible probability");
        }
        const double u = rng.uniform() * total;
        std::size_t chosen = 0;
        double cumulative = 0.0;
        for (std::size_t k = 0; k < weights.size(); k++) {
            if (weights[k] == 0.0) {
                continue;
            }
            chosen = k;
            cumulative += weights[k];
            if (u < cumulative) {
                break;
            }
        }
        psi = branches[chosen] / std::sqrt(weights[chosen]);
        t.entries.push_back({step.party, step.id, step.elements[chosen].label});
        const ProtocolNode::Edge &edge = node.edges[chosen];
        if (!edge.child) {
            t.final_label = edge.final_label;
            return t;
        }
        node_index = *edge.child;
    }
}

double EquivalenceReport::max_residual() const {
    double m = std::max({residuals[0], residuals[1], residuals[2], std::abs(probability_difference)});
    return std::max({m, step_completeness_residual, max_commutator, unreachable_mass});
}

EquivalenceReport verify_equivalence(const ProtocolTree &tree) {
    const SpaceSpec &spec = tree.spec();
    EquivalenceReport r;
    Povm induced = induced_povm(tree);
    Povm closed = optimal_separable_povm(spec);
    for (int mu = 0; mu < kNumOutcomes; mu++) {
        r.residuals[static_cast<std::size_t>(mu)] = operator_norm(induced[mu] - closed[mu]);
    }
    r.probability_difference = exact_success_probability(induced, spec) - closed_form_separable(spec.d_a(), spec.d_b());

    for (const MeasurementStep &s : tree.steps()) {
        ComplexMatrix sum = zeros(static_cast<std::size_t>(s.support.rows()));
        for (const StepElement &e : s.elements) {
            sum += e.op;
        }
        r.step_completeness_residual = std::max(r.step_completeness_residual, operator_norm(sum - s.support));
    }

    // Commutators of every pair of elements met on one path, each pair once.
    std::map<std::pair<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>>, bool> seen;
    const Complex i_unit(0.0, 1.0);
    for (const ProtocolLeaf &leaf : tree.leaves()) {
        for (std::size_t x = 0; x < leaf.path.size(); x++) {
            for (std::size_t y = x + 1; y < leaf.path.size(); y++) {
                const PathStep &px = leaf.path[x];
                const PathStep &py = leaf.path[y];
                auto key = std::make_pair(std::make_pair(px.step, px.element), std::make_pair(py.step, py.element));
                if (!seen.emplace(key, true).second) {
                    continue;
                }
                const MeasurementStep &sx = tree.steps()[px.step];
                const MeasurementStep &sy = tree.steps()[py.step];
                const ComplexMatrix &ox = sx.elements[px.element].op;
                const ComplexMatrix &oy = sy.elements[py.element].op;
                ComplexMatrix gx = embed_party_operator(ox, sx.party, spec);
                ComplexMatrix gy = embed_party_operator(oy, sy.party, spec);
                // i [X, Y] is Hermitian for Hermitian X, Y.
                ComplexMatrix comm = i_unit * (gx * gy - gy * gx);
                r.max_commutator = std::max(r.max_commutator, operator_norm(comm));
            }
        }
    }

    for (const ProtocolLeaf &leaf : tree.leaves()) {
        if (!leaf.unreachable) {
            continue;
        }
        ComplexMatrix l = tree.leaf_operator(leaf);
        const double mass =
            trace_with_pair_symmetric(l, 0, 1, spec.d()) + trace_with_pair_symmetric(l, 0, 2, spec.d());
        r.unreachable_mass = std::max(r.unreachable_mass, std::abs(mass));
    }
    return r;
}

ProtocolRunSummary run_protocol(const ProtocolTree &tree, std::uint64_t n_runs, std::uint64_t seed, int workers) {
    if (n_runs == 0) {
        throw Error(ErrorCode::kZeroSamples, "run_protocol needs at least one run");
    }
    const int d = tree.spec().d();
    const auto n_workers = static_cast<std::uint64_t>(std::max(workers, 1));
    ProtocolRunSummary summary;
    summary.runs.resize(n_runs);
    auto work = [&](std::uint64_t w) {
        for (std::uint64_t i = w; i < n_runs; i += n_workers) {
            SampleStream rng(seed, i);
            StateVector phi1 = haar_state(d, rng);
            StateVector phi2 = haar_state(d, rng);
            const int truth = rng.uniform() < 0.5 ? 1 : 2;
            const StateVector &input = truth == 1 ? phi1 : phi2;
            summary.runs[i] = ProtocolRun{i, truth, simulate_run(tree, input, phi1, phi2, rng)};
        }
    };
    if (n_workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (std::uint64_t w = 0; w < n_workers; w++) {
            pool.emplace_back(work, w);
        }
    }
    for (const ProtocolRun &run : summary.runs) {
        const int label = run.transcript.final_label;
        summary.label_counts[static_cast<std::size_t>(label)]++;
        if (label == run.true_label) {
            summary.correct++;
        } else if (label != 0) {
            summary.misidentified++;
        }
    }
    return summary;
}

}  // namespace qident
