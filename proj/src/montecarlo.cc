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

#include "qident/montecarlo.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "qident/errors.h"

namespace qident {

namespace {

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t index) {
    return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
}

struct SampleOutcome {
    InstanceProbabilities probs;
    double min_probability;
};

}  // namespace

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq = make_seed_seq(seed, index);
    engine_.seed(seq);
}

double SampleStream::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

Complex SampleStream::gaussian_pair() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

StateVector StateVector::normalized(ComplexVector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0)) {
        throw Error(ErrorCode::kNotPositive, "cannot normalize the zero vector");
    }
    amplitudes /= norm;
    return StateVector(std::move(amplitudes));
}

StateVector haar_state(int d, SampleStream &rng) {
    if (d < 1) {
        throw Error(ErrorCode::kInvalidDimension, "haar_state needs d >= 1");
    }
    ComplexVector v(d);
    for (int k = 0; k < d; k++) {
        v[k] = rng.gaussian_pair();
    }
    return StateVector::normalized(std::move(v));
}

ComplexVector tensor_product(std::span<const StateVector *const> factors) {
    ComplexVector out = ComplexVector::Ones(1);
    for (const StateVector *f : factors) {
        const ComplexVector &a = f->amplitudes();
        ComplexVector next(out.size() * a.size());
        for (Eigen::Index i = 0; i < out.size(); i++) {
            next.segment(i * a.size(), a.size()) = out[i] * a;
        }
        out = std::move(next);
    }
    return out;
}

InstanceProbabilities instance_probabilities(const Povm &p, const StateVector &phi1, const StateVector &phi2) {
    if (phi1.dim() != phi2.dim() || p.dim() != phi1.dim() * phi1.dim() * phi1.dim()) {
        throw Error(ErrorCode::kDimensionMismatch, "POVM dimension " + std::to_string(p.dim()) +
                                                       " does not match reference states of dimension " +
                                                       std::to_string(phi1.dim()));
    }
    const std::array<const StateVector *, 3> first{&phi1, &phi1, &phi2};
    const std::array<const StateVector *, 3> second{&phi2, &phi1, &phi2};
    const ComplexVector psi1 = tensor_product(first);
    const ComplexVector psi2 = tensor_product(second);

    InstanceProbabilities out;
    out.success = 0.5 * (expectation(p[1], psi1) + expectation(p[2], psi2));
    out.error = 0.5 * (expectation(p[1], psi2) + expectation(p[2], psi1));
    out.inconclusive = 0.5 * (expectation(p[0], psi1) + expectation(p[0], psi2));
    return out;
}

McReport run_monte_carlo(const Povm &p, const SpaceSpec &spec, std::uint64_t n_samples, std::uint64_t seed,
                         int workers) {
    if (n_samples == 0) {
        throw Error(ErrorCode::kZeroSamples, "run_monte_carlo needs at least one sample");
    }
    if (p.dim() != spec.global_dim()) {
        throw Error(ErrorCode::kDimensionMismatch, "POVM dimension does not match the space");
    }
    const int d = spec.d();
    const auto n_workers = static_cast<std::uint64_t>(std::max(workers, 1));
    std::vector<SampleOutcome> outcomes(n_samples);

    auto work = [&](std::uint64_t w) {
        for (std::uint64_t i = w; i < n_samples; i += n_workers) {
            SampleStream rng(seed, i);
            StateVector phi1 = haar_state(d, rng);
            StateVector phi2 = haar_state(d, rng);
            InstanceProbabilities probs = instance_probabilities(p, phi1, phi2);
            outcomes[i] = {probs, std::min({probs.success, probs.error, probs.inconclusive})};
        }
    };
    if (n_workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_workers);
        for (std::uint64_t w = 0; w < n_workers; w++) {
            pool.emplace_back(work, w);
        }
    }

    // Reduce in sample order so the result does not depend on the worker count.
    McReport r;
    r.n_samples = n_samples;
    r.seed = seed;
    r.min_probability = outcomes[0].min_probability;
    double sum_success = 0.0;
    double sum_error = 0.0;
    for (const SampleOutcome &o : outcomes) {
        sum_success += o.probs.success;
        sum_error += o.probs.error;
        r.max_error_sample = std::max(r.max_error_sample, o.probs.error);
        r.min_probability = std::min(r.min_probability, o.min_probability);
        r.max_sum_residual =
            std::max(r.max_sum_residual, std::abs(o.probs.success + o.probs.error + o.probs.inconclusive - 1.0));
    }
    const auto n = static_cast<double>(n_samples);
    r.mean_success = sum_success / n;
    r.mean_error = std::max(sum_error / n, 0.0);
    if (n_samples > 1) {
        double ss = 0.0;
        for (const SampleOutcome &o : outcomes) {
            const double dev = o.probs.success - r.mean_success;
            ss += dev * dev;
        }
        r.stderr_success = std::sqrt(ss / (n - 1)) / std::sqrt(n);
    }
    return r;
}

double moment_check(int n_copies, int d, std::uint64_t n_samples, std::uint64_t seed) {
    if (n_copies < 1 || n_copies > 3) {
        throw Error(ErrorCode::kBadSystemIndex, "moment_check supports 1 to 3 copies");
    }
    if (n_samples == 0) {
        throw Error(ErrorCode::kZeroSamples, "moment_check needs at least one sample");
    }
    Eigen::Index dim = 1;
    for (int k = 0; k < n_copies; k++) {
        dim *= d;
    }
    ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
    for (std::uint64_t i = 0; i < n_samples; i++) {
        SampleStream rng(seed, i);
        StateVector phi = haar_state(d, rng);
        std::vector<const StateVector *> copies(static_cast<std::size_t>(n_copies), &phi);
        ComplexVector v = tensor_product(copies);
        acc.noalias() += v * v.adjoint();
    }
    acc /= static_cast<double>(n_samples);
    const double dn = static_cast<double>(symmetric_power_dimension(n_copies, d));
    return operator_norm(acc - symmetric_projector(n_copies, d) / dn);
}

}  // namespace qident
