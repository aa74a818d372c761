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

#ifndef QIDENT_MONTECARLO_H
#define QIDENT_MONTECARLO_H

#include <cstdint>
#include <random>
#include <span>

#include "qident/linalg.h"
#include "qident/povm.h"
#include "qident/symmetry.h"

namespace qident {

/// Deterministic random stream for one sample.
///
/// The stream for sample `index` under run seed `seed` is a std::mt19937_64
/// initialized from std::seed_seq{seed_lo, seed_hi, index_lo, index_hi}
/// (32-bit halves). Both engine and seed_seq are fully specified by the
/// standard, so streams are identical across platforms and independent of
/// how samples are distributed over worker threads.
class SampleStream {
   public:
    SampleStream(std::uint64_t seed, std::uint64_t index);

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    /// Standard complex Gaussian pair (re, im independent N(0, 1)) by the
    /// Box-Muller transform of two uniform draws.
    Complex gaussian_pair();

   private:
    std::mt19937_64 engine_;
};

class StateVector {
   public:
    /// Normalizes `amplitudes`; throws NotPositive for the zero vector.
    static StateVector normalized(ComplexVector amplitudes);

    std::size_t dim() const {
        return static_cast<std::size_t>(amplitudes_.size());
    }
    const ComplexVector &amplitudes() const {
        return amplitudes_;
    }
    ComplexMatrix density() const {
        return amplitudes_ * amplitudes_.adjoint();
    }

   private:
    explicit StateVector(ComplexVector a) : amplitudes_(std::move(a)) {
    }
    ComplexVector amplitudes_;
};

/// Haar-random pure state on C^d: d complex Gaussians, normalized.
StateVector haar_state(int d, SampleStream &rng);

/// phi_0 (x) phi_1 (x) ... in the row-major tensor ordering.
ComplexVector tensor_product(std::span<const StateVector *const> factors);

struct InstanceProbabilities {
    double success = 0.0;
    double error = 0.0;
    double inconclusive = 0.0;
};

/// Input equals phi1 or phi2 with probability 1/2 each; system 1 holds phi1
/// and system 2 holds phi2.
InstanceProbabilities instance_probabilities(const Povm &p, const StateVector &phi1, const StateVector &phi2);

struct McReport {
    std::uint64_t n_samples = 0;
    double mean_success = 0.0;
    double stderr_success = 0.0;
    double mean_error = 0.0;
    double max_error_sample = 0.0;
    std::uint64_t seed = 0;
    /// Smallest single outcome probability seen over all samples.
    double min_probability = 0.0;
    /// Largest |success + error + inconclusive - 1| over all samples.
    double max_sum_residual = 0.0;
};

/// Sample i draws phi1 then phi2 from SampleStream(seed, i). Results depend
/// only on (seed, n_samples). Throws ZeroSamples.
McReport run_monte_carlo(const Povm &p, const SpaceSpec &spec, std::uint64_t n_samples, std::uint64_t seed,
                         int workers = 1);

/// || mean of rho^{tensor n} over Haar samples - S_n / d_n ||.
double moment_check(int n_copies, int d, std::uint64_t n_samples, std::uint64_t seed);

}  // namespace qident

#endif  // QIDENT_MONTECARLO_H
