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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qident/linalg.h"
#include "qident/locc.h"
#include "qident/montecarlo.h"
#include "qident/povm.h"
#include "qident/symmetry.h"

namespace {

using namespace qident;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

struct Criterion {
    int id;
    const char *title;
    std::function<void(Outcome &)> run;
};

int count_near(const RealVector &e, double v, double tol) {
    return static_cast<int>(std::count_if(e.begin(), e.end(), [&](double x) { return std::abs(x - v) <= tol; }));
}

void global_closed_form(Outcome &o) {
    double worst = 0.0;
    for (int d : {2, 3, 4, 6}) {
        const double p = exact_success_probability(global_optimal_povm(d), SpaceSpec(d, 1));
        const double err = std::abs(p - (d - 1.0) / (3.0 * d));
        worst = std::max(worst, err);
        o.require(err <= 1e-10, "d=" + std::to_string(d));
    }
    o.detail << "max |p - (d-1)/(3d)| = " << worst << " over d in {2,3,4,6}";
}

void two_qubit_numbers(Outcome &o) {
    SpaceSpec spec(2, 2);
    const double sep = exact_success_probability(optimal_separable_povm(spec), spec);
    const double glob = exact_success_probability(global_optimal_povm(4), spec);
    o.require(std::abs(sep - 19.0 / 80) <= 1e-10, "separable 19/80");
    o.require(std::abs(glob - 0.25) <= 1e-10, "global 1/4");
    o.require(std::abs(glob - sep - 1.0 / 80) <= 1e-10, "gap 1/80");
    o.detail << "separable = " << sep << ", global = " << glob << ", gap = " << glob - sep;
}

void separable_closed_form(Outcome &o) {
    double worst = 0.0;
    for (auto [da, db] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}, std::pair{3, 3}, std::pair{1, 2},
                          std::pair{2, 1}}) {
        SpaceSpec spec(da, db);
        const double p = exact_success_probability(optimal_separable_povm(spec), spec);
        const double expected = (11.0 * da * da * db * db + da * da + db * db - 13.0) /
                                (36.0 * da * db * (da * db + 1.0));
        const double err = std::abs(p - expected);
        worst = std::max(worst, err);
        o.require(err <= 1e-10, std::to_string(da) + "x" + std::to_string(db));
    }
    o.detail << "max |trace - formula| = " << worst << " over 6 dimension pairs";
}

void strict_gap(Outcome &o) {
    double smallest = 1.0;
    for (int da = 2; da <= 6; da++) {
        for (int db = 2; db <= 6; db++) {
            const double gap = closed_form_global(da * db) - closed_form_separable(da, db);
            smallest = std::min(smallest, gap);
            o.require(gap > 0.0, std::to_string(da) + "x" + std::to_string(db));
        }
    }
    o.detail << "smallest gap = " << smallest << " over 2 <= d_a, d_b <= 6";
}

void operator_identities(Outcome &o) {
    double worst = 0.0;
    for (int d = 2; d <= 4; d++) {
        const ExchangeOperators x = build_exchange_operators(d);
        const SectorProjectors p = young_projectors(d);
        const ComplexMatrix &dm = x.difference;
        const ComplexMatrix &am = x.average;
        const auto n = static_cast<std::size_t>(d * d * d);
        const double r1 = operator_norm(dm * dm - 0.75 * p.mixed);
        const double r2 = operator_norm(am * am + dm * dm - identity(n));
        const double r3 = operator_norm(dm * am + am * dm);
        worst = std::max({worst, r1, r2, r3});
        o.require(std::max({r1, r2, r3}) <= 1e-12, "identities d=" + std::to_string(d));

        const RealVector a = hermitian_eigenvalues(compress_to_range(am, p.mixed));
        const int half = static_cast<int>(dimension_table(d).mixed / 2);
        o.require(count_near(a, 0.5, 1e-10) == half && count_near(a, -0.5, 1e-10) == half &&
                      a.size() == 2 * half,
                  "A spectrum d=" + std::to_string(d));
    }
    o.detail << "max identity residual = " << worst << "; A on V_M is +-1/2 with equal multiplicity";
}

void dimension_identity(Outcome &o) {
    int checked = 0;
    for (int da = 2; da <= 6; da++) {
        for (int db = 2; db <= 6; db++) {
            const MixedDimensionSplit s = mixed_dimension_split(da, db);
            o.require(s.holds(), std::to_string(da) + "x" + std::to_string(db));
            checked++;
        }
    }
    o.detail << checked << " dimension pairs checked in integer arithmetic";
}

void x_spectrum_check(Outcome &o) {
    SpaceSpec spec(2, 2);
    const ComplexMatrix mm = embed_product(young_projectors(2).mixed, young_projectors(2).mixed, spec);
    const auto mult = static_cast<int>((dimension_table(2).mixed / 2) * (dimension_table(2).mixed / 2));
    double worst = 0.0;
    for (auto [b1, b2] : {std::pair{0.5, 0.5}, std::pair{0.3, 0.5}, std::pair{0.6, 0.0}}) {
        RealVector numeric = hermitian_eigenvalues(compress_to_range(mixed_block_operator(spec, b1, b2), mm));
        std::array<double, 4> analytic = x_spectrum(b1, b2);
        std::vector<double> expected;
        for (double v : analytic) {
            expected.insert(expected.end(), static_cast<std::size_t>(mult), v);
        }
        std::sort(expected.begin(), expected.end());
        std::vector<double> got(numeric.begin(), numeric.end());
        std::sort(got.begin(), got.end());
        if (got.size() != expected.size()) {
            o.require(false, "block dimension");
            continue;
        }
        double err = 0.0;
        for (std::size_t k = 0; k < got.size(); k++) {
            err = std::max(err, std::abs(got[k] - expected[k]));
        }
        worst = std::max(worst, err);
        o.require(err <= 1e-8, "spectrum at (" + std::to_string(b1) + "," + std::to_string(b2) + ")");
    }
    const double top = hermitian_eigenvalues(mixed_block_operator(spec, 0.5, 0.5)).maxCoeff();
    o.require(std::abs(top - 1.0) <= 1e-10, "boundary eigenvalue");
    o.detail << "max spectrum mismatch = " << worst << "; boundary max eigenvalue = " << top;
}

void no_error(Outcome &o) {
    double worst_norm = 0.0;
    for (int d = 2; d <= 4; d++) {
        const ValidationReport r = validate(global_optimal_povm(d), SpaceSpec(d, 1));
        worst_norm = std::max({worst_norm, r.no_error_residuals[0], r.no_error_residuals[1]});
    }
    for (auto [da, db] : {std::pair{2, 2}, std::pair{2, 3}}) {
        SpaceSpec spec(da, db);
        const ValidationReport r = validate(optimal_separable_povm(spec), spec);
        worst_norm = std::max({worst_norm, r.no_error_residuals[0], r.no_error_residuals[1]});
    }
    o.require(worst_norm <= 1e-12, "operator no-error");

    const McReport g = run_monte_carlo(global_optimal_povm(2), SpaceSpec(2, 1), 10000, 8);
    SpaceSpec spec(2, 2);
    const McReport s = run_monte_carlo(optimal_separable_povm(spec), spec, 10000, 8);
    const double worst_sample = std::max(g.max_error_sample, s.max_error_sample);
    o.require(worst_sample <= 1e-10, "per-sample error");

    const ProtocolRunSummary runs = run_protocol(build_protocol(spec), 10000, 8);
    o.require(runs.misidentified == 0, "protocol misidentification");
    o.detail << "max ||E1 S(02)||, ||E2 S(01)|| = " << worst_norm << "; max sample error = " << worst_sample
             << "; misidentified = " << runs.misidentified << " / " << runs.runs.size();
}

void locc_equivalence(Outcome &o) {
    double worst = 0.0;
    for (auto [da, db] : {std::pair{2, 2}, std::pair{2, 3}}) {
        const EquivalenceReport r = verify_equivalence(build_protocol(SpaceSpec(da, db)));
        const double m = *std::max_element(r.residuals.begin(), r.residuals.end());
        worst = std::max(worst, m);
        o.require(m <= 1e-10, std::to_string(da) + "x" + std::to_string(db));
    }
    o.detail << "max ||induced E_mu - E_mu^L|| = " << worst << " at (2,2), (2,3)";
}

void monte_carlo(Outcome &o) {
    const auto start = std::chrono::steady_clock::now();
    struct Case {
        const char *name;
        Povm povm;
        SpaceSpec spec;
        double target;
    };
    const std::vector<Case> cases = {
        {"global d=2", global_optimal_povm(2), SpaceSpec(2, 1), 1.0 / 6},
        {"global d=4", global_optimal_povm(4), SpaceSpec(4, 1), 0.25},
        {"separable 2x2", optimal_separable_povm(SpaceSpec(2, 2)), SpaceSpec(2, 2), 19.0 / 80},
    };
    const std::uint64_t n = 100000;
    const std::uint64_t seed = 20260101;
    for (const Case &c : cases) {
        const McReport one = run_monte_carlo(c.povm, c.spec, n, seed, 1);
        const McReport four = run_monte_carlo(c.povm, c.spec, n, seed, 4);
        const double z = std::abs(one.mean_success - c.target) / one.stderr_success;
        o.require(z <= 4.0, std::string(c.name) + " concordance");
        o.require(one.mean_success == four.mean_success && one.stderr_success == four.stderr_success &&
                      one.mean_error == four.mean_error && one.max_error_sample == four.max_error_sample,
                  std::string(c.name) + " worker reproducibility");
        o.detail << c.name << ": z = " << z << "; ";
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(seconds < 120.0, "runtime");
    o.detail << "workers 1 vs 4 bit-identical; " << seconds << " s";
}

void moment_oracle(Outcome &o) {
    const double m = moment_check(2, 2, 100000, 20260101);
    o.require(m <= 0.03, "second moment");
    o.detail << "||<rho (x) rho> - S_2/3|| = " << m;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "global closed form", global_closed_form},
        {2, "two-qubit headline numbers", two_qubit_numbers},
        {3, "separable closed form", separable_closed_form},
        {4, "strict gap", strict_gap},
        {5, "operator identities", operator_identities},
        {6, "dimension identity", dimension_identity},
        {7, "mixed-block spectrum", x_spectrum_check},
        {8, "no-error", no_error},
        {9, "LOCC protocol equivalence", locc_equivalence},
        {10, "Monte Carlo concordance", monte_carlo},
        {11, "moment oracle", moment_oracle},
    };
    int failures = 0;
    for (const Criterion &c : criteria) {
        Outcome o;
        o.detail.precision(6);
        try {
            c.run(o);
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        failures += o.pass ? 0 : 1;
        std::printf("[%s] criterion %d: %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
