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

#include "qident/cli.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "qident/errors.h"
#include "qident/linalg.h"
#include "qident/locc.h"
#include "qident/montecarlo.h"
#include "qident/povm.h"
#include "qident/symmetry.h"

namespace qident::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string relation_name(Relation r) {
    switch (r) {
        case Relation::kClose:
            return "close";
        case Relation::kAtMost:
            return "at_most";
        case Relation::kGreater:
            return "greater";
    }
    return "close";
}

// JSON has no infinity; keep the key and emit null.
json number(double x) {
    if (!std::isfinite(x)) {
        return nullptr;
    }
    return x;
}

double z_score(double mean, double target, double stderr_value) {
    const double diff = std::abs(mean - target);
    if (stderr_value > 0.0) {
        return diff / stderr_value;
    }
    return diff <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
}

// Largest |sorted(a) - sorted(b)|, or infinity on length mismatch.
double spectrum_distance(std::vector<double> a, std::vector<double> b) {
    if (a.size() != b.size()) {
        return std::numeric_limits<double>::infinity();
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); k++) {
        worst = std::max(worst, std::abs(a[k] - b[k]));
    }
    return worst;
}

std::vector<double> to_std(const RealVector &v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

void add_local_identities(Report &r, const std::string &tag, int d, double tol) {
    ThreeSystemOperators ops(d);
    const ComplexMatrix &dm = ops.exchange.difference;
    const ComplexMatrix &am = ops.exchange.average;
    const ComplexMatrix &mixed = ops.sectors.mixed;
    r.checks.push_back(
        make_check(tag + ".difference_squared", operator_norm(dm * dm - 0.75 * mixed), 0.0, tol));
    r.checks.push_back(
        make_check(tag + ".squares_sum_to_identity", operator_norm(am * am + dm * dm - ops.identity), 0.0, tol));
    r.checks.push_back(make_check(tag + ".anticommutator", operator_norm(dm * am + am * dm), 0.0, tol));
    r.checks.push_back(make_check(
        tag + ".sector_completeness",
        operator_norm(ops.sectors.symmetric + ops.sectors.antisymmetric + ops.sectors.mixed - ops.identity), 0.0,
        tol));
    double idempotence = 0.0;
    for (const ComplexMatrix *p : {&ops.sectors.symmetric, &ops.sectors.antisymmetric, &ops.sectors.mixed,
                                   &ops.pair01.symmetric, &ops.pair02.symmetric}) {
        idempotence = std::max(idempotence, operator_norm((*p) * (*p) - *p));
    }
    r.checks.push_back(make_check(tag + ".projector_idempotence", idempotence, 0.0, tol));

    // Exchange average restricted to the mixed sector: +-1/2, equal multiplicity.
    const DimensionTable dims = dimension_table(d);
    double spectrum_defect = 0.0;
    if (dims.mixed > 0) {
        std::vector<double> expected(static_cast<std::size_t>(dims.mixed), 0.5);
        std::fill(expected.begin(), expected.begin() + dims.mixed / 2, -0.5);
        spectrum_defect =
            spectrum_distance(to_std(hermitian_eigenvalues(compress_to_range(am, mixed))), std::move(expected));
    }
    r.checks.push_back(make_check(tag + ".average_spectrum_on_mixed", spectrum_defect, 0.0, 1e-8));
}

json table_row(int d_a, int d_b) {
    const double global = closed_form_global(static_cast<std::int64_t>(d_a) * d_b);
    const double separable = closed_form_separable(d_a, d_b);
    return json{{"d_a", d_a},          {"d_b", d_b},           {"d", d_a * d_b},
                {"p_global", global}, {"p_separable", separable}, {"gap", global - separable}};
}

}  // namespace

Check make_check(std::string name, double measured, double expected, double tolerance, Relation relation) {
    Check c{std::move(name), measured, expected, tolerance, relation, false};
    switch (relation) {
        case Relation::kClose:
            c.pass = std::abs(measured - expected) <= tolerance;
            break;
        case Relation::kAtMost:
            c.pass = measured <= expected;
            break;
        case Relation::kGreater:
            c.pass = measured > expected;
            break;
    }
    return c;
}

std::string command_name(Command c) {
    switch (c) {
        case Command::kTable:
            return "table";
        case Command::kVerify:
            return "verify";
        case Command::kSimulate:
            return "simulate";
        case Command::kProtocol:
            return "protocol";
    }
    return "table";
}

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::kGlobal:
            return "global";
        case Scheme::kSeparable:
            return "separable";
        case Scheme::kLocc:
            return "locc";
    }
    return "global";
}

std::optional<std::string> config_error(const RunConfig &config) {
    if (config.d_a < 1 || config.d_b < 1) {
        return "d_a and d_b must be >= 1";
    }
    if (config.d_a * config.d_b > kMaxProductDimension) {
        return "d_a * d_b must not exceed " + std::to_string(kMaxProductDimension);
    }
    const bool sampling = config.command == Command::kSimulate || config.command == Command::kProtocol;
    if (sampling && config.samples < 1) {
        return "samples must be >= 1";
    }
    if (config.workers < 1) {
        return "workers must be >= 1";
    }
    if (!(config.tol > 0.0) || !std::isfinite(config.tol)) {
        return "tol must be a positive finite number";
    }
    return std::nullopt;
}

Report cmd_table(const RunConfig &config) {
    Report r;
    r.config = config;
    json rows = json::array();
    std::set<std::pair<int, int>> done;
    rows.push_back(table_row(config.d_a, config.d_b));
    done.insert({config.d_a, config.d_b});
    for (int a = 2; a <= 4; a++) {
        for (int b = 2; b <= 4; b++) {
            if (done.insert({a, b}).second) {
                rows.push_back(table_row(a, b));
            }
            r.checks.push_back(make_check("gap_positive." + std::to_string(a) + "x" + std::to_string(b),
                                          closed_form_global(a * b) - closed_form_separable(a, b), 0.0, 0.0,
                                          Relation::kGreater));
        }
    }
    r.data["rows"] = rows;
    r.data["limits"] = json{{"p_global", 1.0 / 3.0},
                            {"p_separable", 11.0 / 36.0},
                            {"gap", 1.0 / 3.0 - 11.0 / 36.0},
                            {"p_global_at_1e6", closed_form_global(1000000)},
                            {"p_separable_at_1e3x1e3", closed_form_separable(1000, 1000)}};

    r.checks.push_back(make_check("two_qubit.p_global", closed_form_global(4), 0.25, config.tol));
    r.checks.push_back(make_check("two_qubit.p_separable", closed_form_separable(2, 2), 19.0 / 80.0, config.tol));
    r.checks.push_back(
        make_check("two_qubit.gap", closed_form_global(4) - closed_form_separable(2, 2), 1.0 / 80.0, config.tol));
    r.checks.push_back(make_check("limit.p_global", closed_form_global(1000000), 1.0 / 3.0, 1e-6));
    r.checks.push_back(make_check("limit.p_separable", closed_form_separable(1000, 1000), 11.0 / 36.0, 1e-5));
    return r;
}

Report cmd_verify(const RunConfig &config) {
    Report r;
    r.config = config;
    const double tol = config.tol;
    const SpaceSpec spec(config.d_a, config.d_b);
    const int d = spec.d();

    const MixedDimensionSplit split = mixed_dimension_split(config.d_a, config.d_b);
    r.checks.push_back(make_check("dimension_identity", static_cast<double>(split.rhs_twice),
                                  static_cast<double>(split.lhs_twice), 0.0));

    add_local_identities(r, "global", d, tol);
    std::set<int> party_dims{config.d_a, config.d_b};
    for (int dp : party_dims) {
        if (dp != d) {
            add_local_identities(r, "local_d" + std::to_string(dp), dp, tol);
        }
    }

    {
        ThreeSystemOperators a(config.d_a), b(config.d_b), g(d);
        r.checks.push_back(make_check("embedding.swap12_factorizes",
                                      operator_norm(embed_party_operator(a.swap12, Party::kAlice, spec) *
                                                        embed_party_operator(b.swap12, Party::kBob, spec) -
                                                    g.swap12),
                                      0.0, tol));
        r.checks.push_back(
            make_check("embedding.pair02_decomposes",
                       operator_norm(embed_product(a.pair02.symmetric, b.pair02.symmetric, spec) +
                                     embed_product(a.pair02.antisymmetric, b.pair02.antisymmetric, spec) -
                                     g.pair02.symmetric),
                       0.0, tol));
    }

    const Povm global = global_optimal_povm(d);
    const ValidationReport gv = validate(global, spec);
    r.checks.push_back(make_check("global.valid", gv.pass ? 1.0 : 0.0, 1.0, 0.0));
    r.checks.push_back(make_check("global.no_error",
                                  std::max(gv.no_error_residuals[0], gv.no_error_residuals[1]), 0.0, tol));
    r.checks.push_back(make_check("global.exchange_symmetry", exchange_symmetry_residual(global, spec), 0.0, tol));
    const double p_global = exact_success_probability(global, spec);
    r.checks.push_back(make_check("global.success_probability", p_global, closed_form_global(d), tol));

    const Povm separable = optimal_separable_povm(spec);
    const ValidationReport sv = validate(separable, spec);
    r.checks.push_back(make_check("separable.valid", sv.pass ? 1.0 : 0.0, 1.0, 0.0));
    r.checks.push_back(make_check("separable.no_error",
                                  std::max(sv.no_error_residuals[0], sv.no_error_residuals[1]), 0.0, tol));
    r.checks.push_back(
        make_check("separable.exchange_symmetry", exchange_symmetry_residual(separable, spec), 0.0, tol));
    const double p_separable = exact_success_probability(separable, spec);
    r.checks.push_back(make_check("separable.success_probability", p_separable,
                                  closed_form_separable(config.d_a, config.d_b), tol));
    if (config.d_a >= 2 && config.d_b >= 2) {
        r.checks.push_back(make_check("gap_positive", p_global - p_separable, 0.0, 0.0, Relation::kGreater));

        const DimensionTable da = dimension_table(config.d_a);
        const DimensionTable db = dimension_table(config.d_b);
        const auto multiplicity = static_cast<std::size_t>((da.mixed / 2) * (db.mixed / 2));
        const ComplexMatrix block = embed_product(ThreeSystemOperators(config.d_a).sectors.mixed,
                                                  ThreeSystemOperators(config.d_b).sectors.mixed, spec);
        std::vector<double> expected;
        for (double v : x_spectrum(0.5, 0.5)) {
            expected.insert(expected.end(), multiplicity, v);
        }
        const ComplexMatrix x = mixed_block_operator(spec, 0.5, 0.5);
        r.checks.push_back(make_check(
            "mixed_block_spectrum",
            spectrum_distance(to_std(hermitian_eigenvalues(compress_to_range(x, block))), std::move(expected)), 0.0,
            1e-8));
    }

    const ProtocolTree tree = build_protocol(spec);
    const EquivalenceReport eq = verify_equivalence(tree);
    r.checks.push_back(make_check("protocol.induced_povm",
                                  std::max({eq.residuals[0], eq.residuals[1], eq.residuals[2]}), 0.0, tol));
    r.checks.push_back(make_check("protocol.success_probability", eq.probability_difference, 0.0, tol));
    r.checks.push_back(make_check("protocol.step_completeness", eq.step_completeness_residual, 0.0, tol));
    r.checks.push_back(make_check("protocol.commutators", eq.max_commutator, 0.0, tol));
    r.checks.push_back(make_check("protocol.unreachable_mass", eq.unreachable_mass, 0.0, tol));

    r.data["p_global"] = p_global;
    r.data["p_separable"] = p_separable;
    r.data["n_checks"] = r.checks.size();
    return r;
}

Report cmd_simulate(const RunConfig &config) {
    Report r;
    r.config = config;
    const SpaceSpec spec(config.d_a, config.d_b);
    const auto n = static_cast<std::uint64_t>(config.samples);

    McReport mc;
    double target = 0.0;
    switch (config.scheme) {
        case Scheme::kGlobal: {
            // The global scheme ignores the party split.
            const SpaceSpec flat(spec.d(), 1);
            mc = run_monte_carlo(global_optimal_povm(spec.d()), flat, n, config.seed, config.workers);
            target = closed_form_global(spec.d());
            break;
        }
        case Scheme::kSeparable:
            mc = run_monte_carlo(optimal_separable_povm(spec), spec, n, config.seed, config.workers);
            target = closed_form_separable(config.d_a, config.d_b);
            break;
        case Scheme::kLocc: {
            const ProtocolTree tree = build_protocol(spec);
            const ProtocolRunSummary runs = run_protocol(tree, n, config.seed, config.workers);
            const auto count = static_cast<double>(n);
            mc.n_samples = n;
            mc.seed = config.seed;
            mc.mean_success = static_cast<double>(runs.correct) / count;
            mc.mean_error = static_cast<double>(runs.misidentified) / count;
            mc.max_error_sample = runs.misidentified > 0 ? 1.0 : 0.0;
            if (n > 1) {
                const double p = mc.mean_success;
                // sample standard deviation of a 0/1 indicator
                mc.stderr_success = std::sqrt(p * (1 - p) * count / (count - 1)) / std::sqrt(count);
            }
            target = closed_form_separable(config.d_a, config.d_b);
            break;
        }
    }
    const double z = z_score(mc.mean_success, target, mc.stderr_success);
    r.data["n_samples"] = mc.n_samples;
    r.data["seed"] = mc.seed;
    r.data["mean_success"] = mc.mean_success;
    r.data["stderr_success"] = mc.stderr_success;
    r.data["mean_error"] = mc.mean_error;
    r.data["max_error_sample"] = mc.max_error_sample;
    r.data["target"] = target;
    r.data["z_score"] = number(z);
    r.data["z_warning"] = z > kZWarn;

    r.checks.push_back(make_check("z_score", z, kZFail, 0.0, Relation::kAtMost));
    r.checks.push_back(make_check("mean_error", mc.mean_error, 1e-9, 0.0, Relation::kAtMost));
    if (config.scheme != Scheme::kLocc) {
        r.checks.push_back(make_check("max_error_sample", mc.max_error_sample, config.tol, 0.0, Relation::kAtMost));
        r.checks.push_back(make_check("probability_sum", mc.max_sum_residual, config.tol, 0.0, Relation::kAtMost));
    }
    return r;
}

Report cmd_protocol(const RunConfig &config) {
    Report r;
    r.config = config;
    const SpaceSpec spec(config.d_a, config.d_b);
    const ProtocolTree tree = build_protocol(spec);
    const auto n = static_cast<std::uint64_t>(config.samples);
    const ProtocolRunSummary runs = run_protocol(tree, n, config.seed, config.workers);

    if (!config.transcript_path.empty()) {
        std::ofstream file(config.transcript_path);
        if (!file) {
            throw UsageError("cannot open transcript file " + config.transcript_path);
        }
        for (const ProtocolRun &run : runs.runs) {
            file << run.index << ',' << run.transcript.branch() << ',' << run.transcript.final_label << '\n';
        }
        if (!file) {
            throw UsageError("failed writing transcript file " + config.transcript_path);
        }
    }

    const EquivalenceReport eq = verify_equivalence(tree);
    const auto count = static_cast<double>(n);
    json freq = json::array();
    for (std::uint64_t c : runs.label_counts) {
        freq.push_back(static_cast<double>(c) / count);
    }
    const double success = static_cast<double>(runs.correct) / count;
    const double target = closed_form_separable(config.d_a, config.d_b);
    const double stderr_success = n > 1 ? std::sqrt(success * (1 - success) / (count - 1)) : 0.0;

    r.data["n_runs"] = n;
    r.data["label_counts"] = runs.label_counts;
    r.data["label_frequencies"] = freq;
    r.data["success_frequency"] = success;
    r.data["success_target"] = target;
    r.data["success_z_score"] = number(z_score(success, target, stderr_success));
    r.data["misidentified"] = runs.misidentified;
    r.data["induced_residuals"] = {eq.residuals[0], eq.residuals[1], eq.residuals[2]};
    r.data["transcript"] = config.transcript_path;

    r.checks.push_back(make_check("misidentification_count", static_cast<double>(runs.misidentified), 0.0, 0.0));
    r.checks.push_back(make_check("induced_povm_residual", eq.max_residual(), config.tol, 0.0, Relation::kAtMost));
    return r;
}

Report run_command(const RunConfig &config) {
    const auto start = std::chrono::steady_clock::now();
    Report r;
    r.config = config;
    if (auto problem = config_error(config)) {
        r.error = *problem;
        r.exit_code = kExitUsage;
        return r;
    }
    try {
        switch (config.command) {
            case Command::kTable:
                r = cmd_table(config);
                break;
            case Command::kVerify:
                r = cmd_verify(config);
                break;
            case Command::kSimulate:
                r = cmd_simulate(config);
                break;
            case Command::kProtocol:
                r = cmd_protocol(config);
                break;
        }
    } catch (const UsageError &e) {
        r.error = e.what();
        r.exit_code = kExitUsage;
        return r;
    } catch (const Error &e) {
        r.error = e.what();
        r.exit_code = kExitCheckFailed;
        return r;
    }
    r.pass = std::all_of(r.checks.begin(), r.checks.end(), [](const Check &c) { return c.pass; });
    r.exit_code = r.pass ? kExitPass : kExitCheckFailed;
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

nlohmann::json report_to_json(const Report &report) {
    const RunConfig &c = report.config;
    json checks = json::array();
    for (const Check &k : report.checks) {
        checks.push_back(json{{"name", k.name},
                              {"measured", number(k.measured)},
                              {"expected", number(k.expected)},
                              {"tolerance", number(k.tolerance)},
                              {"relation", relation_name(k.relation)},
                              {"pass", k.pass}});
    }
    return json{{"command", command_name(c.command)},
                {"config",
                 {{"d_a", c.d_a},
                  {"d_b", c.d_b},
                  {"samples", c.samples},
                  {"seed", c.seed},
                  {"workers", c.workers},
                  {"tol", c.tol},
                  {"output", c.output == OutputFormat::kJson ? "json" : "text"},
                  {"scheme", scheme_name(c.scheme)},
                  {"transcript", c.transcript_path}}},
                {"checks", checks},
                {"data", report.data},
                {"pass", report.pass},
                {"exit_code", report.exit_code},
                {"error", report.error},
                {"wall_seconds", report.wall_seconds}};
}

std::string report_to_text(const Report &report) {
    std::ostringstream out;
    out << std::setprecision(15);
    const RunConfig &c = report.config;
    out << "qident " << command_name(c.command) << "  d_a=" << c.d_a << " d_b=" << c.d_b;
    if (c.command == Command::kSimulate || c.command == Command::kProtocol) {
        out << " samples=" << c.samples << " seed=" << c.seed << " workers=" << c.workers;
    }
    if (c.command == Command::kSimulate) {
        out << " scheme=" << scheme_name(c.scheme);
    }
    out << "\n";
    if (!report.error.empty()) {
        out << "error: " << report.error << "\n";
        return out.str();
    }
    if (c.command == Command::kTable) {
        out << std::left << std::setw(5) << "d_a" << std::setw(5) << "d_b" << std::setw(20) << "p_global"
            << std::setw(20) << "p_separable"
            << "gap\n";
        for (const json &row : report.data["rows"]) {
            out << std::setw(5) << row["d_a"].get<int>() << std::setw(5) << row["d_b"].get<int>() << std::setw(20)
                << row["p_global"].get<double>() << std::setw(20) << row["p_separable"].get<double>()
                << row["gap"].get<double>() << "\n";
        }
        const json &lim = report.data["limits"];
        out << std::setw(10) << "limit" << std::setw(20) << lim["p_global"].get<double>() << std::setw(20)
            << lim["p_separable"].get<double>() << lim["gap"].get<double>() << "\n";
    } else {
        for (const auto &[key, value] : report.data.items()) {
            out << "  " << key << " = " << value.dump() << "\n";
        }
    }
    for (const Check &k : report.checks) {
        out << "  [" << (k.pass ? "PASS" : "FAIL") << "] " << k.name << ": measured=" << k.measured
            << " expected=" << k.expected;
        if (k.relation == Relation::kClose) {
            out << " tol=" << k.tolerance;
        } else {
            out << " (" << relation_name(k.relation) << ")";
        }
        out << "\n";
    }
    out << (report.pass ? "PASS" : "FAIL") << " (" << report.checks.size() << " checks, " << std::setprecision(3)
        << report.wall_seconds << " s)\n";
    return out.str();
}

int run_main(int argc, char **argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Unambiguous identification of two bipartite pure states: global and LOCC measurements"};
    app.require_subcommand(1);
    RunConfig config;
    std::string output = "text";
    std::string scheme = "global";

    struct Sub {
        Command command;
        const char *name;
        const char *help;
    };
    const Sub subs[] = {
        {Command::kTable, "table", "Print closed-form success probabilities"},
        {Command::kVerify, "verify", "Run the deterministic operator and POVM checks"},
        {Command::kSimulate, "simulate", "Monte Carlo estimate of the mean success probability"},
        {Command::kProtocol, "protocol", "Simulate the two-party protocol run by run"},
    };
    for (const Sub &s : subs) {
        CLI::App *sub = app.add_subcommand(s.name, s.help);
        sub->add_option("--da", config.d_a, "Alice's local dimension")->capture_default_str();
        sub->add_option("--db", config.d_b, "Bob's local dimension")->capture_default_str();
        sub->add_option("--samples", config.samples, "Monte Carlo samples or protocol runs")->capture_default_str();
        sub->add_option("--seed", config.seed, "Run seed")->capture_default_str();
        sub->add_option("--workers", config.workers, "Worker threads")->capture_default_str();
        sub->add_option("--tol", config.tol, "Operator residual tolerance")->capture_default_str();
        sub->add_option("--output", output, "text or json")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
        sub->add_option("--scheme", scheme, "global, separable, or locc (simulate)")
            ->check(CLI::IsMember({"global", "separable", "locc"}))
            ->capture_default_str();
        sub->add_option("--transcript", config.transcript_path, "Protocol transcript file (protocol)");
        const Command cmd = s.command;
        sub->callback([&config, cmd] { config.command = cmd; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }
    config.output = output == "json" ? OutputFormat::kJson : OutputFormat::kText;
    config.scheme = scheme == "separable" ? Scheme::kSeparable : scheme == "locc" ? Scheme::kLocc : Scheme::kGlobal;

    const Report report = run_command(config);
    if (config.output == OutputFormat::kJson) {
        out << report_to_json(report).dump(2) << "\n";
    } else {
        out << report_to_text(report);
    }
    if (report.exit_code == kExitUsage) {
        err << "error: " << report.error << "\n";
    }
    return report.exit_code;
}

}  // namespace qident::cli
