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

#ifndef QIDENT_CLI_H
#define QIDENT_CLI_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace qident::cli {

enum class Command { kTable, kVerify, kSimulate, kProtocol };
enum class OutputFormat { kText, kJson };
enum class Scheme { kGlobal, kSeparable, kLocc };

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Product dimension above which operator construction is refused.
inline constexpr int kMaxProductDimension = 12;

struct RunConfig {
    Command command = Command::kTable;
    int d_a = 2;
    int d_b = 2;
    std::int64_t samples = 100000;
    std::uint64_t seed = 20260101;
    int workers = 1;
    double tol = 1e-10;
    OutputFormat output = OutputFormat::kText;
    Scheme scheme = Scheme::kGlobal;
    std::string transcript_path;
};

/// Statistical thresholds for simulate: warn above 4 sigma, fail above 5.
inline constexpr double kZWarn = 4.0;
inline constexpr double kZFail = 5.0;

enum class Relation {
    kClose,     // |measured - expected| <= tolerance
    kAtMost,    // measured <= expected
    kGreater,   // measured > expected
};

struct Check {
    std::string name;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    Relation relation = Relation::kClose;
    bool pass = false;
};

Check make_check(std::string name, double measured, double expected, double tolerance,
                 Relation relation = Relation::kClose);

struct Report {
    RunConfig config;
    std::vector<Check> checks;
    nlohmann::json data = nlohmann::json::object();
    bool pass = false;
    double wall_seconds = 0.0;
    int exit_code = kExitPass;
    std::string error;  // set for usage/config failures
};

std::string command_name(Command c);
std::string scheme_name(Scheme s);

/// Returns a message when the configuration is unusable.
std::optional<std::string> config_error(const RunConfig &config);

Report cmd_table(const RunConfig &config);
Report cmd_verify(const RunConfig &config);
Report cmd_simulate(const RunConfig &config);
Report cmd_protocol(const RunConfig &config);

/// Runs one command after validating the config; sets pass and exit_code.
Report run_command(const RunConfig &config);

nlohmann::json report_to_json(const Report &report);
std::string report_to_text(const Report &report);

/// Entire command-line program; returns the process exit code.
int run_main(int argc, char **argv, std::ostream &out, std::ostream &err);

}  // namespace qident::cli

#endif  // QIDENT_CLI_H
