// Copyright 2026 The Oracle Lab Authors
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

#ifndef ORACLE_LAB_COMMANDS_H
#define ORACLE_LAB_COMMANDS_H

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "oracle_lab/interrogation.h"
#include "oracle_lab/optimizer.h"
#include "oracle_lab/rng.h"
#include "oracle_lab/statevector.h"

namespace oracle_lab {

inline constexpr const char *kToolName = "oracle_lab";
inline constexpr const char *kToolVersion = "1.0.0";

/// Exit codes shared by the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDisagreement = 3;
inline constexpr int kExitNotConverged = 4;

/// Empirical vs analytic gap, in standard errors, that trips kExitDisagreement.
inline constexpr double kDisagreementSigmas = 4.0;

/// (observed - expected) / se; with se = 0 it is 0 on agreement within 1e-9
/// and infinite otherwise.
double agreement_z(double observed, double expected, double se);

/// A cell value. Null renders as an empty CSV field and a JSON null.
using Value = std::variant<std::monostate, bool, int64_t, uint64_t, double, std::string>;

std::string format_value(const Value &v);
/// 17 significant digits.
std::string format_double(double v);

struct Report {
    std::vector<std::pair<std::string, Value>> entries;

    void add(std::string key, Value value) { entries.emplace_back(std::move(key), std::move(value)); }
    /// Adds key (decimal) and key_exact (p/q text, or null when not exact).
    void add_probability(const std::string &key, const Probability &p);
    const Value *find(const std::string &key) const;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;
};

/// Everything a command produces: reproducibility metadata, an optional
/// record table, the report, and the process exit code.
struct Emission {
    Report meta;
    std::optional<Table> table;
    Report report;
    int exit_code = kExitOk;
};

enum class OutputFormat { kCsv, kJson };

/// CSV: with a table, metadata becomes "# key=value" comments above the
/// table and the report follows after a blank line as a key,value table.
/// Without one, metadata and report share a single key,value table.
/// JSON: one object holding metadata and report keys, plus "rows" when a
/// table is present.
std::string render(const Emission &e, OutputFormat format);

struct ProfileSpec {
    enum class Kind { kUniform, kOneQuery, kStep, kOptimal, kFile };
    Kind kind = Kind::kUniform;
    std::string path;  // kFile only

    /// Parses "uniform", "one-query", "step", "optimal" or "file:PATH".
    static ProfileSpec parse(const std::string &text);
    std::string name() const;
};

/// Builds the profile for n. uniform defaults k to interrogation_threshold(n);
/// step and optimal require k.
AmplitudeProfile resolve_profile(const ProfileSpec &spec, uint32_t n, std::optional<uint64_t> k,
                                 const OptimizerOptions &options = {});

/// One alpha per line, decimal text; blank lines and '#' lines are skipped.
AmplitudeProfile read_profile_file(const std::string &path, uint64_t n);
std::string profile_file_text(const AmplitudeProfile &profile);

struct ExactParams {
    uint64_t n = 0;
    std::optional<uint64_t> k;
    uint64_t seed = kDefaultSeed;
};

struct ThresholdParams {
    uint64_t n = 0;
    std::optional<double> epsilon;
    std::optional<double> lambda;
    uint64_t seed = kDefaultSeed;
};

struct SimulateParams {
    uint32_t n = 0;
    ProfileSpec profile;
    std::optional<uint64_t> k;
    std::optional<std::string> omega_hex;
    uint64_t trials = 1000;
    uint64_t seed = kDefaultSeed;
    unsigned threads = 1;
    uint32_t qubit_cap = kDefaultQubitCap;
};

struct TradeoffParams {
    std::optional<uint64_t> n;
    std::vector<double> fractions;
    ProfileSpec profile{ProfileSpec::Kind::kStep, {}};
    uint64_t seed = kDefaultSeed;
};

struct OptimizeParams {
    uint64_t n = 0;
    uint64_t k = 0;
    double tolerance = 1e-10;
    uint64_t seed = kDefaultSeed;
};

struct TrialRecord {
    uint64_t trial;
    uint64_t seed;
    OracleString omega;
    OracleString guess;
    uint32_t correct_bits;
    bool exact_match;
};

/// Runs the four-step protocol once per trial with seed derive_seed(master, t).
/// Records are returned in trial order whatever the thread count.
std::vector<TrialRecord> run_trials(const AmplitudeProfile &profile, std::optional<OracleString> omega,
                                    uint64_t trials, uint64_t master_seed, unsigned threads = 1,
                                    uint32_t qubit_cap = kDefaultQubitCap);

Emission cmd_exact(const ExactParams &p);
Emission cmd_threshold(const ThresholdParams &p);
Emission cmd_simulate(const SimulateParams &p);
Emission cmd_tradeoff(const TradeoffParams &p);
Emission cmd_optimize(const OptimizeParams &p);

/// Default tradeoff grid 0, 0.05, ..., 1.
std::vector<double> default_fractions();

/// Text plot of quantum (Q) and classical (C) ratio against fraction.
std::string ascii_tradeoff_plot(const Table &tradeoff, int width = 60, int height = 20);

}  // namespace oracle_lab

#endif
