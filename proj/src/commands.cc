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

#include "oracle_lab/commands.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "oracle_lab/csv.h"

namespace oracle_lab {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_value(const Value &v) {
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(int64_t i) const { return std::to_string(i); }
        std::string operator()(uint64_t u) const { return std::to_string(u); }
        std::string operator()(double d) const { return format_double(d); }
        std::string operator()(const std::string &s) const { return s; }
    };
    return std::visit(Visitor{}, v);
}

double agreement_z(double observed, double expected, double se) {
    if (se > 0.0) {
        return (observed - expected) / se;
    }
    return std::abs(observed - expected) <= 1e-9 ? 0.0 : INFINITY;
}

void Report::add_probability(const std::string &key, const Probability &p) {
    add(key, p.value);
    if (p.is_exact()) {
        add(key + "_exact", p.rational_text());
    } else {
        add(key + "_exact", std::monostate{});
    }
}

const Value *Report::find(const std::string &key) const {
    for (const auto &[k, v] : entries) {
        if (k == key) {
            return &v;
        }
    }
    return nullptr;
}

namespace {

nlohmann::ordered_json to_json(const Value &v) {
    struct Visitor {
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(bool b) const { return b; }
        nlohmann::ordered_json operator()(int64_t i) const { return i; }
        nlohmann::ordered_json operator()(uint64_t u) const { return u; }
        nlohmann::ordered_json operator()(double d) const {
            if (!std::isfinite(d)) {
                return nullptr;
            }
            return d;
        }
        nlohmann::ordered_json operator()(const std::string &s) const { return s; }
    };
    return std::visit(Visitor{}, v);
}

std::vector<std::string> format_row(const std::vector<Value> &row) {
    std::vector<std::string> out;
    out.reserve(row.size());
    for (const auto &v : row) {
        out.push_back(format_value(v));
    }
    return out;
}

void append_key_values(CsvTable &table, const Report &report) {
    for (const auto &[k, v] : report.entries) {
        table.rows.push_back({k, format_value(v)});
    }
}

Report base_meta(const std::string &command, uint64_t seed) {
    Report meta;
    meta.add("tool", std::string(kToolName));
    meta.add("version", std::string(kToolVersion));
    meta.add("command", command);
    meta.add("seed", seed);
    return meta;
}

Value optional_value(const std::optional<uint64_t> &v) {
    if (v) {
        return *v;
    }
    return std::monostate{};
}

Value optional_value(const std::optional<double> &v) {
    if (v) {
        return *v;
    }
    return std::monostate{};
}

/// floor(f * n), snapping products within 1e-9 of an integer onto it.
uint64_t budget_for_fraction(double fraction, uint64_t n) {
    const double product = fraction * static_cast<double>(n);
    const double nearest = std::round(product);
    const double k = std::abs(product - nearest) < 1e-9 ? nearest : std::floor(product);
    return static_cast<uint64_t>(std::clamp(k, 0.0, static_cast<double>(n)));
}

}  // namespace

std::string render(const Emission &e, OutputFormat format) {
    if (format == OutputFormat::kJson) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (const auto &[k, v] : e.meta.entries) {
            obj[k] = to_json(v);
        }
        for (const auto &[k, v] : e.report.entries) {
            obj[k] = to_json(v);
        }
        if (e.table) {
            auto rows = nlohmann::ordered_json::array();
            for (const auto &row : e.table->rows) {
                nlohmann::ordered_json r = nlohmann::ordered_json::object();
                for (size_t c = 0; c < row.size(); ++c) {
                    r[e.table->columns[c]] = to_json(row[c]);
                }
                rows.push_back(std::move(r));
            }
            obj["rows"] = std::move(rows);
        }
        return obj.dump(2) + "\n";
    }

    CsvDocument doc;
    if (e.table) {
        CsvTable records;
        for (const auto &[k, v] : e.meta.entries) {
            records.comments.push_back(k + "=" + format_value(v));
        }
        records.header = e.table->columns;
        for (const auto &row : e.table->rows) {
            records.rows.push_back(format_row(row));
        }
        doc.tables.push_back(std::move(records));
        if (!e.report.entries.empty()) {
            CsvTable summary;
            summary.header = {"key", "value"};
            append_key_values(summary, e.report);
            doc.tables.push_back(std::move(summary));
        }
    } else {
        CsvTable kv;
        kv.header = {"key", "value"};
        append_key_values(kv, e.meta);
        append_key_values(kv, e.report);
        doc.tables.push_back(std::move(kv));
    }
    return write_csv(doc);
}

ProfileSpec ProfileSpec::parse(const std::string &text) {
    if (text == "uniform") {
        return {Kind::kUniform, {}};
    }
    if (text == "one-query") {
        return {Kind::kOneQuery, {}};
    }
    if (text == "step") {
        return {Kind::kStep, {}};
    }
    if (text == "optimal") {
        return {Kind::kOptimal, {}};
    }
    if (text.starts_with("file:") && text.size() > 5) {
        return {Kind::kFile, text.substr(5)};
    }
    throw std::invalid_argument("unknown profile '" + text + "' (expected uniform, one-query, step, optimal, file:PATH)");
}

std::string ProfileSpec::name() const {
    switch (kind) {
        case Kind::kUniform:
            return "uniform";
        case Kind::kOneQuery:
            return "one-query";
        case Kind::kStep:
            return "step";
        case Kind::kOptimal:
            return "optimal";
        case Kind::kFile:
            return "file:" + path;
    }
    return {};
}

AmplitudeProfile read_profile_file(const std::string &path, uint64_t n) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot read profile file " + path);
    }
    std::vector<double> alphas;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        size_t used = 0;
        double a;
        try {
            a = std::stod(line.substr(first), &used);
        } catch (const std::exception &) {
            throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": not a number");
        }
        if (line.find_first_not_of(" \t\r", first + used) != std::string::npos) {
            throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": trailing text after number");
        }
        alphas.push_back(a);
    }
    return AmplitudeProfile(n, std::move(alphas));
}

std::string profile_file_text(const AmplitudeProfile &profile) {
    std::string out;
    for (double a : profile.alphas()) {
        out += format_double(a);
        out += '\n';
    }
    return out;
}

AmplitudeProfile resolve_profile(const ProfileSpec &spec, uint32_t n, std::optional<uint64_t> k,
                                 const OptimizerOptions &options) {
    using Kind = ProfileSpec::Kind;
    switch (spec.kind) {
        case Kind::kUniform:
            return uniform_profile(n, k.value_or(interrogation_threshold(n)));
        case Kind::kOneQuery:
            return one_query_profile(n);
        case Kind::kStep:
            if (!k) {
                throw std::invalid_argument("profile step needs --k");
            }
            return step_profile(n, *k);
        case Kind::kOptimal: {
            if (!k) {
                throw std::invalid_argument("profile optimal needs --k");
            }
            auto result = optimize_profile(n, *k, options);
            if (!result.converged) {
                throw std::runtime_error("optimizer did not converge (residual " + format_double(result.residual) +
                                         ")");
            }
            return result.profile;
        }
        case Kind::kFile:
            return read_profile_file(spec.path, n);
    }
    throw std::logic_error("unhandled profile kind");
}

Emission cmd_exact(const ExactParams &p) {
    if (p.n < 1) {
        throw std::invalid_argument("--n must be >= 1");
    }
    const uint64_t k = std::min(p.k.value_or(interrogation_threshold(p.n)), p.n);
    Emission e;
    e.meta = base_meta("exact", p.seed);
    e.report.add("n", p.n);
    e.report.add("k", k);
    e.report.add("query_cost", k);
    e.report.add_probability("success_probability", success_probability(p.n, k));
    e.report.add_probability("error_probability", exact_error(p.n, k));
    e.report.add_probability("classical_success_probability", classical_success_probability(p.n, k));
    return e;
}

Emission cmd_threshold(const ThresholdParams &p) {
    if (p.n < 1) {
        throw std::invalid_argument("--n must be >= 1");
    }
    if (p.epsilon.has_value() == p.lambda.has_value()) {
        throw std::invalid_argument("threshold needs exactly one of --epsilon or --lambda");
    }
    Emission e;
    e.meta = base_meta("threshold", p.seed);
    e.report.add("n", p.n);
    e.report.add("epsilon", optional_value(p.epsilon));
    uint64_t k;
    if (p.epsilon) {
        ErrorBudget budget(0.0, *p.epsilon);
        k = threshold_for_error(p.n, budget.epsilon);
    } else {
        ErrorBudget budget(*p.lambda, 0.5);
        k = threshold_at_lambda(p.n, budget.lambda);
    }
    // Report the offset actually realized by the integer k.
    const double dn = static_cast<double>(p.n);
    const double implied = (static_cast<double>(k) - dn / 2) / std::sqrt(dn);
    e.report.add("lambda", optional_value(p.lambda));
    e.report.add("k", k);
    e.report.add_probability("error_probability", exact_error(p.n, k));
    e.report.add("implied_lambda", implied);
    e.report.add_probability("gaussian_error_approx", gaussian_error_approx(std::max(implied, 0.0)));
    return e;
}

std::vector<TrialRecord> run_trials(const AmplitudeProfile &profile, std::optional<OracleString> omega,
                                    uint64_t trials, uint64_t master_seed, unsigned threads, uint32_t qubit_cap) {
    const auto n = static_cast<uint32_t>(profile.n());
    if (omega && omega->n() != n) {
        throw std::invalid_argument("--omega has the wrong length for --n");
    }
    // A fixed oracle gives the same pre-measurement state every trial.
    std::optional<StateVector> fixed_state;
    if (omega) {
        fixed_state = interrogation_state(profile, *omega, qubit_cap);
    } else {
        StateVector probe(n, qubit_cap);  // fail fast on the cap
    }

    std::vector<TrialRecord> records(trials, TrialRecord{0, 0, OracleString::zeros(n), OracleString::zeros(n), 0,
                                                         false});
    auto run_range = [&](uint64_t begin, uint64_t end) {
        for (uint64_t t = begin; t < end; ++t) {
            const uint64_t seed = derive_seed(master_seed, t);
            Rng rng(seed);
            OracleString w = omega ? *omega : OracleString::random(n, rng);
            MeasurementOutcome m = fixed_state ? sample_measurement(*fixed_state, rng)
                                               : sample_measurement(interrogation_state(profile, w, qubit_cap), rng);
            const uint32_t correct = m.guess.matches(w);
            records[t] = TrialRecord{t, seed, std::move(w), std::move(m.guess), correct, correct == n};
        }
    };

    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<uint64_t>(trials, 1))));
    if (threads == 1) {
        run_range(0, trials);
        return records;
    }
    std::vector<std::thread> pool;
    const uint64_t chunk = (trials + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        const uint64_t begin = std::min<uint64_t>(trials, w * chunk);
        const uint64_t end = std::min<uint64_t>(trials, begin + chunk);
        pool.emplace_back(run_range, begin, end);
    }
    for (auto &th : pool) {
        th.join();
    }
    return records;
}

Emission cmd_simulate(const SimulateParams &p) {
    if (p.n < 1) {
        throw std::invalid_argument("--n must be >= 1");
    }
    if (p.trials < 1) {
        throw std::invalid_argument("--trials must be >= 1");
    }
    if (p.n > p.qubit_cap) {
        throw std::length_error("n = " + std::to_string(p.n) + " exceeds the simulator cap of " +
                                std::to_string(p.qubit_cap) + " qubits");
    }
    const AmplitudeProfile profile = resolve_profile(p.profile, p.n, p.k);
    std::optional<OracleString> omega;
    if (p.omega_hex) {
        omega = OracleString::from_hex(*p.omega_hex, p.n);
    }

    Emission e;
    e.meta = base_meta("simulate", p.seed);
    e.meta.add("n", static_cast<uint64_t>(p.n));
    e.meta.add("profile", p.profile.name());
    e.meta.add("k", optional_value(p.k));
    e.meta.add("omega", omega ? omega->to_hex() : std::string("random"));
    e.meta.add("trials", p.trials);

    const auto records = run_trials(profile, omega, p.trials, p.seed, p.threads, p.qubit_cap);
    Table table{{"trial", "seed", "omega_hex", "guess_hex", "correct_bits", "exact_match"}, {}};
    double exact_hits = 0.0;
    double sum_correct = 0.0;
    double sum_correct_sq = 0.0;
    for (const auto &r : records) {
        table.rows.push_back({r.trial, r.seed, r.omega.to_hex(), r.guess.to_hex(), static_cast<uint64_t>(r.correct_bits),
                              static_cast<uint64_t>(r.exact_match ? 1 : 0)});
        exact_hits += r.exact_match;
        sum_correct += r.correct_bits;
        sum_correct_sq += static_cast<double>(r.correct_bits) * r.correct_bits;
    }
    e.table = std::move(table);

    // P_omega(y) = P_0(y ^ omega), so the omega = 0 distribution fixes the
    // per-trial law of exact matches and correct-bit counts for every oracle.
    const StateVector reference = interrogation_state(profile, OracleString::zeros(p.n), p.qubit_cap);
    const auto probs = measure_distribution(reference);
    const double analytic_exact = probs[0];
    double second_moment = 0.0;
    for (size_t y = 0; y < probs.size(); ++y) {
        const double m = p.n - std::popcount(y);
        second_moment += probs[y] * m * m;
    }
    const double analytic_mean = expected_correct_quantum(profile);
    const double analytic_var = std::max(0.0, second_moment - analytic_mean * analytic_mean);

    const auto trials = static_cast<double>(p.trials);
    const double rate = exact_hits / trials;
    const double mean = sum_correct / trials;
    const double sample_var = p.trials > 1 ? (sum_correct_sq - trials * mean * mean) / (trials - 1) : 0.0;
    const double rate_se = std::sqrt(analytic_exact * (1.0 - analytic_exact) / trials);
    const double mean_se = std::sqrt(analytic_var / trials);
    const double rate_z = agreement_z(rate, analytic_exact, rate_se);
    const double mean_z = agreement_z(mean, analytic_mean, mean_se);
    const bool agree = std::abs(rate_z) <= kDisagreementSigmas && std::abs(mean_z) <= kDisagreementSigmas;

    Report &s = e.report;
    s.add("query_cost", profile.query_cost());
    s.add("empirical_exact_match_rate", rate);
    s.add("exact_match_stderr", rate_se);
    s.add("analytic_exact_match_probability", analytic_exact);
    if (p.profile.kind == ProfileSpec::Kind::kUniform) {
        s.add("analytic_exact_match_probability_exact", success_probability(p.n, profile.k()).rational_text());
    }
    s.add("exact_match_z", rate_z);
    s.add("mean_correct_bits", mean);
    s.add("mean_correct_stderr", std::sqrt(std::max(0.0, sample_var) / trials));
    s.add("analytic_expected_correct", analytic_mean);
    s.add("analytic_correct_stderr", mean_se);
    s.add("mean_correct_z", mean_z);
    s.add("agreement", std::string(agree ? "ok" : "disagree"));
    e.exit_code = agree ? kExitOk : kExitDisagreement;
    return e;
}

std::vector<double> default_fractions() {
    std::vector<double> f;
    for (int i = 0; i <= 20; ++i) {
        f.push_back(i / 20.0);
    }
    return f;
}

Emission cmd_tradeoff(const TradeoffParams &p) {
    using Kind = ProfileSpec::Kind;
    if (p.profile.kind != Kind::kStep && p.profile.kind != Kind::kOptimal) {
        throw std::invalid_argument("tradeoff supports --profile step or optimal");
    }
    if (p.n && *p.n < 1) {
        throw std::invalid_argument("--n must be >= 1");
    }
    const std::vector<double> fractions = p.fractions.empty() ? default_fractions() : p.fractions;
    Emission e;
    e.meta = base_meta("tradeoff", p.seed);
    e.meta.add("n", optional_value(p.n));
    e.meta.add("profile", p.profile.name());

    Table table{{"fraction", "quantum_ratio", "classical_ratio", "finite_n_ratio", "n"}, {}};
    for (double f : fractions) {
        const double q = quantum_ratio(f);
        const double c = 0.5 + f / 2;
        Value finite = std::monostate{};
        Value size = std::monostate{};
        if (p.n) {
            const uint64_t n = *p.n;
            const uint64_t k = budget_for_fraction(f, n);
            double expected;
            if (p.profile.kind == Kind::kStep) {
                expected = expected_correct_quantum(step_profile_for_budget(n, k));
            } else if (k == 0) {
                expected = static_cast<double>(n) / 2;
            } else {
                auto r = optimize_profile(n, k);
                if (!r.converged) {
                    e.exit_code = kExitNotConverged;
                }
                expected = static_cast<double>(n) / 2 + r.gain;
            }
            // The gain never exceeds n/2; clip rounding overshoot at large budgets.
            finite = std::min(1.0, expected / static_cast<double>(n));
            size = n;
        }
        table.rows.push_back({f, q, c, finite, size});
    }
    e.table = std::move(table);
    return e;
}

Emission cmd_optimize(const OptimizeParams &p) {
    if (p.n < 1) {
        throw std::invalid_argument("--n must be >= 1");
    }
    if (p.k < 1 || p.k > p.n) {
        throw std::invalid_argument("optimize needs 1 <= k <= n");
    }
    OptimizerOptions options;
    options.tolerance = p.tolerance;
    const OptimizationResult r = optimize_profile(p.n, p.k, options);
    const double dn = static_cast<double>(p.n);

    Emission e;
    e.meta = base_meta("optimize", p.seed);
    Report &s = e.report;
    s.add("n", p.n);
    s.add("k", p.k);
    s.add("tolerance", p.tolerance);
    s.add("gain", r.gain);
    s.add("expected_correct", dn / 2 + r.gain);
    s.add("ratio", (dn / 2 + r.gain) / dn);
    s.add("residual", r.residual);
    s.add("iterations", r.iterations);
    s.add("converged", r.converged);
    s.add("query_cost", r.profile.query_cost());
    for (size_t j = 0; j <= r.profile.k(); ++j) {
        s.add("alpha_" + std::to_string(j), r.profile[j]);
    }
    s.add("uniform_expected_correct", expected_correct_quantum(uniform_profile(p.n, p.k)));
    if (2 * p.k <= p.n) {
        s.add("step_expected_correct", expected_correct_quantum(step_profile(p.n, p.k)));
    } else {
        s.add("step_expected_correct", std::monostate{});
    }
    s.add("classical_expected_correct", expected_correct_classical(p.n, p.k));
    e.exit_code = r.converged ? kExitOk : kExitNotConverged;
    return e;
}

std::string ascii_tradeoff_plot(const Table &tradeoff, int width, int height) {
    std::vector<std::string> grid(height, std::string(width, ' '));
    auto column = [&](const std::string &name) {
        auto it = std::find(tradeoff.columns.begin(), tradeoff.columns.end(), name);
        if (it == tradeoff.columns.end()) {
            throw std::invalid_argument("tradeoff table lacks column " + name);
        }
        return static_cast<size_t>(it - tradeoff.columns.begin());
    };
    const size_t fc = column("fraction");
    const size_t qc = column("quantum_ratio");
    const size_t cc = column("classical_ratio");
    auto place = [&](double f, double ratio, char mark) {
        int x = static_cast<int>(std::lround(f * (width - 1)));
        int y = static_cast<int>(std::lround((ratio - 0.5) / 0.5 * (height - 1)));
        x = std::clamp(x, 0, width - 1);
        y = std::clamp(y, 0, height - 1);
        char &cell = grid[height - 1 - y][x];
        cell = (cell == ' ' || cell == mark) ? mark : '*';
    };
    for (const auto &row : tradeoff.rows) {
        const double f = std::get<double>(row[fc]);
        place(f, std::get<double>(row[cc]), 'C');
        place(f, std::get<double>(row[qc]), 'Q');
    }
    std::ostringstream out;
    for (int r = 0; r < height; ++r) {
        const char *label = r == 0 ? "1.00 |" : (r == height - 1 ? "0.50 |" : "     |");
        out << label << grid[r] << "\n";
    }
    out << "     +" << std::string(width, '-') << "\n";
    out << "      0" << std::string(std::max(0, width - 2), ' ') << "1  (queries / n)\n";
    out << "      Q = quantum ratio, C = classical ratio, * = both\n";
    return out.str();
}

}  // namespace oracle_lab
