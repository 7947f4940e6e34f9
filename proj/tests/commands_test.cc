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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "oracle_lab/csv.h"

using namespace oracle_lab;

namespace {

std::string value_of(const Emission &e, const std::string &key) {
    const Value *v = e.report.find(key);
    if (!v) {
        v = e.meta.find(key);
    }
    return v ? format_value(*v) : "<missing>";
}

double number_of(const Emission &e, const std::string &key) {
    return std::stod(value_of(e, key));
}

std::string temp_path(const std::string &name) {
    return ::testing::TempDir() + name;
}

}  // namespace

TEST(FormatValue, seventeen_digits) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(1.0), "1");
    EXPECT_EQ(format_value(std::monostate{}), "");
    EXPECT_EQ(format_value(true), "true");
    EXPECT_EQ(format_value(uint64_t{42}), "42");
}

TEST(ProfileSpec, parse) {
    EXPECT_EQ(ProfileSpec::parse("uniform").kind, ProfileSpec::Kind::kUniform);
    EXPECT_EQ(ProfileSpec::parse("one-query").kind, ProfileSpec::Kind::kOneQuery);
    EXPECT_EQ(ProfileSpec::parse("step").kind, ProfileSpec::Kind::kStep);
    EXPECT_EQ(ProfileSpec::parse("optimal").kind, ProfileSpec::Kind::kOptimal);
    auto f = ProfileSpec::parse("file:/tmp/a.txt");
    EXPECT_EQ(f.kind, ProfileSpec::Kind::kFile);
    EXPECT_EQ(f.path, "/tmp/a.txt");
    EXPECT_EQ(f.name(), "file:/tmp/a.txt");
    EXPECT_THROW(ProfileSpec::parse("file:"), std::invalid_argument);
    EXPECT_THROW(ProfileSpec::parse("gaussian"), std::invalid_argument);
}

TEST(ProfileFile, read_and_validate) {
    const std::string path = temp_path("profile_ok.txt");
    {
        std::ofstream f(path);
        f << "# one-query\n0.70710678118654752\n\n0.70710678118654752\n";
    }
    auto p = read_profile_file(path, 9);
    EXPECT_EQ(p.k(), 1u);
    EXPECT_NEAR(expected_correct_quantum(p), 6.0, 1e-12);

    const std::string bad = temp_path("profile_bad.txt");
    {
        std::ofstream f(bad);
        f << "0.5\n0.5\n";
    }
    EXPECT_THROW(read_profile_file(bad, 9), std::invalid_argument);
    {
        std::ofstream f(bad);
        f << "0.6 junk\n0.8\n";
    }
    EXPECT_THROW(read_profile_file(bad, 9), std::invalid_argument);
    EXPECT_THROW(read_profile_file(temp_path("does_not_exist.txt"), 9), std::invalid_argument);

    // The emitted text reads back to the same profile.
    auto opt = optimize_profile(12, 4).profile;
    {
        std::ofstream f(path);
        f << profile_file_text(opt);
    }
    auto back = read_profile_file(path, 12);
    for (size_t j = 0; j <= opt.k(); ++j) {
        EXPECT_EQ(back[j], opt[j]);
    }
}

TEST(CmdExact, examples) {
    auto e16 = cmd_exact({16, std::nullopt});
    EXPECT_EQ(value_of(e16, "k"), "12");
    EXPECT_EQ(value_of(e16, "success_probability_exact"), "64839/65536");
    EXPECT_NEAR(number_of(e16, "success_probability"), 0.98937, 1e-5);
    EXPECT_EQ(value_of(e16, "classical_success_probability_exact"), "1/16");

    auto e9 = cmd_exact({9, std::nullopt});
    EXPECT_EQ(value_of(e9, "k"), "7");
    EXPECT_EQ(value_of(e9, "success_probability_exact"), "502/512");

    auto e1 = cmd_exact({1, std::nullopt});
    EXPECT_EQ(value_of(e1, "k"), "1");
    EXPECT_EQ(number_of(e1, "success_probability"), 1.0);

    EXPECT_EQ(value_of(cmd_exact({10, 30}), "k"), "10");
    EXPECT_THROW(cmd_exact({0, std::nullopt}), std::invalid_argument);
}

TEST(CmdExact, reproducibility_header) {
    auto e = cmd_exact({16, 3, 77});
    EXPECT_EQ(value_of(e, "tool"), "oracle_lab");
    EXPECT_EQ(value_of(e, "version"), kToolVersion);
    EXPECT_EQ(value_of(e, "command"), "exact");
    EXPECT_EQ(value_of(e, "seed"), "77");
    const std::string csv = render(e, OutputFormat::kCsv);
    EXPECT_TRUE(csv.starts_with("key,value\ntool,oracle_lab\nversion,"));
    auto json = nlohmann::json::parse(render(e, OutputFormat::kJson));
    EXPECT_EQ(json["seed"], 77);
    EXPECT_EQ(json["success_probability_exact"], "697/65536");
    EXPECT_EQ(json["k"], 3);
}

TEST(CmdThreshold, examples) {
    auto a = cmd_threshold({16, 0.05, std::nullopt});
    EXPECT_EQ(value_of(a, "k"), "11");
    EXPECT_EQ(value_of(a, "error_probability_exact"), "2517/65536");
    EXPECT_NEAR(number_of(a, "implied_lambda"), (11 - 8) / 4.0, 1e-15);
    EXPECT_NEAR(number_of(a, "gaussian_error_approx"), 0.5 * std::erfc(std::sqrt(2.0) * 0.75), 1e-15);

    auto b = cmd_threshold({1001, 0.5, std::nullopt});
    EXPECT_EQ(value_of(b, "k"), "500");
    EXPECT_NEAR(number_of(b, "implied_lambda"), 0.0, 0.02);

    auto c = cmd_threshold({4, 1e-9, std::nullopt});
    EXPECT_EQ(value_of(c, "k"), "4");
    EXPECT_EQ(number_of(c, "error_probability"), 0.0);

    auto d = cmd_threshold({10000, std::nullopt, 1.0});
    EXPECT_EQ(value_of(d, "k"), "5100");

    EXPECT_THROW(cmd_threshold({16, std::nullopt, std::nullopt}), std::invalid_argument);
    EXPECT_THROW(cmd_threshold({16, 0.1, 1.0}), std::invalid_argument);
    EXPECT_THROW(cmd_threshold({16, 1.5, std::nullopt}), std::invalid_argument);
    EXPECT_THROW(cmd_threshold({16, std::nullopt, -1.0}), std::invalid_argument);
}

TEST(CmdSimulate, uniform_matches_exact_rate) {
    SimulateParams p;
    p.n = 10;
    p.k = 8;
    p.trials = 10000;
    p.seed = 1;
    auto e = cmd_simulate(p);
    EXPECT_EQ(e.exit_code, kExitOk);
    const double exact = success_probability(10, 8).value;  // 1013/1024
    EXPECT_EQ(value_of(e, "analytic_exact_match_probability_exact"), "1013/1024");
    EXPECT_NEAR(number_of(e, "analytic_exact_match_probability"), exact, 1e-12);
    const double sigma = std::sqrt(exact * (1 - exact) / p.trials);
    EXPECT_NEAR(number_of(e, "empirical_exact_match_rate"), exact, 3 * sigma);
    ASSERT_TRUE(e.table);
    EXPECT_EQ(e.table->rows.size(), 10000u);
}

TEST(CmdSimulate, one_query_mean) {
    SimulateParams p;
    p.n = 9;
    p.profile = ProfileSpec::parse("one-query");
    p.trials = 10000;
    p.seed = 2;
    auto e = cmd_simulate(p);
    EXPECT_EQ(e.exit_code, kExitOk);
    EXPECT_DOUBLE_EQ(number_of(e, "analytic_expected_correct"), 6.0);
    EXPECT_NEAR(number_of(e, "mean_correct_bits"), 6.0, 3 * number_of(e, "analytic_correct_stderr"));
    EXPECT_EQ(value_of(e, "query_cost"), "1");
}

TEST(CmdSimulate, deterministic_records) {
    SimulateParams p;
    p.n = 6;
    p.profile = ProfileSpec::parse("step");
    p.k = 3;
    p.trials = 1;
    p.seed = 123;
    const std::string first = render(cmd_simulate(p), OutputFormat::kCsv);
    const std::string second = render(cmd_simulate(p), OutputFormat::kCsv);
    EXPECT_EQ(first, second);
    EXPECT_NE(first.find("trial,seed,omega_hex,guess_hex,correct_bits,exact_match\n"), std::string::npos);
}

TEST(CmdSimulate, threads_do_not_change_output) {
    SimulateParams p;
    p.n = 7;
    p.trials = 257;
    p.seed = 9;
    const std::string serial = render(cmd_simulate(p), OutputFormat::kCsv);
    p.threads = 4;
    EXPECT_EQ(render(cmd_simulate(p), OutputFormat::kCsv), serial);
}

TEST(CmdSimulate, fixed_omega) {
    SimulateParams p;
    p.n = 8;
    p.k = 8;
    p.omega_hex = "a5";
    p.trials = 50;
    auto e = cmd_simulate(p);
    for (const auto &row : e.table->rows) {
        EXPECT_EQ(format_value(row[2]), "a5");
        EXPECT_EQ(format_value(row[3]), "a5");
        EXPECT_EQ(format_value(row[4]), "8");
    }
    EXPECT_EQ(number_of(e, "empirical_exact_match_rate"), 1.0);
    EXPECT_EQ(e.exit_code, kExitOk);
}

TEST(CmdSimulate, errors) {
    SimulateParams p;
    p.n = 30;
    p.trials = 1;
    try {
        cmd_simulate(p);
        FAIL();
    } catch (const std::length_error &e) {
        EXPECT_NE(std::string(e.what()).find("cap of 24"), std::string::npos);
    }
    p.n = 6;
    p.profile = ProfileSpec::parse("step");
    EXPECT_THROW(cmd_simulate(p), std::invalid_argument);  // step needs --k
    p.profile = ProfileSpec::parse("uniform");
    p.omega_hex = "ff";
    EXPECT_THROW(cmd_simulate(p), std::invalid_argument);  // 8 bits into n = 6
}

TEST(AgreementZ, degenerate_standard_error) {
    EXPECT_NEAR(agreement_z(0.5, 0.4, 0.05), 2.0, 1e-12);
    EXPECT_EQ(agreement_z(1.0, 1.0, 0.0), 0.0);
    EXPECT_EQ(agreement_z(0.9, 1.0, 0.0), INFINITY);
}

TEST(CmdSimulate, summary_z_scores) {
    SimulateParams p;
    p.n = 8;
    p.k = 2;
    p.trials = 4000;
    auto e = cmd_simulate(p);
    EXPECT_LE(std::abs(number_of(e, "exact_match_z")), kDisagreementSigmas);
    EXPECT_LE(std::abs(number_of(e, "mean_correct_z")), kDisagreementSigmas);
    EXPECT_EQ(value_of(e, "agreement"), "ok");
}

TEST(CmdTradeoff, examples) {
    TradeoffParams p;
    p.fractions = {0.0, 0.1, 0.5, 0.8};
    auto e = cmd_tradeoff(p);
    ASSERT_TRUE(e.table);
    const auto &rows = e.table->rows;
    EXPECT_EQ(std::get<double>(rows[0][1]), 0.5);
    EXPECT_EQ(std::get<double>(rows[0][2]), 0.5);
    EXPECT_NEAR(std::get<double>(rows[1][1]), 0.8, 1e-15);
    EXPECT_NEAR(std::get<double>(rows[1][2]), 0.55, 1e-15);
    EXPECT_EQ(std::get<double>(rows[2][1]), 1.0);
    EXPECT_EQ(std::get<double>(rows[2][2]), 0.75);
    EXPECT_EQ(std::get<double>(rows[3][1]), 1.0);
    EXPECT_TRUE(std::holds_alternative<std::monostate>(rows[1][3]));
    const std::string csv = render(e, OutputFormat::kCsv);
    EXPECT_NE(csv.find("fraction,quantum_ratio,classical_ratio,finite_n_ratio,n\n"), std::string::npos);
    EXPECT_NE(csv.find("\n0.10000000000000001,0.80000000000000004,0.55000000000000004,,\n"), std::string::npos);
}

TEST(CmdTradeoff, finite_n_columns) {
    TradeoffParams p;
    p.n = 400;
    p.fractions = {0.0, 0.1, 0.3, 0.7, 1.0};
    for (auto kind : {ProfileSpec::Kind::kStep, ProfileSpec::Kind::kOptimal}) {
        p.profile = ProfileSpec{kind, {}};
        auto e = cmd_tradeoff(p);
        EXPECT_EQ(e.exit_code, kExitOk);
        for (const auto &row : e.table->rows) {
            double r = std::get<double>(row[3]);
            EXPECT_GE(r, 0.5);
            EXPECT_LE(r, 1.0 + 1e-12);
            EXPECT_EQ(std::get<uint64_t>(row[4]), 400u);
        }
        EXPECT_EQ(std::get<double>(e.table->rows[0][3]), 0.5);
    }
    // Step at k = 40 against the direct formula.
    p.profile = ProfileSpec{ProfileSpec::Kind::kStep, {}};
    auto e = cmd_tradeoff(p);
    EXPECT_DOUBLE_EQ(std::get<double>(e.table->rows[1][3]), expected_correct_quantum(step_profile(400, 40)) / 400);
    // Above n/2 the floor(n/2) profile is reused.
    EXPECT_DOUBLE_EQ(std::get<double>(e.table->rows[3][3]), expected_correct_quantum(step_profile(400, 200)) / 400);
    p.profile = ProfileSpec::parse("uniform");
    EXPECT_THROW(cmd_tradeoff(p), std::invalid_argument);
}

TEST(CmdOptimize, examples) {
    auto a = cmd_optimize({9, 1});
    EXPECT_NEAR(number_of(a, "alpha_0"), M_SQRT1_2, 1e-9);
    EXPECT_NEAR(number_of(a, "alpha_1"), M_SQRT1_2, 1e-9);
    EXPECT_NEAR(number_of(a, "expected_correct"), 4.5 + 1.5, 1e-9);
    EXPECT_EQ(value_of(a, "converged"), "true");
    EXPECT_EQ(value_of(a, "classical_expected_correct"), "5");

    auto b = cmd_optimize({4, 2});
    EXPECT_NEAR(number_of(b, "expected_correct"), 2 + std::sqrt(2.5), 1e-9);
    EXPECT_EQ(value_of(b, "step_expected_correct"), format_double(expected_correct_quantum(step_profile(4, 2))));

    auto c = cmd_optimize({5, 4});
    EXPECT_EQ(value_of(c, "step_expected_correct"), "");
    EXPECT_THROW(cmd_optimize({5, 6}), std::invalid_argument);
}

TEST(CmdOptimize, profile_feeds_simulation) {
    const uint32_t n = 10;
    auto r = optimize_profile(n, 3);
    const std::string path = temp_path("opt_profile.txt");
    {
        std::ofstream f(path);
        f << profile_file_text(r.profile);
    }
    SimulateParams p;
    p.n = n;
    p.profile = ProfileSpec::parse("file:" + path);
    p.trials = 5000;
    p.seed = 4;
    auto e = cmd_simulate(p);
    EXPECT_NEAR(number_of(e, "analytic_expected_correct"), n / 2.0 + r.gain, 1e-9);
    EXPECT_NEAR(number_of(e, "mean_correct_bits"), n / 2.0 + r.gain, 3 * number_of(e, "analytic_correct_stderr"));
}

TEST(Render, csv_round_trip_is_byte_identical) {
    SimulateParams p;
    p.n = 5;
    p.trials = 20;
    for (const Emission &e : {cmd_exact({12, std::nullopt}), cmd_simulate(p), cmd_tradeoff(TradeoffParams{.n = 400}),
                              cmd_optimize({8, 3})}) {
        const std::string text = render(e, OutputFormat::kCsv);
        EXPECT_EQ(write_csv(parse_csv(text)), text);
    }
}

TEST(Render, json_structure) {
    SimulateParams p;
    p.n = 4;
    p.trials = 3;
    auto j = nlohmann::json::parse(render(cmd_simulate(p), OutputFormat::kJson));
    EXPECT_EQ(j["command"], "simulate");
    EXPECT_EQ(j["rows"].size(), 3u);
    EXPECT_TRUE(j["rows"][0].contains("omega_hex"));
    EXPECT_TRUE(j.contains("mean_correct_bits"));
    EXPECT_TRUE(j.contains("seed"));
}

TEST(AsciiPlot, draws_both_curves) {
    auto e = cmd_tradeoff(TradeoffParams{});
    const std::string plot = ascii_tradeoff_plot(*e.table);
    EXPECT_NE(plot.find('Q'), std::string::npos);
    EXPECT_NE(plot.find('C'), std::string::npos);
    EXPECT_NE(plot.find('*'), std::string::npos);  // curves meet at f = 0 and f = 1
}
