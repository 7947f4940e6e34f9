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

// oracle_lab: exact analysis and statevector simulation of bounded-weight
// oracle interrogation.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "oracle_lab/commands.h"

using namespace oracle_lab;

namespace {

struct CommonOptions {
    std::string format = "csv";
    std::string out;
};

void add_output_flags(CLI::App *cmd, CommonOptions &common) {
    cmd->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", common.out, "Output path (default: standard output)");
}

int emit(const Emission &e, const CommonOptions &common) {
    const std::string text = render(e, common.format == "json" ? OutputFormat::kJson : OutputFormat::kCsv);
    if (common.out.empty()) {
        std::cout << text;
        std::cout.flush();
    } else {
        std::ofstream file(common.out, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open " << common.out << " for writing\n";
            return kExitError;
        }
        file << text;
    }
    return e.exit_code;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Bounded-weight oracle interrogation: exact analysis, simulation, and amplitude optimization"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);
    CommonOptions common;

    ExactParams exact;
    auto *exact_cmd = app.add_subcommand("exact", "Exact success probability at a query threshold");
    exact_cmd->add_option("--n", exact.n, "Oracle size N")->required()->check(CLI::PositiveNumber);
    exact_cmd->add_option("--k", exact.k, "Query threshold (default floor(N/2 + sqrt N))");
    exact_cmd->add_option("--seed", exact.seed, "Master seed (recorded only)");
    add_output_flags(exact_cmd, common);

    ThresholdParams threshold;
    auto *threshold_cmd = app.add_subcommand("threshold", "Smallest threshold meeting an error budget");
    threshold_cmd->add_option("--n", threshold.n, "Oracle size N")->required()->check(CLI::PositiveNumber);
    auto *eps_opt = threshold_cmd->add_option("--epsilon", threshold.epsilon, "Allowed failure probability in (0,1)");
    auto *lambda_opt =
        threshold_cmd->add_option("--lambda", threshold.lambda, "Threshold offset k = N/2 + lambda sqrt N");
    eps_opt->excludes(lambda_opt);
    threshold_cmd->add_option("--seed", threshold.seed, "Master seed (recorded only)");
    add_output_flags(threshold_cmd, common);

    SimulateParams simulate;
    std::string sim_profile = "uniform";
    std::string sim_omega;
    auto *simulate_cmd = app.add_subcommand("simulate", "Monte Carlo runs of the statevector protocol");
    simulate_cmd->add_option("--n", simulate.n, "Oracle size N")->required()->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--k", simulate.k, "Query budget for uniform/step/optimal profiles");
    simulate_cmd->add_option("--profile", sim_profile, "uniform, one-query, step, optimal, or file:PATH");
    simulate_cmd->add_option("--omega", sim_omega, "Fixed oracle as hex (MSB = omega_1); random per trial if omitted");
    simulate_cmd->add_option("--trials", simulate.trials, "Number of trials")->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--seed", simulate.seed, "Master seed");
    simulate_cmd->add_option("--threads", simulate.threads, "Worker threads")->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--qubit-cap", simulate.qubit_cap, "Largest n the simulator will allocate");
    add_output_flags(simulate_cmd, common);

    TradeoffParams tradeoff;
    std::string tradeoff_profile = "step";
    bool ascii = false;
    uint64_t tradeoff_n = 0;
    auto *tradeoff_cmd = app.add_subcommand("tradeoff", "Correct-bit ratio versus query fraction");
    auto *tradeoff_n_opt = tradeoff_cmd->add_option("--n", tradeoff_n, "Finite N for the analytic column");
    tradeoff_n_opt->check(CLI::PositiveNumber);
    tradeoff_cmd->add_option("--fractions", tradeoff.fractions, "Comma-separated k/N values")
        ->delimiter(',')
        ->check(CLI::Range(0.0, 1.0));
    tradeoff_cmd->add_option("--profile", tradeoff_profile, "step or optimal")
        ->check(CLI::IsMember({"step", "optimal"}));
    tradeoff_cmd->add_option("--seed", tradeoff.seed, "Master seed (recorded only)");
    tradeoff_cmd->add_flag("--ascii", ascii, "Also draw the curves on standard error");
    add_output_flags(tradeoff_cmd, common);

    OptimizeParams optimize;
    std::string emit_profile;
    auto *optimize_cmd = app.add_subcommand("optimize", "Best amplitude profile for a query budget");
    optimize_cmd->add_option("--n", optimize.n, "Oracle size N")->required()->check(CLI::PositiveNumber);
    optimize_cmd->add_option("--k", optimize.k, "Query budget")->required()->check(CLI::PositiveNumber);
    optimize_cmd->add_option("--tol", optimize.tolerance, "Eigen-residual tolerance")->check(CLI::PositiveNumber);
    optimize_cmd->add_option("--seed", optimize.seed, "Master seed (recorded only)");
    optimize_cmd->add_option("--emit-profile", emit_profile, "Write the profile, one alpha per line, to this path");
    add_output_flags(optimize_cmd, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*exact_cmd) {
            return emit(cmd_exact(exact), common);
        }
        if (*threshold_cmd) {
            return emit(cmd_threshold(threshold), common);
        }
        if (*simulate_cmd) {
            simulate.profile = ProfileSpec::parse(sim_profile);
            if (!sim_omega.empty()) {
                simulate.omega_hex = sim_omega;
            }
            return emit(cmd_simulate(simulate), common);
        }
        if (*tradeoff_cmd) {
            tradeoff.profile = ProfileSpec::parse(tradeoff_profile);
            if (tradeoff_n_opt->count() > 0) {
                tradeoff.n = tradeoff_n;
            }
            Emission e = cmd_tradeoff(tradeoff);
            if (ascii) {
                std::cerr << ascii_tradeoff_plot(*e.table);
            }
            return emit(e, common);
        }
        if (*optimize_cmd) {
            Emission e = cmd_optimize(optimize);
            if (!emit_profile.empty()) {
                OptimizerOptions options;
                options.tolerance = optimize.tolerance;
                std::ofstream file(emit_profile);
                if (!file) {
                    std::cerr << "error: cannot open " << emit_profile << " for writing\n";
                    return kExitError;
                }
                file << profile_file_text(optimize_profile(optimize.n, optimize.k, options).profile);
            }
            return emit(e, common);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
