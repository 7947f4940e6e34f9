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

#ifndef ORACLE_LAB_INTERROGATION_H
#define ORACLE_LAB_INTERROGATION_H

#include <cstdint>
#include <span>
#include <vector>

#include "oracle_lab/combinatorics.h"

namespace oracle_lab {

inline constexpr double kProfileNormTolerance = 1e-9;
/// Shells with |alpha_j| at or below this carry no amplitude for query accounting.
inline constexpr double kZeroAmplitude = 1e-12;

/// Shell amplitudes alpha_0..alpha_k of an initial state whose amplitude on a
/// basis string x is alpha_{|x|} / sqrt(C(n, |x|)). Always unit-normalized.
class AmplitudeProfile {
   public:
    /// Throws std::invalid_argument if alphas is empty, longer than n + 1,
    /// non-finite, or off unit norm by more than kProfileNormTolerance.
    AmplitudeProfile(uint64_t n, std::vector<double> alphas);

    uint64_t n() const { return n_; }
    /// Highest shell index represented (alphas().size() - 1).
    uint64_t k() const { return alphas_.size() - 1; }
    std::span<const double> alphas() const { return alphas_; }
    double operator[](size_t j) const { return alphas_[j]; }

    /// Largest j with |alpha_j| > kZeroAmplitude: the worst-case number of
    /// oracle calls made on any branch of the superposition.
    uint64_t query_cost() const;

   private:
    uint64_t n_;
    std::vector<double> alphas_;
};

/// Equal amplitude on every string of weight <= k: alpha_j = sqrt(C(n,j) / M_k).
AmplitudeProfile uniform_profile(uint64_t n, uint64_t k);

/// alpha_0 = alpha_1 = 1/sqrt(2).
AmplitudeProfile one_query_profile(uint64_t n);

/// Flat window over the ceil(sqrt(k)) shells k - ceil(sqrt(k)) + 1 .. k,
/// renormalized. Requires 1 <= k <= n/2.
AmplitudeProfile step_profile(uint64_t n, uint64_t k);

/// Step profile for any budget: budgets above n/2 reuse the floor(n/2)
/// profile, and budget 0 (or n = 1) is the single-shell profile.
AmplitudeProfile step_profile_for_budget(uint64_t n, uint64_t k);

/// Expected number of correctly guessed bits,
/// n/2 + sum_{j<k} alpha_j alpha_{j+1} sqrt(j+1) sqrt(n-j).
double expected_correct_quantum(const AmplitudeProfile &profile);

/// n/2 + k/2: query k bits, guess the rest.
double expected_correct_classical(uint64_t n, uint64_t k);

/// Large-n correct-bit ratio of the step construction at k = fraction * n:
/// 1/2 + sqrt(f(1-f)) for f <= 1/2, and 1 above.
double quantum_ratio(double fraction);

/// Classical queries needed to reach a correct-bit ratio: n (2 ratio - 1).
double classical_equivalent_queries(double ratio, uint64_t n);

/// Pairwise (cascade) summation.
double pairwise_sum(std::span<const double> terms);

struct InterrogationPlan {
    uint64_t n;
    AmplitudeProfile profile;
    uint64_t query_cost;
    double expected_correct;
    std::optional<Probability> exact_match_prob;
};

struct ClassicalPlan {
    uint64_t n;
    uint64_t k;
    double expected_correct;
    Probability exact_match_prob;
};

/// Plan for the bounded-weight uniform state; carries the exact-match probability.
InterrogationPlan uniform_plan(uint64_t n, uint64_t k);
InterrogationPlan plan_for(const AmplitudeProfile &profile);
ClassicalPlan classical_plan(uint64_t n, uint64_t k);

}  // namespace oracle_lab

#endif
