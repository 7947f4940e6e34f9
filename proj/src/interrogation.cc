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

#include "oracle_lab/interrogation.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace oracle_lab {

AmplitudeProfile::AmplitudeProfile(uint64_t n, std::vector<double> alphas) : n_(n), alphas_(std::move(alphas)) {
    if (n_ == 0) {
        throw std::invalid_argument("amplitude profile needs n >= 1");
    }
    if (alphas_.empty()) {
        throw std::invalid_argument("amplitude profile needs at least one shell");
    }
    if (alphas_.size() > n_ + 1) {
        throw std::invalid_argument(
            "amplitude profile has " + std::to_string(alphas_.size()) + " shells but n = " + std::to_string(n_));
    }
    double norm = 0.0;
    for (double a : alphas_) {
        if (!std::isfinite(a)) {
            throw std::invalid_argument("amplitude profile entries must be finite");
        }
        norm += a * a;
    }
    if (std::abs(norm - 1.0) > kProfileNormTolerance) {
        throw std::invalid_argument("amplitude profile is not unit-normalized (sum of squares = " +
                                    std::to_string(norm) + ")");
    }
}

uint64_t AmplitudeProfile::query_cost() const {
    for (size_t j = alphas_.size(); j-- > 0;) {
        if (std::abs(alphas_[j]) > kZeroAmplitude) {
            return j;
        }
    }
    return 0;
}

namespace {

std::vector<double> normalized(std::vector<double> v) {
    double norm = 0.0;
    for (double a : v) {
        norm += a * a;
    }
    norm = std::sqrt(norm);
    for (double &a : v) {
        a /= norm;
    }
    return v;
}

uint64_t ceil_sqrt(uint64_t v) {
    uint64_t s = isqrt(v);
    return s * s == v ? s : s + 1;
}

}  // namespace

AmplitudeProfile uniform_profile(uint64_t n, uint64_t k) {
    k = std::min(k, n);
    const ExactCount total = cumulative_weight(n, k);
    std::vector<double> alphas(k + 1);
    ExactCount shell = 1;
    for (uint64_t j = 0; j <= k; ++j) {
        alphas[j] = std::sqrt(ratio_to_double(shell, total));
        shell *= n - j;
        shell /= j + 1;
    }
    return AmplitudeProfile(n, normalized(std::move(alphas)));
}

AmplitudeProfile one_query_profile(uint64_t n) {
    return AmplitudeProfile(n, {M_SQRT1_2, M_SQRT1_2});
}

AmplitudeProfile step_profile(uint64_t n, uint64_t k) {
    if (k < 1 || 2 * k > n) {
        throw std::invalid_argument("step profile needs 1 <= k <= n/2 (got n = " + std::to_string(n) +
                                    ", k = " + std::to_string(k) + ")");
    }
    const uint64_t width = ceil_sqrt(k);
    std::vector<double> alphas(k + 1, 0.0);
    const double level = 1.0 / std::sqrt(static_cast<double>(width));
    for (uint64_t j = k + 1 - width; j <= k; ++j) {
        alphas[j] = level;
    }
    return AmplitudeProfile(n, std::move(alphas));
}

AmplitudeProfile step_profile_for_budget(uint64_t n, uint64_t k) {
    k = std::min(k, n / 2);
    if (k == 0) {
        return AmplitudeProfile(n, {1.0});
    }
    return step_profile(n, k);
}

double pairwise_sum(std::span<const double> terms) {
    if (terms.size() <= 8) {
        double s = 0.0;
        for (double t : terms) {
            s += t;
        }
        return s;
    }
    const size_t half = terms.size() / 2;
    return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

double expected_correct_quantum(const AmplitudeProfile &profile) {
    const auto n = static_cast<double>(profile.n());
    const auto alphas = profile.alphas();
    std::vector<double> cross;
    cross.reserve(alphas.size());
    for (size_t j = 0; j + 1 < alphas.size(); ++j) {
        const double coupling = std::sqrt(static_cast<double>(j + 1)) * std::sqrt(n - static_cast<double>(j));
        cross.push_back(alphas[j] * alphas[j + 1] * coupling);
    }
    return n / 2 + pairwise_sum(cross);
}

double expected_correct_classical(uint64_t n, uint64_t k) {
    k = std::min(k, n);
    return static_cast<double>(n) / 2 + static_cast<double>(k) / 2;
}

double quantum_ratio(double fraction) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument("fraction must lie in [0, 1]");
    }
    if (fraction > 0.5) {
        return 1.0;
    }
    return 0.5 + std::sqrt(fraction * (1.0 - fraction));
}

double classical_equivalent_queries(double ratio, uint64_t n) {
    if (!(ratio >= 0.5 && ratio <= 1.0)) {
        throw std::invalid_argument("ratio must lie in [1/2, 1]");
    }
    const auto dn = static_cast<double>(n);
    return 2.0 * dn * ratio - dn;
}

InterrogationPlan uniform_plan(uint64_t n, uint64_t k) {
    k = std::min(k, n);
    auto profile = uniform_profile(n, k);
    const double expected = expected_correct_quantum(profile);
    return InterrogationPlan{n, std::move(profile), k, expected, success_probability(n, k)};
}

InterrogationPlan plan_for(const AmplitudeProfile &profile) {
    return InterrogationPlan{
        profile.n(), profile, profile.query_cost(), expected_correct_quantum(profile), std::nullopt};
}

ClassicalPlan classical_plan(uint64_t n, uint64_t k) {
    k = std::min(k, n);
    return ClassicalPlan{n, k, expected_correct_classical(n, k), classical_success_probability(n, k)};
}

}  // namespace oracle_lab
