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

#ifndef ORACLE_LAB_COMBINATORICS_H
#define ORACLE_LAB_COMBINATORICS_H

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle_lab {

/// Arbitrary-precision nonnegative count of bit strings.
using ExactCount = boost::multiprecision::cpp_int;

/// Above this N the success/error probabilities are evaluated in log space
/// and reported without an exact rational form.
inline constexpr uint64_t kExactLimit = 10000;

/// A probability as a double, optionally carrying the exact dyadic rational
/// numerator / 2^denominator_log2 it was rounded from.
struct DyadicRational {
    ExactCount numerator;
    uint64_t denominator_log2 = 0;
};

struct Probability {
    double value = 0.0;
    std::optional<DyadicRational> exact;

    static Probability from_dyadic(ExactCount numerator, uint64_t denominator_log2);
    static Probability approximate(double value);

    bool is_exact() const { return exact.has_value(); }
    /// "p/q" text of the exact form, with q written out in full; empty if not exact.
    std::string rational_text() const;
};

/// Nearest double to numerator / 2^denominator_log2, valid for any size.
double dyadic_to_double(const ExactCount &numerator, uint64_t denominator_log2);

/// num / den to double precision (relative error << 1 ulp before rounding).
double ratio_to_double(const ExactCount &num, const ExactCount &den);

/// Exact comparison numerator / 2^denominator_log2 <= bound.
bool dyadic_less_equal(const ExactCount &numerator, uint64_t denominator_log2, double bound);

struct ErrorBudget {
    double lambda;
    double epsilon;

    ErrorBudget(double lambda, double epsilon);
};

/// C(n, i), exact; zero when i > n.
ExactCount binomial(uint64_t n, uint64_t i);

/// M_k = sum_{i=0..k} C(N, i). k is clamped to N.
ExactCount cumulative_weight(uint64_t N, uint64_t k);

/// Exact-match probability of the bounded-weight interrogation, M_k / 2^N.
Probability success_probability(uint64_t N, uint64_t k);

/// 1 - M_k / 2^N.
Probability exact_error(uint64_t N, uint64_t k);

/// floor(N/2 + sqrt(N)) in integer arithmetic, clamped to N.
uint64_t interrogation_threshold(uint64_t N);

/// floor(N/2 + lambda * sqrt(N)) clamped to [0, N]. lambda is a real, so this
/// one goes through floating point.
uint64_t threshold_at_lambda(uint64_t N, double lambda);

/// Normal-approximation error at k = N/2 + lambda sqrt(N):
/// 1/2 - Erf(sqrt(2) lambda) / 2, evaluated as erfc(sqrt(2) lambda) / 2.
Probability gaussian_error_approx(double lambda);

/// Smallest k with exact_error(N, k) <= epsilon.
uint64_t threshold_for_error(uint64_t N, double epsilon);

/// Upper bound 2^-(N-k) on any classical k-query strategy guessing all N bits.
Probability classical_success_probability(uint64_t N, uint64_t k);

/// Integer square root, floor(sqrt(v)).
uint64_t isqrt(uint64_t v);

}  // namespace oracle_lab

#endif
