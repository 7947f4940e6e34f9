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

#include "oracle_lab/combinatorics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracle_lab {

namespace {

ExactCount pow2(uint64_t e) {
    ExactCount r = 1;
    r <<= e;
    return r;
}

/// Neumaier-compensated sum of C(N, i) / 2^N over i in [lo, hi], in log space.
double log_space_binomial_mass(uint64_t N, uint64_t lo, uint64_t hi) {
    const double log_norm = std::lgamma(static_cast<double>(N) + 1.0) - static_cast<double>(N) * std::log(2.0);
    double sum = 0.0;
    double compensation = 0.0;
    for (uint64_t i = lo; i <= hi; ++i) {
        double term = std::exp(
            log_norm - std::lgamma(static_cast<double>(i) + 1.0) - std::lgamma(static_cast<double>(N - i) + 1.0));
        double t = sum + term;
        if (std::abs(sum) >= std::abs(term)) {
            compensation += (sum - t) + term;
        } else {
            compensation += (term - t) + sum;
        }
        sum = t;
        if (i == hi) {
            break;
        }
    }
    return sum + compensation;
}

/// Lower-tail mass sum_{i<=k} C(N,i)/2^N, summing whichever side is shorter.
double approximate_lower_tail(uint64_t N, uint64_t k) {
    if (k >= N) {
        return 1.0;
    }
    if (2 * k < N) {
        return log_space_binomial_mass(N, 0, k);
    }
    return 1.0 - log_space_binomial_mass(N, k + 1, N);
}

double approximate_upper_tail(uint64_t N, uint64_t k) {
    if (k >= N) {
        return 0.0;
    }
    if (2 * k < N) {
        return 1.0 - log_space_binomial_mass(N, 0, k);
    }
    return log_space_binomial_mass(N, k + 1, N);
}

}  // namespace

Probability Probability::from_dyadic(ExactCount numerator, uint64_t denominator_log2) {
    if (numerator < 0 || numerator > pow2(denominator_log2)) {
        throw std::domain_error("dyadic probability outside [0, 1]");
    }
    Probability p;
    p.value = dyadic_to_double(numerator, denominator_log2);
    p.exact = DyadicRational{std::move(numerator), denominator_log2};
    return p;
}

Probability Probability::approximate(double value) {
    if (!(value >= 0.0)) {
        value = 0.0;
    }
    Probability p;
    p.value = std::min(value, 1.0);
    return p;
}

std::string Probability::rational_text() const {
    if (!exact) {
        return {};
    }
    return exact->numerator.str() + "/" + pow2(exact->denominator_log2).str();
}

double dyadic_to_double(const ExactCount &numerator, uint64_t denominator_log2) {
    if (numerator == 0) {
        return 0.0;
    }
    const uint64_t bits = boost::multiprecision::msb(numerator) + 1;
    uint64_t top;
    int64_t shift = 0;
    if (bits <= 64) {
        top = static_cast<uint64_t>(numerator);
    } else {
        shift = static_cast<int64_t>(bits - 64);
        ExactCount high = numerator >> shift;
        top = static_cast<uint64_t>(high);
        // Sticky bit so the single rounding below is correct.
        if ((high << shift) != numerator) {
            top |= 1;
        }
    }
    const int64_t exponent = shift - static_cast<int64_t>(denominator_log2);
    if (exponent < -2000) {
        // ldexp would flush to zero or a subnormal anyway; avoid int overflow.
        return std::ldexp(static_cast<double>(top), -2000);
    }
    return std::ldexp(static_cast<double>(top), static_cast<int>(exponent));
}

double ratio_to_double(const ExactCount &num, const ExactCount &den) {
    if (den == 0) {
        throw std::domain_error("ratio_to_double: zero denominator");
    }
    if (num == 0) {
        return 0.0;
    }
    const int64_t shift = static_cast<int64_t>(boost::multiprecision::msb(den)) -
                          static_cast<int64_t>(boost::multiprecision::msb(num)) + 64;
    if (shift >= 0) {
        return dyadic_to_double((num << shift) / den, static_cast<uint64_t>(shift));
    }
    ExactCount q = num / (den << -shift);
    return std::ldexp(dyadic_to_double(q, 0), static_cast<int>(-shift));
}

bool dyadic_less_equal(const ExactCount &numerator, uint64_t denominator_log2, double bound) {
    if (std::isnan(bound)) {
        return false;
    }
    if (bound == INFINITY) {
        return true;
    }
    if (bound < 0.0) {
        return false;
    }
    if (bound == 0.0) {
        return numerator == 0;
    }
    int exp2 = 0;
    double fraction = std::frexp(bound, &exp2);
    ExactCount mantissa = static_cast<uint64_t>(std::ldexp(fraction, 53));
    // bound = mantissa * 2^(exp2 - 53); compare numerator <= mantissa * 2^(exp2 - 53 + denominator_log2).
    int64_t scale = static_cast<int64_t>(exp2) - 53 + static_cast<int64_t>(denominator_log2);
    if (scale >= 0) {
        return numerator <= (mantissa << scale);
    }
    return (numerator << -scale) <= mantissa;
}

ErrorBudget::ErrorBudget(double lambda, double epsilon) : lambda(lambda), epsilon(epsilon) {
    if (!(lambda >= 0.0)) {
        throw std::invalid_argument("lambda must be nonnegative");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("epsilon must lie strictly between 0 and 1");
    }
}

ExactCount binomial(uint64_t n, uint64_t i) {
    if (i > n) {
        return 0;
    }
    i = std::min(i, n - i);
    ExactCount c = 1;
    for (uint64_t t = 0; t < i; ++t) {
        c *= n - t;
        c /= t + 1;
    }
    return c;
}

ExactCount cumulative_weight(uint64_t N, uint64_t k) {
    k = std::min(k, N);
    if (k == N) {
        return pow2(N);
    }
    ExactCount term = 1;
    ExactCount total = 1;
    for (uint64_t i = 0; i < k; ++i) {
        term *= N - i;
        term /= i + 1;
        total += term;
    }
    return total;
}

Probability success_probability(uint64_t N, uint64_t k) {
    k = std::min(k, N);
    if (N <= kExactLimit) {
        return Probability::from_dyadic(cumulative_weight(N, k), N);
    }
    return Probability::approximate(approximate_lower_tail(N, k));
}

Probability exact_error(uint64_t N, uint64_t k) {
    k = std::min(k, N);
    if (N <= kExactLimit) {
        return Probability::from_dyadic(pow2(N) - cumulative_weight(N, k), N);
    }
    return Probability::approximate(approximate_upper_tail(N, k));
}

uint64_t isqrt(uint64_t v) {
    auto r = static_cast<uint64_t>(std::sqrt(static_cast<long double>(v)));
    while (static_cast<unsigned __int128>(r) * r > v) {
        --r;
    }
    while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= v) {
        ++r;
    }
    return r;
}

uint64_t interrogation_threshold(uint64_t N) {
    if (N == 0) {
        throw std::invalid_argument("interrogation_threshold requires N >= 1");
    }
    // k <= N/2 + sqrt(N)  <=>  2k - N <= 0  or  (2k - N)^2 <= 4N.
    auto fits = [N](uint64_t k) {
        __int128 excess = 2 * static_cast<__int128>(k) - static_cast<__int128>(N);
        return excess <= 0 || excess * excess <= 4 * static_cast<__int128>(N);
    };
    uint64_t k = N / 2 + isqrt(N);
    while (!fits(k)) {
        --k;
    }
    while (fits(k + 1)) {
        ++k;
    }
    return std::min(k, N);
}

uint64_t threshold_at_lambda(uint64_t N, double lambda) {
    long double k = std::floor(static_cast<long double>(N) / 2 + lambda * std::sqrt(static_cast<long double>(N)));
    if (k <= 0) {
        return 0;
    }
    if (k >= static_cast<long double>(N)) {
        return N;
    }
    return static_cast<uint64_t>(k);
}

Probability gaussian_error_approx(double lambda) {
    if (!(lambda >= 0.0)) {
        throw std::invalid_argument("lambda must be nonnegative");
    }
    return Probability::approximate(0.5 * std::erfc(std::sqrt(2.0) * lambda));
}

uint64_t threshold_for_error(uint64_t N, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("epsilon must lie strictly between 0 and 1");
    }
    if (N > kExactLimit) {
        // Upper tail is monotone in k; bisect on the log-space evaluation.
        uint64_t lo = 0;
        uint64_t hi = N;
        while (lo < hi) {
            uint64_t mid = lo + (hi - lo) / 2;
            if (approximate_upper_tail(N, mid) <= epsilon) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        return lo;
    }
    // Walk k down from N while the tail sum_{i>k-1} C(N,i) stays within budget.
    uint64_t k = N;
    ExactCount tail = 0;
    ExactCount shell = 1;  // C(N, k)
    while (k > 0) {
        ExactCount widened = tail + shell;
        if (!dyadic_less_equal(widened, N, epsilon)) {
            break;
        }
        tail = std::move(widened);
        shell *= k;
        shell /= N - k + 1;
        --k;
    }
    return k;
}

Probability classical_success_probability(uint64_t N, uint64_t k) {
    k = std::min(k, N);
    return Probability::from_dyadic(1, N - k);
}

}  // namespace oracle_lab
