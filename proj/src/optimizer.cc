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

#include "oracle_lab/optimizer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace oracle_lab {

void CouplingMatrix::multiply(std::span<const double> v, std::span<double> out) const {
    const size_t d = dimension();
    for (size_t j = 0; j < d; ++j) {
        double s = 0.0;
        if (j > 0) {
            s += 0.5 * offdiag[j - 1] * v[j - 1];
        }
        if (j + 1 < d) {
            s += 0.5 * offdiag[j] * v[j + 1];
        }
        out[j] = s;
    }
}

double CouplingMatrix::quadratic_form(std::span<const double> v) const {
    double s = 0.0;
    for (size_t j = 0; j < offdiag.size(); ++j) {
        s += v[j] * v[j + 1] * offdiag[j];
    }
    return s;
}

CouplingMatrix build_coupling(uint64_t n, uint64_t k) {
    if (k > n) {
        throw std::invalid_argument("coupling needs k <= n (got n = " + std::to_string(n) + ", k = " +
                                    std::to_string(k) + ")");
    }
    CouplingMatrix t{n, k, std::vector<double>(k)};
    for (uint64_t j = 0; j < k; ++j) {
        t.offdiag[j] = std::sqrt(static_cast<double>(j + 1)) * std::sqrt(static_cast<double>(n - j));
    }
    return t;
}

namespace {

double normalize(std::span<double> v) {
    double norm = 0.0;
    for (double x : v) {
        norm += x * x;
    }
    norm = std::sqrt(norm);
    for (double &x : v) {
        x /= norm;
    }
    return norm;
}

/// Number of eigenvalues of T strictly below x (Sturm sequence of T - xI).
size_t eigenvalues_below(const CouplingMatrix &t, double x) {
    size_t count = 0;
    double pivot = -x;
    for (size_t j = 0;; ++j) {
        if (pivot == 0.0) {
            pivot = -1e-300;
        }
        count += pivot < 0.0;
        if (j == t.offdiag.size()) {
            break;
        }
        const double e = 0.5 * t.offdiag[j];
        pivot = -x - e * e / pivot;
    }
    return count;
}

/// Solves (shift I - T) w = v in place; shift above the spectrum keeps it positive definite.
void solve_shifted(const CouplingMatrix &t, double shift, std::span<double> v, std::vector<double> &scratch) {
    const size_t d = t.dimension();
    scratch.resize(d);
    // Thomas elimination with diagonal shift and off-diagonals -beta_j/2.
    double denom = shift;
    scratch[0] = d > 1 ? -0.5 * t.offdiag[0] / denom : 0.0;
    v[0] /= denom;
    for (size_t j = 1; j < d; ++j) {
        const double sub = -0.5 * t.offdiag[j - 1];
        denom = shift - sub * scratch[j - 1];
        scratch[j] = j + 1 < d ? -0.5 * t.offdiag[j] / denom : 0.0;
        v[j] = (v[j] - sub * v[j - 1]) / denom;
    }
    for (size_t j = d - 1; j-- > 0;) {
        v[j] -= scratch[j] * v[j + 1];
    }
}

double residual_norm(const CouplingMatrix &t, std::span<const double> v, double gain, std::vector<double> &tv) {
    tv.resize(v.size());
    t.multiply(v, tv);
    double r2 = 0.0;
    for (size_t j = 0; j < v.size(); ++j) {
        const double e = tv[j] - gain * v[j];
        r2 += e * e;
    }
    return std::sqrt(r2);
}

}  // namespace

OptimizationResult optimize_profile(uint64_t n, uint64_t k, const OptimizerOptions &options) {
    if (k < 1) {
        throw std::invalid_argument("optimize_profile needs k >= 1");
    }
    const CouplingMatrix t = build_coupling(n, k);
    const size_t d = t.dimension();

    // The spectrum is symmetric about 0 and bounded by max beta. Bisect for
    // the top of it on [0, max beta] with Sturm counts.
    double lo = 0.0;
    double hi = *std::max_element(t.offdiag.begin(), t.offdiag.end());
    while (hi - lo > 4 * std::numeric_limits<double>::epsilon() * hi) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (eigenvalues_below(t, mid) == d) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // Shifting just above +gain separates it from -gain and from the rest of
    // the spectrum, so (shift I - T)^{-1} has a dominant Perron eigenvector.
    const double shift = hi * (1.0 + 1e-12) + 1e-300;

    std::vector<double> v(d, 1.0 / std::sqrt(static_cast<double>(d)));
    std::vector<double> tv;
    std::vector<double> scratch;
    double gain = t.quadratic_form(v);
    double residual = residual_norm(t, v, gain, tv);
    double best_residual = residual;
    uint64_t iterations = 0;
    uint64_t stalled = 0;
    while (residual > options.tolerance && iterations < options.max_iterations && stalled < 8) {
        solve_shifted(t, shift, v, scratch);
        normalize(v);
        ++iterations;
        gain = t.quadratic_form(v);
        residual = residual_norm(t, v, gain, tv);
        if (residual < best_residual) {
            best_residual = residual;
            stalled = 0;
        } else {
            ++stalled;
        }
    }

    // The iterates stay positive ((shift I - T)^{-1} is entrywise positive);
    // clamp away any signed zeros from underflow.
    for (double &x : v) {
        x = std::max(x, 0.0);
    }
    normalize(v);
    gain = t.quadratic_form(v);
    residual = residual_norm(t, v, gain, tv);
    return OptimizationResult{AmplitudeProfile(n, v), gain, residual, iterations, residual <= options.tolerance};
}

}  // namespace oracle_lab
