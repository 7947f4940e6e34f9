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

#ifndef ORACLE_LAB_OPTIMIZER_H
#define ORACLE_LAB_OPTIMIZER_H

#include <cstdint>
#include <span>
#include <vector>

#include "oracle_lab/interrogation.h"

namespace oracle_lab {

/// Symmetric tridiagonal T with zero diagonal and T(j, j+1) = T(j+1, j) =
/// beta_j / 2, beta_j = sqrt(j+1) sqrt(n-j). For unit alpha, alpha' T alpha
/// is the cross-term sum in the expected number of correct bits.
struct CouplingMatrix {
    uint64_t n;
    uint64_t k;
    std::vector<double> offdiag;  // beta_0 .. beta_{k-1}

    size_t dimension() const { return k + 1; }
    /// out = T v.
    void multiply(std::span<const double> v, std::span<double> out) const;
    double quadratic_form(std::span<const double> v) const;
};

CouplingMatrix build_coupling(uint64_t n, uint64_t k);

struct OptimizerOptions {
    double tolerance = 1e-10;
    uint64_t max_iterations = 1'000'000;
};

struct OptimizationResult {
    AmplitudeProfile profile;
    /// Largest eigenvalue of T; the expected number of correct bits is n/2 + gain.
    double gain;
    /// ||T alpha - gain alpha||_2 of the returned profile.
    double residual;
    uint64_t iterations;
    bool converged;
};

/// Principal eigenpair of the coupling matrix. The top eigenvalue is
/// bracketed by Sturm-sequence bisection, then inverse power iteration with
/// a shift just above it runs from the uniform positive start vector until
/// the residual meets the tolerance. Entries are returned nonnegative. If the
/// iteration cap is hit, or the residual stops improving, the last iterate is
/// returned with converged = false.
OptimizationResult optimize_profile(uint64_t n, uint64_t k, const OptimizerOptions &options = {});

}  // namespace oracle_lab

#endif
