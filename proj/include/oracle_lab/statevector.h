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

#ifndef ORACLE_LAB_STATEVECTOR_H
#define ORACLE_LAB_STATEVECTOR_H

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oracle_lab/interrogation.h"
#include "oracle_lab/rng.h"

namespace oracle_lab {

/// Default largest register the dense simulator will allocate (2^24 doubles, 128 MiB).
inline constexpr uint32_t kDefaultQubitCap = 24;

/// The hidden string omega_1..omega_n.
///
/// In a basis index, bit (i - 1) holds x_i. In hex text the most significant
/// of the n bits is omega_1, written in lowercase with ceil(n/4) digits.
class OracleString {
   public:
    explicit OracleString(std::vector<uint8_t> bits);

    static OracleString zeros(uint32_t n);
    static OracleString from_index(uint64_t index, uint32_t n);
    static OracleString from_hex(std::string_view hex, uint32_t n);
    static OracleString random(uint32_t n, Rng &rng);

    uint32_t n() const { return static_cast<uint32_t>(bits_.size()); }
    /// omega_i for 1-based i.
    uint8_t bit(uint32_t i) const { return bits_[i - 1]; }
    std::span<const uint8_t> bits() const { return bits_; }

    /// Basis index with bit (i - 1) = omega_i. Requires n <= 64.
    uint64_t index() const;
    std::string to_hex() const;

    /// Number of positions where the two strings agree.
    uint32_t matches(const OracleString &other) const;

    bool operator==(const OracleString &) const = default;

   private:
    std::vector<uint8_t> bits_;
};

/// Dense real amplitudes over the 2^n basis strings.
class StateVector {
   public:
    /// All-zero amplitudes. Throws std::length_error when n exceeds qubit_cap.
    explicit StateVector(uint32_t n, uint32_t qubit_cap = kDefaultQubitCap);

    static StateVector basis(uint32_t n, uint64_t index, uint32_t qubit_cap = kDefaultQubitCap);
    static StateVector from_amplitudes(std::vector<double> amplitudes, uint32_t qubit_cap = kDefaultQubitCap);

    uint32_t n() const { return n_; }
    size_t size() const { return amplitudes_.size(); }
    std::span<double> amplitudes() { return amplitudes_; }
    std::span<const double> amplitudes() const { return amplitudes_; }
    double operator[](size_t i) const { return amplitudes_[i]; }
    double &operator[](size_t i) { return amplitudes_[i]; }

    double norm_squared() const;

   private:
    uint32_t n_;
    std::vector<double> amplitudes_;
};

struct MeasurementOutcome {
    OracleString guess;
    /// Born probability of the sampled basis string.
    double probability_used;
};

struct InterrogationOutcome {
    MeasurementOutcome measurement;
    uint64_t query_cost;
};

/// Weight-shell state: amplitude alpha_{|x|} / sqrt(C(n, |x|)) on |x| <= k.
StateVector prepare_weighted_state(uint32_t n, const AmplitudeProfile &profile,
                                   uint32_t qubit_cap = kDefaultQubitCap);
/// Same, from raw shell amplitudes; rejects a profile off unit norm by more than 1e-9.
StateVector prepare_weighted_state(uint32_t n, std::span<const double> alphas,
                                   uint32_t qubit_cap = kDefaultQubitCap);

/// Bounded-weight parity oracle in phase form: negates the amplitude of x
/// when |x| <= k and <x, omega> = 1.
///
/// The circuit computes b ^= <x, omega> into an ancilla prepared in
/// (|0> - |1>)/sqrt(2). Flipping that ancilla only multiplies the branch by
/// -1, so the ancilla factors out unchanged and the net action on the x
/// register is this +-1 diagonal. The ancilla is therefore not stored.
void apply_phase_oracle(StateVector &state, const OracleString &omega, uint64_t k);

/// In-place H^{(x)n}: unnormalized Walsh-Hadamard butterflies, then a single
/// 2^{-n/2} scale.
void hadamard_all(StateVector &state);

/// Born probabilities |amplitude|^2, indexed by basis string.
std::vector<double> measure_distribution(const StateVector &state);

/// Draws one basis string by inverting the cumulative Born distribution at a
/// uniform draw from rng.
MeasurementOutcome sample_measurement(const StateVector &state, Rng &rng);
MeasurementOutcome sample_measurement(const StateVector &state, uint64_t seed);

/// Steps 1-3 of the protocol (prepare, query, transform), before observation.
/// The oracle threshold is the profile's query cost.
StateVector interrogation_state(const AmplitudeProfile &profile, const OracleString &omega,
                                uint32_t qubit_cap = kDefaultQubitCap);

/// All four steps, observing with a generator seeded by seed.
InterrogationOutcome run_interrogation(const AmplitudeProfile &profile, const OracleString &omega, uint64_t seed,
                                       uint32_t qubit_cap = kDefaultQubitCap);
/// Uniform-state variant with threshold k.
InterrogationOutcome run_interrogation(uint32_t n, uint64_t k, const OracleString &omega, uint64_t seed,
                                       uint32_t qubit_cap = kDefaultQubitCap);

/// sum_y P(y) * #{i : y_i = omega_i} over the exact output distribution.
double brute_force_expected_correct(const AmplitudeProfile &profile, const OracleString &omega,
                                    uint32_t qubit_cap = kDefaultQubitCap);

}  // namespace oracle_lab

#endif
