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

#include "oracle_lab/statevector.h"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace oracle_lab {

OracleString::OracleString(std::vector<uint8_t> bits) : bits_(std::move(bits)) {
    if (bits_.empty()) {
        throw std::invalid_argument("oracle string needs n >= 1");
    }
    for (uint8_t b : bits_) {
        if (b > 1) {
            throw std::invalid_argument("oracle bits must be 0 or 1");
        }
    }
}

OracleString OracleString::zeros(uint32_t n) {
    return OracleString(std::vector<uint8_t>(n, 0));
}

OracleString OracleString::from_index(uint64_t index, uint32_t n) {
    if (n == 0 || n > 64 || (n < 64 && (index >> n) != 0)) {
        throw std::invalid_argument("basis index out of range for n = " + std::to_string(n));
    }
    std::vector<uint8_t> bits(n);
    for (uint32_t i = 0; i < n; ++i) {
        bits[i] = static_cast<uint8_t>((index >> i) & 1);
    }
    return OracleString(std::move(bits));
}

OracleString OracleString::from_hex(std::string_view hex, uint32_t n) {
    if (n == 0) {
        throw std::invalid_argument("oracle string needs n >= 1");
    }
    if (hex.starts_with("0x") || hex.starts_with("0X")) {
        hex.remove_prefix(2);
    }
    if (hex.empty()) {
        throw std::invalid_argument("empty hex oracle string");
    }
    // Read bits least significant first; the last of the n bits read is omega_1.
    std::vector<uint8_t> bits(n, 0);
    uint64_t position = 0;  // significance of the current bit in the hex value
    for (size_t c = hex.size(); c-- > 0;) {
        char ch = hex[c];
        int digit;
        if (ch >= '0' && ch <= '9') {
            digit = ch - '0';
        } else if (ch >= 'a' && ch <= 'f') {
            digit = ch - 'a' + 10;
        } else if (ch >= 'A' && ch <= 'F') {
            digit = ch - 'A' + 10;
        } else {
            throw std::invalid_argument("invalid hex digit '" + std::string(1, ch) + "' in oracle string");
        }
        for (int b = 0; b < 4; ++b, ++position) {
            if (((digit >> b) & 1) == 0) {
                continue;
            }
            if (position >= n) {
                throw std::invalid_argument("hex oracle string " + std::string(hex) + " does not fit in " +
                                            std::to_string(n) + " bits");
            }
            bits[n - 1 - position] = 1;
        }
    }
    return OracleString(std::move(bits));
}

OracleString OracleString::random(uint32_t n, Rng &rng) {
    std::vector<uint8_t> bits(n);
    uint64_t word = 0;
    for (uint32_t i = 0; i < n; ++i) {
        if (i % 64 == 0) {
            word = rng();
        }
        bits[i] = static_cast<uint8_t>((word >> (i % 64)) & 1);
    }
    return OracleString(std::move(bits));
}

uint64_t OracleString::index() const {
    if (bits_.size() > 64) {
        throw std::length_error("oracle string longer than 64 bits has no basis index");
    }
    uint64_t v = 0;
    for (size_t i = 0; i < bits_.size(); ++i) {
        v |= static_cast<uint64_t>(bits_[i]) << i;
    }
    return v;
}

std::string OracleString::to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    const size_t n = bits_.size();
    const size_t digits = (n + 3) / 4;
    std::string out(digits, '0');
    // Bit at significance p (0 = least) is omega_{n - p}.
    for (size_t p = 0; p < n; ++p) {
        if (bits_[n - 1 - p]) {
            size_t d = digits - 1 - p / 4;
            int value = (out[d] <= '9' ? out[d] - '0' : out[d] - 'a' + 10) | (1 << (p % 4));
            out[d] = kDigits[value];
        }
    }
    return out;
}

uint32_t OracleString::matches(const OracleString &other) const {
    if (other.n() != n()) {
        throw std::invalid_argument("oracle strings differ in length");
    }
    uint32_t count = 0;
    for (size_t i = 0; i < bits_.size(); ++i) {
        count += bits_[i] == other.bits_[i];
    }
    return count;
}

StateVector::StateVector(uint32_t n, uint32_t qubit_cap) : n_(n) {
    if (n == 0) {
        throw std::invalid_argument("state vector needs n >= 1");
    }
    if (n > qubit_cap || n > 62) {
        throw std::length_error("n = " + std::to_string(n) + " exceeds the simulator cap of " +
                                std::to_string(qubit_cap) + " qubits");
    }
    amplitudes_.assign(size_t{1} << n, 0.0);
}

StateVector StateVector::basis(uint32_t n, uint64_t index, uint32_t qubit_cap) {
    StateVector s(n, qubit_cap);
    if (index >= s.size()) {
        throw std::invalid_argument("basis index out of range");
    }
    s.amplitudes_[index] = 1.0;
    return s;
}

StateVector StateVector::from_amplitudes(std::vector<double> amplitudes, uint32_t qubit_cap) {
    if (amplitudes.size() < 2 || !std::has_single_bit(amplitudes.size())) {
        throw std::invalid_argument("amplitude count must be a power of two >= 2");
    }
    StateVector s(static_cast<uint32_t>(std::countr_zero(amplitudes.size())), qubit_cap);
    s.amplitudes_ = std::move(amplitudes);
    return s;
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (double a : amplitudes_) {
        total += a * a;
    }
    return total;
}

StateVector prepare_weighted_state(uint32_t n, std::span<const double> alphas, uint32_t qubit_cap) {
    return prepare_weighted_state(n, AmplitudeProfile(n, std::vector<double>(alphas.begin(), alphas.end())),
                                  qubit_cap);
}

StateVector prepare_weighted_state(uint32_t n, const AmplitudeProfile &profile, uint32_t qubit_cap) {
    if (profile.n() != n) {
        throw std::invalid_argument("profile is for n = " + std::to_string(profile.n()) + ", state has n = " +
                                    std::to_string(n));
    }
    StateVector state(n, qubit_cap);
    std::vector<double> per_string(profile.k() + 1);
    for (uint64_t j = 0; j <= profile.k(); ++j) {
        per_string[j] = profile[j] / std::sqrt(binomial(n, j).convert_to<double>());
    }
    auto amps = state.amplitudes();
    for (size_t x = 0; x < amps.size(); ++x) {
        const auto weight = static_cast<uint64_t>(std::popcount(x));
        if (weight <= profile.k()) {
            amps[x] = per_string[weight];
        }
    }
    return state;
}

void apply_phase_oracle(StateVector &state, const OracleString &omega, uint64_t k) {
    if (omega.n() != state.n()) {
        throw std::invalid_argument("oracle has n = " + std::to_string(omega.n()) + ", state has n = " +
                                    std::to_string(state.n()));
    }
    const uint64_t mask = omega.index();
    auto amps = state.amplitudes();
    for (size_t x = 0; x < amps.size(); ++x) {
        if (static_cast<uint64_t>(std::popcount(x)) <= k && (std::popcount(x & mask) & 1)) {
            amps[x] = -amps[x];
        }
    }
}

void hadamard_all(StateVector &state) {
    auto amps = state.amplitudes();
    const size_t size = amps.size();
    for (size_t half = 1; half < size; half <<= 1) {
        for (size_t block = 0; block < size; block += half << 1) {
            for (size_t i = block; i < block + half; ++i) {
                const double a = amps[i];
                const double b = amps[i + half];
                amps[i] = a + b;
                amps[i + half] = a - b;
            }
        }
    }
    const double scale = std::pow(2.0, -0.5 * state.n());
    for (double &a : amps) {
        a *= scale;
    }
}

std::vector<double> measure_distribution(const StateVector &state) {
    std::vector<double> probs(state.size());
    auto amps = state.amplitudes();
    for (size_t i = 0; i < probs.size(); ++i) {
        probs[i] = amps[i] * amps[i];
    }
    return probs;
}

MeasurementOutcome sample_measurement(const StateVector &state, Rng &rng) {
    const double u = uniform01(rng);
    auto amps = state.amplitudes();
    double cumulative = 0.0;
    size_t last_nonzero = 0;
    for (size_t i = 0; i < amps.size(); ++i) {
        const double p = amps[i] * amps[i];
        if (p == 0.0) {
            continue;
        }
        last_nonzero = i;
        cumulative += p;
        if (u < cumulative) {
            return {OracleString::from_index(i, state.n()), p};
        }
    }
    // u landed in the rounding slack above the accumulated total.
    const double p = amps[last_nonzero] * amps[last_nonzero];
    return {OracleString::from_index(last_nonzero, state.n()), p};
}

MeasurementOutcome sample_measurement(const StateVector &state, uint64_t seed) {
    Rng rng(seed);
    return sample_measurement(state, rng);
}

StateVector interrogation_state(const AmplitudeProfile &profile, const OracleString &omega, uint32_t qubit_cap) {
    StateVector state = prepare_weighted_state(omega.n(), profile, qubit_cap);
    apply_phase_oracle(state, omega, profile.query_cost());
    hadamard_all(state);
    return state;
}

InterrogationOutcome run_interrogation(const AmplitudeProfile &profile, const OracleString &omega, uint64_t seed,
                                       uint32_t qubit_cap) {
    StateVector state = interrogation_state(profile, omega, qubit_cap);
    return {sample_measurement(state, seed), profile.query_cost()};
}

InterrogationOutcome run_interrogation(uint32_t n, uint64_t k, const OracleString &omega, uint64_t seed,
                                       uint32_t qubit_cap) {
    return run_interrogation(uniform_profile(n, k), omega, seed, qubit_cap);
}

double brute_force_expected_correct(const AmplitudeProfile &profile, const OracleString &omega, uint32_t qubit_cap) {
    const StateVector state = interrogation_state(profile, omega, qubit_cap);
    const std::vector<double> probs = measure_distribution(state);
    const uint64_t target = omega.index();
    const int n = static_cast<int>(omega.n());
    std::vector<double> weighted(probs.size());
    for (size_t y = 0; y < probs.size(); ++y) {
        weighted[y] = probs[y] * (n - std::popcount(y ^ target));
    }
    return pairwise_sum(weighted);
}

}  // namespace oracle_lab
