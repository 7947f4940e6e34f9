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

#ifndef ORACLE_LAB_RNG_H
#define ORACLE_LAB_RNG_H

#include <cstdint>
#include <random>

namespace oracle_lab {

/// All randomness comes from std::mt19937_64, whose output sequence is fixed
/// by the C++ standard. Doubles are built from the top 53 bits of one draw
/// rather than through <random> distributions, which are not portable.
using Rng = std::mt19937_64;

inline constexpr uint64_t kDefaultSeed = 20260101;

/// SplitMix64 finalizer.
constexpr uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Per-trial seed: splitmix64(master + trial * golden gamma).
constexpr uint64_t derive_seed(uint64_t master, uint64_t trial) {
    return splitmix64(master + trial * 0x9E3779B97F4A7C15ull);
}

/// Uniform double in [0, 1).
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace oracle_lab

#endif
