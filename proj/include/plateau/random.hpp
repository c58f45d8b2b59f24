// Copyright 2026 The Plateau Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Counter-based seed derivation.
 *
 * Sample i of a stream gets seed mix(master, i), so a sample's random draws
 * do not depend on how many other samples exist or which thread runs them.
 */
#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace plateau {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31U);
}

/// Folds each word into the running hash in order.
[[nodiscard]] constexpr std::uint64_t
hash_words(std::uint64_t seed, std::initializer_list<std::uint64_t> words) {
    std::uint64_t h = mix64(seed);
    for (std::uint64_t w : words) {
        h = mix64(h ^ mix64(w));
    }
    return h;
}

class SeedPlan {
  public:
    constexpr explicit SeedPlan(std::uint64_t master_seed)
        : master_(master_seed) {}

    [[nodiscard]] constexpr std::uint64_t master_seed() const { return master_; }

    [[nodiscard]] constexpr std::uint64_t sample_seed(std::uint64_t index) const {
        return hash_words(master_, {index});
    }

    /// Independent sub-stream, e.g. one per grid point or per role
    /// (targets vs. fixed ansatz).
    [[nodiscard]] constexpr SeedPlan child(std::uint64_t stream) const {
        return SeedPlan{hash_words(master_, {0x5EED5EEDULL, stream})};
    }

    [[nodiscard]] Rng sample_rng(std::uint64_t index) const {
        return Rng{sample_seed(index)};
    }

  private:
    std::uint64_t master_;
};

/// Bit pattern of a double, for hashing configuration values into seeds.
[[nodiscard]] std::uint64_t double_bits(double value);

} // namespace plateau
