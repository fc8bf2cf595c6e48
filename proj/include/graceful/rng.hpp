// Copyright 2026 The graceful-trees Authors
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

#pragma once

#include <cstdint>
#include <random>

namespace graceful {

/// Seedable, splittable generator.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Bounded draws use Lemire's multiply-shift rejection instead of
/// std::uniform_int_distribution so that streams are identical across
/// standard library implementations.
///
/// Splitting rule: child(seed, k) = mix(seed ^ mix(k + 0x9e3779b97f4a7c15)),
/// where mix is the SplitMix64 finalizer. A child depends only on the parent
/// seed and the index, never on how many draws the parent has made.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : seed_(seed), engine_(mix(seed)) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t child_seed(std::uint64_t seed, std::uint64_t index) {
    return mix(seed ^ mix(index + 0x9e3779b97f4a7c15ULL));
  }

  [[nodiscard]] Rng split(std::uint64_t index) const { return Rng(child_seed(seed_, index)); }

  [[nodiscard]] std::uint64_t seed() const { return seed_; }

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    __uint128_t product = static_cast<__uint128_t>(next()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<__uint128_t>(next()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace graceful
