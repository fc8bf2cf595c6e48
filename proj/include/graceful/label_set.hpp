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
#include <optional>
#include <vector>

#include "graceful/intervals.hpp"
#include "graceful/rng.hpp"

namespace graceful {

/// Dynamic subset of {0, ..., universe-1} stored as a bitset with a running
/// popcount per block of kBlockWords words.
///
/// count() and select() skip whole blocks; window() extracts 64 consecutive
/// membership bits starting anywhere (positions outside the universe read
/// as absent), which is what the shift-and-AND queries are built on.
class LabelSet {
 public:
  static constexpr std::int64_t kBlockWords = 8;

  LabelSet() = default;
  explicit LabelSet(std::int64_t universe);
  /// {lo, ..., hi} inside a universe of the given size.
  static LabelSet range(std::int64_t universe, std::int64_t lo, std::int64_t hi);

  [[nodiscard]] std::int64_t universe() const { return universe_; }
  [[nodiscard]] std::int64_t size() const { return size_; }
  [[nodiscard]] bool empty() const { return size_ == 0; }

  [[nodiscard]] bool contains(std::int64_t x) const {
    if (x < 0 || x >= universe_) return false;
    return (words_[static_cast<std::size_t>(x >> 6)] >> (x & 63)) & 1U;
  }
  /// Returns false if x was already present.
  bool insert(std::int64_t x);
  /// Returns false if x was absent.
  bool erase(std::int64_t x);

  /// Bit i of the result is contains(pos + i).
  [[nodiscard]] std::uint64_t window(std::int64_t pos) const;

  /// |{x in set : lo <= x <= hi}|, bounds clipped to the universe.
  [[nodiscard]] std::int64_t count(std::int64_t lo, std::int64_t hi) const;
  [[nodiscard]] std::int64_t count(const Interval& i) const { return count(i.lo, i.hi); }

  /// k-th smallest element (0-based) among those >= lo. Requires k < count(lo, universe-1).
  [[nodiscard]] std::int64_t select_from(std::int64_t lo, std::int64_t k) const;
  /// Uniform element of the set inside [lo, hi], or nullopt if there is none.
  std::optional<std::int64_t> sample(std::int64_t lo, std::int64_t hi, Rng& rng) const;

  [[nodiscard]] std::vector<std::int64_t> elements() const;

  friend bool operator==(const LabelSet& a, const LabelSet& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }

 private:
  std::int64_t universe_ = 0;
  std::int64_t size_ = 0;
  std::vector<std::uint64_t> words_;
  std::vector<std::int32_t> block_count_;
};

/// Edge-label set C over {0, ..., n_tilde-1}, kept together with its mirror
/// image (c stored at n_tilde-1-c) so that both "a' - a in C" and
/// "a - a' in C" become forward windows.
class EdgeLabelSet {
 public:
  EdgeLabelSet() = default;
  /// Contains {1, ..., n_tilde-1}.
  explicit EdgeLabelSet(std::int64_t n_tilde);

  [[nodiscard]] std::int64_t n_tilde() const { return n_tilde_; }
  [[nodiscard]] const LabelSet& labels() const { return fwd_; }
  [[nodiscard]] std::int64_t size() const { return fwd_.size(); }
  [[nodiscard]] bool contains(std::int64_t c) const { return fwd_.contains(c); }
  bool insert(std::int64_t c);
  bool erase(std::int64_t c);

  /// Bit i of the result is set iff x = pos + i satisfies x != a and |x - a| in C.
  [[nodiscard]] std::uint64_t diff_window(std::int64_t a, std::int64_t pos) const;

  friend bool operator==(const EdgeLabelSet& a, const EdgeLabelSet& b) { return a.fwd_ == b.fwd_; }

 private:
  std::int64_t n_tilde_ = 0;
  LabelSet fwd_;
  LabelSet rev_;
};

/// Mask with bits [0, len) set, len in [0, 64].
inline std::uint64_t low_bits(std::int64_t len) {
  return len >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << len) - 1);
}

/// adm(a, I; A, C) = {a' in A n I : |a' - a| in C}.
std::int64_t admissible_count(std::int64_t a, const Interval& i, const LabelSet& A, const EdgeLabelSet& C);
std::vector<std::int64_t> admissible(std::int64_t a, const Interval& i, const LabelSet& A, const EdgeLabelSet& C);
/// Uniform admissible label by rank and select, or nullopt if adm is empty.
std::optional<std::int64_t> sample_admissible(std::int64_t a, const Interval& i, const LabelSet& A,
                                              const EdgeLabelSet& C, Rng& rng);

}  // namespace graceful
