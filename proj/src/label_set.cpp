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

#include "graceful/label_set.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace graceful {

namespace {

// Position of the k-th (0-based) set bit of w.
int select_in_word(std::uint64_t w, int k) {
  for (int i = 0; i < k; ++i) w &= w - 1;
  return std::countr_zero(w);
}

}  // namespace

LabelSet::LabelSet(std::int64_t universe) : universe_(universe) {
  if (universe < 0) throw std::invalid_argument("negative universe");
  const auto nwords = static_cast<std::size_t>((universe + 63) / 64);
  words_.assign(nwords, 0);
  block_count_.assign((nwords + kBlockWords - 1) / kBlockWords, 0);
}

LabelSet LabelSet::range(std::int64_t universe, std::int64_t lo, std::int64_t hi) {
  LabelSet s(universe);
  for (std::int64_t x = std::max<std::int64_t>(lo, 0); x <= std::min(hi, universe - 1); ++x) s.insert(x);
  return s;
}

bool LabelSet::insert(std::int64_t x) {
  if (x < 0 || x >= universe_) throw std::out_of_range("label outside universe");
  auto& w = words_[static_cast<std::size_t>(x >> 6)];
  const std::uint64_t bit = std::uint64_t{1} << (x & 63);
  if (w & bit) return false;
  w |= bit;
  ++block_count_[static_cast<std::size_t>((x >> 6) / kBlockWords)];
  ++size_;
  return true;
}

bool LabelSet::erase(std::int64_t x) {
  if (x < 0 || x >= universe_) return false;
  auto& w = words_[static_cast<std::size_t>(x >> 6)];
  const std::uint64_t bit = std::uint64_t{1} << (x & 63);
  if (!(w & bit)) return false;
  w &= ~bit;
  --block_count_[static_cast<std::size_t>((x >> 6) / kBlockWords)];
  --size_;
  return true;
}

std::uint64_t LabelSet::window(std::int64_t pos) const {
  if (pos >= universe_ || pos <= -64) return 0;
  const std::int64_t nwords = static_cast<std::int64_t>(words_.size());
  auto word_at = [&](std::int64_t k) -> std::uint64_t {
    return (k < 0 || k >= nwords) ? 0 : words_[static_cast<std::size_t>(k)];
  };
  // Floor division so that negative positions split correctly.
  const std::int64_t k = pos >= 0 ? pos / 64 : -((-pos + 63) / 64);
  const int shift = static_cast<int>(pos - k * 64);
  std::uint64_t out = word_at(k) >> shift;
  if (shift != 0) out |= word_at(k + 1) << (64 - shift);
  return out;
}

std::int64_t LabelSet::count(std::int64_t lo, std::int64_t hi) const {
  lo = std::max<std::int64_t>(lo, 0);
  hi = std::min(hi, universe_ - 1);
  if (lo > hi) return 0;
  std::int64_t total = 0;
  std::int64_t pos = lo;
  while (pos <= hi) {
    const std::int64_t word = pos >> 6;
    const std::int64_t block = word / kBlockWords;
    const std::int64_t block_lo = block * kBlockWords * 64;
    const std::int64_t block_hi = block_lo + kBlockWords * 64 - 1;
    if (pos == block_lo && block_hi <= hi) {
      total += block_count_[static_cast<std::size_t>(block)];
      pos = block_hi + 1;
      continue;
    }
    const std::int64_t len = std::min<std::int64_t>(64 - (pos & 63), hi - pos + 1);
    total += std::popcount(window(pos) & low_bits(len));
    pos += len;
  }
  return total;
}

std::int64_t LabelSet::select_from(std::int64_t lo, std::int64_t k) const {
  std::int64_t pos = std::max<std::int64_t>(lo, 0);
  while (pos < universe_) {
    const std::int64_t word = pos >> 6;
    const std::int64_t block = word / kBlockWords;
    const std::int64_t block_lo = block * kBlockWords * 64;
    if (pos == block_lo) {
      const std::int64_t c = block_count_[static_cast<std::size_t>(block)];
      if (k >= c) {
        k -= c;
        pos = block_lo + kBlockWords * 64;
        continue;
      }
    }
    const std::int64_t len = 64 - (pos & 63);
    const std::uint64_t w = window(pos) & low_bits(len);
    const int c = std::popcount(w);
    if (k < c) return pos + select_in_word(w, static_cast<int>(k));
    k -= c;
    pos += len;
  }
  throw std::out_of_range("select beyond set size");
}

std::optional<std::int64_t> LabelSet::sample(std::int64_t lo, std::int64_t hi, Rng& rng) const {
  const std::int64_t c = count(lo, hi);
  if (c == 0) return std::nullopt;
  const auto k = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(c)));
  return select_from(lo, k);
}

std::vector<std::int64_t> LabelSet::elements() const {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(size_));
  for (std::size_t k = 0; k < words_.size(); ++k) {
    std::uint64_t w = words_[k];
    while (w) {
      out.push_back(static_cast<std::int64_t>(k) * 64 + std::countr_zero(w));
      w &= w - 1;
    }
  }
  return out;
}

EdgeLabelSet::EdgeLabelSet(std::int64_t n_tilde) : n_tilde_(n_tilde), fwd_(n_tilde), rev_(n_tilde) {
  for (std::int64_t c = 1; c < n_tilde; ++c) insert(c);
}

bool EdgeLabelSet::insert(std::int64_t c) {
  if (!fwd_.insert(c)) return false;
  rev_.insert(n_tilde_ - 1 - c);
  return true;
}

bool EdgeLabelSet::erase(std::int64_t c) {
  if (!fwd_.erase(c)) return false;
  rev_.erase(n_tilde_ - 1 - c);
  return true;
}

std::uint64_t EdgeLabelSet::diff_window(std::int64_t a, std::int64_t pos) const {
  // x > a reads c = x - a forward; x < a reads c = a - x from the mirror,
  // whose index n_tilde-1-a+x increases with x.
  std::uint64_t out = fwd_.window(pos - a) | rev_.window(n_tilde_ - 1 - a + pos);
  const std::int64_t self = a - pos;
  if (self >= 0 && self < 64) out &= ~(std::uint64_t{1} << self);
  return out;
}

namespace {

template <typename F>
void for_each_admissible_word(std::int64_t a, const Interval& i, const LabelSet& A, const EdgeLabelSet& C, F&& f) {
  for (std::int64_t pos = i.lo; pos <= i.hi; pos += 64) {
    const std::uint64_t w = A.window(pos) & C.diff_window(a, pos) & low_bits(i.hi - pos + 1);
    if (w) f(pos, w);
  }
}

}  // namespace

std::int64_t admissible_count(std::int64_t a, const Interval& i, const LabelSet& A, const EdgeLabelSet& C) {
  std::int64_t total = 0;
  for_each_admissible_word(a, i, A, C, [&](std::int64_t, std::uint64_t w) { total += std::popcount(w); });
  return total;
}

std::vector<std::int64_t> admissible(std::int64_t a, const Interval& i, const LabelSet& A, const EdgeLabelSet& C) {
  std::vector<std::int64_t> out;
  for_each_admissible_word(a, i, A, C, [&](std::int64_t pos, std::uint64_t w) {
    while (w) {
      out.push_back(pos + std::countr_zero(w));
      w &= w - 1;
    }
  });
  return out;
}

std::optional<std::int64_t> sample_admissible(std::int64_t a, const Interval& i, const LabelSet& A,
                                              const EdgeLabelSet& C, Rng& rng) {
  const std::int64_t total = admissible_count(a, i, A, C);
  if (total == 0) return std::nullopt;
  auto k = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(total)));
  for (std::int64_t pos = i.lo; pos <= i.hi; pos += 64) {
    const std::uint64_t w = A.window(pos) & C.diff_window(a, pos) & low_bits(i.hi - pos + 1);
    const int c = std::popcount(w);
    if (k < c) return pos + select_in_word(w, static_cast<int>(k));
    k -= c;
  }
  return std::nullopt;  // unreachable
}

}  // namespace graceful
