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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iterator>
#include <map>
#include <set>
#include <vector>

#include <doctest.h>

#include "graceful/label_set.hpp"

using namespace graceful;

namespace {

std::int64_t oracle_count(const std::set<std::int64_t>& s, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) return 0;
  return std::distance(s.lower_bound(lo), s.upper_bound(hi));
}

std::vector<std::int64_t> oracle_admissible(std::int64_t a, const Interval& i, const std::set<std::int64_t>& A,
                                            const std::set<std::int64_t>& C) {
  std::vector<std::int64_t> out;
  for (std::int64_t x = i.lo; x <= i.hi; ++x) {
    if (A.count(x) && x != a && C.count(std::abs(x - a))) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_SUITE("label_set") {

TEST_CASE("random operations agree with std::set") {
  Rng rng(17);
  for (int round = 0; round < 40; ++round) {
    const auto universe = static_cast<std::int64_t>(1 + rng.below(2000));
    LabelSet s(universe);
    std::set<std::int64_t> o;
    for (int op = 0; op < 3000; ++op) {
      const auto x = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(universe)));
      if (rng.below(3) == 0) {
        CHECK(s.erase(x) == (o.erase(x) == 1));
      } else {
        CHECK(s.insert(x) == o.insert(x).second);
      }
      if (op % 97 == 0) {
        CHECK(s.size() == static_cast<std::int64_t>(o.size()));
        auto lo = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(universe))) - 5;
        auto hi = lo + static_cast<std::int64_t>(rng.below(700));
        CHECK(s.count(lo, hi) == oracle_count(o, lo, hi));
        const std::int64_t c = oracle_count(o, lo, universe);
        if (c > 0) {
          const auto k = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(c)));
          CHECK(s.select_from(std::max<std::int64_t>(lo, 0), k) == *std::next(o.lower_bound(lo), k));
        }
        std::uint64_t w = 0;
        for (int b = 0; b < 64; ++b) w |= static_cast<std::uint64_t>(o.count(lo + b)) << b;
        CHECK(s.window(lo) == w);
      }
    }
    CHECK(s.elements() == std::vector<std::int64_t>(o.begin(), o.end()));
    CHECK_FALSE(s.contains(-1));
    CHECK_FALSE(s.contains(universe));
  }
}

TEST_CASE("range and equality") {
  const LabelSet r = LabelSet::range(100, 10, 20);
  CHECK(r.size() == 11);
  CHECK(r.count(0, 99) == 11);
  LabelSet s(100);
  for (int x = 10; x <= 20; ++x) s.insert(x);
  CHECK(r == s);
  s.erase(15);
  CHECK_FALSE(r == s);
}

TEST_CASE("sample is uniform over the window") {
  LabelSet s(300);
  for (int x : {3, 64, 65, 130, 200, 255, 256}) s.insert(x);
  Rng rng(8);
  std::map<std::int64_t, int> freq;
  const int n = 70000;
  for (int i = 0; i < n; ++i) ++freq[*s.sample(60, 260, rng)];
  CHECK(freq.size() == 6);
  for (const auto& [x, c] : freq) CHECK(std::abs(c - n / 6.0) < 5 * std::sqrt(n / 6.0));
  CHECK_FALSE(s.sample(4, 63, rng).has_value());
}

TEST_CASE("edge label set starts full and mirrors") {
  EdgeLabelSet c(24);
  CHECK(c.size() == 23);
  CHECK_FALSE(c.contains(0));
  CHECK(c.contains(23));
  CHECK(c.erase(5));
  CHECK_FALSE(c.erase(5));
  CHECK(c.size() == 22);
}

TEST_CASE("admissible example") {
  LabelSet A(25);
  A.insert(21);
  A.insert(22);
  EdgeLabelSet C(24);
  for (int c = 1; c < 24; ++c) {
    if (c != 19) C.erase(c);
  }
  CHECK(admissible(2, Interval{21, 24}, A, C) == std::vector<std::int64_t>{21});
  CHECK(admissible_count(2, Interval{21, 24}, A, C) == 1);

  const LabelSet full = LabelSet::range(25, 1, 24);
  const EdgeLabelSet fullc(24);
  CHECK(admissible(2, Interval{21, 24}, full, fullc) == std::vector<std::int64_t>{21, 22, 23, 24});
  CHECK(admissible(2, Interval{21, 24}, LabelSet(25), fullc).empty());
}

TEST_CASE("admissible agrees with brute force") {
  Rng rng(23);
  for (int round = 0; round < 300; ++round) {
    const auto nt = static_cast<std::int64_t>(4 + rng.below(400));
    LabelSet A(nt + 1);
    EdgeLabelSet C(nt);
    std::set<std::int64_t> oa, oc;
    const double pa = static_cast<double>(rng.below(100)) / 100.0;
    const double pc = static_cast<double>(rng.below(100)) / 100.0;
    for (std::int64_t x = 1; x <= nt; ++x) {
      if (static_cast<double>(rng.below(1000)) / 1000.0 < pa) {
        A.insert(x);
        oa.insert(x);
      }
    }
    for (std::int64_t c = 1; c < nt; ++c) {
      if (static_cast<double>(rng.below(1000)) / 1000.0 < pc) {
        oc.insert(c);
      } else {
        C.erase(c);
      }
    }
    for (int q = 0; q < 10; ++q) {
      const auto a = static_cast<std::int64_t>(1 + rng.below(static_cast<std::uint64_t>(nt)));
      const auto lo = static_cast<std::int64_t>(1 + rng.below(static_cast<std::uint64_t>(nt)));
      const auto hi = std::min(nt, lo + static_cast<std::int64_t>(rng.below(150)));
      const Interval i{lo, hi};
      const auto expect = oracle_admissible(a, i, oa, oc);
      CHECK(admissible(a, i, A, C) == expect);
      CHECK(admissible_count(a, i, A, C) == static_cast<std::int64_t>(expect.size()));
      const auto x = sample_admissible(a, i, A, C, rng);
      if (expect.empty()) {
        CHECK_FALSE(x.has_value());
      } else {
        CHECK(std::binary_search(expect.begin(), expect.end(), *x));
      }
    }
  }
}

}  // TEST_SUITE
