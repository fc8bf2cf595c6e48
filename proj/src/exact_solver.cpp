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

#include "graceful/exact_solver.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>
#include <vector>

#include "graceful/prepare.hpp"

namespace graceful {

namespace {

using Mask = std::uint64_t;

Mask bit(std::int64_t x) { return Mask{1} << (x - 1); }

struct Search {
  std::int64_t m = 0;
  std::vector<Vertex> order;
  std::vector<std::int32_t> parent_pos;  // position of the parent in order, -1 for the root
  std::vector<std::int64_t> psi;         // by position

  Search(const Tree& t, std::int64_t m_) : m(m_) {
    const Ordering o = order_vertices(t, {});
    order = o.order;
    std::vector<std::int32_t> pos(static_cast<std::size_t>(t.size()) + 1, -1);
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<std::int32_t>(i);
    parent_pos.resize(order.size(), -1);
    for (std::size_t i = 1; i < order.size(); ++i) parent_pos[i] = pos[o.parent[i]];
    psi.assign(order.size(), 0);
  }

  bool admissible(std::size_t i, std::int64_t x, Mask vused, Mask eused) const {
    if (vused & bit(x)) return false;
    if (i == 0) return true;
    const std::int64_t y = psi[static_cast<std::size_t>(parent_pos[i])];
    const std::int64_t d = x > y ? x - y : y - x;
    return !(eused & bit(d));
  }

  static Mask edge_bit(std::int64_t x, std::int64_t y) { return bit(x > y ? x - y : y - x); }

  // Returns true once a full labelling has been found. Gives up when a
  // smaller root label has already succeeded.
  bool find(std::size_t i, Mask vused, Mask eused, const std::atomic<std::int64_t>& best) {
    if (i == order.size()) return true;
    if (best.load(std::memory_order_relaxed) < psi[0]) return false;
    for (std::int64_t x = 1; x <= m; ++x) {
      if (!admissible(i, x, vused, eused)) continue;
      psi[i] = x;
      const Mask e = i == 0 ? 0 : edge_bit(x, psi[static_cast<std::size_t>(parent_pos[i])]);
      if (find(i + 1, vused | bit(x), eused | e, best)) return true;
    }
    return false;
  }

  std::uint64_t count(std::size_t i, Mask vused, Mask eused) {
    if (i == order.size()) return 1;
    std::uint64_t total = 0;
    for (std::int64_t x = 1; x <= m; ++x) {
      if (!admissible(i, x, vused, eused)) continue;
      psi[i] = x;
      const Mask e = i == 0 ? 0 : edge_bit(x, psi[static_cast<std::size_t>(parent_pos[i])]);
      total += count(i + 1, vused | bit(x), eused | e);
    }
    return total;
  }

  [[nodiscard]] Labels labels() const {
    Labels out(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) out[static_cast<std::size_t>(order[i] - 1)] = psi[i];
    return out;
  }
};

void check_limits(const Tree& t, std::int64_t m, const ExactOptions& opts) {
  if (m < t.size()) throw std::invalid_argument("m must be at least the number of vertices");
  if (m > 64) throw CapExceeded("m = " + std::to_string(m) + " exceeds the 64-bit label masks");
  const std::int64_t cap = effective_cap(opts.cap, m);
  if (t.size() > cap) {
    throw CapExceeded("tree has " + std::to_string(t.size()) + " vertices, cap at m = " + std::to_string(m) +
                      " is " + std::to_string(cap));
  }
}

unsigned worker_count(const ExactOptions& opts, std::int64_t m) {
  unsigned w = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::int64_t>(w, m));
}

// Runs body(x) for every root label x = 1..m on a small pool.
template <typename Body>
void for_each_root(std::int64_t m, unsigned workers, Body&& body) {
  std::atomic<std::int64_t> next{1};
  auto work = [&] {
    for (std::int64_t x = next++; x <= m; x = next++) body(x);
  };
  std::vector<std::jthread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
}

}  // namespace

std::int64_t effective_cap(std::int64_t cap, std::int64_t m) { return m <= cap ? cap : cap * cap / m; }

std::optional<Labels> exact_graceful(const Tree& t, std::int64_t m, const ExactOptions& opts) {
  check_limits(t, m, opts);
  const Search proto(t, m);
  // Each root label is searched independently; the smallest root label
  // with a solution wins, which is what the sequential search returns.
  std::atomic<std::int64_t> best{m + 1};
  std::mutex mu;
  std::optional<Labels> result;
  for_each_root(m, worker_count(opts, m), [&](std::int64_t x) {
    if (best.load() < x) return;
    Search s = proto;
    s.psi[0] = x;
    if (s.find(1, bit(x), 0, best)) {
      std::lock_guard lock(mu);
      if (x < best.load()) {
        best = x;
        result = s.labels();
      }
    }
  });
  return result;
}

std::uint64_t exact_count(const Tree& t, std::int64_t m, const ExactOptions& opts) {
  check_limits(t, m, opts);
  const Search proto(t, m);
  std::atomic<std::uint64_t> total{0};
  for_each_root(m, worker_count(opts, m), [&](std::int64_t x) {
    Search s = proto;
    s.psi[0] = x;
    total += s.count(1, bit(x), 0);
  });
  return total;
}

bool exact_feasible(const Tree& t, const Labels& labels, std::int64_t m) {
  if (labels.size() != static_cast<std::size_t>(t.size()) || m > 64) return false;
  Search s(t, m);
  Mask vused = 0, eused = 0;
  for (std::size_t i = 0; i < s.order.size(); ++i) {
    const std::int64_t x = labels[static_cast<std::size_t>(s.order[i] - 1)];
    if (x < 1 || x > m || !s.admissible(i, x, vused, eused)) return false;
    s.psi[i] = x;
    vused |= bit(x);
    if (i > 0) eused |= Search::edge_bit(x, s.psi[static_cast<std::size_t>(s.parent_pos[i])]);
  }
  return true;
}

}  // namespace graceful
