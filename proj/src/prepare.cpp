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

#include "graceful/prepare.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <queue>
#include <sstream>

namespace graceful {

namespace {

bool is_removed(const std::vector<Edge>& sorted_removed, Vertex a, Vertex b) {
  return std::binary_search(sorted_removed.begin(), sorted_removed.end(), Edge(a, b));
}

std::vector<Edge> sorted_copy(std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::string edge_str(Vertex a, Vertex b) {
  return "{" + std::to_string(a) + "," + std::to_string(b) + "}";
}

}  // namespace

std::int64_t log_threshold(const Rational& eps, std::int64_t n) {
  const double e = to_double(eps);
  const double ln = std::log(static_cast<double>(n));
  if (e * static_cast<double>(n) < 2 * ln) throw CutError("eps * n must be at least 2 ln n");
  return static_cast<std::int64_t>(std::floor(e * static_cast<double>(n) / ln));
}

std::int64_t admissible_threshold(const Tree& t, const Rational& eps, std::int64_t floor) {
  const std::int64_t delta = degree_stats(t).max_degree;
  const auto need = ceil_rational(Rational(4 * delta) / eps).convert_to<std::int64_t>();
  return std::max({floor, need, std::int64_t{2}});
}

std::vector<Edge> cut_tree(const Tree& t, const Rational& eps, std::int64_t threshold) {
  if (eps <= 0 || eps >= 1) throw CutError("eps must lie in (0, 1)");
  if (threshold < 2) throw CutError("component threshold must be at least 2");
  const int max_degree = degree_stats(t).max_degree;
  if (Rational(4 * max_degree) > eps * threshold) {
    throw CutError("max degree " + std::to_string(max_degree) + " exceeds eps * threshold / 4 (threshold " +
                   std::to_string(threshold) + ", eps " + to_string(eps) + ")");
  }
  const auto lower = ceil_rational(Rational(2) / eps).convert_to<std::int64_t>();

  const Vertex n = t.size();
  std::vector<char> alive(static_cast<std::size_t>(n) + 1, 1);
  alive[0] = 0;
  std::vector<int> alive_degree(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex v = 1; v <= n; ++v) alive_degree[v] = t.degree(v);
  std::int64_t remaining = n;

  std::vector<Edge> removed;
  std::vector<Vertex> parent(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::int64_t> subtree(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Vertex> stack;
  std::vector<Vertex> preorder;

  while (remaining > threshold) {
    Vertex root = 0;
    for (Vertex v = 1; v <= n; ++v) {
      if (alive[v] && alive_degree[v] == 1) {
        root = v;
        break;
      }
    }
    // Subtree orders with the remaining tree rooted at the leaf.
    preorder.clear();
    stack.assign(1, root);
    parent[root] = 0;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      preorder.push_back(v);
      for (Vertex w : t.neighbors(v)) {
        if (alive[w] && w != parent[v]) {
          parent[w] = v;
          stack.push_back(w);
        }
      }
    }
    for (auto it = preorder.rbegin(); it != preorder.rend(); ++it) {
      subtree[*it] = 1;
      for (Vertex w : t.neighbors(*it)) {
        if (alive[w] && w != parent[*it]) subtree[*it] += subtree[w];
      }
    }

    Vertex u = root;
    Vertex v = 0;
    for (Vertex w : t.neighbors(root)) {
      if (alive[w]) v = w;
    }
    while (true) {
      const std::int64_t s = subtree[v];
      if (s >= lower && s <= threshold) break;
      if (s < lower) throw std::logic_error("cut_tree walk fell below 2/eps");
      Vertex best = 0;
      for (Vertex w : t.neighbors(v)) {
        if (!alive[w] || w == u) continue;
        if (best == 0 || subtree[w] > subtree[best]) best = w;
      }
      u = v;
      v = best;
    }

    removed.emplace_back(u, v);
    stack.assign(1, v);
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      alive[x] = 0;
      --remaining;
      for (Vertex w : t.neighbors(x)) {
        if (alive[w] && w != u) stack.push_back(w);
      }
    }
    --alive_degree[u];
  }
  std::sort(removed.begin(), removed.end());
  return removed;
}

std::vector<std::int32_t> components(const Tree& t, const std::vector<Edge>& removed) {
  const auto r = sorted_copy(removed);
  std::vector<std::int32_t> comp(static_cast<std::size_t>(t.size()) + 1, -1);
  std::int32_t next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 1; s <= t.size(); ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = next;
    stack.assign(1, s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : t.neighbors(v)) {
        if (comp[w] < 0 && !is_removed(r, v, w)) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  comp[0] = -1;
  return comp;
}

Ordering order_vertices(const Tree& t, const std::vector<Edge>& removed) {
  const auto r = sorted_copy(removed);
  const Vertex n = t.size();
  Ordering out;
  out.order.reserve(static_cast<std::size_t>(n));
  out.parent.reserve(static_cast<std::size_t>(n));
  std::vector<char> placed(static_cast<std::size_t>(n) + 1, 0);
  std::deque<std::pair<Vertex, Vertex>> inside;  // (vertex, parent) reached over kept edges
  std::priority_queue<std::pair<Vertex, Vertex>, std::vector<std::pair<Vertex, Vertex>>, std::greater<>> across;

  inside.emplace_back(1, 0);
  while (static_cast<Vertex>(out.order.size()) < n) {
    if (inside.empty()) {
      inside.push_back(across.top());
      across.pop();
    }
    const auto [v, p] = inside.front();
    inside.pop_front();
    placed[v] = 1;
    out.order.push_back(v);
    out.parent.push_back(p);
    for (Vertex w : t.neighbors(v)) {
      if (placed[w] || w == p) continue;
      if (is_removed(r, v, w)) {
        across.emplace(w, v);
      } else {
        inside.emplace_back(w, v);
      }
    }
  }
  return out;
}

Plan assign_intervals(const Tree& t, const std::vector<Edge>& removed, const Ordering& ordering,
                      const IntervalSystem& sys, Rng& rng) {
  const Vertex n = t.size();
  Plan plan;
  plan.order = ordering.order;
  plan.parent = ordering.parent;
  plan.removed = sorted_copy(removed);
  plan.position.assign(static_cast<std::size_t>(n) + 1, -1);
  for (std::size_t i = 0; i < plan.order.size(); ++i) plan.position[plan.order[i]] = static_cast<std::int32_t>(i);
  plan.color = t.two_coloring();

  const auto raw = components(t, removed);
  std::vector<std::int32_t> relabel(static_cast<std::size_t>(n) + 1, -1);
  plan.component.assign(static_cast<std::size_t>(n) + 1, -1);
  plan.interval_of.assign(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex v : plan.order) {
    auto& k = relabel[raw[v]];
    if (k < 0) {
      k = static_cast<std::int32_t>(plan.component_size.size());
      plan.component_size.push_back(0);
      plan.component_interval.push_back(static_cast<std::size_t>(rng.below(sys.j_count())));
    }
    plan.component[v] = k;
    ++plan.component_size[k];
    const std::size_t j = plan.component_interval[k];
    plan.interval_of[v] = plan.color[v] == 0 ? j : sys.complement(j);
  }
  return plan;
}

Plan make_plan(const Tree& t, const Params& p, const IntervalSystem& sys, Rng& rng) {
  const std::int64_t k = admissible_threshold(t, p.eps, p.component_threshold);
  const auto removed = cut_tree(t, p.eps, k);
  return assign_intervals(t, removed, order_vertices(t, removed), sys, rng);
}

bool PlanReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.pass; });
}

double pre4_max_deviation(const Plan& plan, const IntervalSystem& sys) {
  const std::size_t jc = sys.j_count();
  const double step = 1.0 / static_cast<double>(jc);
  std::vector<std::vector<std::int64_t>> hits(jc);
  for (std::size_t i = 0; i < plan.order.size(); ++i) hits[plan.interval_of[plan.order[i]]].push_back(static_cast<std::int64_t>(i));
  const auto n = static_cast<std::int64_t>(plan.order.size());
  double worst = 0;
  for (std::size_t j = 0; j < jc; ++j) {
    // f(i) = #{hits < i} - i / |J| over prefixes i = 0..n; the answer is max f - min f.
    double hi = 0, lo = 0;
    std::int64_t c = 0;
    for (std::int64_t pos : hits[j]) {
      lo = std::min(lo, static_cast<double>(c) - static_cast<double>(pos) * step);
      ++c;
      hi = std::max(hi, static_cast<double>(c) - static_cast<double>(pos + 1) * step);
    }
    lo = std::min(lo, static_cast<double>(c) - static_cast<double>(n) * step);
    worst = std::max(worst, hi - lo);
  }
  return worst;
}

PlanReport check_plan(const Plan& plan, const Tree& t, const IntervalSystem& sys, const PlanTolerances& tol) {
  PlanReport report;
  const Vertex n = t.size();
  const auto r = sorted_copy(plan.removed);

  PropertyCheck pre1{"PRE1", true, ""};
  if (Rational(static_cast<std::int64_t>(r.size())) > tol.eps * n) {
    pre1.pass = false;
    pre1.witness = "|R| = " + std::to_string(r.size()) + " > eps*n = " + to_string(tol.eps * n);
  }
  report.checks.push_back(pre1);

  PropertyCheck pre2{"PRE2", true, ""};
  std::vector<std::int32_t> pos(static_cast<std::size_t>(n) + 1, -1);
  if (plan.order.size() != static_cast<std::size_t>(n)) {
    pre2.pass = false;
    pre2.witness = "order has " + std::to_string(plan.order.size()) + " vertices";
  } else {
    for (std::size_t i = 0; i < plan.order.size() && pre2.pass; ++i) {
      const Vertex v = plan.order[i];
      if (v < 1 || v > n || pos[v] >= 0) {
        pre2.pass = false;
        pre2.witness = "order is not a permutation at index " + std::to_string(i + 1);
        break;
      }
      pos[v] = static_cast<std::int32_t>(i);
      int earlier = 0;
      Vertex seen = 0;
      for (Vertex w : t.neighbors(v)) {
        if (pos[w] >= 0 && w != v) {
          ++earlier;
          seen = w;
        }
      }
      const bool ok = i == 0 ? earlier == 0 : (earlier == 1 && seen == plan.parent[i]);
      if (!ok) {
        pre2.pass = false;
        pre2.witness = "v_" + std::to_string(i + 1) + " = " + std::to_string(v) + " has " + std::to_string(earlier) +
                       " earlier neighbours";
      }
    }
  }
  report.checks.push_back(pre2);

  PropertyCheck pre3{"PRE3", true, ""};
  PropertyCheck pre5{"PRE5", true, ""};
  for (const Edge& e : t.edges()) {
    if (is_removed(r, e.u, e.v)) continue;
    if (pre2.pass && tol.component_threshold > 0 && pre3.pass &&
        std::abs(pos[e.u] - pos[e.v]) > tol.component_threshold) {
      pre3.pass = false;
      pre3.witness = "edge " + edge_str(e.u, e.v) + " spans " + std::to_string(std::abs(pos[e.u] - pos[e.v])) +
                     " positions";
    }
    if (pre5.pass && plan.interval_of[e.u] != sys.complement(plan.interval_of[e.v])) {
      pre5.pass = false;
      pre5.witness = "edge " + edge_str(e.u, e.v) + " has intervals starting at " +
                     std::to_string(sys.j_intervals()[plan.interval_of[e.u]].lo) + " and " +
                     std::to_string(sys.j_intervals()[plan.interval_of[e.v]].lo);
    }
  }

  PropertyCheck pre4{"PRE4", true, ""};
  report.pre4_max_deviation = pre4_max_deviation(plan, sys);
  if (tol.pre4_tolerance) {
    report.pre4_tolerance = *tol.pre4_tolerance;
  } else {
    double sum_sq = 0;
    std::int64_t largest = 0;
    for (std::int64_t s : plan.component_size) {
      sum_sq += static_cast<double>(s) * static_cast<double>(s);
      largest = std::max(largest, s);
    }
    const double count = static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(sys.j_count());
    report.pre4_tolerance =
        2.0 * static_cast<double>(largest) + std::sqrt(sum_sq / 2.0 * std::log(count / tol.pre4_failure_probability));
  }
  if (report.pre4_max_deviation > report.pre4_tolerance) {
    pre4.pass = false;
    std::ostringstream w;
    w << "max deviation " << report.pre4_max_deviation << " > " << report.pre4_tolerance;
    pre4.witness = w.str();
  }
  report.checks.push_back(pre3);
  report.checks.push_back(pre4);
  report.checks.push_back(pre5);
  return report;
}

nlohmann::json to_json(const Plan& plan, const IntervalSystem& sys) {
  nlohmann::json removed = nlohmann::json::array();
  for (const Edge& e : plan.removed) removed.push_back({e.u, e.v});
  std::vector<Label> starts;
  for (std::size_t v = 1; v < plan.interval_of.size(); ++v) starts.push_back(sys.j_intervals()[plan.interval_of[v]].lo);
  return nlohmann::json{{"order", plan.order},
                        {"parents", plan.parent},
                        {"removed_edges", removed},
                        {"interval_start", starts},
                        {"component_size", plan.component_size}};
}

}  // namespace graceful
