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

#include "graceful/verify_pack.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace graceful {

namespace {

VerifyReport fail(std::string kind, std::string message) {
  VerifyReport r;
  r.pass = false;
  r.failure = std::move(kind);
  r.message = std::move(message);
  return r;
}

// Shared by the graceful and harmonious checks: injectivity of psi, then
// injectivity of the induced edge value.
template <typename EdgeValue>
VerifyReport check_injective(const Tree& t, const Labels& labels, std::int64_t lo, std::int64_t hi,
                             EdgeValue&& edge_value) {
  if (labels.size() != static_cast<std::size_t>(t.size())) {
    return fail("size", "expected " + std::to_string(t.size()) + " labels, got " + std::to_string(labels.size()));
  }
  std::unordered_map<std::int64_t, Vertex> owner;
  for (Vertex v = 1; v <= t.size(); ++v) {
    const std::int64_t x = labels[static_cast<std::size_t>(v - 1)];
    if (x < lo || x > hi) {
      auto r = fail("range", "label " + std::to_string(x) + " of vertex " + std::to_string(v) + " outside [" +
                                 std::to_string(lo) + ", " + std::to_string(hi) + "]");
      r.vertices = {v};
      return r;
    }
    auto [it, fresh] = owner.emplace(x, v);
    if (!fresh) {
      auto r = fail("vertex-collision", "vertices " + std::to_string(it->second) + " and " + std::to_string(v) +
                                            " share label " + std::to_string(x));
      r.vertices = {it->second, v};
      return r;
    }
  }
  std::unordered_map<std::int64_t, Edge> seen;
  for (const Edge& e : t.edges()) {
    const std::int64_t d = edge_value(labels[static_cast<std::size_t>(e.u - 1)], labels[static_cast<std::size_t>(e.v - 1)]);
    auto [it, fresh] = seen.emplace(d, e);
    if (!fresh) {
      auto r = fail("edge-collision", "edges {" + std::to_string(it->second.u) + "," + std::to_string(it->second.v) +
                                          "} and {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                          "} share edge label " + std::to_string(d));
      r.edges = {it->second, e};
      return r;
    }
  }
  return {};
}

}  // namespace

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json j{{"pass", pass}};
  if (!pass) {
    j["failure"] = failure;
    j["message"] = message;
    if (!vertices.empty()) j["vertices"] = vertices;
    if (!edges.empty()) {
      nlohmann::json es = nlohmann::json::array();
      for (const Edge& e : edges) es.push_back({e.u, e.v});
      j["edges"] = es;
    }
  }
  return j;
}

VerifyReport verify_graceful(const Tree& t, const Labels& labels, std::int64_t m) {
  return check_injective(t, labels, 1, m, [](std::int64_t a, std::int64_t b) { return a > b ? a - b : b - a; });
}

VerifyReport verify_bipartite_graceful(const Tree& t, const Labels& labels, std::int64_t m,
                                       const std::vector<std::uint8_t>& classes) {
  if (classes.size() != static_cast<std::size_t>(t.size()) + 1) throw std::invalid_argument("colouring has wrong size");
  for (const Edge& e : t.edges()) {
    if (classes[e.u] == classes[e.v]) {
      throw std::invalid_argument("colouring is not proper at edge {" + std::to_string(e.u) + "," +
                                  std::to_string(e.v) + "}");
    }
  }
  VerifyReport r = verify_graceful(t, labels, m);
  if (!r.pass) return r;
  std::int64_t max_low = 0;
  std::int64_t min_high = m + 1;
  Vertex arg_low = 0, arg_high = 0;
  for (Vertex v = 1; v <= t.size(); ++v) {
    const std::int64_t x = labels[static_cast<std::size_t>(v - 1)];
    if (classes[v] == 0 && x > max_low) {
      max_low = x;
      arg_low = v;
    }
    if (classes[v] == 1 && x < min_high) {
      min_high = x;
      arg_high = v;
    }
  }
  if (max_low >= min_high) {
    r = fail("bipartite-order", "class-0 vertex " + std::to_string(arg_low) + " has label " + std::to_string(max_low) +
                                    " >= label " + std::to_string(min_high) + " of class-1 vertex " +
                                    std::to_string(arg_high));
    r.vertices = {arg_low, arg_high};
  }
  return r;
}

VerifyReport verify_harmonious(const Tree& t, const Labels& labels, std::int64_t q) {
  if (q < 1) throw std::invalid_argument("harmonious modulus must be positive");
  return check_injective(t, labels, std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max(),
                         [q](std::int64_t a, std::int64_t b) { return (((a + b) % q) + q) % q; });
}

Labels path_graceful_labels(Vertex n) {
  Labels out;
  std::int64_t lo = 1, hi = n;
  for (Vertex v = 1; v <= n; ++v) out.push_back(v % 2 == 1 ? lo++ : hi--);
  return out;
}

Labels star_graceful_labels(Vertex n) {
  Labels out;
  for (Vertex v = 1; v <= n; ++v) out.push_back(v);
  return out;
}

Packing build_cyclic_packing(const Tree& t, const Labels& labels, std::int64_t m) {
  const VerifyReport r = verify_graceful(t, labels, m);
  if (!r.pass) throw std::invalid_argument("labelling is not " + std::to_string(m) + "-graceful: " + r.message);
  Packing p;
  p.host_order = 2 * m - 1;
  const std::int64_t order = p.host_order;
  for (std::int64_t s = 0; s < order; ++s) {
    std::vector<std::pair<std::int64_t, std::int64_t>> copy;
    copy.reserve(t.edge_count());
    for (const Edge& e : t.edges()) {
      copy.emplace_back((labels[static_cast<std::size_t>(e.u - 1)] + s) % order,
                        (labels[static_cast<std::size_t>(e.v - 1)] + s) % order);
    }
    p.copies.push_back(std::move(copy));
  }
  return p;
}

nlohmann::json PackingReport::to_json() const {
  nlohmann::json j{{"pass", pass},
                   {"decomposition", decomposition},
                   {"edges_used", edges_used},
                   {"host_edges", host_edges}};
  if (!pass) {
    j["message"] = message;
    j["witness_edge"] = {witness_edge.first, witness_edge.second};
    j["witness_copies"] = {witness_copies.first, witness_copies.second};
  }
  return j;
}

PackingReport verify_packing(const Packing& p) {
  PackingReport r;
  const std::int64_t n = p.host_order;
  r.host_edges = n * (n - 1) / 2;
  // Host edge {x < y} has index x*n - x(x+1)/2 + (y - x - 1).
  auto index = [n](std::int64_t a, std::int64_t b) { return a * n - a * (a + 1) / 2 + (b - a - 1); };
  std::vector<std::uint64_t> seen(static_cast<std::size_t>((std::max<std::int64_t>(r.host_edges, 0) + 63) / 64), 0);
  for (std::size_t c = 0; c < p.copies.size(); ++c) {
    for (auto [a, b] : p.copies[c]) {
      if (a > b) std::swap(a, b);
      if (a < 0 || b >= n || a == b) {
        r.pass = false;
        r.message = "copy " + std::to_string(c) + " has an edge outside K_" + std::to_string(n);
        r.witness_edge = {a, b};
        r.witness_copies = {c, c};
        return r;
      }
      const auto idx = static_cast<std::size_t>(index(a, b));
      const std::uint64_t bit = std::uint64_t{1} << (idx & 63);
      if (seen[idx >> 6] & bit) {
        // find the earlier owner
        std::size_t first = c;
        for (std::size_t d = 0; d <= c && first == c; ++d) {
          for (auto [x, y] : p.copies[d]) {
            if (std::min(x, y) == a && std::max(x, y) == b) {
              first = d;
              break;
            }
          }
        }
        r.pass = false;
        r.message = "host edge {" + std::to_string(a) + "," + std::to_string(b) + "} used by copies " +
                    std::to_string(first) + " and " + std::to_string(c);
        r.witness_edge = {a, b};
        r.witness_copies = {first, c};
        return r;
      }
      seen[idx >> 6] |= bit;
      ++r.edges_used;
    }
  }
  r.decomposition = r.edges_used == r.host_edges;
  return r;
}

void write_packing(std::ostream& out, const Packing& p) {
  out << "host " << p.host_order << " copies " << p.copies.size() << "\n";
  for (std::size_t c = 0; c < p.copies.size(); ++c) {
    out << "copy " << c << ":";
    for (const auto& [a, b] : p.copies[c]) out << " " << a << "-" << b;
    out << "\n";
  }
}

}  // namespace graceful
