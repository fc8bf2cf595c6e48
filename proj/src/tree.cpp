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

#include "graceful/tree.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace graceful {

Tree::Tree(Vertex n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) throw TreeError("tree must have at least one vertex");
  if (edges_.size() != static_cast<std::size_t>(n_ - 1)) {
    throw TreeError("tree on " + std::to_string(n_) + " vertices needs " + std::to_string(n_ - 1) +
                    " edges, got " + std::to_string(edges_.size()));
  }
  for (const Edge& e : edges_) {
    if (e.u < 1 || e.v > n_) {
      throw TreeError("edge endpoint out of range: " + std::to_string(e.u) + " " + std::to_string(e.v));
    }
    if (e.u == e.v) throw TreeError("self-loop at vertex " + std::to_string(e.u));
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw TreeError("parallel edge " + std::to_string(dup->u) + " " + std::to_string(dup->v));
  }

  offsets_.assign(static_cast<std::size_t>(n_) + 2, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  adjacency_.resize(2 * edges_.size());
  std::vector<std::int32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[fill[e.u]++] = e.v;
    adjacency_[fill[e.v]++] = e.u;
  }
  for (Vertex v = 1; v <= n_; ++v) {
    std::sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1]);
  }

  // n-1 edges and connected => tree.
  std::vector<char> seen(static_cast<std::size_t>(n_) + 1, 0);
  std::vector<Vertex> stack{1};
  seen[1] = 1;
  Vertex reached = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != n_) throw TreeError("edge set is disconnected");
}

bool Tree::has_edge(Vertex a, Vertex b) const {
  if (a < 1 || a > n_ || b < 1 || b > n_) return false;
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<std::uint8_t> Tree::two_coloring() const {
  std::vector<std::uint8_t> color(static_cast<std::size_t>(n_) + 1, 0);
  std::vector<char> seen(static_cast<std::size_t>(n_) + 1, 0);
  std::vector<Vertex> stack{1};
  seen[1] = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        color[w] = static_cast<std::uint8_t>(1 - color[v]);
        stack.push_back(w);
      }
    }
  }
  return color;
}

Tree prufer_decode(std::span<const Vertex> seq, Vertex n) {
  if (n < 2) throw TreeError("Pruefer decoding needs n >= 2");
  if (seq.size() != static_cast<std::size_t>(n - 2)) {
    throw TreeError("Pruefer sequence for n=" + std::to_string(n) + " must have length " + std::to_string(n - 2));
  }
  std::vector<std::int32_t> degree(static_cast<std::size_t>(n) + 1, 1);
  for (Vertex x : seq) {
    if (x < 1 || x > n) throw TreeError("Pruefer entry out of range: " + std::to_string(x));
    ++degree[x];
  }
  // Linear-time decoding: `ptr` scans for the smallest leaf, `leaf` may jump
  // back below it when a sequence entry becomes a leaf.
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) - 1);
  Vertex ptr = 1;
  while (degree[ptr] != 1) ++ptr;
  Vertex leaf = ptr;
  for (Vertex x : seq) {
    edges.emplace_back(leaf, x);
    if (--degree[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(leaf, n);
  return Tree(n, std::move(edges));
}

std::vector<Vertex> prufer_encode(const Tree& t) {
  const Vertex n = t.size();
  if (n < 2) throw TreeError("Pruefer encoding needs n >= 2");
  std::vector<Vertex> parent(static_cast<std::size_t>(n) + 1, 0);
  // Root at n: the last surviving vertex of the elimination is always n.
  std::vector<Vertex> stack{n};
  parent[n] = 0;
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  seen[n] = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : t.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = v;
        stack.push_back(w);
      }
    }
  }
  std::vector<std::int32_t> degree(static_cast<std::size_t>(n) + 1);
  for (Vertex v = 1; v <= n; ++v) degree[v] = t.degree(v);

  std::vector<Vertex> code;
  code.reserve(static_cast<std::size_t>(n) - 2);
  Vertex ptr = 1;
  while (degree[ptr] != 1) ++ptr;
  Vertex leaf = ptr;
  for (Vertex i = 0; i < n - 2; ++i) {
    const Vertex next = parent[leaf];
    code.push_back(next);
    if (--degree[next] == 1 && next < ptr) {
      leaf = next;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  return code;
}

Tree random_tree(Vertex n, Rng& rng) {
  if (n < 2) throw TreeError("random_tree needs n >= 2");
  std::vector<Vertex> seq(static_cast<std::size_t>(n) - 2);
  for (Vertex& x : seq) x = static_cast<Vertex>(1 + rng.below(static_cast<std::uint64_t>(n)));
  return prufer_decode(seq, n);
}

DegreeStats degree_stats(const Tree& t) {
  DegreeStats stats;
  for (Vertex v = 1; v <= t.size(); ++v) {
    const int d = t.degree(v);
    stats.max_degree = std::max(stats.max_degree, d);
    stats.sum_sq_degree += static_cast<std::int64_t>(d) * d;
  }
  return stats;
}

Tree path_tree(Vertex n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  return Tree(n, std::move(edges));
}

Tree star_tree(Vertex n) {
  std::vector<Edge> edges;
  for (Vertex v = 2; v <= n; ++v) edges.emplace_back(1, v);
  return Tree(n, std::move(edges));
}

namespace {

std::string ahu(const Tree& t, Vertex v, Vertex parent) {
  std::vector<std::string> parts;
  for (Vertex w : t.neighbors(v)) {
    if (w != parent) parts.push_back(ahu(t, w, v));
  }
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& p : parts) out += p;
  out += ")";
  return out;
}

std::vector<Vertex> centres(const Tree& t) {
  const Vertex n = t.size();
  if (n <= 2) {
    std::vector<Vertex> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 1);
    return all;
  }
  std::vector<int> degree(static_cast<std::size_t>(n) + 1);
  std::vector<Vertex> layer;
  for (Vertex v = 1; v <= n; ++v) {
    degree[v] = t.degree(v);
    if (degree[v] == 1) layer.push_back(v);
  }
  Vertex remaining = n;
  while (remaining > 2) {
    remaining -= static_cast<Vertex>(layer.size());
    std::vector<Vertex> next;
    for (Vertex v : layer) {
      for (Vertex w : t.neighbors(v)) {
        if (--degree[w] == 1) next.push_back(w);
      }
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

}  // namespace

std::string canonical_form(const Tree& t) {
  std::string best;
  for (Vertex c : centres(t)) {
    std::string form = ahu(t, c, 0);
    if (best.empty() || form < best) best = std::move(form);
  }
  return best;
}

std::vector<Tree> nonisomorphic_trees(Vertex n) {
  if (n < 1) throw TreeError("nonisomorphic_trees needs n >= 1");
  std::vector<Tree> level{Tree::single()};
  for (Vertex k = 2; k <= n; ++k) {
    std::set<std::string> seen;
    std::vector<Tree> next;
    for (const Tree& base : level) {
      for (Vertex attach = 1; attach < k; ++attach) {
        std::vector<Edge> edges = base.edges();
        edges.emplace_back(attach, k);
        Tree candidate(k, std::move(edges));
        if (seen.insert(canonical_form(candidate)).second) next.push_back(std::move(candidate));
      }
    }
    level = std::move(next);
  }
  return level;
}

Tree read_tree(std::istream& in) {
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    lines.push_back(line);
  }
  if (lines.empty()) throw TreeError("empty tree file");

  auto parse_ints = [](const std::string& text, std::size_t expected, std::size_t lineno) {
    std::istringstream ss(text);
    std::vector<long long> values;
    std::string token;
    while (ss >> token) {
      std::size_t used = 0;
      long long value = 0;
      try {
        value = std::stoll(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) {
        throw TreeError("line " + std::to_string(lineno) + ": not an integer: '" + token + "'");
      }
      values.push_back(value);
    }
    if (values.size() != expected) {
      throw TreeError("line " + std::to_string(lineno) + ": expected " + std::to_string(expected) + " integers");
    }
    return values;
  };

  const long long n = parse_ints(lines[0], 1, 1)[0];
  if (n < 1 || n > (1LL << 30)) throw TreeError("invalid vertex count " + std::to_string(n));
  if (lines.size() != static_cast<std::size_t>(n)) {
    throw TreeError("expected " + std::to_string(n - 1) + " edge lines, got " + std::to_string(lines.size() - 1));
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto uv = parse_ints(lines[i], 2, i + 1);
    if (uv[0] < 1 || uv[0] > n || uv[1] < 1 || uv[1] > n) {
      throw TreeError("line " + std::to_string(i + 1) + ": vertex out of range");
    }
    edges.emplace_back(static_cast<Vertex>(uv[0]), static_cast<Vertex>(uv[1]));
  }
  return Tree(static_cast<Vertex>(n), std::move(edges));
}

Tree read_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tree file '" + path + "'");
  return read_tree(in);
}

void write_tree(std::ostream& out, const Tree& t) {
  out << t.size() << '\n';
  for (const Edge& e : t.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace graceful
