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
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graceful/rng.hpp"

namespace graceful {

using Vertex = std::int32_t;

/// Undirected edge with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class TreeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Immutable tree on vertices 1..n.
///
/// Construction validates the edge list: n-1 edges, endpoints in range,
/// no loops or parallel edges, connected. Adjacency lists are sorted.
class Tree {
 public:
  Tree(Vertex n, std::vector<Edge> edges);

  /// The one-vertex tree.
  static Tree single() { return Tree(1, {}); }

  [[nodiscard]] Vertex size() const { return n_; }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  [[nodiscard]] int degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  [[nodiscard]] bool has_edge(Vertex a, Vertex b) const;

  /// Proper 2-colouring with vertex 1 in class 0. Index 0 unused.
  [[nodiscard]] std::vector<std::uint8_t> two_coloring() const;

  friend bool operator==(const Tree& a, const Tree& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  Vertex n_;
  std::vector<Edge> edges_;  // sorted
  std::vector<std::int32_t> offsets_;
  std::vector<Vertex> adjacency_;
};

struct DegreeStats {
  int max_degree = 0;
  std::int64_t sum_sq_degree = 0;
};

Tree prufer_decode(std::span<const Vertex> seq, Vertex n);
std::vector<Vertex> prufer_encode(const Tree& t);
Tree random_tree(Vertex n, Rng& rng);
DegreeStats degree_stats(const Tree& t);

Tree path_tree(Vertex n);
/// Star with centre 1 and leaves 2..n.
Tree star_tree(Vertex n);

/// Canonical string of the unlabelled tree (AHU encoding rooted at the
/// centre, or the smaller of the two bicentre encodings).
std::string canonical_form(const Tree& t);

/// One representative per isomorphism class of trees on n vertices,
/// produced by attaching a leaf to every vertex of every class on n-1
/// vertices and filtering duplicates by canonical form.
std::vector<Tree> nonisomorphic_trees(Vertex n);

/// Text format: first line n, then n-1 lines "u v" (1-indexed).
Tree read_tree(std::istream& in);
Tree read_tree_file(const std::string& path);
void write_tree(std::ostream& out, const Tree& t);

}  // namespace graceful
