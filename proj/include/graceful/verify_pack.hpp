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
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "graceful/tree.hpp"

namespace graceful {

/// labels[v - 1] is the label of vertex v.
using Labels = std::vector<std::int64_t>;

struct VerifyReport {
  bool pass = true;
  /// Empty on success, otherwise one of "size", "range", "vertex-collision",
  /// "edge-collision", "bipartite-order".
  std::string failure;
  std::string message;
  std::vector<Vertex> vertices;  // witness vertices
  std::vector<Edge> edges;       // witness edges

  [[nodiscard]] nlohmann::json to_json() const;
};

/// psi injective into [m] and |psi(x) - psi(y)| pairwise distinct over edges.
VerifyReport verify_graceful(const Tree& t, const Labels& labels, std::int64_t m);

/// Graceful and every label of class 0 is below every label of class 1.
/// `classes` is indexed by vertex (index 0 unused). Throws
/// std::invalid_argument if it is not a proper 2-colouring.
VerifyReport verify_bipartite_graceful(const Tree& t, const Labels& labels, std::int64_t m,
                                       const std::vector<std::uint8_t>& classes);

/// psi injective and (psi(x) + psi(y)) mod q pairwise distinct over edges.
VerifyReport verify_harmonious(const Tree& t, const Labels& labels, std::int64_t q);

/// Path 1-2-...-n labelled 1, n, 2, n-1, ... (edge labels n-1, n-2, ..., 1).
Labels path_graceful_labels(Vertex n);
/// Star with centre 1: centre 1, leaves 2..n.
Labels star_graceful_labels(Vertex n);

/// Copies of a tree in K_N on the residues {0, ..., N-1}.
struct Packing {
  std::int64_t host_order = 0;
  std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> copies;
};

/// The 2m-1 cyclic shifts of psi in K_{2m-1}: copy s maps v to
/// (psi(v) + s) mod (2m - 1). Throws std::invalid_argument unless the
/// labelling is m-graceful.
Packing build_cyclic_packing(const Tree& t, const Labels& labels, std::int64_t m);

struct PackingReport {
  bool pass = true;
  bool decomposition = false;
  std::int64_t edges_used = 0;
  std::int64_t host_edges = 0;
  std::string message;
  std::pair<std::int64_t, std::int64_t> witness_edge{-1, -1};
  std::pair<std::size_t, std::size_t> witness_copies{0, 0};

  [[nodiscard]] nlohmann::json to_json() const;
};

/// Edge-disjointness via an occupancy bitmap over the host edges.
/// decomposition is set when the copies are disjoint and use every host edge.
PackingReport verify_packing(const Packing& p);

/// One line per copy: "copy <s>:" followed by "u-v" tokens.
void write_packing(std::ostream& out, const Packing& p);

}  // namespace graceful
