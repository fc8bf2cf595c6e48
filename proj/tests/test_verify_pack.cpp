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
#include <set>
#include <sstream>

#include <doctest.h>

#include "graceful/exact_solver.hpp"
#include "graceful/verify_pack.hpp"

using namespace graceful;

namespace {

// Definition-level check, kept apart from the library verifiers.
bool graceful_by_definition(const Tree& t, const Labels& psi, std::int64_t m) {
  std::set<std::int64_t> v(psi.begin(), psi.end()), e;
  if (v.size() != psi.size()) return false;
  if (*v.begin() < 1 || *v.rbegin() > m) return false;
  for (const Edge& x : t.edges()) e.insert(std::abs(psi[x.u - 1] - psi[x.v - 1]));
  return e.size() == t.edges().size();
}

Labels to_labels(std::initializer_list<std::int64_t> x) { return Labels(x); }

}  // namespace

TEST_SUITE("verify_pack") {

TEST_CASE("graceful examples") {
  const Tree p3 = path_tree(3);
  CHECK(verify_graceful(p3, to_labels({1, 3, 2}), 3).pass);
  const auto bad = verify_graceful(p3, to_labels({1, 2, 3}), 3);
  CHECK_FALSE(bad.pass);
  CHECK(bad.failure == "edge-collision");
  CHECK(bad.edges.size() == 2);
  const Tree star(4, {{4, 1}, {4, 2}, {4, 3}});
  CHECK(verify_graceful(star, to_labels({1, 2, 3, 4}), 4).pass);
  CHECK(verify_graceful(p3, to_labels({1, 3}), 3).failure == "size");
  CHECK(verify_graceful(p3, to_labels({1, 4, 2}), 3).failure == "range");
  CHECK(verify_graceful(p3, to_labels({1, 1, 2}), 3).failure == "vertex-collision");
  CHECK(verify_graceful(p3, to_labels({1, 3, 2}), 3).to_json().at("pass") == true);
}

TEST_CASE("bipartite graceful examples") {
  const Tree p3 = path_tree(3);
  const std::vector<std::uint8_t> classes = {0, 0, 1, 0};
  CHECK(verify_bipartite_graceful(p3, to_labels({1, 3, 2}), 3, classes).pass);
  const std::vector<std::uint8_t> swapped = {0, 1, 0, 1};
  const auto r = verify_bipartite_graceful(p3, to_labels({1, 3, 2}), 3, swapped);
  CHECK_FALSE(r.pass);
  CHECK(r.failure == "bipartite-order");
  CHECK_FALSE(verify_bipartite_graceful(p3, to_labels({1, 2, 3}), 3, classes).pass);
  CHECK_THROWS_AS(verify_bipartite_graceful(p3, to_labels({1, 3, 2}), 3, {0, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("harmonious examples") {
  const Tree p3 = path_tree(3);
  CHECK_FALSE(verify_harmonious(p3, to_labels({1, 2, 3}), 2).pass);
  CHECK(verify_harmonious(p3, to_labels({1, 2, 4}), 2).pass);
  CHECK(verify_harmonious(path_tree(2), to_labels({7, 3}), 1).pass);
  CHECK_FALSE(verify_harmonious(p3, to_labels({2, 2, 4}), 2).pass);
}

TEST_CASE("canonical path and star labellings") {
  for (Vertex n = 2; n <= 50; ++n) {
    CHECK(verify_graceful(path_tree(n), path_graceful_labels(n), n).pass);
    CHECK(verify_graceful(star_tree(n), star_graceful_labels(n), n).pass);
    CHECK(graceful_by_definition(path_tree(n), path_graceful_labels(n), n));
  }
  CHECK(path_graceful_labels(5) == to_labels({1, 5, 2, 4, 3}));
}

TEST_CASE("verifier agrees with the definition on random labellings") {
  Rng r(19);
  for (int i = 0; i < 3000; ++i) {
    const auto n = static_cast<Vertex>(2 + r.below(7));
    const Tree t = random_tree(n, r);
    const std::int64_t m = n + static_cast<std::int64_t>(r.below(3));
    Labels psi(static_cast<std::size_t>(n));
    for (auto& x : psi) x = 1 + static_cast<std::int64_t>(r.below(static_cast<std::uint64_t>(m)));
    const bool expect = graceful_by_definition(t, psi, m);
    CHECK(verify_graceful(t, psi, m).pass == expect);
    CHECK(exact_feasible(t, psi, m) == expect);
  }
}

TEST_CASE("single edge packs K3") {
  const Tree e = path_tree(2);
  const Packing p = build_cyclic_packing(e, to_labels({1, 2}), 2);
  CHECK(p.host_order == 3);
  REQUIRE(p.copies.size() == 3);
  std::set<std::pair<std::int64_t, std::int64_t>> edges;
  for (const auto& c : p.copies) {
    REQUIRE(c.size() == 1);
    edges.insert({std::min(c[0].first, c[0].second), std::max(c[0].first, c[0].second)});
  }
  CHECK(edges == std::set<std::pair<std::int64_t, std::int64_t>>{{0, 1}, {0, 2}, {1, 2}});
  const PackingReport rep = verify_packing(p);
  CHECK(rep.pass);
  CHECK(rep.decomposition);
  CHECK(rep.edges_used == 3);
  std::ostringstream out;
  write_packing(out, p);
  CHECK(out.str().rfind("host 3 copies 3\n", 0) == 0);
}

TEST_CASE("star packs K7") {
  const Tree star(4, {{4, 1}, {4, 2}, {4, 3}});
  const Packing p = build_cyclic_packing(star, to_labels({1, 2, 3, 4}), 4);
  CHECK(p.copies.size() == 7);
  const PackingReport rep = verify_packing(p);
  CHECK(rep.pass);
  CHECK(rep.decomposition);
  CHECK(rep.edges_used == 21);
}

TEST_CASE("slack labellings pack without decomposing") {
  const Tree p3 = path_tree(3);
  const Packing p = build_cyclic_packing(p3, to_labels({1, 5, 2}), 5);
  const PackingReport rep = verify_packing(p);
  CHECK(rep.pass);
  CHECK_FALSE(rep.decomposition);
  CHECK(rep.host_edges == 36);
  CHECK(rep.edges_used == 18);
}

TEST_CASE("duplicate copies are caught") {
  Packing p = build_cyclic_packing(path_tree(3), to_labels({1, 3, 2}), 3);
  p.copies.push_back(p.copies[1]);
  const PackingReport rep = verify_packing(p);
  CHECK_FALSE(rep.pass);
  CHECK(rep.witness_edge.first >= 0);
  CHECK(rep.witness_copies.first == 1);
  CHECK(rep.witness_copies.second == p.copies.size() - 1);
  CHECK_THROWS_AS(build_cyclic_packing(path_tree(3), to_labels({1, 2, 3}), 3), std::invalid_argument);
}

TEST_CASE("every exact labelling on small trees packs") {
  for (Vertex n = 2; n <= 8; ++n) {
    for (const Tree& t : nonisomorphic_trees(n)) {
      const auto psi = exact_graceful(t, n);
      REQUIRE(psi.has_value());
      const PackingReport rep = verify_packing(build_cyclic_packing(t, *psi, n));
      CHECK(rep.pass);
      CHECK(rep.decomposition);
      const auto slack = exact_graceful(t, n + 2);
      REQUIRE(slack.has_value());
      const PackingReport rep2 = verify_packing(build_cyclic_packing(t, *slack, n + 2));
      CHECK(rep2.pass);
    }
  }
}

}  // TEST_SUITE
