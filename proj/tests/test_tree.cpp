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
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <doctest.h>

#include "graceful/tree.hpp"

using namespace graceful;

namespace {

// All sequences over {1..n} of length n-2, in lexicographic order.
std::vector<std::vector<Vertex>> all_sequences(Vertex n) {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> s(static_cast<std::size_t>(n - 2), 1);
  while (true) {
    out.push_back(s);
    std::size_t i = s.size();
    while (i > 0 && s[i - 1] == n) s[--i] = 1;
    if (i == 0) break;
    ++s[i - 1];
  }
  return out;
}

std::vector<int> degrees(const Tree& t) {
  std::vector<int> d;
  for (Vertex v = 1; v <= t.size(); ++v) d.push_back(t.degree(v));
  return d;
}

}  // namespace

TEST_SUITE("tree") {

TEST_CASE("constructor rejects non-trees") {
  CHECK_THROWS_AS(Tree(3, {{1, 2}}), TreeError);
  CHECK_THROWS_AS(Tree(3, {{1, 2}, {1, 2}}), TreeError);
  CHECK_THROWS_AS(Tree(3, {{1, 1}, {1, 2}}), TreeError);
  CHECK_THROWS_AS(Tree(4, {{1, 2}, {2, 1}, {3, 4}}), TreeError);
  CHECK_THROWS_AS(Tree(3, {{1, 2}, {2, 4}}), TreeError);
  CHECK_THROWS_AS(Tree(0, {}), TreeError);
  CHECK(Tree::single().size() == 1);
}

TEST_CASE("prufer examples") {
  CHECK(prufer_decode(std::vector<Vertex>{}, 2) == Tree(2, {{1, 2}}));
  CHECK(prufer_decode(std::vector<Vertex>{3}, 3) == Tree(3, {{1, 3}, {2, 3}}));
  CHECK(prufer_encode(Tree(4, {{1, 4}, {2, 4}, {3, 4}})) == std::vector<Vertex>{4, 4});
  CHECK(prufer_encode(path_tree(3)) == std::vector<Vertex>{2});
  CHECK(prufer_encode(Tree(2, {{1, 2}})).empty());
  CHECK_THROWS(prufer_decode(std::vector<Vertex>{5}, 3));
  CHECK_THROWS(prufer_decode(std::vector<Vertex>{}, 1));
}

TEST_CASE("prufer is a bijection for n <= 6") {
  for (Vertex n = 2; n <= 6; ++n) {
    const auto seqs = all_sequences(n);
    CHECK(seqs.size() == static_cast<std::size_t>(std::pow(n, n - 2) + 0.5));
    std::set<std::vector<Edge>> seen;
    for (const auto& s : seqs) {
      const Tree t = prufer_decode(s, n);
      CHECK(prufer_encode(t) == s);
      seen.insert(t.edges());
      // degree = 1 + multiplicity in the code
      for (Vertex v = 1; v <= n; ++v) {
        CHECK(t.degree(v) == 1 + std::count(s.begin(), s.end(), v));
      }
    }
    CHECK(seen.size() == seqs.size());
  }
}

TEST_CASE("random_tree n=5 is uniform over the 125 labelled trees") {
  Rng rng(2024);
  const int samples = 100000;
  std::map<std::vector<Edge>, int> freq;
  for (int i = 0; i < samples; ++i) ++freq[random_tree(5, rng).edges()];
  CHECK(freq.size() == 125);
  const double expected = samples / 125.0;
  double chi2 = 0;
  for (const auto& [k, c] : freq) chi2 += (c - expected) * (c - expected) / expected;
  // chi-square 0.99 quantile with 124 degrees of freedom
  CHECK(chi2 < 163.3);
}

TEST_CASE("random_tree determinism and invariants") {
  Rng a(7), b(7);
  CHECK(random_tree(200, a) == random_tree(200, b));
  Rng r(9);
  CHECK(random_tree(2, r) == Tree(2, {{1, 2}}));
  for (int i = 0; i < 200; ++i) {
    const Vertex n = static_cast<Vertex>(2 + r.below(300));
    const Tree t = random_tree(n, r);
    const auto d = degrees(t);
    CHECK(std::accumulate(d.begin(), d.end(), 0) == 2 * (n - 1));
    const DegreeStats s = degree_stats(t);
    CHECK(s.max_degree == *std::max_element(d.begin(), d.end()));
    CHECK(static_cast<double>(s.sum_sq_degree) >= 4.0 * (n - 1) * (n - 1) / n - 1e-9);
  }
}

TEST_CASE("degree stats examples") {
  CHECK(degree_stats(path_tree(4)).max_degree == 2);
  CHECK(degree_stats(path_tree(4)).sum_sq_degree == 10);
  CHECK(degree_stats(star_tree(4)).max_degree == 3);
  CHECK(degree_stats(star_tree(4)).sum_sq_degree == 12);
}

TEST_CASE("random tree n=1e4 has small max degree") {
  Rng r(11);
  const Tree t = random_tree(10000, r);
  CHECK(degree_stats(t).max_degree <= 30);
}

TEST_CASE("two colouring is proper") {
  Rng r(5);
  for (int i = 0; i < 50; ++i) {
    const Tree t = random_tree(60, r);
    const auto c = t.two_coloring();
    CHECK(c[1] == 0);
    for (const Edge& e : t.edges()) CHECK(c[e.u] != c[e.v]);
  }
}

TEST_CASE("nonisomorphic tree counts") {
  const std::vector<std::size_t> expected = {1, 1, 1, 2, 3, 6, 11, 23, 47, 106};
  for (Vertex n = 1; n <= 10; ++n) CHECK(nonisomorphic_trees(n).size() == expected[static_cast<std::size_t>(n - 1)]);
}

TEST_CASE("canonical form is a labelling invariant") {
  // Oracle: relabel by a random permutation, the form must not change;
  // and on n = 6 the number of distinct forms over all labelled trees is 6.
  Rng r(3);
  std::set<std::string> forms;
  for (const auto& s : all_sequences(6)) forms.insert(canonical_form(prufer_decode(s, 6)));
  CHECK(forms.size() == 6);
  for (int i = 0; i < 50; ++i) {
    const Tree t = random_tree(30, r);
    std::vector<Vertex> perm(31);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t k = 30; k > 1; --k) std::swap(perm[k], perm[1 + r.below(k)]);
    std::vector<Edge> e;
    for (const Edge& x : t.edges()) e.emplace_back(perm[x.u], perm[x.v]);
    CHECK(canonical_form(Tree(30, e)) == canonical_form(t));
  }
}

TEST_CASE("tree text format") {
  Rng r(1);
  const Tree t = random_tree(40, r);
  std::stringstream s;
  write_tree(s, t);
  CHECK(read_tree(s) == t);
  std::istringstream disconnected("4\n1 2\n3 4\n1 2\n");
  CHECK_THROWS_AS(read_tree(disconnected), TreeError);
  std::istringstream bad("3\n1 2\n2 x\n");
  CHECK_THROWS_AS(read_tree(bad), TreeError);
  std::istringstream short_file("3\n1 2\n");
  CHECK_THROWS_AS(read_tree(short_file), TreeError);
  std::istringstream out_of_range("3\n1 2\n2 4\n");
  CHECK_THROWS_AS(read_tree(out_of_range), TreeError);
}

}  // TEST_SUITE
