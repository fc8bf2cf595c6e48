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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "graceful/intervals.hpp"
#include "graceful/params.hpp"
#include "graceful/rng.hpp"
#include "graceful/tree.hpp"

namespace graceful {

class CutError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Removes a set R of edges so that every component of T - R has at most
/// `threshold` vertices, using the leaf walk: root at the smallest-index
/// leaf, descend into the child with the largest subtree (ties to the
/// smaller index) until the subtree order falls in [2/eps, threshold], cut
/// that edge, and repeat on what is left.
///
/// Requires threshold >= 2 and max degree <= eps * threshold / 4, which
/// guarantees |R| <= eps * v(T) / 2. Throws CutError naming the violated
/// condition.
std::vector<Edge> cut_tree(const Tree& t, const Rational& eps, std::int64_t threshold);

/// floor(eps * n / ln n), with the check eps * n >= 2 ln n.
std::int64_t log_threshold(const Rational& eps, std::int64_t n);

/// Smallest threshold accepted by cut_tree for this tree: max(floor, ceil(4 max_degree / eps)).
std::int64_t admissible_threshold(const Tree& t, const Rational& eps, std::int64_t floor);

/// Component index (0-based, by smallest vertex) of each vertex of T - R.
/// Index 0 of the result is unused.
std::vector<std::int32_t> components(const Tree& t, const std::vector<Edge>& removed);

struct Ordering {
  std::vector<Vertex> order;   // v_1..v_n
  std::vector<Vertex> parent;  // parent[i] is prt(v_{i+1}); 0 for v_1
};

/// v_1 = vertex 1. Each next vertex has exactly one earlier neighbour;
/// the current component of T - R is exhausted first, in breadth-first
/// order with neighbours ascending, before the smallest-index vertex
/// reachable over a removed edge starts the next component.
Ordering order_vertices(const Tree& t, const std::vector<Edge>& removed);

struct Plan {
  std::vector<Vertex> order;
  std::vector<Vertex> parent;          // parallel to order
  std::vector<std::int32_t> position;  // vertex -> index in order, index 0 unused
  std::vector<Edge> removed;
  std::vector<std::int32_t> component;  // vertex -> component, in order of appearance
  std::vector<std::int64_t> component_size;
  std::vector<std::size_t> component_interval;  // J(T_k)
  std::vector<std::uint8_t> color;              // vertex -> 0 red, 1 blue
  std::vector<std::size_t> interval_of;         // vertex -> index into J

  [[nodiscard]] Vertex size() const { return static_cast<Vertex>(order.size()); }
};

/// Red vertices of component T_k get J(T_k), blue ones its complement.
/// Exactly one uniform draw per component, in order of appearance.
Plan assign_intervals(const Tree& t, const std::vector<Edge>& removed, const Ordering& ordering,
                      const IntervalSystem& sys, Rng& rng);

/// cut_tree + order_vertices + assign_intervals with the threshold raised
/// to admissible_threshold if needed.
Plan make_plan(const Tree& t, const Params& p, const IntervalSystem& sys, Rng& rng);

struct PlanTolerances {
  Rational eps{1, 2};
  std::int64_t component_threshold = 0;
  /// PRE4 is checked against |S|/|J| +- tolerance. When unset, the
  /// tolerance is 2k + sqrt(sum_k v(T_k)^2 / 2 * ln(n^2 |J| / failure_probability)).
  std::optional<double> pre4_tolerance;
  double pre4_failure_probability = 0.01;
};

struct PropertyCheck {
  std::string name;
  bool pass = true;
  std::string witness;
};

struct PlanReport {
  std::vector<PropertyCheck> checks;  // PRE1..PRE5
  double pre4_max_deviation = 0;
  double pre4_tolerance = 0;

  [[nodiscard]] bool all_pass() const;
};

PlanReport check_plan(const Plan& plan, const Tree& t, const IntervalSystem& sys, const PlanTolerances& tol);

/// max over windows S of the order and J of | #{i in S : J(v_i) = J} - |S| / |J| |.
double pre4_max_deviation(const Plan& plan, const IntervalSystem& sys);

nlohmann::json to_json(const Plan& plan, const IntervalSystem& sys);

}  // namespace graceful
