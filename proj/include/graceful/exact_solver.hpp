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

#include "graceful/tree.hpp"
#include "graceful/verify_pack.hpp"

namespace graceful {

class CapExceeded : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExactOptions {
  /// Largest tree searched at m = n. For m above the cap the vertex limit
  /// drops to floor(cap^2 / m).
  std::int64_t cap = 24;
  /// Worker threads for the split over the first vertex's label; 0 means
  /// hardware concurrency.
  unsigned threads = 0;
};

/// Vertex limit for codomain [m] under `cap`.
std::int64_t effective_cap(std::int64_t cap, std::int64_t m);

/// Backtracking search for an m-graceful labelling. Vertices are placed in
/// breadth-first order from vertex 1 and labels are tried ascending, so the
/// result is the lexicographically first labelling in that order. Throws
/// CapExceeded if the tree is over the cap or m > 64, std::invalid_argument
/// if m < n.
std::optional<Labels> exact_graceful(const Tree& t, std::int64_t m, const ExactOptions& opts = {});

/// Number of m-graceful labellings as maps V -> [m].
std::uint64_t exact_count(const Tree& t, std::int64_t m, const ExactOptions& opts = {});

/// The solver's own acceptance test: replays `labels` through the search
/// order with the same bitmask checks.
bool exact_feasible(const Tree& t, const Labels& labels, std::int64_t m);

}  // namespace graceful
