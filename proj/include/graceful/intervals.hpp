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
#include <string>
#include <vector>

#include "graceful/params.hpp"
#include "graceful/rational.hpp"
#include "graceful/rng.hpp"

namespace graceful {

using Label = std::int64_t;

/// Closed integer interval [lo, hi].
struct Interval {
  Label lo = 0;
  Label hi = -1;

  [[nodiscard]] Label size() const { return hi - lo + 1; }
  [[nodiscard]] bool contains(Label x) const { return lo <= x && x <= hi; }
  [[nodiscard]] bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// The interval families over the vertex labels [n_tilde] and the edge
/// labels [n_tilde - 1]:
///   vertex intervals: size m, starts 1, m+1, ..., n_tilde-m+1
///   edge intervals:   size m, starts 0, m, ..., n_tilde-m
///   J intervals:      size ell, starts 1+km and n_tilde/2+1+km for
///                     k = 0..(n_tilde/2-ell)/m
/// Each J has a complement with the same index distance from the other end,
/// so that the elements of J and its complement sum to ell*(n_tilde+1).
class IntervalSystem {
 public:
  IntervalSystem(std::int64_t n_tilde, std::int64_t m, std::int64_t ell);
  explicit IntervalSystem(const Params& p) : IntervalSystem(p.n_tilde, p.m, p.ell) {}

  [[nodiscard]] std::int64_t n_tilde() const { return n_tilde_; }
  [[nodiscard]] std::int64_t m() const { return m_; }
  [[nodiscard]] std::int64_t ell() const { return ell_; }

  [[nodiscard]] const std::vector<Interval>& vertex_intervals() const { return iv_; }
  [[nodiscard]] const std::vector<Interval>& edge_intervals() const { return ie_; }
  [[nodiscard]] const std::vector<Interval>& j_intervals() const { return j_; }
  [[nodiscard]] std::size_t j_count() const { return j_.size(); }

  /// Index of the complementary J.
  [[nodiscard]] std::size_t complement(std::size_t j) const { return complement_[j]; }
  [[nodiscard]] std::optional<std::size_t> j_index_of_start(Label start) const;

  /// Number of J intervals containing vertex interval i.
  [[nodiscard]] std::int64_t coverage(std::size_t i) const { return coverage_[i]; }

  [[nodiscard]] std::size_t vertex_interval_of(Label a) const { return static_cast<std::size_t>((a - 1) / m_); }
  [[nodiscard]] std::size_t edge_interval_of(Label c) const { return static_cast<std::size_t>(c / m_); }

  /// |{(a, a') in J x complement(J) : |a - a'| = c}|, from the triangular
  /// profile: ell - |c - D| where D is the distance between the starts.
  [[nodiscard]] std::int64_t el_count(std::size_t j, Label c) const;
  /// el_count / ell^2.
  [[nodiscard]] Rational el(std::size_t j, Label c) const;

 private:
  std::int64_t n_tilde_;
  std::int64_t m_;
  std::int64_t ell_;
  std::vector<Interval> iv_;
  std::vector<Interval> ie_;
  std::vector<Interval> j_;
  std::vector<std::size_t> complement_;
  std::vector<std::int64_t> coverage_;
};

/// Distribution over a list of intervals plus the "do nothing" outcome.
struct CorrectionDistribution {
  std::vector<Interval> support;
  std::vector<Rational> probability;
  Rational star_probability;

  [[nodiscard]] Rational total() const;
};

/// Vertex-label correction: P[I] = (1 - (m/ell) * #{J : I in J}) / |J|.
CorrectionDistribution corv_distribution(const IntervalSystem& sys);
/// Edge-label correction: P[I_E] = (1 - m * sum_J el(J, min I_E)) / |J|.
CorrectionDistribution core_distribution(const IntervalSystem& sys);

/// Describes the first negative Corv or Core mass, or nullopt when both
/// distributions are proper. Integer arithmetic only.
std::optional<std::string> correction_mass_violation(const IntervalSystem& sys);

/// Exact sampler: the masses are scaled to integers over their common
/// denominator once, and a draw is a uniform integer below it.
class CorrectionSampler {
 public:
  explicit CorrectionSampler(const CorrectionDistribution& d);

  /// Index into the distribution's support, or nullopt for the star outcome.
  std::optional<std::size_t> sample(Rng& rng) const;

  [[nodiscard]] std::uint64_t denominator() const { return denominator_; }

 private:
  std::uint64_t denominator_ = 1;
  std::vector<std::uint64_t> cumulative_;  // over positive-mass entries
  std::vector<std::size_t> index_;
};

}  // namespace graceful
