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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "graceful/intervals.hpp"
#include "graceful/label_set.hpp"
#include "graceful/prepare.hpp"
#include "graceful/rng.hpp"

namespace graceful {

enum class StructureKind { X1 = 0, X2 = 1, X3 = 2, X4 = 3 };

std::string to_string(StructureKind k);

/// One structure of the four shapes:
///   X1[I]           a single free vertex in I
///   X2[a, I, c, I'] a - (free edge) - b in I - (edge c) - b' in I'
///   X3[a, I]        a - (free edge) - b in I
///   X4[a, a2, I]    a - (free edge) - b in I - (free edge) - a2
struct Structure {
  StructureKind kind = StructureKind::X1;
  Label a = 0;
  Label a2 = 0;
  Label c = 0;
  Interval i;
  Interval i2;

  static Structure x1(Interval i) { return {StructureKind::X1, 0, 0, 0, i, {}}; }
  static Structure x2(Label a, Interval i, Label c, Interval i2) { return {StructureKind::X2, a, 0, c, i, i2}; }
  static Structure x3(Label a, Interval i) { return {StructureKind::X3, a, 0, 0, i, {}}; }
  static Structure x4(Label a, Label a2, Interval i) { return {StructureKind::X4, a, a2, 0, i, {}}; }
};

/// Number of free vertex and edge labels: 1, 3, 2, 3 for X1..X4.
int free_count(StructureKind k);

/// Throws std::invalid_argument for a structure whose fixed labels are not
/// pairwise distinct, whose intervals coincide (X2) or whose c is not positive.
void check_well_formed(const Structure& x);

/// |X(A, C)|: the number of ways to fill the free slots with labels from A
/// (vertices) and C (free edges) keeping all vertex labels pairwise distinct
/// and all edge labels pairwise distinct.
std::int64_t count_structure(const Structure& x, const LabelSet& A, const EdgeLabelSet& C);

/// Full label sets A = {1..n_tilde}, C = {1..n_tilde-1}.
LabelSet full_vertex_labels(std::int64_t n_tilde);

struct QuasiSampleSpec {
  int x2 = 256;
  int x3 = 256;
  int x4 = 256;
};

struct QuasiReport {
  std::int64_t t = 0;
  std::int64_t size_a = 0;
  std::int64_t size_c = 0;
  double alpha = 0;
  /// max over I_E of | |I_E n C| - m|A|/n_tilde | / m
  double quasi1_max_dev = 0;
  /// max over sampled and caller-supplied structures of
  /// | |X(A,C)| - |X(full)| (|A|/n_tilde)^free(X) | / m, per kind
  std::array<double, 4> quasi2_kind_max{};
  double quasi2_max_sampled_dev = 0;
  std::int64_t structures_evaluated = 0;

  [[nodiscard]] bool within(double tolerance) const {
    return quasi1_max_dev <= tolerance && quasi2_max_sampled_dev <= tolerance;
  }
};

/// QUASI1 over every I_E. QUASI2 over every X1[I], a random sample of
/// X2/X3/X4 with fixed labels drawn uniformly from A and slots uniformly
/// from I_V, and, for every label in `used`, X3[a, I] for all I plus
/// X2/X4 samples anchored at used labels.
QuasiReport check_quasi(const LabelSet& A, const EdgeLabelSet& C, const IntervalSystem& sys, double alpha,
                        const QuasiSampleSpec& spec, std::span<const Label> used, Rng& rng);

double quasi1_max_dev(const LabelSet& A, const EdgeLabelSet& C, const IntervalSystem& sys);

/// Deviation of one structure in units of m.
double quasi2_dev(const Structure& x, const LabelSet& A, const EdgeLabelSet& C, const IntervalSystem& sys);

/// p_{I_E,t} = m el(J(v_t), min I_E) for every I_E, t is 1-based.
std::vector<Rational> crude_edge_estimates(const Plan& plan, const IntervalSystem& sys, std::int64_t t);

/// p_{X,t} = |X(full)| ((n_tilde - t) / n_tilde)^(free(X) - 1)
///           * (sum over free vertex slots I of [I in J(v_t)] / ell
///              + sum over free edges of el(J(v_t), |a - min I|)).
Rational crude_structure_estimate(const Plan& plan, const IntervalSystem& sys, const Structure& x, std::int64_t t);

struct WindowCheck {
  std::string name;
  std::int64_t count = 0;
  double target = 0;
  double half_width = 0;
  bool pass = false;
};

struct Lemma36Report {
  bool precondition = false;  // ell >= 3 / alpha
  std::vector<WindowCheck> checks;  // X2[a,J,c,Jbar], X3[a,J], X4[a,a2,J]
};

/// J-level counts obtained by summing I_V-level counts over I in J and
/// I' in the complement of J, compared with the windows
///   X3: (|A|/n_tilde)^2 ell +- 2 alpha ell
///   X4: (|A|/n_tilde)^3 ell +- 2 alpha ell
///   X2: (|A|/n_tilde)^3 ell^2 el(J, c) +- 3 alpha ell
Lemma36Report lemma36_check(const LabelSet& A, const EdgeLabelSet& C, const IntervalSystem& sys, double alpha,
                            Label a, Label a2, Label c, std::size_t j);

}  // namespace graceful
