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
#include <functional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "graceful/rng.hpp"

namespace graceful {

/// Y takes values[k] with probability probs[k]; all values in [0, a].
struct BoundedVariable {
  double a = 1;
  std::vector<double> values;
  std::vector<double> probs;

  [[nodiscard]] double mean() const;
  double draw(Rng& rng) const;

  static BoundedVariable bernoulli(double a, double p) { return {a, {0, a}, {1 - p, p}}; }
};

struct IndependentScenario {
  std::string name;
  std::vector<BoundedVariable> vars;

  [[nodiscard]] double mean() const;
  [[nodiscard]] double sum_sq_range() const;
};

/// The i-th draw of an adapted sequence: the value and its conditional mean
/// given the history.
struct StepDraw {
  double y = 0;
  double conditional_mean = 0;
};

class ScenarioError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Adapted sequence Y_1..Y_n with 0 <= Y_i <= a_i. Each conditional mean
/// must lie in [cap_lo[i], cap_hi[i]]; mu and nu define the event
/// E = { sum of conditional means = mu +- nu }.
struct SequentialScenario {
  std::string name;
  std::vector<double> a;
  std::vector<double> cap_lo;
  std::vector<double> cap_hi;
  double mu = 0;
  double nu = 0;
  std::function<StepDraw(std::size_t i, std::span<const double> history, Rng& rng)> step;

  [[nodiscard]] double sum_sq_range() const;
};

struct TailResult {
  std::string scenario;
  std::string kind;  // "hoeffding" or "seqhoeff"
  double sigma_multiple = 0;
  double t = 0;
  std::int64_t trials = 0;
  std::int64_t hits = 0;
  double empirical = 0;
  double bound = 0;
  double se = 0;
  bool pass = false;
};

/// sqrt(sum a_i^2) / 2.
double hoeffding_sigma(double sum_sq_range);

/// {0.5, 1, ..., 4} sigma.
std::vector<double> sigma_grid();

/// Frequency of X - mu >= t against exp(-2 t^2 / sum a_i^2), one result per
/// threshold, all from the same trials. Trials are split into fixed chunks
/// drawn from rng.split(chunk), so the result does not depend on `threads`.
std::vector<TailResult> hoeffding_empirical(const IndependentScenario& s, std::span<const double> ts,
                                            std::int64_t trials, const Rng& rng, unsigned threads = 0);

/// Frequency of E and |sum Y_i - mu| >= nu + t against 2 exp(-2 t^2 / sum a_i^2).
/// Throws ScenarioError when a draw leaves [0, a_i] or a conditional mean
/// leaves its cap.
std::vector<TailResult> seqhoeff_empirical(const SequentialScenario& s, std::span<const double> ts,
                                           std::int64_t trials, const Rng& rng, unsigned threads = 0);

std::vector<IndependentScenario> bundled_independent_scenarios();
std::vector<SequentialScenario> bundled_sequential_scenarios();

/// Y_i in {0,1}, P(Y_i = 1 | history) = clamp(0.5 + 0.3 (2 mean(Y_1..Y_{i-1}) - 1), 0, 1)
/// with the empty mean taken as 1/2; mu = n/2, nu = 0.3 (n - 1).
SequentialScenario urn_scenario(std::size_t n);

/// Runs every bundled scenario over the sigma grid.
std::vector<TailResult> run_concentration_suite(std::int64_t trials, std::uint64_t seed, unsigned threads = 0);

void write_tail_csv(std::ostream& out, const std::vector<TailResult>& rows);

}  // namespace graceful
