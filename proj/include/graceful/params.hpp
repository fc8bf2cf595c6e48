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
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "graceful/rational.hpp"
#include "graceful/tree.hpp"

namespace graceful {

class ParamsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Linear tolerance alpha(t) = alpha0 + alpha1 * t / n used for the
/// quasirandomness diagnostics at desk scale.
struct ToleranceSchedule {
  double alpha0 = 0.05;
  double alpha1 = 0.15;

  [[nodiscard]] double at(std::int64_t t, std::int64_t n) const {
    return alpha0 + alpha1 * static_cast<double>(t) / static_cast<double>(n);
  }
};

/// Runnable parameters. The label range is A = [n_tilde], edge labels
/// C = [n_tilde - 1]; intervals have sizes m (I_V, I_E) and ell (J).
struct Params {
  std::int64_t n = 0;
  Rational gamma;
  std::int64_t n_tilde = 0;
  std::int64_t m = 0;
  std::int64_t ell = 0;
  /// Edge budget factor for cut_tree: |R| <= eps * n.
  Rational eps{1, 2};
  /// Requested maximum component order for cut_tree (a floor; see make_plan).
  std::int64_t component_threshold = 0;
  ToleranceSchedule alpha;
};

/// Practical parameters: n_tilde = ceil((1+gamma) n) rounded up to a
/// multiple of 2m. Requires m >= 1, m | ell, ell < n_tilde / 2.
/// The component threshold defaults to 2, which make_plan raises to the
/// smallest value the cutting walk accepts for the given tree (4 max_degree / eps).
Params derive_practical_params(std::int64_t n, const Rational& gamma, std::int64_t m, std::int64_t ell);

void validate(const Params& p);

nlohmann::json to_json(const Params& p);
Params params_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Exact parameter formulas.
//
// With mu = 1/M, M = ceil(exp(E)), E = 10^8 / gamma^4, every constant of the
// construction is a rational multiple of a rational power of
// Lambda = M^M = mu^(-1/mu):
//   delta0 = Lambda^-2, delta = Lambda^-20, eps = Lambda^-200,
//   eta = Lambda^-2000, delta_i = Lambda^-(2 - i/n).
// M itself has about 4.3e7 * gamma^-4 decimal digits, so these values are
// kept symbolically and never evaluated. None of this is runnable; it exists
// so the formulas can be checked.
// ---------------------------------------------------------------------------

/// coeff * Lambda^power.
struct LambdaPower {
  Rational coeff{1};
  Rational power{0};

  [[nodiscard]] bool is_integer() const;
  [[nodiscard]] std::string str() const;
  friend bool operator==(const LambdaPower&, const LambdaPower&) = default;
};

LambdaPower operator*(const LambdaPower& a, const LambdaPower& b);
LambdaPower operator/(const LambdaPower& a, const LambdaPower& b);

/// Sufficient test for a | b that does not depend on the factorisation of M:
/// both integral, power(a) <= power(b), coeff(a) | coeff(b).
bool provably_divides(const LambdaPower& a, const LambdaPower& b);

struct SymbolicFact {
  std::string statement;
  bool proven = false;
};

struct PaperParams {
  Rational gamma;
  BigInt exp_argument;  // E, with M = ceil(exp(E)) and mu = 1/M
  LambdaPower n;
  LambdaPower n_tilde;
  LambdaPower delta0;
  LambdaPower delta;
  LambdaPower eps;
  LambdaPower eta;
  LambdaPower ell;
  LambdaPower m;
  std::vector<SymbolicFact> facts;

  /// delta_i for i = fraction * n, fraction in [0, 1].
  [[nodiscard]] LambdaPower delta_at(const Rational& fraction) const;
  [[nodiscard]] std::string mu_str() const;
};

/// gamma^-1 must be a positive integer and n must be provably divisible by
/// 2 delta^-1 gamma^-1 = 2 gamma^-1 Lambda^20; otherwise throws ParamsError
/// naming the required modulus.
PaperParams derive_paper_params(const Rational& gamma, const LambdaPower& n);

/// Rigorous upper bound on max_t LHS/RHS of the error-accumulation
/// inequality sum_{i<=ceil(t/(delta n))} delta mu^-1 delta_{i delta n} < delta_t / 100.
/// Summing the geometric series exactly gives LHS/RHS <= (100 / ln M) e^s / (1 - s/2)
/// with s = delta M ln M; for the symbolic constants s < 1e-9 and ln M >= E.
Rational deltas_ratio_upper_bound(const PaperParams& p);

/// Direct evaluation of LHS/RHS for a small stand-in schedule
/// delta_i = M^(-M (2n - i) / n) with explicit step width w = delta n.
/// Used to check the closed form on instances where everything is finite.
double deltas_ratio_direct(std::int64_t big_m, std::int64_t n, std::int64_t step_width, std::int64_t t);
double deltas_ratio_closed_form(std::int64_t big_m, std::int64_t n, std::int64_t step_width, std::int64_t t);

// ---------------------------------------------------------------------------

/// Attaches a path to the smallest-index leaf so the result has the smallest
/// multiple of `modulus` vertices that is >= n. New vertices are n+1, n+2, ...
Tree pad_tree(const Tree& t, std::int64_t modulus);

}  // namespace graceful
