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

#include "graceful/params.hpp"

#include <cmath>
#include <string>

#include "graceful/intervals.hpp"

namespace graceful {

namespace {

std::int64_t to_i64(const BigInt& v) { return v.convert_to<std::int64_t>(); }

bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

}  // namespace

Params derive_practical_params(std::int64_t n, const Rational& gamma, std::int64_t m, std::int64_t ell) {
  if (n < 2) throw ParamsError("n must be at least 2");
  if (gamma <= 0) throw ParamsError("gamma must be positive");
  if (m < 1) throw ParamsError("m must be at least 1");
  if (ell < m || ell % m != 0) throw ParamsError("m must divide ell (m=" + std::to_string(m) + ", ell=" + std::to_string(ell) + ")");

  Params p;
  p.n = n;
  p.gamma = gamma;
  p.m = m;
  p.ell = ell;
  const std::int64_t raw = to_i64(ceil_rational((1 + gamma) * n));
  const std::int64_t step = 2 * m;
  p.n_tilde = (raw + step - 1) / step * step;
  if (2 * ell >= p.n_tilde) {
    throw ParamsError("ell must be below n_tilde/2 (ell=" + std::to_string(ell) + ", n_tilde=" + std::to_string(p.n_tilde) + ")");
  }
  p.component_threshold = 2;
  validate(p);
  return p;
}

void validate(const Params& p) {
  if (p.n < 2) throw ParamsError("n must be at least 2");
  if (p.m < 1) throw ParamsError("m must be at least 1");
  if (p.ell % p.m != 0 || p.ell < p.m) throw ParamsError("m must divide ell");
  if (p.n_tilde % (2 * p.m) != 0) throw ParamsError("2m must divide n_tilde");
  if (2 * p.ell >= p.n_tilde) throw ParamsError("ell must be below n_tilde/2");
  if (p.n_tilde < p.n) throw ParamsError("n_tilde must be at least n");
  if (p.eps <= 0 || p.eps >= 1) throw ParamsError("eps must lie in (0, 1)");
  if (p.component_threshold < 2) throw ParamsError("component threshold must be at least 2");
  if (auto bad = correction_mass_violation(IntervalSystem(p.n_tilde, p.m, p.ell))) {
    throw ParamsError(*bad + " (n_tilde=" + std::to_string(p.n_tilde) + ", m=" + std::to_string(p.m) +
                      ", ell=" + std::to_string(p.ell) + ")");
  }
}

nlohmann::json to_json(const Params& p) {
  return nlohmann::json{{"mode", "practical"},
                        {"n", p.n},
                        {"gamma", to_string(p.gamma)},
                        {"n_tilde", p.n_tilde},
                        {"m", p.m},
                        {"ell", p.ell},
                        {"eps", to_string(p.eps)},
                        {"component_threshold", p.component_threshold},
                        {"alpha0", p.alpha.alpha0},
                        {"alpha1", p.alpha.alpha1}};
}

Params params_from_json(const nlohmann::json& j) {
  if (j.value("mode", std::string("practical")) != "practical") {
    throw ParamsError("only practical-mode parameters can be loaded for running");
  }
  Params p;
  p.n = j.at("n").get<std::int64_t>();
  p.gamma = parse_rational(j.at("gamma").get<std::string>());
  p.n_tilde = j.at("n_tilde").get<std::int64_t>();
  p.m = j.at("m").get<std::int64_t>();
  p.ell = j.at("ell").get<std::int64_t>();
  if (j.contains("eps")) p.eps = parse_rational(j.at("eps").get<std::string>());
  p.component_threshold = j.at("component_threshold").get<std::int64_t>();
  p.alpha.alpha0 = j.value("alpha0", p.alpha.alpha0);
  p.alpha.alpha1 = j.value("alpha1", p.alpha.alpha1);
  validate(p);
  return p;
}

// --- symbolic ---------------------------------------------------------------

bool LambdaPower::is_integer() const {
  return graceful::is_integer(coeff) && graceful::is_integer(power) && power >= 0;
}

std::string LambdaPower::str() const {
  if (power == 0) return to_string(coeff);
  return to_string(coeff) + "*Lambda^(" + to_string(power) + ")";
}

LambdaPower operator*(const LambdaPower& a, const LambdaPower& b) {
  return {a.coeff * b.coeff, a.power + b.power};
}

LambdaPower operator/(const LambdaPower& a, const LambdaPower& b) {
  return {a.coeff / b.coeff, a.power - b.power};
}

bool provably_divides(const LambdaPower& a, const LambdaPower& b) {
  if (!a.is_integer() || !b.is_integer() || a.coeff == 0) return false;
  if (a.power > b.power) return false;
  const BigInt ca = boost::multiprecision::numerator(a.coeff);
  const BigInt cb = boost::multiprecision::numerator(b.coeff);
  return cb % ca == 0;
}

LambdaPower PaperParams::delta_at(const Rational& fraction) const {
  if (fraction < 0 || fraction > 1) throw ParamsError("delta_i needs 0 <= i <= n");
  return {Rational(1), -(2 - fraction)};
}

std::string PaperParams::mu_str() const { return "1/ceil(exp(" + exp_argument.str() + "))"; }

PaperParams derive_paper_params(const Rational& gamma, const LambdaPower& n) {
  if (gamma <= 0) throw ParamsError("gamma must be positive");
  const Rational inv = 1 / gamma;
  if (!is_integer(inv)) throw ParamsError("1/gamma must be an integer, got gamma=" + to_string(gamma));
  const BigInt g = boost::multiprecision::numerator(inv);

  PaperParams p;
  p.gamma = gamma;
  p.exp_argument = BigInt(100000000) * g * g * g * g;
  p.delta0 = {Rational(1), Rational(-2)};
  p.delta = {Rational(1), Rational(-20)};
  p.eps = {Rational(1), Rational(-200)};
  p.eta = {Rational(1), Rational(-2000)};

  const LambdaPower modulus{Rational(2 * g), Rational(20)};
  if (!provably_divides(modulus, n)) {
    throw ParamsError("n = " + n.str() + " is not divisible by 2*delta^-1*gamma^-1 = " + modulus.str());
  }
  p.n = n;
  p.n_tilde = LambdaPower{1 + gamma, Rational(0)} * n;
  const LambdaPower delta0_sq = p.delta0 * p.delta0;
  p.ell = delta0_sq * n;
  p.m = delta0_sq * p.ell;

  const LambdaPower one{Rational(1), Rational(0)};
  p.facts.push_back({"delta0^-1 = " + (one / p.delta0).str() + " is an integer", (one / p.delta0).is_integer()});
  p.facts.push_back({"ell = " + p.ell.str() + " is an integer", p.ell.is_integer()});
  p.facts.push_back({"m = " + p.m.str() + " divides ell", provably_divides(p.m, p.ell)});
  p.facts.push_back({"n_tilde = " + p.n_tilde.str() + " is an integer", p.n_tilde.is_integer()});
  const LambdaPower two_m = LambdaPower{Rational(2), Rational(0)} * p.m;
  p.facts.push_back({"2m = " + two_m.str() + " divides n_tilde", provably_divides(two_m, p.n_tilde)});
  return p;
}

Rational deltas_ratio_upper_bound(const PaperParams& p) {
  // ln M >= E and s = delta*M*ln M <= ln M * M^(1-20M) < 1e-9, so
  // e^s / (1 - s/2) < 1 + 1e-6.
  return Rational(100) / Rational(p.exp_argument) * Rational(1000001, 1000000);
}

double deltas_ratio_direct(std::int64_t big_m, std::int64_t n, std::int64_t step_width, std::int64_t t) {
  const long double mm = static_cast<long double>(big_m);
  auto delta_i = [&](long double i) { return std::pow(mm, -mm * (2.0L * n - i) / n); };
  const long double delta = static_cast<long double>(step_width) / n;
  const std::int64_t k = (t + step_width - 1) / step_width;
  long double lhs = 0;
  for (std::int64_t i = 1; i <= k; ++i) lhs += delta * mm * delta_i(static_cast<long double>(i * step_width));
  const long double rhs = delta_i(static_cast<long double>(t)) / 100.0L;
  return static_cast<double>(lhs / rhs);
}

double deltas_ratio_closed_form(std::int64_t big_m, std::int64_t n, std::int64_t step_width, std::int64_t t) {
  const long double mm = static_cast<long double>(big_m);
  const long double delta = static_cast<long double>(step_width) / n;
  const long double s = delta * mm * std::log(mm);  // ln r, r = M^(M w / n)
  const std::int64_t k = (t + step_width - 1) / step_width;
  const long double f = static_cast<long double>(k) - static_cast<long double>(t) / step_width;
  const long double geom = -std::expm1(-s * k) / -std::expm1(-s);
  return static_cast<double>(100.0L * delta * mm * std::exp(s * f) * geom);
}

Tree pad_tree(const Tree& t, std::int64_t modulus) {
  if (modulus < 1) throw ParamsError("modulus must be positive");
  const std::int64_t n = t.size();
  const std::int64_t target = (n + modulus - 1) / modulus * modulus;
  if (target == n) return t;
  Vertex anchor = 1;
  for (Vertex v = 1; v <= t.size(); ++v) {
    if (t.degree(v) == 1) {
      anchor = v;
      break;
    }
  }
  std::vector<Edge> edges = t.edges();
  Vertex prev = anchor;
  for (std::int64_t v = n + 1; v <= target; ++v) {
    edges.emplace_back(prev, static_cast<Vertex>(v));
    prev = static_cast<Vertex>(v);
  }
  return Tree(static_cast<Vertex>(target), std::move(edges));
}

}  // namespace graceful
