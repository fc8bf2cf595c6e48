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

#include <cmath>

#include <doctest.h>

#include "graceful/intervals.hpp"
#include "graceful/params.hpp"

using namespace graceful;

TEST_SUITE("params") {

TEST_CASE("practical n_tilde examples") {
  CHECK(derive_practical_params(20, Rational(1, 5), 2, 4).n_tilde == 24);
  CHECK(derive_practical_params(10000, Rational(1, 5), 32, 512).n_tilde == 12032);
  CHECK(derive_practical_params(21, Rational(1, 5), 2, 4).n_tilde == 28);
}

TEST_CASE("practical params errors") {
  CHECK_THROWS_AS(derive_practical_params(20, Rational(1, 5), 2, 12), ParamsError);  // ell >= n_tilde/2
  CHECK_THROWS_AS(derive_practical_params(20, Rational(1, 5), 3, 4), ParamsError);   // m does not divide ell
  CHECK_THROWS_AS(derive_practical_params(20, Rational(1, 5), 0, 4), ParamsError);
  CHECK_THROWS_AS(derive_practical_params(20, Rational(-1, 5), 2, 4), ParamsError);
  CHECK_THROWS_AS(derive_practical_params(1, Rational(1, 5), 2, 4), ParamsError);
}

TEST_CASE("practical params invariants over a grid") {
  for (std::int64_t n : {10, 48, 97, 1000, 4321}) {
    for (const Rational& g : {Rational(1, 5), Rational(1, 4), Rational(1), Rational(1, 3)}) {
      for (std::int64_t m : {1, 2, 4, 8}) {
        for (std::int64_t k : {1, 2, 4}) {
          const std::int64_t ell = m * k;
          const Rational lower = (1 + g) * n;
          Params p;
          try {
            p = derive_practical_params(n, g, m, ell);
          } catch (const ParamsError&) {
            // only allowed when ell is too large or a correction mass is negative
            const auto raw = static_cast<std::int64_t>(ceil_rational(lower));
            const std::int64_t nt = (raw + 2 * m - 1) / (2 * m) * (2 * m);
            CHECK((2 * ell >= nt || correction_mass_violation(IntervalSystem(nt, m, ell)).has_value()));
            continue;
          }
          CHECK(p.n_tilde % (2 * m) == 0);
          CHECK(p.ell % p.m == 0);
          CHECK(2 * p.ell < p.n_tilde);
          CHECK(Rational(p.n_tilde) >= lower);
          CHECK(Rational(p.n_tilde - 2 * m) < lower);
          CHECK_NOTHROW(validate(p));
        }
      }
    }
  }
}

TEST_CASE("odd ell/m gives a negative edge correction and is rejected") {
  // n_tilde=20, m=2, ell=6: J-profiles spaced 2m apart overlap past 1/m
  CHECK(correction_mass_violation(IntervalSystem(20, 2, 6)).has_value());
  CHECK_THROWS_AS(derive_practical_params(16, Rational(1, 4), 2, 6), ParamsError);
  CHECK_NOTHROW(derive_practical_params(16, Rational(1, 4), 2, 4));
}

TEST_CASE("params json round trip") {
  const Params p = derive_practical_params(10000, Rational(1, 5), 32, 512);
  const auto j = to_json(p);
  CHECK(j.at("mode") == "practical");
  CHECK(j.at("gamma") == "1/5");
  const Params q = params_from_json(j);
  CHECK(q.n_tilde == p.n_tilde);
  CHECK(q.gamma == p.gamma);
  CHECK(q.ell == p.ell);
  CHECK(q.m == p.m);
  CHECK(q.eps == p.eps);
  CHECK(to_json(q) == j);
}

TEST_CASE("tolerance schedule") {
  const ToleranceSchedule a;
  CHECK(a.at(0, 100) == doctest::Approx(0.05));
  CHECK(a.at(100, 100) == doctest::Approx(0.2));
  CHECK(a.at(50, 100) == doctest::Approx(0.125));
}

TEST_CASE("symbolic params are powers of Lambda") {
  const LambdaPower n{Rational(2), Rational(20)};
  const PaperParams p = derive_paper_params(Rational(1), n);
  CHECK(p.exp_argument == BigInt(100000000));
  CHECK(p.delta0 == LambdaPower{Rational(1), Rational(-2)});
  CHECK(p.delta == p.delta0 * p.delta0 * p.delta0 * p.delta0 * p.delta0 * p.delta0 * p.delta0 * p.delta0 *
                       p.delta0 * p.delta0);
  CHECK(p.ell == LambdaPower{Rational(2), Rational(16)});
  CHECK(p.m == LambdaPower{Rational(2), Rational(12)});
  CHECK(p.n_tilde == LambdaPower{Rational(4), Rational(20)});
  CHECK(provably_divides(p.m, p.ell));
  // delta_n = Lambda^-1 = mu^(1/mu), delta_0 = Lambda^-2
  CHECK(p.delta_at(Rational(1)) == LambdaPower{Rational(1), Rational(-1)});
  CHECK(p.delta_at(Rational(0)) == p.delta0);
  for (const auto& f : p.facts) CHECK_MESSAGE(f.proven, f.statement);
}

TEST_CASE("symbolic params reject bad inputs") {
  CHECK_THROWS_AS(derive_paper_params(Rational(2, 5), LambdaPower{Rational(10), Rational(20)}), ParamsError);
  CHECK_THROWS_AS(derive_paper_params(Rational(1, 5), LambdaPower{Rational(2), Rational(20)}), ParamsError);
  CHECK_THROWS_AS(derive_paper_params(Rational(1), LambdaPower{Rational(2), Rational(19)}), ParamsError);
  CHECK_NOTHROW(derive_paper_params(Rational(1, 5), LambdaPower{Rational(10), Rational(20)}));
}

TEST_CASE("lambda power arithmetic") {
  const LambdaPower a{Rational(3), Rational(1, 2)};
  const LambdaPower b{Rational(2), Rational(-1)};
  CHECK(a * b == LambdaPower{Rational(6), Rational(-1, 2)});
  CHECK(a / b == LambdaPower{Rational(3, 2), Rational(3, 2)});
  CHECK_FALSE(a.is_integer());
  CHECK(LambdaPower{Rational(3), Rational(2)}.is_integer());
  CHECK(provably_divides(LambdaPower{Rational(3), Rational(1)}, LambdaPower{Rational(6), Rational(4)}));
  CHECK_FALSE(provably_divides(LambdaPower{Rational(4), Rational(1)}, LambdaPower{Rational(6), Rational(4)}));
  CHECK_FALSE(provably_divides(LambdaPower{Rational(1), Rational(5)}, LambdaPower{Rational(1), Rational(4)}));
}

TEST_CASE("error accumulation inequality") {
  const PaperParams p = derive_paper_params(Rational(1), LambdaPower{Rational(2), Rational(20)});
  CHECK(deltas_ratio_upper_bound(p) < Rational(1));
  // closed form against direct summation on finite stand-ins
  for (std::int64_t big_m : {50, 100, 200}) {
    for (std::int64_t t : {1, 7, 100, 999, 1000}) {
      const double direct = deltas_ratio_direct(big_m, 1000, 1, t);
      const double closed = deltas_ratio_closed_form(big_m, 1000, 1, t);
      CHECK(closed == doctest::Approx(direct).epsilon(1e-9));
    }
  }
  CHECK(deltas_ratio_direct(3, 100, 10, 55) == doctest::Approx(deltas_ratio_closed_form(3, 100, 10, 55)).epsilon(1e-9));
}

TEST_CASE("pad_tree") {
  Rng r(4);
  const Tree t = random_tree(10, r);
  const Tree p = pad_tree(t, 12);
  CHECK(p.size() == 12);
  for (const Edge& e : t.edges()) {
    const auto& nb = p.neighbors(e.u);
    CHECK(std::find(nb.begin(), nb.end(), e.v) != nb.end());
  }
  const Tree t12 = random_tree(12, r);
  CHECK(pad_tree(t12, 12) == t12);
  CHECK(pad_tree(path_tree(2), 5) == Tree(5, {{1, 2}, {1, 3}, {3, 4}, {4, 5}}));
  for (std::int64_t k : {1, 3, 7, 64}) {
    const Tree q = pad_tree(t, k);
    CHECK(q.size() % k == 0);
    CHECK(q.size() - t.size() < k);
  }
  CHECK_THROWS_AS(pad_tree(t, 0), ParamsError);
}

}  // TEST_SUITE
