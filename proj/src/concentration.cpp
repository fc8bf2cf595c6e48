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

#include "graceful/concentration.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <numeric>
#include <thread>

namespace graceful {

namespace {

constexpr std::int64_t kChunks = 64;
constexpr double kCapSlack = 1e-12;

// Fills out[k] = per-trial statistic for all trials, chunk c using rng.split(c).
template <typename Trial>
void simulate(std::int64_t trials, const Rng& rng, unsigned threads, std::vector<double>& out, Trial&& trial) {
  out.assign(static_cast<std::size_t>(trials), 0.0);
  const std::int64_t chunk = (trials + kChunks - 1) / kChunks;
  std::atomic<std::int64_t> next{0};
  auto work = [&] {
    for (std::int64_t c = next++; c < kChunks; c = next++) {
      Rng r = rng.split(static_cast<std::uint64_t>(c));
      const std::int64_t lo = c * chunk;
      const std::int64_t hi = std::min(trials, lo + chunk);
      for (std::int64_t k = lo; k < hi; ++k) out[static_cast<std::size_t>(k)] = trial(r);
    }
  };
  const unsigned w = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < std::min<unsigned>(w, kChunks); ++i) pool.emplace_back(work);
    work();
  }
}

TailResult finish(TailResult r) {
  r.empirical = r.trials ? static_cast<double>(r.hits) / static_cast<double>(r.trials) : 0.0;
  r.se = r.trials ? std::sqrt(r.empirical * (1 - r.empirical) / static_cast<double>(r.trials)) : 0.0;
  r.pass = r.empirical <= r.bound + 3 * r.se;
  return r;
}

}  // namespace

double BoundedVariable::mean() const {
  double m = 0;
  for (std::size_t k = 0; k < values.size(); ++k) m += values[k] * probs[k];
  return m;
}

double BoundedVariable::draw(Rng& rng) const {
  const double u = rng.uniform01();
  double acc = 0;
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    acc += probs[k];
    if (u < acc) return values[k];
  }
  return values.back();
}

double IndependentScenario::mean() const {
  double m = 0;
  for (const auto& v : vars) m += v.mean();
  return m;
}

double IndependentScenario::sum_sq_range() const {
  double s = 0;
  for (const auto& v : vars) s += v.a * v.a;
  return s;
}

double SequentialScenario::sum_sq_range() const {
  double s = 0;
  for (double x : a) s += x * x;
  return s;
}

double hoeffding_sigma(double sum_sq_range) { return std::sqrt(sum_sq_range) / 2; }

std::vector<double> sigma_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 8; ++k) g.push_back(0.5 * k);
  return g;
}

std::vector<TailResult> hoeffding_empirical(const IndependentScenario& s, std::span<const double> ts,
                                            std::int64_t trials, const Rng& rng, unsigned threads) {
  const double mu = s.mean();
  std::vector<double> dev;
  simulate(trials, rng, threads, dev, [&](Rng& r) {
    double x = 0;
    for (const auto& v : s.vars) x += v.draw(r);
    return x - mu;
  });
  const double ssq = s.sum_sq_range();
  const double sigma = hoeffding_sigma(ssq);
  std::vector<TailResult> out;
  for (double t : ts) {
    TailResult r;
    r.scenario = s.name;
    r.kind = "hoeffding";
    r.t = t;
    r.sigma_multiple = sigma > 0 ? t / sigma : 0;
    r.trials = trials;
    r.hits = std::count_if(dev.begin(), dev.end(), [t](double d) { return d >= t; });
    r.bound = ssq > 0 ? std::exp(-2 * t * t / ssq) : 1.0;
    out.push_back(finish(r));
  }
  return out;
}

std::vector<TailResult> seqhoeff_empirical(const SequentialScenario& s, std::span<const double> ts,
                                           std::int64_t trials, const Rng& rng, unsigned threads) {
  const std::size_t n = s.a.size();
  if (s.cap_lo.size() != n || s.cap_hi.size() != n) throw ScenarioError(s.name + ": caps do not match a");
  // Per trial: |sum Y - mu| - nu when E holds, -infinity otherwise.
  std::vector<double> dev;
  std::atomic<bool> broken{false};
  std::string what;
  std::mutex mu_err;
  simulate(trials, rng, threads, dev, [&](Rng& r) {
    std::vector<double> hist;
    hist.reserve(n);
    double sum = 0, mean_sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const StepDraw d = s.step(i, hist, r);
      if (d.y < -kCapSlack || d.y > s.a[i] + kCapSlack || d.conditional_mean < s.cap_lo[i] - kCapSlack ||
          d.conditional_mean > s.cap_hi[i] + kCapSlack) {
        if (!broken.exchange(true)) {
          std::lock_guard lock(mu_err);
          what = s.name + ": step " + std::to_string(i + 1) + " drew " + std::to_string(d.y) +
                 " with conditional mean " + std::to_string(d.conditional_mean) + " outside the declared caps";
        }
      }
      hist.push_back(d.y);
      sum += d.y;
      mean_sum += d.conditional_mean;
    }
    const bool event = std::abs(mean_sum - s.mu) <= s.nu + kCapSlack;
    return event ? std::abs(sum - s.mu) - s.nu : -HUGE_VAL;
  });
  if (broken) throw ScenarioError(what);
  const double ssq = s.sum_sq_range();
  const double sigma = hoeffding_sigma(ssq);
  std::vector<TailResult> out;
  for (double t : ts) {
    TailResult r;
    r.scenario = s.name;
    r.kind = "seqhoeff";
    r.t = t;
    r.sigma_multiple = sigma > 0 ? t / sigma : 0;
    r.trials = trials;
    r.hits = std::count_if(dev.begin(), dev.end(), [t](double d) { return d >= t; });
    r.bound = ssq > 0 ? std::min(1.0, 2 * std::exp(-2 * t * t / ssq)) : 1.0;
    out.push_back(finish(r));
  }
  return out;
}

std::vector<IndependentScenario> bundled_independent_scenarios() {
  std::vector<IndependentScenario> out;
  {
    IndependentScenario s{"fair-coins-100", {}};
    for (int i = 0; i < 100; ++i) s.vars.push_back(BoundedVariable::bernoulli(1, 0.5));
    out.push_back(std::move(s));
  }
  {
    IndependentScenario s{"weighted-bernoulli-60", {}};
    for (int i = 0; i < 60; ++i) {
      s.vars.push_back(BoundedVariable::bernoulli(1 + i % 4, 0.1 + 0.8 * (i % 5) / 4.0));
    }
    out.push_back(std::move(s));
  }
  {
    IndependentScenario s{"uniform-grid-50", {}};
    BoundedVariable v{2, {}, {}};
    for (int k = 0; k <= 10; ++k) {
      v.values.push_back(0.2 * k);
      v.probs.push_back(1.0 / 11);
    }
    for (int i = 0; i < 50; ++i) s.vars.push_back(v);
    out.push_back(std::move(s));
  }
  {
    // Rare large jumps: the tail is far from Gaussian.
    IndependentScenario s{"rare-jumps-40", {}};
    for (int i = 0; i < 40; ++i) s.vars.push_back(BoundedVariable::bernoulli(1, 0.02));
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

double history_mean(std::span<const double> h) {
  if (h.empty()) return 0.5;
  return std::accumulate(h.begin(), h.end(), 0.0) / static_cast<double>(h.size());
}

}  // namespace

SequentialScenario urn_scenario(std::size_t n) {
  SequentialScenario s;
  s.name = "urn-" + std::to_string(n);
  s.a.assign(n, 1.0);
  s.cap_lo.assign(n, 0.2);
  s.cap_hi.assign(n, 0.8);
  s.cap_lo[0] = s.cap_hi[0] = 0.5;
  s.mu = static_cast<double>(n) / 2;
  s.nu = 0.3 * static_cast<double>(n - 1);
  s.step = [](std::size_t, std::span<const double> h, Rng& r) {
    const double p = clamp01(0.5 + 0.3 * (2 * history_mean(h) - 1));
    return StepDraw{r.uniform01() < p ? 1.0 : 0.0, p};
  };
  return s;
}

std::vector<SequentialScenario> bundled_sequential_scenarios() {
  std::vector<SequentialScenario> out;
  {
    SequentialScenario s;
    s.name = "iid-coins-100";
    s.a.assign(100, 1.0);
    s.cap_lo.assign(100, 0.5);
    s.cap_hi.assign(100, 0.5);
    s.mu = 50;
    s.nu = 0;
    s.step = [](std::size_t, std::span<const double>, Rng& r) { return StepDraw{r.uniform01() < 0.5 ? 1.0 : 0.0, 0.5}; };
    out.push_back(std::move(s));
  }
  out.push_back(urn_scenario(100));
  {
    // Each step copies the previous outcome with probability 0.9; E holds
    // only on part of the space.
    SequentialScenario s;
    s.name = "sticky-chain-100";
    s.a.assign(100, 1.0);
    s.cap_lo.assign(100, 0.1);
    s.cap_hi.assign(100, 0.9);
    s.cap_lo[0] = s.cap_hi[0] = 0.5;
    s.mu = 50;
    s.nu = 10;
    s.step = [](std::size_t, std::span<const double> h, Rng& r) {
      const double p = h.empty() ? 0.5 : 0.5 + 0.4 * (2 * h.back() - 1);
      return StepDraw{r.uniform01() < p ? 1.0 : 0.0, p};
    };
    out.push_back(std::move(s));
  }
  {
    // Y_i in {0, a_i} with a_i = 1 + (i mod 3) and a self-reinforcing bias.
    SequentialScenario s;
    s.name = "weighted-urn-90";
    const std::size_t n = 90;
    double lo = 0, hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = 1.0 + static_cast<double>(i % 3);
      s.a.push_back(a);
      s.cap_lo.push_back(i == 0 ? 0.5 * a : 0.3 * a);
      s.cap_hi.push_back(i == 0 ? 0.5 * a : 0.7 * a);
      lo += s.cap_lo.back();
      hi += s.cap_hi.back();
    }
    s.mu = (lo + hi) / 2;
    s.nu = (hi - lo) / 2;
    auto a_copy = s.a;
    s.step = [a_copy](std::size_t i, std::span<const double> h, Rng& r) {
      double frac = 0.5;
      if (!h.empty()) {
        double num = 0, den = 0;
        for (std::size_t k = 0; k < h.size(); ++k) {
          num += h[k];
          den += a_copy[k];
        }
        frac = num / den;
      }
      const double p = std::clamp(0.5 + 0.2 * (2 * frac - 1), 0.3, 0.7);
      const double a = a_copy[i];
      return StepDraw{r.uniform01() < p ? a : 0.0, p * a};
    };
    out.push_back(std::move(s));
  }
  {
    // nu covers the whole range, so the tail event is empty.
    SequentialScenario s = urn_scenario(50);
    s.name = "full-range-urn-50";
    s.nu = 50;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<TailResult> run_concentration_suite(std::int64_t trials, std::uint64_t seed, unsigned threads) {
  const Rng root(seed);
  std::vector<TailResult> rows;
  std::uint64_t idx = 0;
  for (const auto& s : bundled_independent_scenarios()) {
    std::vector<double> ts;
    for (double k : sigma_grid()) ts.push_back(k * hoeffding_sigma(s.sum_sq_range()));
    auto r = hoeffding_empirical(s, ts, trials, root.split(idx++), threads);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  for (const auto& s : bundled_sequential_scenarios()) {
    std::vector<double> ts;
    for (double k : sigma_grid()) ts.push_back(k * hoeffding_sigma(s.sum_sq_range()));
    auto r = seqhoeff_empirical(s, ts, trials, root.split(idx++), threads);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  return rows;
}

void write_tail_csv(std::ostream& out, const std::vector<TailResult>& rows) {
  out << "scenario,kind,sigma_multiple,t,trials,hits,empirical,bound,se,pass\n";
  const auto flags = out.flags();
  out << std::setprecision(10);
  for (const auto& r : rows) {
    out << r.scenario << ',' << r.kind << ',' << r.sigma_multiple << ',' << r.t << ',' << r.trials << ',' << r.hits
        << ',' << r.empirical << ',' << r.bound << ',' << r.se << ',' << (r.pass ? 1 : 0) << '\n';
  }
  out.flags(flags);
}

}  // namespace graceful
