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

#include "graceful/intervals.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace graceful {

IntervalSystem::IntervalSystem(std::int64_t n_tilde, std::int64_t m, std::int64_t ell)
    : n_tilde_(n_tilde), m_(m), ell_(ell) {
  if (m < 1 || ell < m || ell % m != 0) throw ParamsError("interval system needs m | ell");
  if (n_tilde % (2 * m) != 0) throw ParamsError("interval system needs 2m | n_tilde");
  if (2 * ell >= n_tilde) throw ParamsError("interval system needs ell < n_tilde/2");

  for (Label s = 1; s + m - 1 <= n_tilde; s += m) iv_.push_back({s, s + m - 1});
  for (Label s = 0; s + m - 1 <= n_tilde - 1; s += m) ie_.push_back({s, s + m - 1});

  const Label half = n_tilde / 2;
  const std::int64_t per_half = (half - ell) / m + 1;
  for (std::int64_t k = 0; k < per_half; ++k) j_.push_back({1 + k * m, k * m + ell});
  for (std::int64_t k = 0; k < per_half; ++k) j_.push_back({half + 1 + k * m, half + k * m + ell});

  // Lower start s pairs with upper start n_tilde + 2 - ell - s.
  complement_.resize(j_.size());
  for (std::size_t j = 0; j < j_.size(); ++j) {
    const Label partner = n_tilde + 2 - ell - j_[j].lo;
    const auto idx = j_index_of_start(partner);
    if (!idx) throw std::logic_error("interval system: missing complement");
    complement_[j] = *idx;
  }

  coverage_.assign(iv_.size(), 0);
  for (const Interval& J : j_) {
    for (std::size_t i = vertex_interval_of(J.lo); i <= vertex_interval_of(J.hi); ++i) ++coverage_[i];
  }
}

std::optional<std::size_t> IntervalSystem::j_index_of_start(Label start) const {
  auto it = std::lower_bound(j_.begin(), j_.end(), start, [](const Interval& J, Label s) { return J.lo < s; });
  if (it == j_.end() || it->lo != start) return std::nullopt;
  return static_cast<std::size_t>(it - j_.begin());
}

std::int64_t IntervalSystem::el_count(std::size_t j, Label c) const {
  const Label distance = std::abs(j_[complement_[j]].lo - j_[j].lo);
  return std::max<std::int64_t>(0, ell_ - std::abs(c - distance));
}

Rational IntervalSystem::el(std::size_t j, Label c) const { return Rational(el_count(j, c), ell_ * ell_); }

Rational CorrectionDistribution::total() const {
  Rational sum = star_probability;
  for (const Rational& p : probability) sum += p;
  return sum;
}

CorrectionDistribution corv_distribution(const IntervalSystem& sys) {
  CorrectionDistribution d;
  const Rational js(static_cast<std::int64_t>(sys.j_count()));
  Rational used = 0;
  for (std::size_t i = 0; i < sys.vertex_intervals().size(); ++i) {
    Rational p = (1 - Rational(sys.m(), sys.ell()) * sys.coverage(i)) / js;
    if (p < 0) throw std::logic_error("negative vertex correction mass");
    d.support.push_back(sys.vertex_intervals()[i]);
    d.probability.push_back(p);
    used += p;
  }
  d.star_probability = 1 - used;
  if (d.star_probability < 0) throw std::logic_error("negative vertex correction star mass");
  return d;
}

CorrectionDistribution core_distribution(const IntervalSystem& sys) {
  CorrectionDistribution d;
  const Rational js(static_cast<std::int64_t>(sys.j_count()));
  const std::int64_t ell_sq = sys.ell() * sys.ell();
  Rational used = 0;
  for (const Interval& ie : sys.edge_intervals()) {
    std::int64_t pairs = 0;
    for (std::size_t j = 0; j < sys.j_count(); ++j) pairs += sys.el_count(j, ie.lo);
    Rational p = (1 - Rational(sys.m() * pairs, ell_sq)) / js;
    if (p < 0) throw std::logic_error("negative edge correction mass");
    d.support.push_back(ie);
    d.probability.push_back(p);
    used += p;
  }
  d.star_probability = 1 - used;
  if (d.star_probability < 0) throw std::logic_error("negative edge correction star mass");
  return d;
}

std::optional<std::string> correction_mass_violation(const IntervalSystem& sys) {
  const std::int64_t m = sys.m();
  const std::int64_t ell = sys.ell();
  const auto js = static_cast<std::int64_t>(sys.j_count());
  // masses scaled by ell * |J| (Corv) and ell^2 * |J| (Core)
  std::int64_t used = 0;
  for (std::size_t i = 0; i < sys.vertex_intervals().size(); ++i) {
    const std::int64_t w = ell - m * sys.coverage(i);
    if (w < 0) return "negative Corv mass at vertex interval starting " + std::to_string(sys.vertex_intervals()[i].lo);
    used += w;
  }
  if (used > ell * js) return std::string("negative Corv star mass");
  used = 0;
  for (const Interval& ie : sys.edge_intervals()) {
    std::int64_t pairs = 0;
    for (std::size_t j = 0; j < sys.j_count(); ++j) pairs += sys.el_count(j, ie.lo);
    const std::int64_t w = ell * ell - m * pairs;
    if (w < 0) return "negative Core mass at edge interval starting " + std::to_string(ie.lo);
    used += w;
  }
  if (used > ell * ell * js) return std::string("negative Core star mass");
  return std::nullopt;
}

CorrectionSampler::CorrectionSampler(const CorrectionDistribution& d) {
  BigInt lcm = boost::multiprecision::denominator(d.star_probability);
  for (const Rational& p : d.probability) lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(p));
  if (lcm > std::numeric_limits<std::uint64_t>::max() / 2) {
    throw std::overflow_error("correction distribution denominator exceeds 64 bits");
  }
  denominator_ = lcm.convert_to<std::uint64_t>();
  std::uint64_t running = 0;
  for (std::size_t i = 0; i < d.probability.size(); ++i) {
    const Rational scaled = d.probability[i] * Rational(lcm);
    const auto weight = boost::multiprecision::numerator(scaled).convert_to<std::uint64_t>();
    if (weight == 0) continue;
    running += weight;
    cumulative_.push_back(running);
    index_.push_back(i);
  }
}

std::optional<std::size_t> CorrectionSampler::sample(Rng& rng) const {
  const std::uint64_t u = rng.below(denominator_);
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) return std::nullopt;
  return index_[static_cast<std::size_t>(it - cumulative_.begin())];
}

}  // namespace graceful
