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

#include "graceful/quasirandom.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace graceful {

namespace {

// Bits i with lo <= pos + i <= hi.
std::uint64_t range_mask(std::int64_t pos, std::int64_t lo, std::int64_t hi) {
  const std::int64_t start = std::max<std::int64_t>(lo - pos, 0);
  const std::int64_t end = std::min<std::int64_t>(hi - pos, 63);
  if (start > end) return 0;
  return low_bits(end + 1) & ~low_bits(start);
}

std::uint64_t without(std::uint64_t mask, std::int64_t offset) {
  if (offset >= 0 && offset < 64) mask &= ~(std::uint64_t{1} << offset);
  return mask;
}

std::int64_t count_x2(const Structure& x, const LabelSet& A, const EdgeLabelSet& C) {
  std::int64_t total = 0;
  for (std::int64_t p = x.i.lo; p <= x.i.hi; p += 64) {
    std::uint64_t base = A.window(p) & C.diff_window(x.a, p) & range_mask(p, x.i.lo, x.i.hi);
    // |a - b| = c would repeat the fixed edge label.
    base = without(without(base, x.a + x.c - p), x.a - x.c - p);
    if (!base) continue;
    const std::int64_t up = p + x.c;
    const std::int64_t down = p - x.c;
    const std::uint64_t plus = without(A.window(up) & range_mask(up, x.i2.lo, x.i2.hi), x.a - up);
    const std::uint64_t minus = without(A.window(down) & range_mask(down, x.i2.lo, x.i2.hi), x.a - down);
    total += std::popcount(base & plus) + std::popcount(base & minus);
  }
  return total;
}

std::int64_t count_x4(const Structure& x, const LabelSet& A, const EdgeLabelSet& C) {
  std::int64_t total = 0;
  const bool has_mid = (x.a + x.a2) % 2 == 0;
  const std::int64_t mid = (x.a + x.a2) / 2;
  for (std::int64_t p = x.i.lo; p <= x.i.hi; p += 64) {
    std::uint64_t w = A.window(p) & C.diff_window(x.a, p) & C.diff_window(x.a2, p) & range_mask(p, x.i.lo, x.i.hi);
    if (has_mid) w = without(w, mid - p);
    total += std::popcount(w);
  }
  return total;
}

Rational density_power(std::int64_t size_a, std::int64_t n_tilde, int power) {
  Rational r(1);
  for (int k = 0; k < power; ++k) r *= Rational(size_a, n_tilde);
  return r;
}

double dev_against(const Structure& x, std::int64_t actual, std::int64_t ambient, std::int64_t size_a,
                   const IntervalSystem& sys) {
  const double density = static_cast<double>(size_a) / static_cast<double>(sys.n_tilde());
  const double predicted = static_cast<double>(ambient) * std::pow(density, free_count(x.kind));
  return std::abs(static_cast<double>(actual) - predicted) / static_cast<double>(sys.m());
}

struct Ambient {
  LabelSet a;
  EdgeLabelSet c;
  explicit Ambient(std::int64_t n_tilde) : a(full_vertex_labels(n_tilde)), c(n_tilde) {}
};

}  // namespace

std::string to_string(StructureKind k) {
  switch (k) {
    case StructureKind::X1: return "X1";
    case StructureKind::X2: return "X2";
    case StructureKind::X3: return "X3";
    case StructureKind::X4: return "X4";
  }
  return "?";
}

int free_count(StructureKind k) {
  switch (k) {
    case StructureKind::X1: return 1;
    case StructureKind::X2: return 3;
    case StructureKind::X3: return 2;
    case StructureKind::X4: return 3;
  }
  return 0;
}

void check_well_formed(const Structure& x) {
  if (x.i.size() <= 0) throw std::invalid_argument("structure interval is empty");
  if (x.kind == StructureKind::X2) {
    if (x.c <= 0) throw std::invalid_argument("X2 edge label must be positive");
    if (x.i == x.i2) throw std::invalid_argument("X2 intervals must be distinct");
    if (x.i2.size() <= 0) throw std::invalid_argument("structure interval is empty");
  }
  if (x.kind == StructureKind::X4 && x.a == x.a2) throw std::invalid_argument("X4 fixed labels must be distinct");
}

std::int64_t count_structure(const Structure& x, const LabelSet& A, const EdgeLabelSet& C) {
  check_well_formed(x);
  switch (x.kind) {
    case StructureKind::X1: return A.count(x.i);
    case StructureKind::X2: return count_x2(x, A, C);
    case StructureKind::X3: return admissible_count(x.a, x.i, A, C);
    case StructureKind::X4: return count_x4(x, A, C);
  }
  return 0;
}

LabelSet full_vertex_labels(std::int64_t n_tilde) { return LabelSet::range(n_tilde + 1, 1, n_tilde); }

double quasi1_max_dev(const LabelSet& A, const EdgeLabelSet& C, const IntervalSystem& sys) {
  const double expected = static_cast<double>(sys.m()) * static_cast<double>(A.size()) / static_cast<double>(sys.n_tilde());
  double worst = 0;
  for (const Interval& ie : sys.edge_intervals()) {
    const double dev = std::abs(static_cast<double>(C.labels().count(ie)) - expected);
    worst = std::max(worst, dev);
  }
  return worst / static_cast<double>(sys.m());
}

double quasi2_dev(const Structure& x, const LabelSet& A, const EdgeLabelSet& C, const IntervalSystem& sys) {
  const Ambient full(sys.n_tilde());
  return dev_against(x, count_structure(x, A, C), count_structure(x, full.a, full.c), A.size(), sys);
}

QuasiReport check_quasi(const LabelSet& A, const EdgeLabelSet& C, const IntervalSystem& sys, double alpha,
                        const QuasiSampleSpec& spec, std::span<const Label> used, Rng& rng) {
  QuasiReport report;
  report.size_a = A.size();
  report.size_c = C.size();
  report.alpha = alpha;
  report.quasi1_max_dev = quasi1_max_dev(A, C, sys);

  const Ambient full(sys.n_tilde());
  const auto& iv = sys.vertex_intervals();
  auto evaluate = [&](const Structure& x) {
    const double d = dev_against(x, count_structure(x, A, C), count_structure(x, full.a, full.c), A.size(), sys);
    auto& slot = report.quasi2_kind_max[static_cast<std::size_t>(x.kind)];
    slot = std::max(slot, d);
    report.quasi2_max_sampled_dev = std::max(report.quasi2_max_sampled_dev, d);
    ++report.structures_evaluated;
  };
  auto any_interval = [&]() { return iv[rng.below(iv.size())]; };
  auto other_interval = [&](const Interval& not_this) {
    while (true) {
      const Interval i = any_interval();
      if (!(i == not_this)) return i;
    }
  };
  auto available_label = [&]() { return A.select_from(0, static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(A.size())))); };
  auto available_edge = [&]() {
    return C.labels().select_from(0, static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(C.size()))));
  };

  for (const Interval& i : iv) evaluate(Structure::x1(i));

  if (iv.size() >= 2 && A.size() >= 1 && C.size() >= 1) {
    for (int k = 0; k < spec.x2; ++k) {
      const Label a = available_label();
      const Interval i = any_interval();
      const Label c = available_edge();
      evaluate(Structure::x2(a, i, c, other_interval(i)));
    }
  }
  if (A.size() >= 1) {
    for (int k = 0; k < spec.x3; ++k) {
      const Label a = available_label();
      evaluate(Structure::x3(a, any_interval()));
    }
  }
  if (A.size() >= 2) {
    for (int k = 0; k < spec.x4; ++k) {
      const Label a = available_label();
      Label a2 = available_label();
      while (a2 == a) a2 = available_label();
      evaluate(Structure::x4(a, a2, any_interval()));
    }
  }

  if (!used.empty()) {
    for (Label a : used) {
      for (const Interval& i : iv) evaluate(Structure::x3(a, i));
    }
    auto used_label = [&]() { return used[rng.below(used.size())]; };
    if (iv.size() >= 2 && C.size() >= 1) {
      for (int k = 0; k < spec.x2; ++k) {
        const Label a = used_label();
        const Interval i = any_interval();
        const Label c = available_edge();
        evaluate(Structure::x2(a, i, c, other_interval(i)));
      }
    }
    if (used.size() >= 2) {
      for (int k = 0; k < spec.x4; ++k) {
        const Label a = used_label();
        Label a2 = used_label();
        while (a2 == a) a2 = used_label();
        evaluate(Structure::x4(a, a2, any_interval()));
      }
    }
  }
  return report;
}

std::vector<Rational> crude_edge_estimates(const Plan& plan, const IntervalSystem& sys, std::int64_t t) {
  if (t < 1 || t > plan.size()) throw std::out_of_range("crude estimate step out of range");
  const std::size_t j = plan.interval_of[plan.order[static_cast<std::size_t>(t - 1)]];
  std::vector<Rational> out;
  out.reserve(sys.edge_intervals().size());
  for (const Interval& ie : sys.edge_intervals()) out.push_back(Rational(sys.m()) * sys.el(j, ie.lo));
  return out;
}

Rational crude_structure_estimate(const Plan& plan, const IntervalSystem& sys, const Structure& x, std::int64_t t) {
  if (t < 1 || t > plan.size()) throw std::out_of_range("crude estimate step out of range");
  const std::size_t j = plan.interval_of[plan.order[static_cast<std::size_t>(t - 1)]];
  const Interval& big = sys.j_intervals()[j];
  const Ambient full(sys.n_tilde());
  const std::int64_t ambient = count_structure(x, full.a, full.c);

  Rational inner(0);
  auto vertex_slot = [&](const Interval& i) {
    if (big.contains(i)) inner += Rational(1, sys.ell());
  };
  auto edge_slot = [&](Label fixed, const Interval& i) { inner += sys.el(j, std::abs(fixed - i.lo)); };
  switch (x.kind) {
    case StructureKind::X1:
      vertex_slot(x.i);
      break;
    case StructureKind::X2:
      vertex_slot(x.i);
      vertex_slot(x.i2);
      edge_slot(x.a, x.i);
      break;
    case StructureKind::X3:
      vertex_slot(x.i);
      edge_slot(x.a, x.i);
      break;
    case StructureKind::X4:
      vertex_slot(x.i);
      edge_slot(x.a, x.i);
      edge_slot(x.a2, x.i);
      break;
  }
  return Rational(ambient) * density_power(sys.n_tilde() - t, sys.n_tilde(), free_count(x.kind) - 1) * inner;
}

Lemma36Report lemma36_check(const LabelSet& A, const EdgeLabelSet& C, const IntervalSystem& sys, double alpha,
                            Label a, Label a2, Label c, std::size_t j) {
  Lemma36Report report;
  const double ell = static_cast<double>(sys.ell());
  report.precondition = ell >= 3.0 / alpha;
  const Interval& big = sys.j_intervals()[j];
  const Interval& bar = sys.j_intervals()[sys.complement(j)];
  std::vector<Interval> inside, inside_bar;
  for (const Interval& i : sys.vertex_intervals()) {
    if (big.contains(i)) inside.push_back(i);
    if (bar.contains(i)) inside_bar.push_back(i);
  }
  const double d = static_cast<double>(A.size()) / static_cast<double>(sys.n_tilde());

  WindowCheck x2{"X2[a,J,c,Jbar]", 0, d * d * d * static_cast<double>(sys.el_count(j, c)), 3 * alpha * ell, false};
  for (const Interval& i : inside) {
    for (const Interval& i2 : inside_bar) x2.count += count_structure(Structure::x2(a, i, c, i2), A, C);
  }
  WindowCheck x3{"X3[a,J]", 0, d * d * ell, 2 * alpha * ell, false};
  for (const Interval& i : inside) x3.count += count_structure(Structure::x3(a, i), A, C);
  WindowCheck x4{"X4[a,a2,J]", 0, d * d * d * ell, 2 * alpha * ell, false};
  for (const Interval& i : inside) x4.count += count_structure(Structure::x4(a, a2, i), A, C);

  for (WindowCheck* w : {&x2, &x3, &x4}) {
    w->pass = std::abs(static_cast<double>(w->count) - w->target) <= w->half_width;
    report.checks.push_back(*w);
  }
  return report;
}

}  // namespace graceful
