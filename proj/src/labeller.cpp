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

#include "graceful/labeller.hpp"

#include <cstdlib>
#include <stdexcept>

namespace graceful {

std::string to_string(FailureSite s) {
  switch (s) {
    case FailureSite::ChooseLabel: return "choose-label";
    case FailureSite::CorvRemoval: return "corv-removal";
    case FailureSite::CoreRemoval: return "core-removal";
  }
  return "?";
}

LabellingState::LabellingState(Vertex n, std::int64_t n_tilde)
    : a(full_vertex_labels(n_tilde)), c(n_tilde), psi(static_cast<std::size_t>(n) + 1, 0) {}

Labeller::Labeller(const Tree& t, const Plan& plan, const IntervalSystem& sys)
    : tree_(t),
      plan_(plan),
      sys_(sys),
      corv_(corv_distribution(sys)),
      core_(core_distribution(sys)),
      corv_sampler_(corv_),
      core_sampler_(core_) {
  if (plan.size() != t.size()) throw std::invalid_argument("plan does not match tree");
}

std::optional<FailureSite> Labeller::step(LabellingState& s, Rng& rng) const {
  const auto idx = static_cast<std::size_t>(s.t);
  if (idx >= plan_.order.size()) throw std::logic_error("all vertices already labelled");
  const Vertex v = plan_.order[idx];
  const Interval& j = sys_.j_intervals()[plan_.interval_of[v]];
  StepRecord rec;
  rec.t = s.t + 1;
  rec.vertex = v;

  std::optional<Label> a;
  Label parent_label = 0;
  if (idx == 0) {
    a = s.a.sample(j.lo, j.hi, rng);
  } else {
    parent_label = s.psi[plan_.parent[idx]];
    a = sample_admissible(parent_label, j, s.a, s.c, rng);
  }
  if (!a) return FailureSite::ChooseLabel;
  rec.chosen = *a;
  s.psi[v] = *a;
  s.a.erase(*a);
  if (idx > 0) {
    rec.edge_label = std::abs(parent_label - *a);
    s.c.erase(rec.edge_label);
  }

  const auto corv_pick = corv_sampler_.sample(rng);
  ++s.draws.corv_draws;
  if (corv_pick) ++s.draws.corv_nonstar;
  if (auto i = corv_pick) {
    const Interval& iv = corv_.support[*i];
    const auto r = s.a.sample(iv.lo, iv.hi, rng);
    if (!r) return FailureSite::CorvRemoval;
    s.a.erase(*r);
    rec.rv = *r;
    ++s.corv_hits;
  }
  const auto core_pick = core_sampler_.sample(rng);
  ++s.draws.core_draws;
  if (core_pick) ++s.draws.core_nonstar;
  if (auto i = core_pick) {
    const Interval& ie = core_.support[*i];
    const auto r = s.c.labels().sample(ie.lo, ie.hi, rng);
    if (!r) return FailureSite::CoreRemoval;
    s.c.erase(*r);
    rec.re = *r;
    ++s.core_hits;
  }
  ++s.t;
  rec.size_a = s.a.size();
  rec.size_c = s.c.size();
  s.trace.push_back(rec);
  return std::nullopt;
}

namespace {

std::vector<Label> frontier_labels(const Tree& t, const LabellingState& s) {
  std::vector<Label> out;
  for (Vertex v = 1; v <= t.size(); ++v) {
    if (s.psi[v] == 0) continue;
    for (Vertex w : t.neighbors(v)) {
      if (s.psi[w] == 0) {
        out.push_back(s.psi[v]);
        break;
      }
    }
  }
  return out;
}

}  // namespace

RunOutcome run(const Tree& t, const Plan& plan, const IntervalSystem& sys, const Params& p, const Rng& rng,
               const RunOptions& opts) {
  RunOutcome out;
  Plan current = plan;
  for (int attempt = 0; attempt <= opts.max_retries; ++attempt) {
    const Rng attempt_rng = rng.split(static_cast<std::uint64_t>(attempt));
    if (attempt > 0 && opts.resample_plan) {
      Rng plan_rng = attempt_rng.split(1);
      current = make_plan(t, p, sys, plan_rng);
    }
    const Labeller labeller(t, current, sys);
    Rng label_rng = attempt_rng.split(0);
    const Rng check_rng = attempt_rng.split(2);
    LabellingState state(t.size(), sys.n_tilde());
    out.attempts = attempt + 1;
    out.checkpoints.clear();

    std::optional<FailureSite> failure;
    while (state.t < t.size()) {
      failure = labeller.step(state, label_rng);
      if (failure) break;
      const std::int64_t step = state.t;
      if (state.a.size() != sys.n_tilde() - step - state.corv_hits ||
          state.c.size() != sys.n_tilde() - 1 - (step - 1) - state.core_hits) {
        out.accounting_ok = false;
      }
      if (opts.checkpoint_every > 0 && step % opts.checkpoint_every == 0) {
        Rng sample_rng = check_rng.split(static_cast<std::uint64_t>(step));
        const auto used = frontier_labels(t, state);
        Checkpoint cp{step, check_quasi(state.a, state.c, sys, p.alpha.at(step, p.n), opts.quasi, used, sample_rng)};
        cp.report.t = step;
        out.checkpoints.push_back(cp);
      }
    }
    out.steps += state.t;
    out.corv_hits += state.corv_hits;
    out.core_hits += state.core_hits;
    out.draws += state.draws;
    if (opts.keep_trace) out.trace = std::move(state.trace);
    out.plan = current;
    if (!failure) {
      out.success = true;
      out.labels.assign(state.psi.begin() + 1, state.psi.end());
      return out;
    }
    out.failures.push_back({attempt, state.t + 1, *failure});
  }
  return out;
}

nlohmann::json labelling_json(std::int64_t n_tilde, const std::vector<Label>& labels) {
  return nlohmann::json{{"n", labels.size()}, {"n_tilde", n_tilde}, {"labels", labels}};
}

LabellingFile parse_labelling(const nlohmann::json& j) {
  LabellingFile f;
  f.labels = j.at("labels").get<std::vector<Label>>();
  f.n = j.value("n", static_cast<std::int64_t>(f.labels.size()));
  f.n_tilde = j.value("n_tilde", std::int64_t{0});
  if (f.n != static_cast<std::int64_t>(f.labels.size())) throw std::invalid_argument("labelling: n does not match labels");
  return f;
}

}  // namespace graceful
