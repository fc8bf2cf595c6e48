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

#include <json.hpp>

#include "graceful/intervals.hpp"
#include "graceful/label_set.hpp"
#include "graceful/params.hpp"
#include "graceful/prepare.hpp"
#include "graceful/quasirandom.hpp"
#include "graceful/rng.hpp"
#include "graceful/tree.hpp"

namespace graceful {

enum class FailureSite { ChooseLabel, CorvRemoval, CoreRemoval };

std::string to_string(FailureSite s);

/// One step of the labelling. Labels that were not drawn are -1.
struct StepRecord {
  std::int64_t t = 0;
  Vertex vertex = 0;
  Label chosen = -1;
  Label edge_label = -1;  // |psi(parent) - chosen|, -1 at t = 1
  Label rv = -1;
  Label re = -1;
  std::int64_t size_a = 0;  // after the step
  std::int64_t size_c = 0;
};

/// Correction draws made, counted when drawn (a draw whose removal then
/// fails is included).
struct DrawCounts {
  std::int64_t corv_draws = 0;
  std::int64_t corv_nonstar = 0;
  std::int64_t core_draws = 0;
  std::int64_t core_nonstar = 0;

  DrawCounts& operator+=(const DrawCounts& o) {
    corv_draws += o.corv_draws;
    corv_nonstar += o.corv_nonstar;
    core_draws += o.core_draws;
    core_nonstar += o.core_nonstar;
    return *this;
  }
};

/// Available labels A (vertex) and C (edge), the partial labelling and the
/// trace. psi[v] == 0 means v is unlabelled.
struct LabellingState {
  LabelSet a;
  EdgeLabelSet c;
  std::vector<Label> psi;
  std::int64_t t = 0;  // number of completed steps
  std::int64_t corv_hits = 0;
  std::int64_t core_hits = 0;
  DrawCounts draws;
  std::vector<StepRecord> trace;

  LabellingState(Vertex n, std::int64_t n_tilde);
};

/// Algorithm state that does not change between steps: the plan, the
/// interval system and the two correction samplers.
class Labeller {
 public:
  Labeller(const Tree& t, const Plan& plan, const IntervalSystem& sys);

  /// Labels v_{t+1}. On failure the state is left as it was when the
  /// empty set was hit.
  std::optional<FailureSite> step(LabellingState& s, Rng& rng) const;

  [[nodiscard]] const CorrectionDistribution& corv() const { return corv_; }
  [[nodiscard]] const CorrectionDistribution& core() const { return core_; }
  [[nodiscard]] const Plan& plan() const { return plan_; }

 private:
  const Tree& tree_;
  const Plan& plan_;
  const IntervalSystem& sys_;
  CorrectionDistribution corv_;
  CorrectionDistribution core_;
  CorrectionSampler corv_sampler_;
  CorrectionSampler core_sampler_;
};

struct RunOptions {
  int max_retries = 0;
  /// Draw a fresh plan on every retry instead of keeping the first one.
  bool resample_plan = false;
  /// Quasirandomness checkpoints after every k-th step; 0 disables them.
  std::int64_t checkpoint_every = 0;
  QuasiSampleSpec quasi;
  bool keep_trace = true;
};

struct AttemptFailure {
  int attempt = 0;
  std::int64_t t = 0;
  FailureSite site = FailureSite::ChooseLabel;
};

struct Checkpoint {
  std::int64_t t = 0;
  QuasiReport report;
};

struct RunOutcome {
  bool success = false;
  int attempts = 0;
  std::vector<Label> labels;  // psi(1..n) on success
  std::vector<AttemptFailure> failures;
  /// Trace and checkpoints of the last attempt.
  std::vector<StepRecord> trace;
  std::vector<Checkpoint> checkpoints;
  /// |A_{t+1}| = n_tilde - t - (non-star Corv draws) and
  /// |C_{t+1}| = n_tilde - 1 - (t - 1) - (non-star Core draws) held after every step.
  bool accounting_ok = true;
  std::int64_t steps = 0;  // over all attempts
  std::int64_t corv_hits = 0;
  std::int64_t core_hits = 0;
  DrawCounts draws;  // over all attempts
  Plan plan;  // the plan of the last attempt
};

/// The labelling loop with retries. Attempt k draws from rng.split(k): its child 0
/// drives the labelling, child 1 a resampled plan, child 2 the checkpoints.
RunOutcome run(const Tree& t, const Plan& plan, const IntervalSystem& sys, const Params& p, const Rng& rng,
               const RunOptions& opts);

/// {"n": ..., "n_tilde": ..., "labels": [psi(1), ..., psi(n)]}
nlohmann::json labelling_json(std::int64_t n_tilde, const std::vector<Label>& labels);

struct LabellingFile {
  std::int64_t n = 0;
  std::int64_t n_tilde = 0;
  std::vector<Label> labels;
};
LabellingFile parse_labelling(const nlohmann::json& j);

}  // namespace graceful
