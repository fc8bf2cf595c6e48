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
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "graceful/labeller.hpp"
#include "graceful/params.hpp"
#include "graceful/quasirandom.hpp"
#include "graceful/rational.hpp"
#include "graceful/tree.hpp"

namespace graceful {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::vector<std::int64_t> n;
  Rational gamma{1, 5};
  std::int64_t m = 32;
  std::int64_t ell = 512;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  int retries = 0;
  std::int64_t checkpoint_every = 0;
  QuasiSampleSpec quasi;
  std::string tree_source = "random";  // "random" or "file"
  std::string tree_file;
  bool resample_plan = false;
  /// Redraw the interval assignment up to this many times until PRE4 passes.
  int pre4_resample = 0;
  std::optional<Rational> eps;
  std::optional<std::int64_t> component_threshold;
  unsigned threads = 0;
};

/// Throws ConfigError on unknown tree sources or parameters that violate
/// the params constraints.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& cfg);

Params trial_params(const ExperimentConfig& cfg, std::int64_t n);

struct TrialRecord {
  std::int64_t n = 0;
  std::int64_t trial = 0;
  std::uint64_t seed = 0;
  int attempts = 0;
  bool success = false;
  bool verified = false;  // labelling passes verify_graceful with m = n_tilde
  bool accounting_ok = true;
  std::string failure_site;  // last failed attempt, empty if none
  std::int64_t failure_t = 0;
  std::vector<AttemptFailure> failures;
  double max_quasi1_dev = 0;
  double max_quasi2_sampled_dev = 0;
  std::int64_t checkpoints = 0;
  std::int64_t checkpoints_within = 0;
  std::int64_t steps = 0;
  std::int64_t corv_hits = 0;
  std::int64_t core_hits = 0;
  DrawCounts draws;
  int plan_draws = 1;
  double wall_ms = 0;
  std::int64_t n_tilde = 0;
  std::vector<Label> labels;
  std::optional<Tree> tree;
};

/// Per-trial seed: Rng(cfg.seed).split(n_index).split(trial). The tree is
/// drawn from child 0 of the trial generator, the plan from child 1 and the
/// labelling from child 2.
std::uint64_t trial_seed(std::uint64_t root, std::size_t n_index, std::int64_t trial);

/// One trial. `fixed_tree` replaces the random tree when set.
TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t n_index, std::int64_t trial,
                      const Tree* fixed_tree = nullptr, bool keep_tree = false);

struct ExperimentResult {
  std::vector<TrialRecord> records;  // by n, then trial index
  nlohmann::json summary;
};

/// Trials run on a worker pool; records are ordered by trial index.
ExperimentResult run_experiment(const ExperimentConfig& cfg, bool keep_trees = false);

/// Exact two-sided Clopper-Pearson interval.
std::pair<double, double> clopper_pearson(std::int64_t successes, std::int64_t trials, double confidence = 0.95);

nlohmann::json summarize(const ExperimentConfig& cfg, const std::vector<TrialRecord>& records);

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records);
/// Wall times live apart from the records so that records and summary are
/// reproducible byte for byte.
void write_timings_csv(std::ostream& out, const std::vector<TrialRecord>& records);

/// Writes records.csv, summary.json and timings.csv into `dir`, plus
/// trees/ and labellings/ for every successful trial when trees were kept.
void write_experiment(const std::string& dir, const ExperimentConfig& cfg, const ExperimentResult& r);

/// Columns t, chosen_label, edge_label_removed, rv, re, size_A, size_C,
/// quasi1_max_dev, quasi2_max_sampled_dev. A checkpoint at step t follows
/// the row of step t and fills only t, size_A, size_C and the two quasi columns.
void write_trace_csv(std::ostream& out, const std::vector<StepRecord>& trace, const std::vector<Checkpoint>& checkpoints);

}  // namespace graceful
