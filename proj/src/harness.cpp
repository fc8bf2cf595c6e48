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

#include "graceful/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <boost/math/distributions/beta.hpp>

#include "graceful/intervals.hpp"
#include "graceful/prepare.hpp"
#include "graceful/verify_pack.hpp"

namespace graceful {

namespace {

Rational json_rational(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  try {
    return parse_rational(v.is_string() ? v.get<std::string>() : v.dump());
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: bad ") + key + ": " + e.what());
  }
}

const std::vector<std::string> kKeys = {"n",     "gamma",          "m",           "ell",
                                        "trials", "seed",          "retries",     "checkpoint_every",
                                        "quasi", "tree_source",    "tree_file",   "resample_plan",
                                        "pre4_resample", "eps",    "component_threshold", "threads"};

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(9) << x;
  return s.str();
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), k) == kKeys.end()) throw ConfigError("config: unknown key '" + k + "'");
  }
  ExperimentConfig c;
  try {
    if (j.contains("n")) {
      c.n = j["n"].is_array() ? j["n"].get<std::vector<std::int64_t>>() : std::vector<std::int64_t>{j["n"].get<std::int64_t>()};
    }
    if (j.contains("gamma")) c.gamma = json_rational(j, "gamma");
    c.m = j.value("m", c.m);
    c.ell = j.value("ell", c.ell);
    c.trials = j.value("trials", c.trials);
    c.seed = j.value("seed", c.seed);
    c.retries = j.value("retries", c.retries);
    c.checkpoint_every = j.value("checkpoint_every", c.checkpoint_every);
    if (j.contains("quasi")) {
      const auto& q = j["quasi"];
      c.quasi.x2 = q.value("x2", c.quasi.x2);
      c.quasi.x3 = q.value("x3", c.quasi.x3);
      c.quasi.x4 = q.value("x4", c.quasi.x4);
    }
    c.tree_source = j.value("tree_source", c.tree_source);
    c.tree_file = j.value("tree_file", c.tree_file);
    c.resample_plan = j.value("resample_plan", c.resample_plan);
    c.pre4_resample = j.value("pre4_resample", c.pre4_resample);
    if (j.contains("eps")) c.eps = json_rational(j, "eps");
    if (j.contains("component_threshold")) c.component_threshold = j["component_threshold"].get<std::int64_t>();
    c.threads = j.value("threads", c.threads);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (c.tree_source != "random" && c.tree_source != "file") {
    throw ConfigError("config: tree_source must be 'random' or 'file'");
  }
  if (c.tree_source == "file" && c.tree_file.empty()) throw ConfigError("config: tree_source 'file' needs tree_file");
  if (c.trials < 0) throw ConfigError("config: trials must be nonnegative");
  if (c.retries < 0) throw ConfigError("config: retries must be nonnegative");
  if (c.checkpoint_every < 0) throw ConfigError("config: checkpoint_every must be nonnegative");
  if (c.tree_source == "random") {
    for (std::int64_t n : c.n) {
      try {
        (void)trial_params(c, n);
      } catch (const ParamsError& e) {
        throw ConfigError(std::string("config: n=") + std::to_string(n) + ": " + e.what());
      }
    }
  }
  return c;
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j{{"n", c.n},
                   {"gamma", to_string(c.gamma)},
                   {"m", c.m},
                   {"ell", c.ell},
                   {"trials", c.trials},
                   {"seed", c.seed},
                   {"retries", c.retries},
                   {"checkpoint_every", c.checkpoint_every},
                   {"quasi", {{"x2", c.quasi.x2}, {"x3", c.quasi.x3}, {"x4", c.quasi.x4}}},
                   {"tree_source", c.tree_source},
                   {"resample_plan", c.resample_plan},
                   {"pre4_resample", c.pre4_resample}};
  if (c.tree_source == "file") j["tree_file"] = c.tree_file;
  if (c.eps) j["eps"] = to_string(*c.eps);
  if (c.component_threshold) j["component_threshold"] = *c.component_threshold;
  return j;
}

Params trial_params(const ExperimentConfig& cfg, std::int64_t n) {
  Params p = derive_practical_params(n, cfg.gamma, cfg.m, cfg.ell);
  if (cfg.eps) p.eps = *cfg.eps;
  if (cfg.component_threshold) p.component_threshold = *cfg.component_threshold;
  validate(p);
  return p;
}

std::uint64_t trial_seed(std::uint64_t root, std::size_t n_index, std::int64_t trial) {
  return Rng(root).split(n_index).split(static_cast<std::uint64_t>(trial)).seed();
}

TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t n_index, std::int64_t trial, const Tree* fixed_tree,
                      bool keep_tree) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.trial = trial;
  rec.seed = trial_seed(cfg.seed, n_index, trial);
  const Rng rng(rec.seed);

  std::optional<Tree> drawn;
  if (!fixed_tree) {
    Rng tree_rng = rng.split(0);
    drawn = random_tree(static_cast<Vertex>(cfg.n.at(n_index)), tree_rng);
  }
  const Tree& t = fixed_tree ? *fixed_tree : *drawn;
  rec.n = t.size();
  const Params p = trial_params(cfg, t.size());
  rec.n_tilde = p.n_tilde;
  const IntervalSystem sys(p);

  Rng plan_rng = rng.split(1);
  Plan plan = make_plan(t, p, sys, plan_rng);
  if (cfg.pre4_resample > 0) {
    PlanTolerances tol;
    tol.eps = p.eps;
    tol.component_threshold = admissible_threshold(t, p.eps, p.component_threshold);
    auto pre4_ok = [&](const Plan& pl) {
      for (const auto& c : check_plan(pl, t, sys, tol).checks) {
        if (c.name == "PRE4") return c.pass;
      }
      return true;
    };
    while (!pre4_ok(plan) && rec.plan_draws <= cfg.pre4_resample) {
      plan = assign_intervals(t, plan.removed, Ordering{plan.order, plan.parent}, sys, plan_rng);
      ++rec.plan_draws;
    }
  }

  RunOptions opts;
  opts.max_retries = cfg.retries;
  opts.resample_plan = cfg.resample_plan;
  opts.checkpoint_every = cfg.checkpoint_every;
  opts.quasi = cfg.quasi;
  opts.keep_trace = false;
  const RunOutcome out = run(t, plan, sys, p, rng.split(2), opts);

  rec.attempts = out.attempts;
  rec.success = out.success;
  rec.accounting_ok = out.accounting_ok;
  rec.failures = out.failures;
  if (!out.failures.empty()) {
    rec.failure_site = to_string(out.failures.back().site);
    rec.failure_t = out.failures.back().t;
  }
  for (const auto& cp : out.checkpoints) {
    rec.max_quasi1_dev = std::max(rec.max_quasi1_dev, cp.report.quasi1_max_dev);
    rec.max_quasi2_sampled_dev = std::max(rec.max_quasi2_sampled_dev, cp.report.quasi2_max_sampled_dev);
    ++rec.checkpoints;
    if (cp.report.within(cp.report.alpha)) ++rec.checkpoints_within;
  }
  rec.steps = out.steps;
  rec.corv_hits = out.corv_hits;
  rec.core_hits = out.core_hits;
  rec.draws = out.draws;
  if (out.success) {
    rec.labels = out.labels;
    rec.verified = verify_graceful(t, out.labels, p.n_tilde).pass;
  }
  if (keep_tree) rec.tree = t;
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, bool keep_trees) {
  std::optional<Tree> file_tree;
  std::vector<std::int64_t> sizes = cfg.n;
  if (cfg.tree_source == "file") {
    file_tree = read_tree_file(cfg.tree_file);
    sizes = {file_tree->size()};
    (void)trial_params(cfg, file_tree->size());
  }
  const std::size_t per_n = static_cast<std::size_t>(cfg.trials);
  const std::size_t total = sizes.size() * per_n;
  ExperimentResult r;
  r.records.resize(total);
  ExperimentConfig run_cfg = cfg;
  run_cfg.n = sizes;

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      try {
        r.records[k] = run_trial(run_cfg, k / per_n, static_cast<std::int64_t>(k % per_n),
                                 file_tree ? &*file_tree : nullptr, keep_trees);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned w = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < std::min<std::size_t>(w, std::max<std::size_t>(total, 1)); ++i) pool.emplace_back(work);
    work();
  }
  if (error) std::rethrow_exception(error);
  r.summary = summarize(run_cfg, r.records);
  return r;
}

std::pair<double, double> clopper_pearson(std::int64_t successes, std::int64_t trials, double confidence) {
  const double alpha = 1 - confidence;
  const auto k = static_cast<double>(successes);
  const auto n = static_cast<double>(trials);
  const double lo = successes == 0 ? 0.0 : boost::math::ibeta_inv(k, n - k + 1, alpha / 2);
  const double hi = successes == trials ? 1.0 : boost::math::ibeta_inv(k + 1, n - k, 1 - alpha / 2);
  return {lo, hi};
}

nlohmann::json summarize(const ExperimentConfig& cfg, const std::vector<TrialRecord>& records) {
  nlohmann::json per_n = nlohmann::json::array();
  std::vector<std::int64_t> sizes = cfg.n;
  if (sizes.empty() && !records.empty()) sizes = {records.front().n};
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    std::int64_t trials = 0, successes = 0, first = 0, verified = 0, attempts = 0, quasi_ok = 0, quasi_trials = 0;
    bool accounting = true;
    DrawCounts draws;
    std::map<std::string, std::int64_t> sites;
    std::vector<std::int64_t> time_bins(10, 0);
    for (const auto& r : records) {
      if (r.n != sizes[i]) continue;
      ++trials;
      attempts += r.attempts;
      successes += r.success;
      first += r.success && r.attempts == 1;
      verified += r.verified;
      accounting = accounting && r.accounting_ok;
      draws += r.draws;
      if (r.success && r.checkpoints > 0) {
        ++quasi_trials;
        quasi_ok += r.checkpoints_within == r.checkpoints;
      }
      for (const auto& f : r.failures) {
        ++sites[to_string(f.site)];
        const auto bin = std::min<std::int64_t>(9, (f.t - 1) * 10 / std::max<std::int64_t>(r.n, 1));
        ++time_bins[static_cast<std::size_t>(bin)];
      }
    }
    nlohmann::json s{{"n", sizes[i]},
                     {"trials", trials},
                     {"successes", successes},
                     {"first_attempt_successes", first},
                     {"verified", verified},
                     {"accounting_ok", accounting},
                     {"rate_defined", trials > 0},
                     {"correction_draws",
                      {{"corv_draws", draws.corv_draws},
                       {"corv_nonstar", draws.corv_nonstar},
                       {"core_draws", draws.core_draws},
                       {"core_nonstar", draws.core_nonstar}}}};
    if (trials > 0) {
      const auto ci = clopper_pearson(successes, trials);
      const auto ci1 = clopper_pearson(first, trials);
      s["success_rate"] = static_cast<double>(successes) / static_cast<double>(trials);
      s["success_ci95"] = {ci.first, ci.second};
      s["first_attempt_rate"] = static_cast<double>(first) / static_cast<double>(trials);
      s["first_attempt_ci95"] = {ci1.first, ci1.second};
      s["mean_attempts"] = static_cast<double>(attempts) / static_cast<double>(trials);
    } else {
      s["success_rate"] = nullptr;
      s["success_ci95"] = nullptr;
      s["first_attempt_rate"] = nullptr;
      s["first_attempt_ci95"] = nullptr;
      s["mean_attempts"] = nullptr;
    }
    s["failure_sites"] = sites;
    s["failure_time_deciles"] = time_bins;
    s["quasi_trials"] = quasi_trials;
    s["quasi_trials_within"] = quasi_ok;
    per_n.push_back(s);
  }
  return nlohmann::json{{"config", to_json(cfg)}, {"results", per_n}};
}

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "n,trial,seed,attempts,success,verified,accounting_ok,failure_site,failure_t,max_quasi1_dev,"
         "max_quasi2_sampled_dev,checkpoints,checkpoints_within,steps,corv_hits,core_hits,corv_draws,corv_nonstar,core_draws,core_nonstar,plan_draws\n";
  for (const auto& r : records) {
    out << r.n << ',' << r.trial << ',' << r.seed << ',' << r.attempts << ',' << r.success << ',' << r.verified << ','
        << r.accounting_ok << ',' << r.failure_site << ',' << r.failure_t << ',' << fmt(r.max_quasi1_dev) << ','
        << fmt(r.max_quasi2_sampled_dev) << ',' << r.checkpoints << ',' << r.checkpoints_within << ',' << r.steps
        << ',' << r.corv_hits << ',' << r.core_hits << ',' << r.draws.corv_draws << ',' << r.draws.corv_nonstar << ','
        << r.draws.core_draws << ',' << r.draws.core_nonstar << ',' << r.plan_draws << '\n';
  }
}

void write_timings_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "n,trial,wall_ms\n";
  for (const auto& r : records) out << r.n << ',' << r.trial << ',' << fmt(r.wall_ms) << '\n';
}

void write_experiment(const std::string& dir, const ExperimentConfig& cfg, const ExperimentResult& r) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto open = [&](const fs::path& p) {
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    return f;
  };
  {
    auto f = open(fs::path(dir) / "records.csv");
    write_records_csv(f, r.records);
  }
  {
    auto f = open(fs::path(dir) / "summary.json");
    f << r.summary.dump(2) << "\n";
  }
  {
    auto f = open(fs::path(dir) / "timings.csv");
    write_timings_csv(f, r.records);
  }
  {
    auto f = open(fs::path(dir) / "config.json");
    f << to_json(cfg).dump(2) << "\n";
  }
  for (const auto& rec : r.records) {
    if (!rec.success || !rec.tree) continue;
    const std::string stem = "n" + std::to_string(rec.n) + "_trial" + std::to_string(rec.trial);
    fs::create_directories(fs::path(dir) / "trees");
    fs::create_directories(fs::path(dir) / "labellings");
    {
      auto f = open(fs::path(dir) / "trees" / (stem + ".txt"));
      write_tree(f, *rec.tree);
    }
    auto f = open(fs::path(dir) / "labellings" / (stem + ".json"));
    f << labelling_json(rec.n_tilde, rec.labels).dump() << "\n";
  }
}

void write_trace_csv(std::ostream& out, const std::vector<StepRecord>& trace,
                     const std::vector<Checkpoint>& checkpoints) {
  out << "t,chosen_label,edge_label_removed,rv,re,size_A,size_C,quasi1_max_dev,quasi2_max_sampled_dev\n";
  std::size_t c = 0;
  auto flush_checkpoints = [&](std::int64_t upto) {
    for (; c < checkpoints.size() && checkpoints[c].t <= upto; ++c) {
      const auto& q = checkpoints[c].report;
      out << q.t << ",,,,," << q.size_a << ',' << q.size_c << ',' << fmt(q.quasi1_max_dev) << ','
          << fmt(q.quasi2_max_sampled_dev) << '\n';
    }
  };
  for (const auto& s : trace) {
    flush_checkpoints(s.t - 1);
    out << s.t << ',' << s.chosen << ',' << s.edge_label << ',' << s.rv << ',' << s.re << ',' << s.size_a << ','
        << s.size_c << ",,\n";
  }
  flush_checkpoints(std::numeric_limits<std::int64_t>::max());
}

}  // namespace graceful
