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

// Command-line entry point. Exit codes: 0 success, 1 error (JSON on
// stderr), 2 labelling failed after all retries, 3 negative verdict
// (verification failed or no exact labelling exists).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "graceful/concentration.hpp"
#include "graceful/exact_solver.hpp"
#include "graceful/harness.hpp"
#include "graceful/intervals.hpp"
#include "graceful/labeller.hpp"
#include "graceful/params.hpp"
#include "graceful/prepare.hpp"
#include "graceful/tree.hpp"
#include "graceful/verify_pack.hpp"

using namespace graceful;
using nlohmann::json;

namespace {

constexpr int kError = 1;
constexpr int kLabelFailed = 2;
constexpr int kNegative = 3;

struct ExitWith {
  int code;
};

[[noreturn]] void fail(const std::string& kind, const std::string& message, json extra = json::object()) {
  extra["error"] = kind;
  extra["message"] = message;
  std::cerr << extra.dump() << std::endl;
  throw ExitWith{kError};
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) fail("io", "cannot write " + path);
  return f;
}

json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail("io", "cannot read " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    fail("parse", path + ": " + e.what());
  }
}

// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    auto f = open_out(path);
    f << text;
  }
}

int cmd_generate(Vertex n, std::uint64_t seed, const std::string& kind, const std::string& out) {
  Rng rng(seed);
  if (n < 1) fail("argument", "n must be positive");
  const Tree t = kind == "path" ? path_tree(n) : kind == "star" ? star_tree(n) : random_tree(n, rng);
  std::ostringstream s;
  write_tree(s, t);
  emit(out, s.str());
  return 0;
}

struct LabelArgs {
  std::string tree;
  std::string gamma = "1/5";
  std::int64_t m = 32;
  std::int64_t ell = 512;
  std::uint64_t seed = 0;
  int retries = 0;
  std::string trace;
  std::string out;
  std::string plan_out;
  std::int64_t checkpoint_every = 0;
  bool resample_plan = false;
  std::string eps;
  std::int64_t threshold = 0;
};

int cmd_label(const LabelArgs& a) {
  const Tree t = read_tree_file(a.tree);
  Params p = derive_practical_params(t.size(), parse_rational(a.gamma), a.m, a.ell);
  if (!a.eps.empty()) p.eps = parse_rational(a.eps);
  if (a.threshold > 0) p.component_threshold = a.threshold;
  validate(p);
  const IntervalSystem sys(p);
  const Rng rng(a.seed);
  Rng plan_rng = rng.split(1);
  const Plan plan = make_plan(t, p, sys, plan_rng);
  if (!a.plan_out.empty()) emit(a.plan_out, to_json(plan, sys).dump() + "\n");

  RunOptions opts;
  opts.max_retries = a.retries;
  opts.resample_plan = a.resample_plan;
  opts.checkpoint_every = a.checkpoint_every;
  opts.keep_trace = !a.trace.empty();
  const RunOutcome r = run(t, plan, sys, p, rng.split(2), opts);
  if (!a.trace.empty()) {
    auto f = open_out(a.trace);
    write_trace_csv(f, r.trace, r.checkpoints);
  }
  if (!r.success) {
    std::map<std::string, int> hist;
    json failures = json::array();
    for (const auto& f : r.failures) {
      ++hist[to_string(f.site)];
      failures.push_back({{"attempt", f.attempt}, {"t", f.t}, {"site", to_string(f.site)}});
    }
    std::cerr << json{{"error", "labelling-failed"},
                      {"attempts", r.attempts},
                      {"failure_histogram", hist},
                      {"failures", failures}}
                     .dump()
              << std::endl;
    return kLabelFailed;
  }
  const VerifyReport v = verify_graceful(t, r.labels, p.n_tilde);
  if (!v.pass) fail("internal", "produced labelling does not verify", v.to_json());
  emit(a.out, labelling_json(p.n_tilde, r.labels).dump() + "\n");
  return 0;
}

int cmd_verify(const std::string& tree_path, const std::string& labels_path, std::int64_t m, std::int64_t q,
               bool bipartite) {
  const Tree t = read_tree_file(tree_path);
  const LabellingFile lf = parse_labelling(read_json(labels_path));
  if (lf.n != t.size()) fail("argument", "labelling has " + std::to_string(lf.n) + " labels for a tree on " +
                                             std::to_string(t.size()) + " vertices");
  if (m <= 0) m = lf.n_tilde > 0 ? lf.n_tilde : t.size();
  json out{{"m", m}};
  bool pass = true;
  const VerifyReport g = verify_graceful(t, lf.labels, m);
  out["graceful"] = g.to_json();
  pass = g.pass;
  if (bipartite) {
    // Either colour class may be the low one.
    auto classes = t.two_coloring();
    VerifyReport b = verify_bipartite_graceful(t, lf.labels, m, classes);
    int orientation = 0;
    if (!b.pass && g.pass) {
      for (std::size_t v = 1; v < classes.size(); ++v) classes[v] ^= 1;
      VerifyReport flipped = verify_bipartite_graceful(t, lf.labels, m, classes);
      if (flipped.pass) {
        b = flipped;
        orientation = 1;
      }
    }
    out["bipartite"] = b.to_json();
    if (b.pass) out["bipartite"]["low_class_contains_vertex_1"] = orientation == 0;
    pass = pass && b.pass;
  }
  if (q > 0) {
    const VerifyReport h = verify_harmonious(t, lf.labels, q);
    out["harmonious"] = h.to_json();
    out["harmonious"]["q"] = q;
    pass = pass && h.pass;
  }
  out["pass"] = pass;
  std::cout << out.dump() << std::endl;
  return pass ? 0 : kNegative;
}

int cmd_exact(const std::string& tree_path, std::int64_t m, bool count, std::int64_t cap, unsigned threads,
              const std::string& out) {
  const Tree t = read_tree_file(tree_path);
  if (m <= 0) m = t.size();
  ExactOptions opts;
  opts.cap = cap;
  opts.threads = threads;
  if (count) {
    emit(out, json{{"n", t.size()}, {"m", m}, {"count", exact_count(t, m, opts)}}.dump() + "\n");
    return 0;
  }
  const auto labels = exact_graceful(t, m, opts);
  if (!labels) {
    std::cout << json{{"n", t.size()}, {"m", m}, {"found", false}}.dump() << std::endl;
    return kNegative;
  }
  emit(out, labelling_json(m, *labels).dump() + "\n");
  return 0;
}

int cmd_pack(const std::string& tree_path, const std::string& labels_path, std::int64_t m, const std::string& out) {
  const Tree t = read_tree_file(tree_path);
  const LabellingFile lf = parse_labelling(read_json(labels_path));
  if (m <= 0) m = lf.n_tilde > 0 ? lf.n_tilde : t.size();
  const VerifyReport g = verify_graceful(t, lf.labels, m);
  if (!g.pass) fail("not-graceful", "labelling is not " + std::to_string(m) + "-graceful", g.to_json());
  const Packing p = build_cyclic_packing(t, lf.labels, m);
  std::ostringstream s;
  write_packing(s, p);
  emit(out, s.str());
  const PackingReport r = verify_packing(p);
  json j = r.to_json();
  j["copies"] = p.copies.size();
  j["host_order"] = p.host_order;
  (out.empty() ? std::cerr : std::cout) << j.dump() << std::endl;
  return r.pass ? 0 : kNegative;
}

int cmd_experiment(const std::string& config_path, const std::string& out_dir, unsigned threads, bool keep) {
  ExperimentConfig cfg = config_from_json(read_json(config_path));
  if (threads) cfg.threads = threads;
  const ExperimentResult r = run_experiment(cfg, keep);
  write_experiment(out_dir, cfg, r);
  std::cout << r.summary.dump(2) << std::endl;
  return 0;
}

int cmd_concentration(std::int64_t trials, std::uint64_t seed, const std::string& out, unsigned threads) {
  const auto rows = run_concentration_suite(trials, seed, threads);
  std::ostringstream s;
  write_tail_csv(s, rows);
  emit(out, s.str());
  bool all = true;
  for (const auto& r : rows) all = all && r.pass;
  return all ? 0 : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized approximate graceful labelling of trees"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "Write a tree file");
  Vertex gen_n = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_kind = "random", gen_out;
  gen->add_option("--n", gen_n, "Number of vertices")->required();
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_option("--kind", gen_kind, "random, path or star")->check(CLI::IsMember({"random", "path", "star"}));
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  auto* lab = app.add_subcommand("label", "Run the randomized labelling");
  LabelArgs la;
  lab->add_option("--tree", la.tree, "Tree file")->required();
  lab->add_option("--gamma", la.gamma, "Slack gamma, rational or decimal")->required();
  lab->add_option("--m", la.m, "Interval size m")->required();
  lab->add_option("--ell", la.ell, "J interval size ell")->required();
  lab->add_option("--seed", la.seed, "Seed")->required();
  lab->add_option("--retries", la.retries, "Extra attempts after a failure");
  lab->add_option("--trace", la.trace, "Trace CSV of the last attempt");
  lab->add_option("--out", la.out, "Labelling JSON (default stdout)");
  lab->add_option("--plan-out", la.plan_out, "Plan JSON");
  lab->add_option("--checkpoint-every", la.checkpoint_every, "Quasirandomness checkpoint interval");
  lab->add_flag("--resample-plan", la.resample_plan, "Fresh plan on every retry");
  lab->add_option("--eps", la.eps, "Cut budget eps");
  lab->add_option("--threshold", la.threshold, "Component order floor");

  auto* ver = app.add_subcommand("verify", "Verify a labelling");
  std::string ver_tree, ver_labels;
  std::int64_t ver_m = 0, ver_q = 0;
  bool ver_bip = false;
  ver->add_option("--tree", ver_tree, "Tree file")->required();
  ver->add_option("--labels", ver_labels, "Labelling JSON")->required();
  ver->add_option("--m", ver_m, "Codomain bound (default n_tilde from the file, else n)");
  ver->add_option("--harmonious-q", ver_q, "Also check harmonious modulo q");
  ver->add_flag("--bipartite", ver_bip, "Also check the bipartite condition");

  auto* ex = app.add_subcommand("exact", "Exhaustive search on small trees");
  std::string ex_tree, ex_out;
  std::int64_t ex_m = 0, ex_cap = 24;
  unsigned ex_threads = 0;
  bool ex_count = false;
  ex->add_option("--tree", ex_tree, "Tree file")->required();
  ex->add_option("--m", ex_m, "Codomain bound (default n)");
  ex->add_flag("--count", ex_count, "Count labellings instead of finding one");
  ex->add_option("--cap", ex_cap, "Vertex cap at m = n");
  ex->add_option("--threads", ex_threads, "Worker threads (0 = all cores)");
  ex->add_option("--out", ex_out, "Output file (default stdout)");

  auto* pk = app.add_subcommand("pack", "Build and verify the cyclic packing");
  std::string pk_tree, pk_labels, pk_out;
  std::int64_t pk_m = 0;
  pk->add_option("--tree", pk_tree, "Tree file")->required();
  pk->add_option("--labels", pk_labels, "Labelling JSON")->required();
  pk->add_option("--m", pk_m, "Codomain bound (default n_tilde from the file, else n)");
  pk->add_option("--out", pk_out, "Packing text (default stdout)");

  auto* exp = app.add_subcommand("experiment", "Run a seeded Monte-Carlo campaign");
  std::string exp_config, exp_dir = "experiment_out";
  unsigned exp_threads = 0;
  bool exp_keep = false;
  exp->add_option("--config", exp_config, "Config JSON")->required();
  exp->add_option("--out-dir", exp_dir, "Output directory");
  exp->add_option("--threads", exp_threads, "Worker threads (0 = config or all cores)");
  exp->add_flag("--keep-labellings", exp_keep, "Write tree and labelling files for successful trials");

  auto* conc = app.add_subcommand("concentration", "Empirical tail-bound suite");
  std::int64_t conc_trials = 100000;
  std::uint64_t conc_seed = 1;
  std::string conc_out;
  unsigned conc_threads = 0;
  conc->add_option("--trials", conc_trials, "Trials per scenario");
  conc->add_option("--seed", conc_seed, "Seed");
  conc->add_option("--out", conc_out, "CSV output (default stdout)");
  conc->add_option("--threads", conc_threads, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << std::endl;
    return kError;
  }

  try {
    if (*gen) return cmd_generate(gen_n, gen_seed, gen_kind, gen_out);
    if (*lab) return cmd_label(la);
    if (*ver) return cmd_verify(ver_tree, ver_labels, ver_m, ver_q, ver_bip);
    if (*ex) return cmd_exact(ex_tree, ex_m, ex_count, ex_cap, ex_threads, ex_out);
    if (*pk) return cmd_pack(pk_tree, pk_labels, pk_m, pk_out);
    if (*exp) return cmd_experiment(exp_config, exp_dir, exp_threads, exp_keep);
    if (*conc) return cmd_concentration(conc_trials, conc_seed, conc_out, conc_threads);
  } catch (const ExitWith& e) {
    return e.code;
  } catch (const ParamsError& e) {
    std::cerr << json{{"error", "params"}, {"message", e.what()}}.dump() << std::endl;
  } catch (const ConfigError& e) {
    std::cerr << json{{"error", "config"}, {"message", e.what()}}.dump() << std::endl;
  } catch (const TreeError& e) {
    std::cerr << json{{"error", "tree"}, {"message", e.what()}}.dump() << std::endl;
  } catch (const CapExceeded& e) {
    std::cerr << json{{"error", "cap-exceeded"}, {"message", e.what()}}.dump() << std::endl;
  } catch (const CutError& e) {
    std::cerr << json{{"error", "cut"}, {"message", e.what()}}.dump() << std::endl;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "runtime"}, {"message", e.what()}}.dump() << std::endl;
  }
  return kError;
}
