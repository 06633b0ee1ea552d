// Copyright 2026 The qcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qcorr: correlation measures, classicality checks, Petz recovery and
// broadcast searches for finite-dimensional quantum states.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qcorr/commands.hpp"
#include "qcorr/corpus.hpp"
#include "qcorr/errors.hpp"

namespace {

struct Flags {
  std::uint64_t seed = 1;
  int restarts = qcorr::OptimizerConfig{}.restarts;
  int max_evals = qcorr::OptimizerConfig{}.max_evals;
  int broadcast_restarts = qcorr::OptimizerConfig::broadcast_defaults().restarts;
  int broadcast_evals = qcorr::OptimizerConfig::broadcast_defaults().max_evals;
  double tol = qcorr::OptimizerConfig{}.tol;
  double class_tol = qcorr::tol::kClassical;
  std::string units = "bits";
  int outcomes = 0;
  bool projective_only = false;
  int ancilla = 0;
  int threads = 1;
  int party = 0;
  std::string out;
  bool record_wall_time = false;
};

void add_search_flags(CLI::App* app, Flags& f) {
  app->add_option("--seed", f.seed, "Random seed")->capture_default_str();
  app->add_option("--restarts", f.restarts, "Optimizer restarts for measurement searches")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app->add_option("--max-evals", f.max_evals, "Objective evaluations per restart")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app->add_option("--tol", f.tol, "Simplex diameter tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--outcomes", f.outcomes, "POVM outcome count (0 selects d^2)")->capture_default_str();
  app->add_flag("--projective-only", f.projective_only, "Restrict to projective measurements");
  app->add_option("--threads", f.threads, "Worker threads for optimizer restarts")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

void add_broadcast_flags(CLI::App* app, Flags& f) {
  app->add_option("--ancilla", f.ancilla, "Ancilla dimension of the local maps (0 selects d)")
      ->capture_default_str();
  app->add_option("--broadcast-restarts", f.broadcast_restarts, "Restarts of the broadcast search")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app->add_option("--broadcast-evals", f.broadcast_evals, "Evaluations per broadcast restart")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

void add_output_flags(CLI::App* app, Flags& f) {
  app->add_option("--units", f.units, "Information units")
      ->capture_default_str()
      ->check(CLI::IsMember({"bits", "nats"}));
  app->add_option("--out", f.out, "Output file (default: stdout)");
  app->add_flag("--record-wall-time", f.record_wall_time, "Store the wall time in the manifest");
}

qcorr::RunOptions to_options(const Flags& f) {
  qcorr::RunOptions o;
  o.cfg.seed = f.seed;
  o.cfg.restarts = f.restarts;
  o.cfg.max_evals = f.max_evals;
  o.cfg.tol = f.tol;
  o.cfg.outcome_count = f.outcomes;
  o.cfg.projective_only = f.projective_only;
  o.cfg.threads = f.threads;
  o.broadcast_cfg.seed = f.seed;
  o.broadcast_cfg.restarts = f.broadcast_restarts;
  o.broadcast_cfg.max_evals = f.broadcast_evals;
  o.broadcast_cfg.ancilla_dim = f.ancilla;
  o.broadcast_cfg.threads = f.threads;
  o.units = qcorr::parse_units(f.units);
  o.class_tol = f.class_tol;
  o.party = f.party;
  o.record_wall_time = f.record_wall_time;
  o.cfg.validate();
  o.broadcast_cfg.validate();
  return o;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    qcorr::write_text_file(out, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical and quantum correlations of finite-dimensional states"};
  app.set_version_flag("--version", qcorr::tool_version());
  app.require_subcommand(1);
  Flags f;
  std::string state_path, channel_path, dir;
  int per_kind = 5;
  std::uint64_t corpus_seed = qcorr::kCorpusSeed;

  auto* measures = app.add_subcommand("measures", "Mutual information, I_CQ, I_CC, Delta_CC and discord");
  measures->add_option("state", state_path, "State file")->required();
  add_search_flags(measures, f);
  add_output_flags(measures, f);

  auto* classify = app.add_subcommand("classify", "Classical-classical / classical-quantum verdict");
  classify->add_option("state", state_path, "State file")->required();
  classify->add_option("--tol", f.class_tol, "Classicality tolerance")->capture_default_str();
  add_output_flags(classify, f);

  auto* broadcast = app.add_subcommand("broadcast", "Search local maps that broadcast the state");
  broadcast->add_option("state", state_path, "State file")->required();
  broadcast->add_option("--seed", f.seed, "Random seed")->capture_default_str();
  broadcast->add_option("--restarts", f.broadcast_restarts, "Optimizer restarts")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  broadcast->add_option("--max-evals", f.broadcast_evals, "Evaluations per restart")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  broadcast->add_option("--tol", f.tol, "Simplex diameter tolerance")->capture_default_str();
  broadcast->add_option("--ancilla", f.ancilla, "Ancilla dimension (0 selects d)")->capture_default_str();
  broadcast->add_option("--threads", f.threads, "Worker threads")->capture_default_str();
  add_output_flags(broadcast, f);

  auto* petz = app.add_subcommand("petz", "Petz recovery of a local channel");
  petz->add_option("state", state_path, "State file")->required();
  petz->add_option("channel", channel_path, "Channel file")->required();
  petz->add_option("--party", f.party, "Party the channel acts on")->capture_default_str();
  add_output_flags(petz, f);

  auto* suite = app.add_subcommand("suite", "Run measures and broadcast search over a corpus directory");
  suite->add_option("corpus", dir, "Directory of labeled state files")->required();
  add_search_flags(suite, f);
  add_broadcast_flags(suite, f);
  add_output_flags(suite, f);

  auto* corpus = app.add_subcommand("corpus", "Write the labeled state corpus");
  corpus->add_option("dir", dir, "Output directory")->required();
  corpus->add_option("--per-kind", per_kind, "States per kind")->capture_default_str()->check(CLI::PositiveNumber);
  corpus->add_option("--seed", corpus_seed, "Generator seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qcorr::kExitParse;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    const qcorr::RunOptions opts = to_options(f);
    if (app.got_subcommand(measures)) {
      emit(qcorr::dump_json(qcorr::cmd_measures(state_path, opts)), f.out);
    } else if (app.got_subcommand(classify)) {
      emit(qcorr::dump_json(qcorr::cmd_classify(state_path, opts)), f.out);
    } else if (app.got_subcommand(broadcast)) {
      qcorr::RunOptions b = opts;
      b.broadcast_cfg.tol = f.tol;
      emit(qcorr::dump_json(qcorr::cmd_broadcast(state_path, b)), f.out);
    } else if (app.got_subcommand(petz)) {
      emit(qcorr::dump_json(qcorr::cmd_petz(state_path, channel_path, opts)), f.out);
    } else if (app.got_subcommand(suite)) {
      const qcorr::SuiteResult result = qcorr::cmd_suite(dir, opts);
      emit(qcorr::suite_csv(result), f.out);
      if (!f.out.empty())
        qcorr::write_text_file(f.out + ".manifest.json", qcorr::dump_json(qcorr::manifest_to_json(result.manifest)));
    } else if (app.got_subcommand(corpus)) {
      emit(qcorr::dump_json(qcorr::cmd_corpus(dir, per_kind, corpus_seed)), f.out);
    }
  } catch (const qcorr::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return qcorr::kExitParse;
  } catch (const qcorr::OptimizerError& e) {
    std::cerr << "optimizer failure: " << e.what() << "\n";
    return qcorr::kExitOptimizer;
  } catch (const qcorr::Error& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return qcorr::kExitInvariant;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::fprintf(stderr, "done in %.2f s\n", seconds);
  return qcorr::kExitOk;
}
