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

// Acceptance runner: one PASS/FAIL line per criterion. Each criterion also
// has a wall-clock limit that counts toward its verdict.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "qcorr/broadcast.hpp"
#include "qcorr/classify.hpp"
#include "qcorr/commands.hpp"
#include "qcorr/corpus.hpp"
#include "qcorr/correlations.hpp"
#include "qcorr/io.hpp"

using namespace qcorr;
namespace fs = std::filesystem;

namespace {

class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      ++failures_;
      if (failures_ <= 5) messages_.push_back(what);
    }
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream os;
    os.precision(12);
    os << what << ": got " << got << ", want " << want << " +- " << tol;
    expect(std::abs(got - want) <= tol, os.str());
  }
  void at_most(double got, double bound, const std::string& what) {
    std::ostringstream os;
    os.precision(12);
    os << what << ": " << got << " > " << bound;
    expect(got <= bound, os.str());
  }
  void at_least(double got, double bound, const std::string& what) {
    std::ostringstream os;
    os.precision(12);
    os << what << ": " << got << " < " << bound;
    expect(got >= bound, os.str());
  }
  int checks() const { return checks_; }
  int failures() const { return failures_; }
  const std::vector<std::string>& messages() const { return messages_; }

 private:
  int checks_ = 0;
  int failures_ = 0;
  std::vector<std::string> messages_;
};

struct Criterion {
  int number;
  std::string title;
  double limit_s;
  std::function<void(Tally&)> body;
};

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// 1. Exact values.
void exact_values(Tally& t) {
  t.near(mutual_information(fixtures::bell_phi_plus()), 2.0, 1e-9, "I(Phi+)");
  const double p[] = {0.5, 0, 0, 0.5};
  t.near(mutual_information(DensityMatrix::diagonal(SubsystemLayout({2, 2}), p)), 1.0, 1e-9,
         "I(sum 1/2 |ii><ii|)");
  t.near(multipartite_mutual_information(fixtures::ghz3()), 3.0, 1e-9, "multipartite I(GHZ)");
}

// 2. CQ states: I equals the Holevo quantity of the conditional ensemble and
// the classical-basis measurement attains it.
void cq_suite(Tally& t) {
  Rng rng = make_rng(2001);
  OptimizerConfig cfg;
  cfg.restarts = 4;
  cfg.max_evals = 4000;
  for (int k = 0; k < 50; ++k) {
    const int da = 2 + k % 2;
    const int db = 2 + (k / 2) % 2;
    const bool commuting = k % 5 < 2;
    const auto s = fixtures::random_cq(da, db, rng, commuting);
    std::vector<double> probs(s.probs.data(), s.probs.data() + s.probs.size());
    const double chi = holevo_chi(Ensemble(ProbVector(probs), s.conditionals));
    const double info = mutual_information(s.state);
    const std::string tag = "cq state " + std::to_string(k);
    t.near(info, chi, 1e-9, tag + " |I - chi|");
    t.near(optimize_icq(s.state, cfg).value, info, 1e-9, tag + " I_CQ");
    if (commuting) t.near(optimize_icc(s.state, cfg).value, info, 1e-6, tag + " I_CC (commuting)");
  }
}

// 3. Labeled corpus: Delta_CC vanishes exactly on CC states, is bounded away
// from zero on pure entangled states, and the classifier matches the labels.
void corpus_suite(Tally& t) {
  const auto corpus = generate_corpus(10);
  t.expect(corpus.size() == 40, "corpus size");
  const OptimizerConfig cfg;
  for (const auto& e : corpus) {
    const auto report = correlation_report(e.state, cfg);
    const bool is_cc_label = e.kind == CorpusKind::CC;
    t.expect((report.delta_cc_upper <= 1e-6) == is_cc_label,
             e.id + " Delta_CC <= 1e-6 iff CC (Delta_CC = " + std::to_string(report.delta_cc_upper) + ")");
    if (e.pure && !is_cc_label) {
      const double ceiling_gap = mutual_information(e.state) -
                                 std::min(von_neumann_entropy(partial_trace(e.state, {0})),
                                          von_neumann_entropy(partial_trace(e.state, {1})));
      t.at_least(ceiling_gap, 1e-3, e.id + " analytic gap");
      t.at_least(report.delta_cc_upper, 1e-3, e.id + " Delta_CC");
    }
    const auto verdict = is_cc(e.state).kind;
    switch (e.kind) {
      case CorpusKind::CC:
        t.expect(verdict == Classicality::CC, e.id + " classified " + to_string(verdict));
        break;
      case CorpusKind::CQ:
        t.expect(verdict == Classicality::CQ, e.id + " classified " + to_string(verdict));
        break;
      case CorpusKind::Separable:
        t.expect(verdict == Classicality::Neither && ppt_label(e.state) == PptLabel::Ppt,
                 e.id + " classified " + to_string(verdict));
        break;
      case CorpusKind::Entangled:
        t.expect(verdict == Classicality::Neither && ppt_label(e.state) == PptLabel::Npt,
                 e.id + " classified " + to_string(verdict));
        break;
    }
  }
}

// 4. Petz recovery.
void petz_suite(Tally& t) {
  Rng rng = make_rng(4001);
  for (int k = 0; k < 50; ++k) {
    const std::string tag = "pair " + std::to_string(k);
    const int da = 2 + k % 2;
    const int db = 2 + (k / 2) % 2;
    DensityMatrix rho = random_density(SubsystemLayout({da, db}), rng);
    KrausChannel ch = KrausChannel::identity(da);
    if (k % 2 == 0) {
      // Isometric embedding into a larger space.
      ch = KrausChannel::isometry(haar_unitary(da + 2, rng).leftCols(da));
    } else {
      // Classical-basis readout into orthogonal blocks of a CQ state.
      const auto s = fixtures::random_cq(da, db, rng);
      rho = s.state;
      ch = fixtures::measure_prepare_orthogonal(s.basis_a, 2, rng);
    }
    const auto out = apply_local(ch, 0, rho);
    t.near(mutual_information(out), mutual_information(rho), 1e-9, tag + " information preserved");
    const PetzRecovery r = petz_recovery(ch, partial_trace(rho, {0}));
    const Matrix back = apply_local(r.kraus_map(), 0, out.layout(), out.matrix());
    t.at_most(oracle::trace_distance(back, rho.matrix()), 1e-8, tag + " recovery trace distance");
  }
  for (int k = 0; k < 20; ++k) {
    const std::string tag = "product reference " + std::to_string(k);
    const KrausChannel a = random_channel(2, 2 + k % 2, 2, rng);
    const KrausChannel b = random_channel(2, 2, 2, rng);
    const auto sa = random_density(SubsystemLayout({2}), rng);
    const auto sb = random_density(SubsystemLayout({2}), rng);
    const PetzRecovery joint = petz_recovery(tensor_channels(a, b), tensor(sa, sb));
    const KrausMap split = tensor_channels(petz_recovery(a, sa).kraus_map(), petz_recovery(b, sb).kraus_map());
    const int d = joint.d_in();
    double worst = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const Matrix e = matrix_unit(d, i, j);
        worst = std::max(worst, (joint.apply(e) - split.apply(e)).cwiseAbs().maxCoeff());
      }
    t.at_most(worst, 1e-9, tag + " factorization");
  }
  for (int d : {2, 3, 4}) {
    const auto sigma = random_density(SubsystemLayout({d}), rng);
    const PetzRecovery r = petz_recovery(KrausChannel::fully_depolarizing(d), sigma);
    const auto x = random_density(SubsystemLayout({d}), rng);
    t.at_most((r.apply(x.matrix()) - sigma.matrix()).cwiseAbs().maxCoeff(), 1e-10,
              "depolarizing reference d=" + std::to_string(d));
  }
}

// 5. Local channels never increase I; report chains are ordered.
void monotonicity_suite(Tally& t) {
  Rng rng = make_rng(5001);
  OptimizerConfig cfg;
  cfg.restarts = 2;
  cfg.max_evals = 1500;
  int violations = 0;
  for (int k = 0; k < 200; ++k) {
    const int da = 2 + k % 2;
    const int db = 2 + (k / 3) % 2;
    const auto rho = random_density(SubsystemLayout({da, db}), 1 + k % (da * db), rng);
    const int position = k % 2;
    const int d = rho.layout().dim(position);
    const KrausChannel ch = random_channel(d, 2 + (k / 5) % 2, 1 + (k / 7) % 3 + (d > 2 ? 1 : 0), rng);
    const auto out = apply_local(ch, position, rho);
    const std::string tag = "pair " + std::to_string(k);
    t.at_most(mutual_information(out) - mutual_information(rho), 1e-9, tag + " I increase");
    for (const auto* state : {&rho, &out}) {
      const auto r = correlation_report(*state, cfg);
      const bool ordered = r.mutual_information >= r.i_cq_lower && r.i_cq_lower >= r.i_cc_lower && r.i_cc_lower >= 0.0;
      violations += !ordered;
      t.expect(ordered, tag + " chain order");
    }
  }
  t.expect(violations == 0, "chain violations");
}

// 6. Broadcasting.
void broadcast_suite(Tally& t) {
  Rng rng = make_rng(6001);
  for (int k = 0; k < 10; ++k) {
    const auto rho = fixtures::random_cc(2, 2 + k % 2, rng);
    const auto v = is_cc(rho);
    const auto sigma = apply_broadcast(cc_broadcast_channels(*v.basis_a, *v.basis_b), rho);
    const auto res = verify_broadcast(sigma, rho);
    const std::string tag = "cc state " + std::to_string(k);
    t.at_most(std::max(res.residual_ab, res.residual_a1b1), 1e-12, tag + " cloning residual");
    t.at_most(std::abs(broadcast_mutual_information(sigma) - mutual_information(rho)), 1e-9, tag + " deficit");
  }
  for (int k = 0; k < 10; ++k) {
    const auto rho = k % 2 ? random_density(SubsystemLayout({2, 2}), rng) : fixtures::random_cq(2, 3, rng).state;
    const auto check = local_broadcast_check(two_copy_broadcast(rho), rho);
    const std::string tag = "two-copy " + std::to_string(k);
    t.near(check.mi_deficit, mutual_information(rho), 1e-9, tag + " deficit");
    t.expect(!check.equal_information, tag + " verdict");
  }
  const auto zero = oracle::ket({1, 0});
  const auto plus = oracle::ket({1, 1});
  const DensityMatrix separable(SubsystemLayout({2, 2}),
                                0.5 * oracle::kron(oracle::projector(zero), oracle::projector(zero)) +
                                    0.5 * oracle::kron(oracle::projector(plus), oracle::projector(plus)));
  const OptimizerConfig cfg = OptimizerConfig::broadcast_defaults();
  for (const auto& [name, rho] : {std::pair<std::string, DensityMatrix>{"Phi+", fixtures::bell_phi_plus()},
                                  std::pair<std::string, DensityMatrix>{"separable", separable}}) {
    const auto c = broadcast_search(rho, cfg);
    t.at_least(std::max(c.residual_ab, c.residual_a1b1), 1e-6, name + " best marginal residual");
    t.expect(!c.valid, name + " flagged as broadcast");
  }
}

// 7. Same seed, same bytes.
void determinism_suite(Tally& t, const fs::path& workdir) {
  RunOptions opts;
  opts.cfg.restarts = 3;
  opts.broadcast_cfg.restarts = 2;
  opts.broadcast_cfg.max_evals = 400;
  std::vector<std::string> first;
  for (int run = 0; run < 2; ++run) {
    // Same paths both times: manifests echo their input paths.
    const fs::path dir = workdir / "rerun";
    fs::remove_all(dir);
    fs::create_directories(dir);
    cmd_corpus(dir / "corpus", 1, kCorpusSeed);
    Rng channel_rng = make_rng(7);
    write_channel_file(dir / "channel.json",
                       fixtures::measure_prepare_orthogonal(Matrix::Identity(2, 2), 2, channel_rng));
    const fs::path state = dir / "corpus" / "cq-00.json";
    write_text_file(dir / "measures.json", dump_json(cmd_measures(state, opts)));
    write_text_file(dir / "classify.json", dump_json(cmd_classify(state, opts)));
    write_text_file(dir / "broadcast.json", dump_json(cmd_broadcast(state, opts)));
    write_text_file(dir / "petz.json", dump_json(cmd_petz(state, dir / "channel.json", opts)));
    const auto suite = cmd_suite(dir / "corpus", opts);
    write_text_file(dir / "suite.csv", suite_csv(suite));
    write_text_file(dir / "suite.csv.manifest.json", dump_json(manifest_to_json(suite.manifest)));
    std::vector<std::string> files;
    for (const auto* name : {"measures.json", "classify.json", "broadcast.json", "petz.json", "suite.csv",
                             "suite.csv.manifest.json"})
      files.push_back(name);
    for (const auto& f : fs::directory_iterator(dir / "corpus")) files.push_back("corpus/" + f.path().filename().string());
    std::sort(files.begin(), files.end());
    for (size_t i = 0; i < files.size(); ++i) {
      const std::string bytes = read_bytes(dir / files[i]);
      if (run == 0) {
        first.push_back(bytes);
      } else {
        t.expect(i < first.size() && bytes == first[i], files[i] + " differs between runs");
      }
    }
  }
  // Thread count does not change optimizer output.
  const auto rho = generate_corpus(1).at(2).state;
  OptimizerConfig a;
  a.restarts = 4;
  OptimizerConfig b = a;
  b.threads = 3;
  const auto ra = optimize_icc(rho, a);
  const auto rb = optimize_icc(rho, b);
  t.expect(ra.search.restart_values == rb.search.restart_values && ra.value == rb.value,
           "thread count changes I_CC search");
}

}  // namespace

int main(int argc, char** argv) {
  fs::path workdir = fs::temp_directory_path() / "qcorr_acceptance";
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--workdir" && i + 1 < argc) {
      workdir = argv[++i];
    } else if (arg == "--only" && i + 1 < argc) {
      only.push_back(std::stoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: acceptance [--workdir DIR] [--only N]...\n");
      return 2;
    }
  }
  fs::create_directories(workdir);

  const std::vector<Criterion> criteria = {
      {1, "exact mutual information values", 1.0, exact_values},
      {2, "CQ states: I = chi, I_CQ = I, commuting I_CC = I", 120.0, cq_suite},
      {3, "labeled corpus: Delta_CC and classifier agreement", 600.0, corpus_suite},
      {4, "Petz recovery, factorization, depolarizing reference", 60.0, petz_suite},
      {5, "local channels never raise I; ordered report chains", 1e9, monotonicity_suite},
      {6, "cloning broadcast, two-copy deficit, no broadcast of non-CC states", 900.0, broadcast_suite},
      {7, "byte-identical reruns", 1e9, [&](Tally& t) { determinism_suite(t, workdir); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.number) == only.end()) continue;
    Tally t;
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.body(t);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.limit_s;
    const bool pass = error.empty() && t.failures() == 0 && in_time;
    failed += !pass;
    std::printf("criterion %d: %s  %s  (%d checks, %d failed, %.2f s", c.number, pass ? "PASS" : "FAIL",
                c.title.c_str(), t.checks(), t.failures(), seconds);
    if (c.limit_s < 1e9) std::printf(" of %.0f s allowed", c.limit_s);
    std::printf(")\n");
    for (const auto& m : t.messages()) std::printf("    %s\n", m.c_str());
    if (!error.empty()) std::printf("    exception: %s\n", error.c_str());
    if (!in_time) std::printf("    over the time limit\n");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
