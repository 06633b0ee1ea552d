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

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcorr/channel.hpp"
#include "qcorr/classify.hpp"
#include "qcorr/optimize.hpp"
#include "qcorr/state.hpp"

namespace qcorr {

// Weighted family of states {p_i, sigma_i} of a common dimension.
class Ensemble {
 public:
  Ensemble(ProbVector probs, std::vector<DensityMatrix> states);
  const ProbVector& probs() const { return probs_; }
  const std::vector<DensityMatrix>& states() const { return states_; }
  size_t size() const { return states_.size(); }

 private:
  ProbVector probs_;
  std::vector<DensityMatrix> states_;
};

// S(A) + S(B) - S(AB) for the cut side_a | rest, in bits.
double mutual_information(const DensityMatrix& rho, std::span<const int> side_a);
double mutual_information(const DensityMatrix& rho);  // cut {0} | {1}
// sum_k S(A_k) - S(A_1 ... A_n).
double multipartite_mutual_information(const DensityMatrix& rho);
double classical_mutual_information(const ClassicalJoint& p);
// S(sum p_i sigma_i) - sum p_i S(sigma_i).
double holevo_chi(const Ensemble& e);

// (M_A (x) id)[rho] with layout [n_A, d_B].
DensityMatrix cq_state(const DensityMatrix& rho, const Povm& povm_a);

struct CcState {
  DensityMatrix state;  // layout [n_A, n_B]
  ClassicalJoint joint;
};
// (M_A (x) N_B)[rho] with p_ij = Tr(M_i (x) N_j rho).
CcState cc_state(const DensityMatrix& rho, const Povm& povm_a, const Povm& povm_b);

// Mutual information of the CQ state for a given A-side POVM.
double cq_mutual_information(const DensityMatrix& rho, const Povm& povm_a);
// Classical mutual information of p_ij = Tr(M_i (x) N_j rho).
double cc_mutual_information(const DensityMatrix& rho, const Povm& povm_a, const Povm& povm_b);

struct MeasurementSearchOptions {
  Side measured = Side::A;  // I_CQ only
  // Extra measurements evaluated directly; the result never falls below them.
  std::vector<Povm> povm_seeds;
  std::vector<std::pair<Povm, Povm>> povm_pair_seeds;
};

// Best measurement found. `value` is a lower bound on the true maximum.
struct MeasurementOptimum {
  double value = 0.0;
  Povm povm_a;                 // for I_CQ: the POVM on the measured party
  std::optional<Povm> povm_b;  // I_CC only
  Side measured = Side::A;
  OptimizationResult search;
  int outcome_count = 0;
  bool projective = false;
  std::string source;  // "search" or "seed"
};

// max over A-side POVMs of I(rho^CQ). Seeds include the marginal eigenbasis,
// the computational basis and the classifier's candidate classical basis.
MeasurementOptimum optimize_icq(const DensityMatrix& rho, const OptimizerConfig& cfg,
                                const MeasurementSearchOptions& options = {});
// max over local POVM pairs of the classical mutual information.
MeasurementOptimum optimize_icc(const DensityMatrix& rho, const OptimizerConfig& cfg,
                                const MeasurementSearchOptions& options = {});

// I - I_CC estimate; an upper bound on the true gap.
double delta_cc(const DensityMatrix& rho, const OptimizerConfig& cfg);
// I - max over complete rank-one projective measurements of `measured`.
double discord(const DensityMatrix& rho, const OptimizerConfig& cfg, Side measured = Side::A);

struct DeltaBEstimate {
  double value = 0.0;        // min I(sigma_AA':BB') - I(rho) over the candidates
  double sigma_information = 0.0;
  std::string source;        // which candidate attained the minimum
  int candidates = 0;
};
// Heuristic upper bound on the broadcast gap. Candidates: valid outputs of
// broadcast_search, the regrouped two-copy state, and the cloning
// construction when rho is classified CC.
DeltaBEstimate delta_b_heuristic(const DensityMatrix& rho, const OptimizerConfig& cfg);

struct CorrelationReport {
  double mutual_information = 0.0;
  double i_cq_lower = 0.0;
  double i_cc_lower = 0.0;
  double delta_cc_upper = 0.0;
  double discord_upper = 0.0;
  Povm cq_povm = Povm::computational(1);      // attains i_cq_lower
  Povm best_povm_a = Povm::computational(1);  // pair attaining i_cc_lower
  Povm best_povm_b = Povm::computational(1);
  Povm discord_povm = Povm::computational(1);
  OptimizationResult icq_search;
  OptimizationResult icc_search;
  OptimizationResult discord_search;
  OptimizerConfig config;
  int outcome_count = 0;
};

// All measures with the chain I >= I_cq_lower >= I_cc_lower >= 0 enforced.
CorrelationReport correlation_report(const DensityMatrix& rho, const OptimizerConfig& cfg);

}  // namespace qcorr
