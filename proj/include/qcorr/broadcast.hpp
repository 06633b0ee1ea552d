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
#include <string>
#include <vector>

#include "qcorr/channel.hpp"
#include "qcorr/optimize.hpp"
#include "qcorr/state.hpp"

namespace qcorr {

class Ensemble;

// Broadcast states use the layout [A, A', B, B']; the party cut is
// {0, 1} | {2, 3} and the copies are {0, 2} and {1, 3}.

// Swaps positions 1 and 2: [A, B, A', B'] <-> [A, A', B, B']. Involution.
DensityMatrix regroup_copies(const DensityMatrix& sigma);

// I(AA' : BB').
double broadcast_mutual_information(const DensityMatrix& sigma);

// rho (x) rho regrouped to [A, A', B, B']; a broadcast state with twice the
// mutual information of rho.
DensityMatrix two_copy_broadcast(const DensityMatrix& rho);

// Local maps A -> AA' and B -> BB' (out_dims {d, d}).
struct BroadcastChannels {
  KrausMap theta_a;
  KrausMap theta_b;
};

// (theta_a (x) theta_b)[rho] on [A, A', B, B'].
DensityMatrix apply_broadcast(const BroadcastChannels& channels, const DensityMatrix& rho);

// Classical cloner |i><i'| -> delta_ii' |ii><ii| in the given basis, with
// Kraus operators |ii><i|.
KrausChannel cloning_channel(const Matrix& basis);
BroadcastChannels cc_broadcast_channels(const Matrix& basis_a, const Matrix& basis_b);

struct BroadcastResiduals {
  bool valid = false;
  double residual_ab = 0.0;    // trace distance of sigma_AB to rho
  double residual_a1b1 = 0.0;  // trace distance of sigma_A'B' to rho
  double fidelity_ab = 0.0;
  double fidelity_a1b1 = 0.0;
};

// Checks sigma_AB = sigma_A'B' = rho within tolerance (trace distance).
BroadcastResiduals verify_broadcast(const DensityMatrix& sigma, const DensityMatrix& rho,
                                    double tolerance = tol::kBroadcast);

struct LocalBroadcastCheck {
  bool equal_information = false;
  double mi_deficit = 0.0;  // I(sigma_AA':BB') - I(rho)
  // When equal: Petz recoveries of Tr_A' and Tr_B' with reference
  // sigma_AA' (x) sigma_BB', which rebuild sigma from rho locally.
  std::optional<BroadcastChannels> local_maps;
  double reconstruction_residual = 0.0;  // trace distance of the rebuilt state
};

// Requires verify_broadcast(sigma, rho) to pass; throws ValidationError
// otherwise.
LocalBroadcastCheck local_broadcast_check(const DensityMatrix& sigma, const DensityMatrix& rho,
                             double tolerance = tol::kNumeric);

struct BroadcastCandidate {
  explicit BroadcastCandidate(DensityMatrix state) : sigma(std::move(state)) {}

  DensityMatrix sigma;
  std::optional<KrausChannel> theta_a;
  std::optional<KrausChannel> theta_b;
  double residual_ab = 0.0;
  double residual_a1b1 = 0.0;
  double min_marginal_fidelity = 0.0;
  double mi_deficit = 0.0;
  bool valid = false;
  std::string seed_kind;  // best restart's origin
  OptimizationResult search;
  int ancilla_dim = 0;
};

// Evaluates a locally generated candidate.
BroadcastCandidate make_candidate(const DensityMatrix& rho, const KrausChannel& theta_a,
                                  const KrausChannel& theta_b);

// Maximizes -(residual_ab + residual_a1b1) over Stinespring isometries
// A -> A A' E_A and B -> B B' E_B with ancillas of dimension
// cfg.ancilla_dim (default: the local dimension). Seeds: cloning in the
// classifier bases and attaching the marginal as a fresh copy.
BroadcastCandidate broadcast_search(const DensityMatrix& rho, const OptimizerConfig& cfg);

// sum_i p_i |i><i| (x) rho_i; every probability must be positive.
DensityMatrix embed_ensemble(const Ensemble& e);

}  // namespace qcorr
