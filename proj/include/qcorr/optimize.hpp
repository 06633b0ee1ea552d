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

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qcorr/channel.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/state.hpp"

namespace qcorr {

struct OptimizerConfig {
  std::uint64_t seed = 1;
  int restarts = 16;
  int max_evals = 5000;      // per restart
  double tol = 1e-8;         // simplex diameter
  int outcome_count = 0;     // 0 selects d^2 rank-one outcomes
  bool projective_only = false;
  int ancilla_dim = 0;       // 0 selects the local dimension
  int threads = 1;           // restarts run concurrently when > 1

  void validate() const;
  // Budget used by broadcast_search: 32 restarts of 2000 evaluations.
  static OptimizerConfig broadcast_defaults();
};

struct OptimizationResult {
  double value = 0.0;
  RealVector params;
  int n_evals = 0;
  std::vector<double> restart_values;
  std::uint64_t seed = 0;
  int best_restart = -1;
  std::vector<std::string> diagnostics;
};

using Rng = std::mt19937_64;
using Objective = std::function<double(const RealVector&)>;

// Independent generator for stream `stream` derived from `seed`.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

Matrix haar_unitary(int d, Rng& rng);
Vector random_pure_vector(int d, Rng& rng);
// Ginibre-induced state of the requested rank.
DensityMatrix random_density(const SubsystemLayout& layout, int rank, Rng& rng);
DensityMatrix random_density(const SubsystemLayout& layout, Rng& rng);
// Random channel from a Haar isometry d_in -> d_out * kraus_count.
KrausChannel random_channel(int d_in, int d_out, int kraus_count, Rng& rng);

// Projective measurements: the columns of exp(A) with A anti-Hermitian.
// Parameters are (Re A_jk, Im A_jk) for j < k in row order, followed by the
// d diagonal phases Im A_jj; d^2 in total.
int projective_param_count(int d);
Matrix unitary_from_params(std::span<const double> params, int d);
Povm projective_povm(std::span<const double> params, int d);
// Parameters whose projective POVM measures in the columns of basis.
RealVector projective_params_from_basis(const Matrix& basis);

// Rank-one POVMs with n outcomes: vectors g_k = e_k + delta_k (e_k = 0 for
// k >= d) orthonormalized as v_k = S^{-1/2} g_k, S = sum g_k g_k^dagger.
// Parameters are (Re, Im) of delta as a d x n matrix, column-major.
int general_param_count(int d, int n_outcomes);
Matrix povm_vectors_from_params(std::span<const double> params, int d, int n_outcomes);
Povm general_povm(std::span<const double> params, int d, int n_outcomes);
RealVector general_params_from_basis(const Matrix& basis, int n_outcomes);

// Isometry d_in -> d_out from the polar factor of E + delta, where E embeds
// the input as the first d_in basis vectors. 2 * d_out * d_in parameters.
int isometry_param_count(int d_in, int d_out);
Matrix isometry_from_params(std::span<const double> params, int d_in, int d_out);
RealVector isometry_params(const Matrix& isometry);

struct MaximizeOptions {
  std::vector<RealVector> seed_points;  // each starts its own restart
  double start_scale = 3.141592653589793;  // random starts uniform in [-s, s]
  double initial_step = 0.5;
};

// Multi-start Nelder-Mead ascent. Seed points run first, then cfg.restarts
// random starts. Each restart draws from its own stream so the outcome does
// not depend on cfg.threads. Ties resolve to the lowest restart index.
OptimizationResult maximize(const Objective& objective, int param_dim, const OptimizerConfig& cfg,
                            const MaximizeOptions& options = {});

}  // namespace qcorr
