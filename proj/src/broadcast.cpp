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

#include "qcorr/broadcast.hpp"

#include <algorithm>
#include <cmath>

#include "qcorr/classify.hpp"
#include "qcorr/correlations.hpp"
#include "qcorr/errors.hpp"

namespace qcorr {
namespace {

const std::vector<int> kRegroup = {0, 2, 1, 3};
const std::vector<int> kCopyAB = {0, 2};
const std::vector<int> kCopyA1B1 = {1, 3};
const std::vector<int> kPartyA = {0, 1};

void require_orthonormal(const Matrix& basis) {
  if (basis.rows() != basis.cols() ||
      (basis.adjoint() * basis - identity(basis.rows())).cwiseAbs().maxCoeff() > 1e-8) {
    throw ValidationError("basis is not orthonormal");
  }
}

void require_broadcast_layout(const DensityMatrix& sigma, const DensityMatrix& rho) {
  if (rho.parties() != 2) throw DimensionError("source state must be bipartite");
  const int da = rho.layout().dim(0);
  const int db = rho.layout().dim(1);
  if (sigma.layout().dims() != std::vector<int>{da, da, db, db}) {
    throw DimensionError("broadcast state layout must be [dA, dA, dB, dB]");
  }
}

// Cloning isometry |w_i> -> |w_i>|w_i>|0>_E.
Matrix cloning_isometry(const Matrix& basis, int ancilla) {
  const Index d = basis.rows();
  Vector e0 = Vector::Zero(ancilla);
  e0(0) = 1.0;
  Matrix v = Matrix::Zero(d * d * ancilla, d);
  for (Index i = 0; i < d; ++i) {
    const Vector w = basis.col(i);
    v += kron(kron(w, w), e0) * w.adjoint();
  }
  return v;
}

// |psi> -> |psi> (x) sum_m sqrt(l_m)|phi_m>|m>_E, keeping the `ancilla`
// largest eigenvalues of the marginal.
Matrix attach_isometry(const Matrix& marginal, int ancilla) {
  const Index d = marginal.rows();
  const HermitianEigen e = eigh(marginal);
  Vector purification = Vector::Zero(d * ancilla);
  double norm = 0.0;
  for (int m = 0; m < std::min<int>(ancilla, static_cast<int>(d)); ++m) {
    const Index k = d - 1 - m;
    const double lambda = std::max(e.values(k), 0.0);
    Vector em = Vector::Zero(ancilla);
    em(m) = 1.0;
    purification += std::sqrt(lambda) * kron(e.vectors.col(k), em);
    norm += lambda;
  }
  purification /= std::sqrt(norm);
  return kron(identity(d), purification);
}

// Stinespring isometry (rows ordered X, X', E) to Kraus operators X -> XX'.
std::vector<Matrix> stinespring_kraus(const Matrix& v, int d, int ancilla) {
  std::vector<Matrix> kraus;
  for (int e = 0; e < ancilla; ++e) {
    Matrix k(d * d, d);
    for (int r = 0; r < d * d; ++r) k.row(r) = v.row(r * ancilla + e);
    kraus.push_back(std::move(k));
  }
  return kraus;
}

}  // namespace

DensityMatrix regroup_copies(const DensityMatrix& sigma) {
  if (sigma.parties() != 4) throw DimensionError("regrouping needs a four-party state");
  return permute_subsystems(sigma, kRegroup);
}

double broadcast_mutual_information(const DensityMatrix& sigma) {
  if (sigma.parties() != 4) throw DimensionError("broadcast states have four parties");
  return mutual_information(sigma, kPartyA);
}

DensityMatrix two_copy_broadcast(const DensityMatrix& rho) {
  if (rho.parties() != 2) throw DimensionError("source state must be bipartite");
  return regroup_copies(tensor(rho, rho));
}

DensityMatrix apply_broadcast(const BroadcastChannels& channels, const DensityMatrix& rho) {
  if (rho.parties() != 2) throw DimensionError("source state must be bipartite");
  const int da = rho.layout().dim(0);
  const int db = rho.layout().dim(1);
  if (channels.theta_a.out_dims() != std::vector<int>{da, da} ||
      channels.theta_b.out_dims() != std::vector<int>{db, db}) {
    throw DimensionError("broadcast maps must output two copies of their input");
  }
  const DensityMatrix partial = apply_local(channels.theta_a, 0, rho);
  return apply_local(channels.theta_b, 2, partial);
}

KrausChannel cloning_channel(const Matrix& basis) {
  require_orthonormal(basis);
  const int d = static_cast<int>(basis.rows());
  std::vector<Matrix> kraus;
  for (int i = 0; i < d; ++i) {
    const Vector w = basis.col(i);
    kraus.push_back(kron(w, w) * w.adjoint());
  }
  return KrausChannel(std::move(kraus), {d, d});
}

BroadcastChannels cc_broadcast_channels(const Matrix& basis_a, const Matrix& basis_b) {
  return {cloning_channel(basis_a), cloning_channel(basis_b)};
}

BroadcastResiduals verify_broadcast(const DensityMatrix& sigma, const DensityMatrix& rho, double tolerance) {
  require_broadcast_layout(sigma, rho);
  const DensityMatrix ab = partial_trace(sigma, kCopyAB);
  const DensityMatrix a1b1 = partial_trace(sigma, kCopyA1B1);
  BroadcastResiduals out;
  out.residual_ab = trace_distance(ab, rho);
  out.residual_a1b1 = trace_distance(a1b1, rho);
  out.fidelity_ab = fidelity(ab, rho);
  out.fidelity_a1b1 = fidelity(a1b1, rho);
  out.valid = out.residual_ab <= tolerance && out.residual_a1b1 <= tolerance;
  return out;
}

LocalBroadcastCheck local_broadcast_check(const DensityMatrix& sigma, const DensityMatrix& rho, double tolerance) {
  const BroadcastResiduals residuals = verify_broadcast(sigma, rho);
  if (!residuals.valid) throw ValidationError("broadcast condition violated");
  LocalBroadcastCheck out;
  out.mi_deficit = broadcast_mutual_information(sigma) - mutual_information(rho);
  out.equal_information = std::abs(out.mi_deficit) <= tolerance;
  if (!out.equal_information) return out;

  const int da = rho.layout().dim(0);
  const int db = rho.layout().dim(1);
  const DensityMatrix sigma_a = partial_trace(sigma, {0, 1});
  const DensityMatrix sigma_b = partial_trace(sigma, {2, 3});
  const KrausChannel trace_a1 = KrausChannel::partial_trace({da, da}, {0});
  const KrausChannel trace_b1 = KrausChannel::partial_trace({db, db}, {0});
  BroadcastChannels maps{petz_recovery(trace_a1, sigma_a).kraus_map(), petz_recovery(trace_b1, sigma_b).kraus_map()};
  out.reconstruction_residual = trace_distance(apply_broadcast(maps, rho), sigma);
  out.local_maps = std::move(maps);
  return out;
}

BroadcastCandidate make_candidate(const DensityMatrix& rho, const KrausChannel& theta_a,
                                  const KrausChannel& theta_b) {
  BroadcastCandidate c(apply_broadcast({theta_a, theta_b}, rho));
  c.theta_a = theta_a;
  c.theta_b = theta_b;
  const BroadcastResiduals r = verify_broadcast(c.sigma, rho);
  c.residual_ab = r.residual_ab;
  c.residual_a1b1 = r.residual_a1b1;
  c.min_marginal_fidelity = std::min(r.fidelity_ab, r.fidelity_a1b1);
  c.valid = r.valid;
  c.mi_deficit = broadcast_mutual_information(c.sigma) - mutual_information(rho);
  return c;
}

BroadcastCandidate broadcast_search(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  if (rho.parties() != 2) throw DimensionError("source state must be bipartite");
  cfg.validate();
  const int da = rho.layout().dim(0);
  const int db = rho.layout().dim(1);
  const int ka = cfg.ancilla_dim > 0 ? cfg.ancilla_dim : da;
  const int kb = cfg.ancilla_dim > 0 ? cfg.ancilla_dim : db;
  const int out_a = da * da * ka;
  const int out_b = db * db * kb;
  const int na = isometry_param_count(da, out_a);
  const int nb = isometry_param_count(db, out_b);
  const SubsystemLayout layout({da, da, db, db});
  const Matrix& m = rho.matrix();

  const Objective objective = [&](const RealVector& x) {
    const Matrix va = isometry_from_params(std::span<const double>(x.data(), static_cast<size_t>(na)), da, out_a);
    const Matrix vb =
        isometry_from_params(std::span<const double>(x.data() + na, static_cast<size_t>(nb)), db, out_b);
    const auto kraus_a = stinespring_kraus(va, da, ka);
    const auto kraus_b = stinespring_kraus(vb, db, kb);
    Matrix sigma = Matrix::Zero(layout.total_dim(), layout.total_dim());
    for (const auto& ka_op : kraus_a) {
      for (const auto& kb_op : kraus_b) {
        const Matrix k = kron(ka_op, kb_op);
        sigma.noalias() += k * m * k.adjoint();
      }
    }
    const double r1 = trace_distance(partial_trace(sigma, layout, kCopyAB), m);
    const double r2 = trace_distance(partial_trace(sigma, layout, kCopyA1B1), m);
    return -(r1 + r2);
  };

  const ClassicalityVerdict verdict = is_cc(rho);
  const Matrix marginal_a = partial_trace(m, rho.layout(), std::vector<int>{0});
  const Matrix marginal_b = partial_trace(m, rho.layout(), std::vector<int>{1});
  const Matrix clone_a = cloning_isometry(*verdict.basis_a, ka);
  const Matrix clone_b = cloning_isometry(*verdict.basis_b, kb);
  const Matrix attach_a = attach_isometry(marginal_a, ka);
  const Matrix attach_b = attach_isometry(marginal_b, kb);
  const std::vector<std::pair<std::string, std::pair<Matrix, Matrix>>> seeds = {
      {"cloning", {clone_a, clone_b}},
      {"attach-marginals", {attach_a, attach_b}},
      {"clone-a-attach-b", {clone_a, attach_b}},
      {"attach-a-clone-b", {attach_a, clone_b}},
  };
  MaximizeOptions options;
  options.start_scale = 1.0;
  for (const auto& [name, pair] : seeds) {
    RealVector x(na + nb);
    x << isometry_params(pair.first), isometry_params(pair.second);
    options.seed_points.push_back(std::move(x));
  }

  OptimizationResult search = maximize(objective, na + nb, cfg, options);
  const RealVector& x = search.params;
  const Matrix va = isometry_from_params(std::span<const double>(x.data(), static_cast<size_t>(na)), da, out_a);
  const Matrix vb = isometry_from_params(std::span<const double>(x.data() + na, static_cast<size_t>(nb)), db, out_b);
  BroadcastCandidate best = make_candidate(rho, KrausChannel(stinespring_kraus(va, da, ka), {da, da}),
                                           KrausChannel(stinespring_kraus(vb, db, kb), {db, db}));
  best.seed_kind = search.best_restart < static_cast<int>(seeds.size()) ? seeds[search.best_restart].first : "random";
  best.search = std::move(search);
  best.ancilla_dim = ka;
  return best;
}

DensityMatrix embed_ensemble(const Ensemble& e) {
  const int n = static_cast<int>(e.size());
  for (int i = 0; i < n; ++i) {
    if (!(e.probs()[i] > 0.0)) throw ValidationError("ensemble has a zero-probability entry");
  }
  const DensityMatrix& first = e.states().front();
  Matrix out = Matrix::Zero(n * first.dim(), n * first.dim());
  for (int i = 0; i < n; ++i) out += e.probs()[i] * kron(matrix_unit(n, i, i), e.states()[i].matrix());
  return DensityMatrix(SubsystemLayout({n}).concat(first.layout()), std::move(out));
}

}  // namespace qcorr
