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

#include "qcorr/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcorr/broadcast.hpp"
#include "qcorr/errors.hpp"

namespace qcorr {
namespace {

const std::vector<int> kSwap = {1, 0};
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_bipartite(const DensityMatrix& rho) {
  if (rho.parties() != 2) {
    throw DimensionError("expected a bipartite state, got " + std::to_string(rho.parties()) + " parties");
  }
}

// Conditional (unnormalized) B state for the A-side rank-one element |u><u|.
Matrix conditional_b(const Matrix& rho, const Vector& u, int da, int db) {
  Matrix out = Matrix::Zero(db, db);
  for (int i = 0; i < da; ++i) {
    const Complex ci = std::conj(u(i));
    if (ci == 0.0) continue;
    for (int j = 0; j < da; ++j) {
      const Complex w = ci * u(j);
      if (w == 0.0) continue;
      out.noalias() += w * rho.block(i * db, j * db, db, db);
    }
  }
  return out;
}

// S(rho_B) - sum_a p_a S(sigma_a) over the rank-one POVM with columns u_a.
double cq_value_rank1(const Matrix& rho, const Matrix& vectors, int da, int db, double s_b) {
  double conditional = 0.0;
  for (Index a = 0; a < vectors.cols(); ++a) {
    const Matrix sigma = conditional_b(rho, vectors.col(a), da, db);
    const double p = sigma.trace().real();
    if (p <= 1e-15) continue;
    conditional += p * matrix_entropy_bits(sigma);
  }
  return s_b - conditional;
}

double classical_mi_from_table(const Eigen::MatrixXd& p) {
  const RealVector pa = p.rowwise().sum();
  const RealVector pb = p.colwise().sum().transpose();
  const RealVector flat = Eigen::Map<const RealVector>(p.data(), p.size());
  return entropy_bits(pa) + entropy_bits(pb) - entropy_bits(flat);
}

double cc_value_rank1(const Matrix& rho, const Matrix& va, const Matrix& vb) {
  const Matrix w = kron(va, vb);
  const Matrix rw = rho * w;
  Eigen::MatrixXd p(va.cols(), vb.cols());
  for (Index a = 0; a < va.cols(); ++a) {
    for (Index b = 0; b < vb.cols(); ++b) {
      const Index k = a * vb.cols() + b;
      p(a, b) = std::max(0.0, w.col(k).dot(rw.col(k)).real());
    }
  }
  return classical_mi_from_table(p);
}

// Parameter family for one party's measurement.
struct PovmFamily {
  int d = 1;
  int outcomes = 1;
  bool projective = false;

  int param_count() const { return projective ? projective_param_count(d) : general_param_count(d, outcomes); }

  // Rank-one vectors, or an empty matrix when the parameters are degenerate.
  Matrix vectors(std::span<const double> params) const {
    if (projective) return unitary_from_params(params, d);
    Matrix v = povm_vectors_from_params(params, d, outcomes);
    const Matrix completeness = v * v.adjoint() - identity(d);
    if (completeness.cwiseAbs().maxCoeff() > 1e-8) return Matrix();
    return v;
  }

  RealVector params_for(const Matrix& basis) const {
    return projective ? projective_params_from_basis(basis) : general_params_from_basis(basis, outcomes);
  }

  Povm povm(std::span<const double> params) const { return Povm::from_vectors(vectors(params)); }
};

PovmFamily family_for(int d, const OptimizerConfig& cfg) {
  PovmFamily f;
  f.d = d;
  f.projective = cfg.projective_only;
  f.outcomes = cfg.projective_only ? d : (cfg.outcome_count > 0 ? cfg.outcome_count : d * d);
  if (f.outcomes < d) throw ValidationError("outcome_count must be at least the local dimension");
  return f;
}

Matrix marginal_eigenbasis(const DensityMatrix& rho, int position) {
  return eigh(partial_trace(rho.matrix(), rho.layout(), std::vector<int>{position})).vectors;
}

std::span<const double> as_span(const RealVector& v) {
  return {v.data(), static_cast<size_t>(v.size())};
}

// Seeds are kept even if the classifier fails to certify classicality:
// a best-effort classical basis is still a good starting point.
std::vector<Matrix> candidate_bases(const DensityMatrix& rho, int position) {
  std::vector<Matrix> bases = {marginal_eigenbasis(rho, position), identity(rho.layout().dim(position))};
  const ClassicalityVerdict v = is_cq(rho, tol::kClassical, position == 0 ? Side::A : Side::B);
  if (position == 0 && v.basis_a) bases.push_back(*v.basis_a);
  if (position == 1 && v.basis_b) bases.push_back(*v.basis_b);
  return bases;
}

MeasurementOptimum optimize_icq_first(const DensityMatrix& rho, const OptimizerConfig& cfg,
                                      const std::vector<Povm>& povm_seeds) {
  const int da = rho.layout().dim(0);
  const int db = rho.layout().dim(1);
  const PovmFamily family = family_for(da, cfg);
  const Matrix& m = rho.matrix();
  const double s_b = matrix_entropy_bits(partial_trace(m, rho.layout(), std::vector<int>{1}));

  const Objective objective = [&](const RealVector& x) {
    const Matrix v = family.vectors(as_span(x));
    if (v.size() == 0) return kNaN;
    return cq_value_rank1(m, v, da, db, s_b);
  };
  MaximizeOptions options;
  for (const Matrix& basis : candidate_bases(rho, 0)) options.seed_points.push_back(family.params_for(basis));
  if (!family.projective) options.start_scale = 1.0;

  OptimizationResult search = maximize(objective, family.param_count(), cfg, options);
  MeasurementOptimum best{search.value, family.povm(as_span(search.params)), std::nullopt, Side::A,
                          search, family.outcomes, family.projective, "search"};
  for (const Povm& seed : povm_seeds) {
    const double v = cq_mutual_information(rho, seed);
    if (v > best.value) {
      best.value = v;
      best.povm_a = seed;
      best.source = "seed";
    }
  }
  return best;
}

}  // namespace

Ensemble::Ensemble(ProbVector probs, std::vector<DensityMatrix> states)
    : probs_(std::move(probs)), states_(std::move(states)) {
  if (probs_.size() != states_.size()) throw ValidationError("ensemble probabilities and states differ in length");
  for (const auto& s : states_) {
    if (s.dim() != states_.front().dim()) throw DimensionError("ensemble states differ in dimension");
  }
}

double mutual_information(const DensityMatrix& rho, std::span<const int> side_a) {
  std::vector<int> a(side_a.begin(), side_a.end());
  std::sort(a.begin(), a.end());
  std::vector<int> b;
  for (int p = 0; p < rho.parties(); ++p) {
    if (!std::binary_search(a.begin(), a.end(), p)) b.push_back(p);
  }
  if (a.empty() || b.empty()) throw DimensionError("invalid partition: both sides must be nonempty");
  for (int p : a) {
    if (p < 0 || p >= rho.parties()) throw DimensionError("invalid partition: position out of range");
  }
  const double s_a = matrix_entropy_bits(partial_trace(rho.matrix(), rho.layout(), a));
  const double s_b = matrix_entropy_bits(partial_trace(rho.matrix(), rho.layout(), b));
  const double s_ab = matrix_entropy_bits(rho.matrix());
  return std::max(s_a + s_b - s_ab, 0.0);
}

double mutual_information(const DensityMatrix& rho) {
  require_bipartite(rho);
  const std::vector<int> a = {0};
  return mutual_information(rho, a);
}

double multipartite_mutual_information(const DensityMatrix& rho) {
  if (rho.parties() < 2) throw DimensionError("multipartite mutual information needs at least two subsystems");
  double total = -matrix_entropy_bits(rho.matrix());
  for (int p = 0; p < rho.parties(); ++p) {
    total += matrix_entropy_bits(partial_trace(rho.matrix(), rho.layout(), std::vector<int>{p}));
  }
  return std::max(total, 0.0);
}

double classical_mutual_information(const ClassicalJoint& p) {
  if (p.shape().size() != 2) throw ValidationError("classical mutual information needs a bipartite joint");
  Eigen::MatrixXd table(p.shape()[0], p.shape()[1]);
  for (int i = 0; i < p.shape()[0]; ++i) {
    for (int j = 0; j < p.shape()[1]; ++j) table(i, j) = p.values()[i * p.shape()[1] + j];
  }
  return std::max(classical_mi_from_table(table), 0.0);
}

double holevo_chi(const Ensemble& e) {
  const int d = e.states().front().dim();
  Matrix average = Matrix::Zero(d, d);
  double mixed = 0.0;
  for (size_t i = 0; i < e.size(); ++i) {
    average += e.probs()[i] * e.states()[i].matrix();
    mixed += e.probs()[i] * von_neumann_entropy(e.states()[i]);
  }
  return std::max(matrix_entropy_bits(average) - mixed, 0.0);
}

DensityMatrix cq_state(const DensityMatrix& rho, const Povm& povm_a) {
  require_bipartite(rho);
  if (povm_a.dim() != rho.layout().dim(0)) throw DimensionError("POVM dimension does not match party A");
  return apply_local(measurement_channel(povm_a), 0, rho);
}

CcState cc_state(const DensityMatrix& rho, const Povm& povm_a, const Povm& povm_b) {
  require_bipartite(rho);
  if (povm_a.dim() != rho.layout().dim(0)) throw DimensionError("POVM dimension does not match party A");
  if (povm_b.dim() != rho.layout().dim(1)) throw DimensionError("POVM dimension does not match party B");
  const DensityMatrix out =
      apply_local(measurement_channel(povm_b), 1, apply_local(measurement_channel(povm_a), 0, rho));
  const int na = povm_a.outcome_count();
  const int nb = povm_b.outcome_count();
  std::vector<double> p(static_cast<size_t>(na * nb));
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < nb; ++j) {
      p[i * nb + j] = (kron(povm_a.elements()[i], povm_b.elements()[j]) * rho.matrix()).trace().real();
    }
  }
  return {out, ClassicalJoint({na, nb}, std::move(p))};
}

double cq_mutual_information(const DensityMatrix& rho, const Povm& povm_a) {
  require_bipartite(rho);
  const int da = rho.layout().dim(0);
  const int db = rho.layout().dim(1);
  if (povm_a.dim() != da) throw DimensionError("POVM dimension does not match party A");
  const double s_b = matrix_entropy_bits(partial_trace(rho.matrix(), rho.layout(), std::vector<int>{1}));
  double conditional = 0.0;
  for (const Matrix& element : povm_a.elements()) {
    const Matrix sigma = partial_trace(kron(element, identity(db)) * rho.matrix(), rho.layout(), std::vector<int>{1});
    const double p = sigma.trace().real();
    if (p <= 1e-15) continue;
    conditional += p * matrix_entropy_bits(hermitian_part(sigma));
  }
  return s_b - conditional;
}

double cc_mutual_information(const DensityMatrix& rho, const Povm& povm_a, const Povm& povm_b) {
  require_bipartite(rho);
  if (povm_a.dim() != rho.layout().dim(0) || povm_b.dim() != rho.layout().dim(1)) {
    throw DimensionError("POVM dimensions do not match the parties");
  }
  Eigen::MatrixXd p(povm_a.outcome_count(), povm_b.outcome_count());
  for (int i = 0; i < povm_a.outcome_count(); ++i) {
    for (int j = 0; j < povm_b.outcome_count(); ++j) {
      p(i, j) = std::max(0.0, (kron(povm_a.elements()[i], povm_b.elements()[j]) * rho.matrix()).trace().real());
    }
  }
  return classical_mi_from_table(p);
}

MeasurementOptimum optimize_icq(const DensityMatrix& rho, const OptimizerConfig& cfg,
                                const MeasurementSearchOptions& options) {
  require_bipartite(rho);
  if (options.measured == Side::A) return optimize_icq_first(rho, cfg, options.povm_seeds);
  MeasurementOptimum out = optimize_icq_first(permute_subsystems(rho, kSwap), cfg, options.povm_seeds);
  out.measured = Side::B;
  return out;
}

MeasurementOptimum optimize_icc(const DensityMatrix& rho, const OptimizerConfig& cfg,
                                const MeasurementSearchOptions& options) {
  require_bipartite(rho);
  const int da = rho.layout().dim(0);
  const int db = rho.layout().dim(1);
  const PovmFamily fa = family_for(da, cfg);
  const PovmFamily fb = family_for(db, cfg);
  const int na = fa.param_count();
  const int nb = fb.param_count();
  const Matrix& m = rho.matrix();

  const Objective objective = [&](const RealVector& x) {
    const Matrix va = fa.vectors(std::span<const double>(x.data(), static_cast<size_t>(na)));
    const Matrix vb = fb.vectors(std::span<const double>(x.data() + na, static_cast<size_t>(nb)));
    if (va.size() == 0 || vb.size() == 0) return kNaN;
    return cc_value_rank1(m, va, vb);
  };

  MaximizeOptions opts;
  if (!fa.projective) opts.start_scale = 1.0;
  const std::vector<Matrix> bases_a = candidate_bases(rho, 0);
  const std::vector<Matrix> bases_b = candidate_bases(rho, 1);
  const ClassicalityVerdict cc = is_cc(rho);
  std::vector<std::pair<Matrix, Matrix>> pairs = {{bases_a[0], bases_b[0]}, {bases_a[1], bases_b[1]}};
  if (cc.basis_a && cc.basis_b) pairs.emplace_back(*cc.basis_a, *cc.basis_b);
  for (const auto& [ba, bb] : pairs) {
    RealVector x(na + nb);
    x << fa.params_for(ba), fb.params_for(bb);
    opts.seed_points.push_back(std::move(x));
  }

  OptimizationResult search = maximize(objective, na + nb, cfg, opts);
  const RealVector& x = search.params;
  MeasurementOptimum best{search.value,
                          fa.povm(std::span<const double>(x.data(), static_cast<size_t>(na))),
                          fb.povm(std::span<const double>(x.data() + na, static_cast<size_t>(nb))),
                          Side::A,
                          search,
                          fa.outcomes,
                          fa.projective,
                          "search"};
  for (const auto& [pa, pb] : options.povm_pair_seeds) {
    const double v = cc_mutual_information(rho, pa, pb);
    if (v > best.value) {
      best.value = v;
      best.povm_a = pa;
      best.povm_b = pb;
      best.source = "seed";
    }
  }
  return best;
}

double delta_cc(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  return std::max(mutual_information(rho) - optimize_icc(rho, cfg).value, 0.0);
}

double discord(const DensityMatrix& rho, const OptimizerConfig& cfg, Side measured) {
  OptimizerConfig projective = cfg;
  projective.projective_only = true;
  MeasurementSearchOptions options;
  options.measured = measured;
  return std::max(mutual_information(rho) - optimize_icq(rho, projective, options).value, 0.0);
}

DeltaBEstimate delta_b_heuristic(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  require_bipartite(rho);
  const double info = mutual_information(rho);
  DeltaBEstimate best;
  best.value = std::numeric_limits<double>::infinity();
  auto consider = [&](const DensityMatrix& sigma, const std::string& source) {
    ++best.candidates;
    const double i_sigma = broadcast_mutual_information(sigma);
    if (i_sigma - info < best.value) {
      best.value = i_sigma - info;
      best.sigma_information = i_sigma;
      best.source = source;
    }
  };
  consider(two_copy_broadcast(rho), "two-copy");
  const ClassicalityVerdict verdict = is_cc(rho);
  if (verdict.kind == Classicality::CC) {
    const BroadcastChannels ch = cc_broadcast_channels(*verdict.basis_a, *verdict.basis_b);
    consider(apply_broadcast(ch, rho), "cloning");
  }
  const BroadcastCandidate found = broadcast_search(rho, cfg);
  if (found.valid) consider(found.sigma, "search");
  return best;
}

CorrelationReport correlation_report(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  require_bipartite(rho);
  CorrelationReport report;
  report.config = cfg;
  report.mutual_information = mutual_information(rho);

  const MeasurementOptimum icq = optimize_icq(rho, cfg);
  OptimizerConfig projective_cfg = cfg;
  projective_cfg.projective_only = true;
  const MeasurementOptimum proj = cfg.projective_only ? icq : optimize_icq(rho, projective_cfg);

  const Povm eig_b = Povm::from_basis(marginal_eigenbasis(rho, 1));
  MeasurementSearchOptions cc_options;
  cc_options.povm_pair_seeds = {{icq.povm_a, eig_b}, {proj.povm_a, eig_b}};
  const MeasurementOptimum icc = optimize_icc(rho, cfg, cc_options);

  // Every candidate is attained by a measurement, so the max stays a lower
  // bound; it cannot exceed I by data processing.
  double cq = icq.value;
  report.cq_povm = icq.povm_a;
  if (proj.value > cq) {
    cq = proj.value;
    report.cq_povm = proj.povm_a;
  }
  const double cq_at_cc = cq_mutual_information(rho, icc.povm_a);
  if (cq_at_cc > cq) {
    cq = cq_at_cc;
    report.cq_povm = icc.povm_a;
  }
  report.i_cq_lower = std::clamp(cq, 0.0, report.mutual_information);
  report.i_cc_lower = std::clamp(icc.value, 0.0, report.i_cq_lower);
  report.delta_cc_upper = report.mutual_information - report.i_cc_lower;
  report.discord_upper = std::max(report.mutual_information - proj.value, 0.0);
  report.best_povm_a = icc.povm_a;
  report.best_povm_b = *icc.povm_b;
  report.discord_povm = proj.povm_a;
  report.icq_search = icq.search;
  report.icc_search = icc.search;
  report.discord_search = proj.search;
  report.outcome_count = icq.outcome_count;
  return report;
}

}  // namespace qcorr
