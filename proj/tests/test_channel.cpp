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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "qcorr/channel.hpp"
#include "qcorr/correlations.hpp"
#include "qcorr/errors.hpp"

using namespace qcorr;

namespace {

Matrix apply_oracle(const std::vector<Matrix>& kraus, const Matrix& x) {
  Matrix out = Matrix::Zero(kraus.front().rows(), kraus.front().rows());
  for (const auto& k : kraus) out += k * x * k.adjoint();
  return out;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(channel, povm_validation) {
  Matrix half = Matrix::Identity(2, 2) / 2.0;
  EXPECT_NO_THROW(Povm({half, half}));
  EXPECT_THROW(Povm({half}), ValidationError);
  Matrix neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  Matrix rest = Matrix::Identity(2, 2) - neg;
  EXPECT_THROW(Povm({neg, rest}), ValidationError);
  Rng rng = make_rng(1);
  const Povm p = Povm::from_basis(haar_unitary(3, rng));
  EXPECT_EQ(p.outcome_count(), 3);
  EXPECT_LT(p.completeness_residual(), 1e-12);
}

TEST(channel, kraus_channel_requires_trace_preservation) {
  Matrix k = Matrix::Identity(2, 2) * 0.5;
  EXPECT_THROW(KrausChannel({k}), ValidationError);
  EXPECT_NO_THROW(KrausMap({k}));
  EXPECT_FALSE(KrausMap({k}).is_trace_preserving());
}

TEST(channel, measurement_channel_outputs_outcome_distribution) {
  Rng rng = make_rng(2);
  const auto rho = random_density(SubsystemLayout({3}), rng);
  const Povm povm = Povm::from_basis(haar_unitary(3, rng));
  const auto out = apply_channel(measurement_channel(povm), rho);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(out.matrix()(i, i).real(), (povm.elements()[i] * rho.matrix()).trace().real(), 1e-12);
    for (int j = 0; j < 3; ++j)
      if (i != j) EXPECT_LT(std::abs(out.matrix()(i, j)), 1e-12);
  }
}

TEST(channel, apply_local_matches_kronecker_padding) {
  Rng rng = make_rng(3);
  const std::vector<int> dims{2, 3, 2};
  const auto rho = random_density(SubsystemLayout(dims), rng);
  for (int position = 0; position < 3; ++position) {
    const KrausChannel ch = random_channel(dims[position], 2, 3, rng);
    std::vector<Matrix> padded;
    for (const auto& k : ch.kraus()) {
      Matrix left = Matrix::Identity(1, 1), right = Matrix::Identity(1, 1);
      for (int p = 0; p < position; ++p) left = oracle::kron(left, Matrix::Identity(dims[p], dims[p]));
      for (int p = position + 1; p < 3; ++p) right = oracle::kron(right, Matrix::Identity(dims[p], dims[p]));
      padded.push_back(oracle::kron(oracle::kron(left, k), right));
    }
    const auto out = apply_local(ch, position, rho);
    EXPECT_LT(max_abs(out.matrix() - apply_oracle(padded, rho.matrix())), 1e-12);
    EXPECT_EQ(out.layout().dim(position), 2);
  }
}

TEST(channel, partial_trace_channel_matches_partial_trace) {
  Rng rng = make_rng(4);
  const std::vector<int> dims{2, 3, 2};
  const auto rho = random_density(SubsystemLayout(dims), rng);
  const auto ch = KrausChannel::partial_trace(dims, {0, 2});
  EXPECT_LT(max_abs(ch.apply(rho.matrix()) - oracle::partial_trace(rho.matrix(), dims, {0, 2})), 1e-13);
}

TEST(channel, transpose_channel_is_adjoint_and_unital) {
  Rng rng = make_rng(5);
  const KrausChannel ch = random_channel(3, 2, 4, rng);
  const KrausMap adj = transpose_channel(ch);
  EXPECT_LT(max_abs(adj.apply(Matrix::Identity(2, 2)) - Matrix::Identity(3, 3)), 1e-12);
  const auto x = random_density(SubsystemLayout({3}), rng).matrix();
  const auto y = random_density(SubsystemLayout({2}), rng).matrix();
  EXPECT_NEAR(std::abs((y * ch.apply(x)).trace() - (adj.apply(y) * x).trace()), 0.0, 1e-12);
}

TEST(channel, compose_and_tensor) {
  Rng rng = make_rng(6);
  const KrausChannel a = random_channel(2, 3, 2, rng);
  const KrausChannel b = random_channel(3, 2, 2, rng);
  const auto x = random_density(SubsystemLayout({2}), rng);
  EXPECT_LT(max_abs(compose(b, a).apply(x.matrix()) - b.apply(a.apply(x.matrix()))), 1e-12);
  const auto y = random_density(SubsystemLayout({3}), rng);
  const Matrix both = tensor_channels(a, b).apply(oracle::kron(x.matrix(), y.matrix()));
  EXPECT_LT(max_abs(both - oracle::kron(a.apply(x.matrix()), b.apply(y.matrix()))), 1e-12);
  EXPECT_THROW(compose(a, a), DimensionError);
}

TEST(channel, petz_fixed_point) {
  Rng rng = make_rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const KrausChannel ch = random_channel(3, 3, 2, rng);
    const auto sigma = random_density(SubsystemLayout({3}), rng);
    const PetzRecovery r = petz_recovery(ch, sigma);
    EXPECT_LT(max_abs(r.apply(ch.apply(sigma.matrix())) - sigma.matrix()), 1e-9);
    EXPECT_TRUE(r.trace_preserving());
  }
}

TEST(channel, petz_of_unitary_is_its_inverse) {
  Rng rng = make_rng(8);
  const Matrix u = haar_unitary(3, rng);
  const auto sigma = random_density(SubsystemLayout({3}), rng);
  const auto x = random_density(SubsystemLayout({3}), rng);
  const PetzRecovery r = petz_recovery(KrausChannel::unitary(u), sigma);
  EXPECT_LT(max_abs(r.apply(u * x.matrix() * u.adjoint()) - x.matrix()), 1e-10);
}

TEST(channel, petz_of_depolarizing_returns_reference) {
  Rng rng = make_rng(9);
  const auto sigma = random_density(SubsystemLayout({2}), rng);
  const PetzRecovery r = petz_recovery(KrausChannel::fully_depolarizing(2), sigma);
  for (int trial = 0; trial < 5; ++trial) {
    const auto x = random_density(SubsystemLayout({2}), rng);
    EXPECT_LT(max_abs(r.apply(x.matrix()) - sigma.matrix()), 1e-10);
  }
}

TEST(channel, petz_kraus_form_matches_formula) {
  Rng rng = make_rng(10);
  const KrausChannel ch = random_channel(2, 3, 2, rng);
  const auto sigma = random_density(SubsystemLayout({2}), rng);
  const PetzRecovery r = petz_recovery(ch, sigma);
  const KrausMap k = r.kraus_map();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Matrix e = matrix_unit(3, i, j);
      EXPECT_LT(max_abs(k.apply(e) - r.apply(e)), 1e-10);
    }
  EXPECT_LT(k.trace_preservation_residual(), 1e-9);
}

TEST(channel, petz_factorizes_over_parties) {
  Rng rng = make_rng(11);
  const KrausChannel a = random_channel(2, 2, 2, rng);
  const KrausChannel b = random_channel(2, 3, 2, rng);
  const auto sa = random_density(SubsystemLayout({2}), rng);
  const auto sb = random_density(SubsystemLayout({2}), rng);
  const PetzRecovery joint = petz_recovery(tensor_channels(a, b), tensor(sa, sb));
  const KrausMap split = tensor_channels(petz_recovery(a, sa).kraus_map(), petz_recovery(b, sb).kraus_map());
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const Matrix e = matrix_unit(6, i, j);
      EXPECT_LT(max_abs(joint.apply(e) - split.apply(e)), 1e-9);
    }
}

TEST(channel, petz_with_rank_deficient_image_warns) {
  const auto sigma = DensityMatrix::basis_state(SubsystemLayout({2}), 0);
  const PetzRecovery r = petz_recovery(KrausChannel::identity(2), sigma);
  EXPECT_FALSE(r.trace_preserving());
  EXPECT_FALSE(r.warnings().empty());
  // Extends by zero on the kernel of the image.
  EXPECT_LT(std::abs(r.apply(matrix_unit(2, 1, 1)).trace()), 1e-12);
  EXPECT_LT(max_abs(r.apply(sigma.matrix()) - sigma.matrix()), 1e-12);
}

TEST(channel, petz_recovers_information_preserving_local_channel) {
  Rng rng = make_rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const auto cq = fixtures::random_cq(2, 2, rng);
    const KrausChannel ch = fixtures::measure_prepare_orthogonal(cq.basis_a, 2, rng);
    const auto out = apply_local(ch, 0, cq.state);
    EXPECT_NEAR(mutual_information(out), mutual_information(cq.state), 1e-9);
    const PetzRecovery r = petz_recovery(ch, partial_trace(cq.state, {0}));
    const auto back = apply_local(r.kraus_map(), 0, cq.state.layout().with_replaced(0, std::vector<int>{4}),
                                  out.matrix());
    EXPECT_LT(oracle::trace_distance(back, cq.state.matrix()), 1e-8);
  }
}

TEST(channel, local_channels_never_increase_mutual_information) {
  Rng rng = make_rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const auto rho = random_density(SubsystemLayout({2, 3}), rng);
    const int position = trial % 2;
    const KrausChannel ch = random_channel(rho.layout().dim(position), 2 + trial % 2, 1 + trial % 3, rng);
    EXPECT_LE(mutual_information(apply_local(ch, position, rho)), mutual_information(rho) + 1e-9);
  }
}
