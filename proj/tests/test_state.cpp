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

#include "oracles.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/optimize.hpp"
#include "qcorr/state.hpp"

using namespace qcorr;

namespace {

Matrix random_matrix(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

Vector bell_phi_plus() { return oracle::ket({1, 0, 0, 1}); }

}  // namespace

TEST(state, kron_matches_index_loop) {
  Rng rng = make_rng(7);
  const Matrix a = random_matrix(3, 2, rng);
  const Matrix b = random_matrix(2, 3, rng);
  EXPECT_LT((kron(a, b) - oracle::kron(a, b)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(state, tensor_of_basis_states) {
  const auto a = DensityMatrix::basis_state(SubsystemLayout({2}), 0);
  const auto b = DensityMatrix::basis_state(SubsystemLayout({2}), 1);
  const auto ab = tensor(a, b);
  EXPECT_EQ(ab.layout().dims(), (std::vector<int>{2, 2}));
  EXPECT_NEAR(std::abs(ab.matrix()(1, 1) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(ab.matrix().cwiseAbs().sum(), 1.0, 1e-15);
}

TEST(state, partial_trace_matches_index_sum) {
  Rng rng = make_rng(11);
  const std::vector<int> dims{2, 3, 2};
  const auto rho = random_density(SubsystemLayout(dims), rng);
  const std::vector<std::vector<int>> keeps{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};
  for (const auto& keep : keeps) {
    const auto reduced = partial_trace(rho, keep);
    EXPECT_LT((reduced.matrix() - oracle::partial_trace(rho.matrix(), dims, keep)).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_NEAR(reduced.matrix().trace().real(), 1.0, 1e-12);
  }
}

TEST(state, partial_trace_of_product_returns_factor) {
  Rng rng = make_rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_density(SubsystemLayout({2}), rng);
    const auto b = random_density(SubsystemLayout({3}), rng);
    const auto ab = tensor(a, b);
    EXPECT_LT((partial_trace(ab, {0}).matrix() - a.matrix()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((partial_trace(ab, {1}).matrix() - b.matrix()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(state, partial_trace_rejects_bad_positions) {
  const auto rho = DensityMatrix::maximally_mixed(SubsystemLayout({2, 2}));
  EXPECT_THROW(partial_trace(rho, {2}), DimensionError);
  EXPECT_THROW(partial_trace(rho, {0, 0}), DimensionError);
}

TEST(state, permute_matches_index_relabeling) {
  Rng rng = make_rng(5);
  const std::vector<int> dims{2, 3, 2};
  const auto rho = random_density(SubsystemLayout(dims), rng);
  const std::vector<int> perm{2, 0, 1};
  const auto p = permute_subsystems(rho, perm);
  EXPECT_EQ(p.layout().dims(), (std::vector<int>{2, 2, 3}));
  EXPECT_LT((p.matrix() - oracle::permute(rho.matrix(), dims, perm)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(state, validation_names_the_failed_invariant) {
  Matrix non_hermitian = Matrix::Identity(2, 2) / 2.0;
  non_hermitian(0, 1) = 0.3;
  try {
    DensityMatrix bad(non_hermitian);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("Hermitian"), std::string::npos);
  }
  Matrix negative(2, 2);
  negative << 1.2, 0, 0, -0.2;
  try {
    DensityMatrix bad(negative);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("positive semidefinite"), std::string::npos);
  }
  try {
    DensityMatrix bad(Matrix(Matrix::Identity(2, 2)));
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("trace"), std::string::npos);
  }
  EXPECT_THROW(DensityMatrix(SubsystemLayout({2, 2}), Matrix(Matrix::Identity(3, 3) / 3.0)), ValidationError);
}

TEST(state, validation_accepts_small_numerical_noise) {
  Matrix m = Matrix::Identity(2, 2) / 2.0;
  m(0, 0) += 1e-12;
  m(0, 1) = Complex(0, 1e-12);
  m(1, 0) = Complex(0, -1e-12);
  EXPECT_NO_THROW(DensityMatrix{m});
}

TEST(state, entropy_of_diagonal_quarter) {
  const double p[] = {0.75, 0.25};
  const auto rho = DensityMatrix::diagonal(SubsystemLayout({2}), p);
  // h(1/4) = 0.811278124459...
  EXPECT_NEAR(von_neumann_entropy(rho), oracle::binary_entropy(0.25), 1e-12);
  EXPECT_NEAR(von_neumann_entropy(rho), 0.8112781244591328, 1e-12);
}

TEST(state, entropy_extremes) {
  Rng rng = make_rng(9);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::pure(SubsystemLayout({3}), random_pure_vector(3, rng))), 0.0,
              1e-10);
  for (int d : {2, 3, 4, 6})
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(SubsystemLayout({d}))), std::log2(d), 1e-12);
}

TEST(state, entropy_matches_oracle_spectrum) {
  Rng rng = make_rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = random_density(SubsystemLayout({2, 3}), rng);
    EXPECT_NEAR(von_neumann_entropy(rho), oracle::entropy(rho.matrix()), 1e-10);
  }
}

TEST(state, entropy_rejects_non_hermitian_matrix) {
  Matrix m = Matrix::Identity(2, 2) / 2.0;
  m(0, 1) = 0.25;
  EXPECT_THROW(von_neumann_entropy(m), ValidationError);
}

TEST(state, relative_entropy_cases) {
  const double p[] = {0.5, 0.5};
  const double q[] = {0.9, 0.1};
  const auto rp = DensityMatrix::diagonal(SubsystemLayout({2}), p);
  const auto rq = DensityMatrix::diagonal(SubsystemLayout({2}), q);
  const double kl = 0.5 * std::log2(0.5 / 0.9) + 0.5 * std::log2(0.5 / 0.1);
  EXPECT_NEAR(relative_entropy(rp, rq), kl, 1e-12);
  EXPECT_NEAR(relative_entropy(rp, rp), 0.0, 1e-12);
  const auto zero = DensityMatrix::basis_state(SubsystemLayout({2}), 0);
  EXPECT_EQ(relative_entropy(rp, zero), kInfinity);
  EXPECT_NEAR(relative_entropy(zero, rp), 1.0, 1e-12);
}

TEST(state, relative_entropy_is_nonnegative) {
  Rng rng = make_rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_density(SubsystemLayout({3}), rng);
    const auto b = random_density(SubsystemLayout({3}), rng);
    EXPECT_GE(relative_entropy(a, b), 0.0);
  }
}

TEST(state, trace_distance_and_fidelity) {
  const auto zero = DensityMatrix::basis_state(SubsystemLayout({2}), 0);
  const auto one = DensityMatrix::basis_state(SubsystemLayout({2}), 1);
  EXPECT_NEAR(trace_distance(zero, one), 1.0, 1e-14);
  EXPECT_NEAR(fidelity(zero, one), 0.0, 1e-14);
  const auto plus = DensityMatrix::pure(SubsystemLayout({2}), oracle::ket({1, 1}));
  EXPECT_NEAR(fidelity(zero, plus), 0.5, 1e-12);
  EXPECT_NEAR(trace_distance(zero, plus), std::sqrt(0.5), 1e-12);

  Rng rng = make_rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_density(SubsystemLayout({3}), rng);
    const auto b = random_density(SubsystemLayout({3}), rng);
    const double td = trace_distance(a, b);
    EXPECT_NEAR(td, oracle::trace_distance(a.matrix(), b.matrix()), 1e-12);
    // Fuchs-van de Graaf
    const double f = fidelity(a, b);
    EXPECT_LE(1.0 - std::sqrt(f), td + 1e-12);
    EXPECT_LE(td, std::sqrt(1.0 - f) + 1e-12);
    EXPECT_NEAR(fidelity(a, a), 1.0, 1e-9);
  }
}

TEST(state, partial_transpose_of_bell_state) {
  const auto bell = DensityMatrix::pure(SubsystemLayout({2, 2}), bell_phi_plus());
  const auto values = oracle::spectrum(partial_transpose(bell, 1));
  EXPECT_NEAR(values.front(), -0.5, 1e-12);
  EXPECT_NEAR(values.back(), 0.5, 1e-12);
}

TEST(state, classical_joint_marginals) {
  const ClassicalJoint p({2, 3}, {0.1, 0.2, 0.1, 0.3, 0.2, 0.1});
  const int a[] = {0};
  const int b[] = {1};
  const auto pa = p.marginal(a);
  const auto pb = p.marginal(b);
  EXPECT_NEAR(pa.values()[0], 0.4, 1e-15);
  EXPECT_NEAR(pb.values()[1], 0.4, 1e-15);
  const int idx[] = {1, 2};
  EXPECT_DOUBLE_EQ(p.at(idx), 0.1);
  EXPECT_THROW(ClassicalJoint({2}, {0.5, 0.6}), ValidationError);
  EXPECT_THROW(ProbVector({1.2, -0.2}), ValidationError);
}

TEST(state, random_density_rank) {
  Rng rng = make_rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rho = random_density(SubsystemLayout({2, 2}), 1 + trial % 4, rng);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
    const auto eigs = oracle::spectrum(rho.matrix());
    int rank = 0;
    for (double l : eigs) rank += l > 1e-10;
    EXPECT_EQ(rank, 1 + trial % 4);
  }
  EXPECT_THROW(random_density(SubsystemLayout({2}), 3, rng), ValidationError);
  EXPECT_THROW(random_density(SubsystemLayout({2}), 0, rng), ValidationError);
}
