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

// State and channel constructors shared by the unit tests and the
// acceptance runner.

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "qcorr/channel.hpp"
#include "qcorr/optimize.hpp"
#include "qcorr/state.hpp"

namespace fixtures {

using namespace qcorr;

inline DensityMatrix bell_phi_plus() {
  return DensityMatrix::pure(SubsystemLayout({2, 2}), oracle::ket({1, 0, 0, 1}));
}

inline DensityMatrix ghz3() {
  return DensityMatrix::pure(SubsystemLayout({2, 2, 2}), oracle::ket({1, 0, 0, 0, 0, 0, 0, 1}));
}

// p |psi-><psi-| + (1 - p) I/4; entangled for p > 1/3.
inline DensityMatrix werner(double p) {
  Matrix m = p * oracle::projector(oracle::ket({0, 1, -1, 0})) + (1.0 - p) * Matrix::Identity(4, 4) / 4.0;
  return DensityMatrix(SubsystemLayout({2, 2}), m);
}

inline RealVector random_probabilities(int n, Rng& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  RealVector p(n);
  for (int i = 0; i < n; ++i) p[i] = u(rng);
  return p / p.sum();
}

// (U (x) V) diag(p) (U (x) V)^dagger.
inline DensityMatrix rotated_cc(const RealVector& p, const Matrix& u, const Matrix& v) {
  const Matrix w = oracle::kron(u, v);
  Matrix diag = p.cast<Complex>().asDiagonal();
  return DensityMatrix(SubsystemLayout({static_cast<int>(u.rows()), static_cast<int>(v.rows())}),
                       hermitian_part(w * diag * w.adjoint()));
}

inline DensityMatrix random_cc(int da, int db, Rng& rng) {
  return rotated_cc(random_probabilities(da * db, rng), haar_unitary(da, rng), haar_unitary(db, rng));
}

struct CqSample {
  DensityMatrix state;
  Matrix basis_a;                        // columns u_i
  RealVector probs;                      // p_i
  std::vector<DensityMatrix> conditionals;  // sigma_i
};

// sum_i p_i |u_i><u_i| (x) sigma_i. With commuting = true the sigma_i share an
// eigenbasis.
inline CqSample random_cq(int da, int db, Rng& rng, bool commuting = false) {
  CqSample s{DensityMatrix::maximally_mixed(SubsystemLayout({da, db})), haar_unitary(da, rng),
             random_probabilities(da, rng), {}};
  const Matrix shared = haar_unitary(db, rng);
  Matrix m = Matrix::Zero(da * db, da * db);
  for (int i = 0; i < da; ++i) {
    DensityMatrix sigma = random_density(SubsystemLayout({db}), rng);
    if (commuting) {
      const RealVector q = random_probabilities(db, rng);
      sigma = DensityMatrix(hermitian_part(shared * q.cast<Complex>().asDiagonal() * shared.adjoint()));
    }
    m += s.probs[i] * oracle::kron(oracle::projector(s.basis_a.col(i)), sigma.matrix());
    s.conditionals.push_back(sigma);
  }
  s.state = DensityMatrix(SubsystemLayout({da, db}), hermitian_part(m));
  return s;
}

// X -> sum_i <a_i|X|a_i> tau_i, where the tau_i are random states supported
// on orthogonal blocks of size `block` inside a d * block output space.
inline KrausChannel measure_prepare_orthogonal(const Matrix& basis, int block, Rng& rng) {
  const int d = static_cast<int>(basis.rows());
  const int d_out = d * block;
  const Matrix spread = haar_unitary(d_out, rng);
  std::vector<Matrix> kraus;
  for (int i = 0; i < d; ++i) {
    const DensityMatrix tau = random_density(SubsystemLayout({block}), rng);
    const HermitianEigen e = eigh(tau.matrix());
    for (int k = 0; k < block; ++k) {
      Vector t = Vector::Zero(d_out);
      t.segment(i * block, block) = e.vectors.col(k);
      t = spread * t;
      kraus.push_back(std::sqrt(std::max(e.values[k], 0.0)) * t * basis.col(i).adjoint());
    }
  }
  return KrausChannel(kraus);
}

}  // namespace fixtures
