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

#include "qcorr/linalg.hpp"
#include "qcorr/state.hpp"

namespace qcorr {

enum class Classicality { CC, CQ, QC, Neither };
enum class Side { A = 0, B = 1 };
enum class PptLabel { Ppt, Npt };

std::string to_string(Classicality kind);
std::string to_string(PptLabel label);

struct ClassicalityVerdict {
  Classicality kind = Classicality::Neither;
  std::optional<Matrix> basis_a;  // columns form the classical basis of A
  std::optional<Matrix> basis_b;
  // Max off-diagonal magnitude of rho in basis_a (x) basis_b.
  double residual = 0.0;
  // Max magnitude of the blocks of rho that are off-diagonal in the A (B)
  // candidate basis.
  double residual_a = 0.0;
  double residual_b = 0.0;
};

// Tests rho = sum p_ij |i><i| (x) |j><j|. Each side's candidate basis is the
// marginal eigenbasis refined, inside degenerate marginal eigenspaces, by
// joint diagonalization of the conditional operators <k|rho|l>.
ClassicalityVerdict is_cc(const DensityMatrix& rho, double tolerance = tol::kClassical);

// One-sided test: classical on `side` (kind CQ for side A, QC for side B).
ClassicalityVerdict is_cq(const DensityMatrix& rho, double tolerance = tol::kClassical, Side side = Side::A);

// Max over pairs of the Frobenius norm of [X, Y].
double commute_residual(std::span<const Matrix> ops);

double min_partial_transpose_eigenvalue(const DensityMatrix& rho);
PptLabel ppt_label(const DensityMatrix& rho);

struct JointDiagonalization {
  Matrix basis;         // unitary; columns are the common eigenvectors
  double off_diagonal;  // max off-diagonal magnitude after rotation
  int sweeps;
};

// Jacobi-style joint diagonalization of Hermitian matrices with complex
// Givens rotations, starting from `initial` (columns). Rotations are only
// applied between columns sharing a block label.
JointDiagonalization joint_diagonalize(std::span<const Matrix> family, const Matrix& initial,
                                       std::span<const int> block_labels, double tolerance = 1e-14,
                                       int max_sweeps = 200);

}  // namespace qcorr
