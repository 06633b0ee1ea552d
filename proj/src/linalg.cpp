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

#include "qcorr/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace qcorr {

HermitianEigen eigh(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m));
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector eigvalsh(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

double hermiticity_residual(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix identity(Index d) { return Matrix::Identity(d, d); }

Matrix matrix_unit(Index d, Index i, Index j) {
  Matrix e = Matrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

Matrix sqrt_psd(const Matrix& m) {
  return spectral_map(eigh(m), [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

Matrix inv_sqrt_on_support(const Matrix& m, double cut) {
  return spectral_map(eigh(m), [cut](double x) { return x > cut ? 1.0 / std::sqrt(x) : 0.0; });
}

Matrix support_projector(const Matrix& m, double cut) {
  return spectral_map(eigh(m), [cut](double x) { return x > cut ? 1.0 : 0.0; });
}

double trace_norm_hermitian(const Matrix& m) { return eigvalsh(m).cwiseAbs().sum(); }

double entropy_bits(std::span<const double> p) {
  double total = 0.0;
  for (double x : p) total += std::max(x, 0.0);
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (double x : p) {
    if (x <= 0.0) continue;
    const double q = x / total;
    h -= q * std::log2(q);
  }
  return std::max(h, 0.0);
}

double entropy_bits(const RealVector& p) {
  return entropy_bits(std::span<const double>(p.data(), static_cast<size_t>(p.size())));
}

double matrix_entropy_bits(const Matrix& m) { return entropy_bits(eigvalsh(m)); }

}  // namespace qcorr
