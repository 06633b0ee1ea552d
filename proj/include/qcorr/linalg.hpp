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

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qcorr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Numerical tolerances shared by all modules.
namespace tol {
inline constexpr double kHermitian = 1e-10;   // max |M - M^dagger| entry
inline constexpr double kPsd = 1e-10;         // eigenvalue floor before clipping
inline constexpr double kTrace = 1e-10;       // |Tr rho - 1|
inline constexpr double kSupport = 1e-10;     // eigenvalues below count as kernel
inline constexpr double kNumeric = 1e-9;      // general slack
inline constexpr double kClassical = 1e-8;    // classifier residual
inline constexpr double kDegenerate = 1e-8;   // eigenvalue gap treated as degenerate
inline constexpr double kBroadcast = 1e-9;    // broadcast marginal residual
}  // namespace tol

struct HermitianEigen {
  RealVector values;  // ascending
  Matrix vectors;     // columns are eigenvectors
};

// Eigendecomposition of the Hermitian part of m.
HermitianEigen eigh(const Matrix& m);
RealVector eigvalsh(const Matrix& m);

Matrix hermitian_part(const Matrix& m);
// Largest entry of |m - m^dagger|.
double hermiticity_residual(const Matrix& m);
Matrix kron(const Matrix& a, const Matrix& b);
Matrix identity(Index d);
// |i><j| in dimension d.
Matrix matrix_unit(Index d, Index i, Index j);

// f applied to the spectrum: V f(Lambda) V^dagger.
template <typename F>
Matrix spectral_map(const HermitianEigen& e, F&& f) {
  RealVector mapped(e.values.size());
  for (Index k = 0; k < e.values.size(); ++k) mapped(k) = f(e.values(k));
  return e.vectors * mapped.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

// Square root of a PSD matrix; eigenvalues below zero are clipped.
Matrix sqrt_psd(const Matrix& m);
// Pseudo-inverse square root: eigenvalues <= cut are mapped to zero.
Matrix inv_sqrt_on_support(const Matrix& m, double cut = tol::kSupport);
// Projector onto eigenvectors with eigenvalue > cut.
Matrix support_projector(const Matrix& m, double cut = tol::kSupport);
// Sum of singular values of a Hermitian matrix.
double trace_norm_hermitian(const Matrix& m);

// Shannon entropy in bits of a nonnegative vector normalized to its sum.
// Entries below zero are clipped; 0 log 0 = 0.
double entropy_bits(std::span<const double> p);
double entropy_bits(const RealVector& p);

// Von Neumann entropy in bits of a PSD matrix of arbitrary trace (it is
// normalized first). Negative eigenvalues are clipped without complaint.
double matrix_entropy_bits(const Matrix& m);

}  // namespace qcorr
