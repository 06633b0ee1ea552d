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

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "qcorr/linalg.hpp"

namespace qcorr {

// Ordered local dimensions of a multipartite Hilbert space. Subsystem 0 is
// the slowest-varying index of the row-major Kronecker convention.
class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  explicit SubsystemLayout(std::vector<int> dims, std::vector<std::string> labels = {});

  const std::vector<int>& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int size() const { return static_cast<int>(dims_.size()); }
  int dim(int position) const;
  int total_dim() const;

  SubsystemLayout restrict_to(std::span<const int> positions) const;
  SubsystemLayout concat(const SubsystemLayout& other) const;
  // Layout whose position k is this layout's position perm[k].
  SubsystemLayout permuted(std::span<const int> perm) const;
  // Replace one position by several sub-dimensions.
  SubsystemLayout with_replaced(int position, std::span<const int> sub_dims) const;

  bool operator==(const SubsystemLayout& other) const { return dims_ == other.dims_; }

 private:
  std::vector<int> dims_;
  std::vector<std::string> labels_;
};

// Hermitian, positive semidefinite, unit-trace matrix over a layout.
// Construction validates every invariant and throws ValidationError naming
// the first one that fails.
class DensityMatrix {
 public:
  DensityMatrix(SubsystemLayout layout, Matrix matrix);
  explicit DensityMatrix(Matrix matrix);  // single subsystem

  static DensityMatrix pure(SubsystemLayout layout, const Vector& psi);
  static DensityMatrix maximally_mixed(SubsystemLayout layout);
  static DensityMatrix diagonal(SubsystemLayout layout, std::span<const double> probs);
  // |k><k| in the computational basis.
  static DensityMatrix basis_state(SubsystemLayout layout, int k);

  const SubsystemLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  int parties() const { return layout_.size(); }

  DensityMatrix with_layout(SubsystemLayout layout) const;

 private:
  struct Trusted {};
  DensityMatrix(Trusted, SubsystemLayout layout, Matrix matrix);
  friend DensityMatrix make_trusted(SubsystemLayout, Matrix);

  SubsystemLayout layout_;
  Matrix matrix_;
};

// Hermitizes and wraps without validation. For results that are valid by
// construction (Kronecker products, partial traces, channel outputs).
DensityMatrix make_trusted(SubsystemLayout layout, Matrix matrix);

// Probability vector; entries in [-tau_psd, 0) are clipped to zero.
class ProbVector {
 public:
  explicit ProbVector(std::vector<double> p);
  const std::vector<double>& values() const { return p_; }
  size_t size() const { return p_.size(); }
  double operator[](size_t i) const { return p_[i]; }

 private:
  std::vector<double> p_;
};

// Joint distribution over one outcome index per measured party, stored
// row-major (first index slowest).
class ClassicalJoint {
 public:
  ClassicalJoint(std::vector<int> shape, std::vector<double> p);
  const std::vector<int>& shape() const { return shape_; }
  const std::vector<double>& values() const { return p_; }
  double at(std::span<const int> index) const;
  // Marginal over the listed parties (kept in the given order).
  ClassicalJoint marginal(std::span<const int> parties) const;

 private:
  std::vector<int> shape_;
  std::vector<double> p_;
};

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
DensityMatrix tensor(std::span<const DensityMatrix> factors);

// Keeps the listed positions (in ascending order) and traces out the rest.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep);

// Output position k carries input position perm[k].
DensityMatrix permute_subsystems(const DensityMatrix& rho, std::span<const int> perm);
Matrix permute_subsystems(const Matrix& m, const SubsystemLayout& layout, std::span<const int> perm);
Matrix partial_trace(const Matrix& m, const SubsystemLayout& layout, std::span<const int> keep);
// Unitary P with P m P^dagger = permute_subsystems(m, layout, perm).
Matrix permutation_operator(const SubsystemLayout& layout, std::span<const int> perm);

// Partial transpose of one position.
Matrix partial_transpose(const DensityMatrix& rho, int position);

double von_neumann_entropy(const DensityMatrix& rho);
double von_neumann_entropy(const Matrix& m);  // validates Hermiticity and positivity
double shannon_entropy(std::span<const double> p);

// Relative entropy in bits; +infinity when supp(rho) is not contained in
// supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance(const Matrix& a, const Matrix& b);
// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace qcorr
