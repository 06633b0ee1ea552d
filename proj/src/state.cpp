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

#include "qcorr/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qcorr/errors.hpp"

namespace qcorr {
namespace {

std::vector<int> digits_of(int index, const std::vector<int>& dims) {
  std::vector<int> digits(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    digits[k] = index % dims[k];
    index /= dims[k];
  }
  return digits;
}

int index_of(const std::vector<int>& digits, const std::vector<int>& dims) {
  int index = 0;
  for (size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + digits[k];
  return index;
}

void check_positions(std::span<const int> positions, int parties, bool allow_empty) {
  if (!allow_empty && positions.empty()) throw DimensionError("subsystem selection is empty");
  std::vector<bool> seen(parties, false);
  for (int p : positions) {
    if (p < 0 || p >= parties) {
      throw DimensionError("subsystem position " + std::to_string(p) + " out of range for " +
                           std::to_string(parties) + " parties");
    }
    if (seen[p]) throw DimensionError("subsystem position " + std::to_string(p) + " repeated");
    seen[p] = true;
  }
}

void validate_density(const SubsystemLayout& layout, const Matrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("matrix is not square");
  if (m.rows() != layout.total_dim()) {
    throw ValidationError("matrix dimension " + std::to_string(m.rows()) +
                          " does not match layout product " + std::to_string(layout.total_dim()));
  }
  const double herm = hermiticity_residual(m);
  if (!(herm <= tol::kHermitian)) {
    std::ostringstream os;
    os << "not Hermitian: max |M - M^dagger| = " << herm;
    throw ValidationError(os.str());
  }
  const double min_eig = eigvalsh(m).minCoeff();
  if (!(min_eig >= -tol::kPsd)) {
    std::ostringstream os;
    os << "not positive semidefinite: min eigenvalue = " << min_eig;
    throw ValidationError(os.str());
  }
  const double tr = m.trace().real();
  if (!(std::abs(tr - 1.0) <= tol::kTrace)) {
    std::ostringstream os;
    os << "trace is " << tr << ", expected 1";
    throw ValidationError(os.str());
  }
}

}  // namespace

SubsystemLayout::SubsystemLayout(std::vector<int> dims, std::vector<std::string> labels)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
  if (dims_.empty()) throw DimensionError("layout needs at least one subsystem");
  for (int d : dims_) {
    if (d < 1) throw DimensionError("subsystem dimension must be >= 1, got " + std::to_string(d));
  }
  if (!labels_.empty() && labels_.size() != dims_.size()) {
    throw DimensionError("label count does not match subsystem count");
  }
}

int SubsystemLayout::dim(int position) const {
  if (position < 0 || position >= size()) throw DimensionError("invalid subsystem position");
  return dims_[position];
}

int SubsystemLayout::total_dim() const {
  return std::accumulate(dims_.begin(), dims_.end(), 1, std::multiplies<>());
}

SubsystemLayout SubsystemLayout::restrict_to(std::span<const int> positions) const {
  check_positions(positions, size(), false);
  std::vector<int> dims;
  std::vector<std::string> labels;
  for (int p : positions) {
    dims.push_back(dims_[p]);
    if (!labels_.empty()) labels.push_back(labels_[p]);
  }
  return SubsystemLayout(std::move(dims), std::move(labels));
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout& other) const {
  std::vector<int> dims = dims_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  std::vector<std::string> labels;
  if (!labels_.empty() && !other.labels_.empty()) {
    labels = labels_;
    labels.insert(labels.end(), other.labels_.begin(), other.labels_.end());
  }
  return SubsystemLayout(std::move(dims), std::move(labels));
}

SubsystemLayout SubsystemLayout::permuted(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != size()) throw DimensionError("permutation length mismatch");
  return restrict_to(perm);
}

SubsystemLayout SubsystemLayout::with_replaced(int position, std::span<const int> sub_dims) const {
  dim(position);
  std::vector<int> dims(dims_.begin(), dims_.begin() + position);
  dims.insert(dims.end(), sub_dims.begin(), sub_dims.end());
  dims.insert(dims.end(), dims_.begin() + position + 1, dims_.end());
  return SubsystemLayout(std::move(dims));
}

DensityMatrix::DensityMatrix(SubsystemLayout layout, Matrix matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  validate_density(layout_, matrix_);
  matrix_ = hermitian_part(matrix_);
}

DensityMatrix::DensityMatrix(Matrix matrix)
    : DensityMatrix(SubsystemLayout({static_cast<int>(matrix.rows())}), Matrix(matrix)) {}

DensityMatrix::DensityMatrix(Trusted, SubsystemLayout layout, Matrix matrix)
    : layout_(std::move(layout)), matrix_(hermitian_part(matrix)) {
  if (matrix_.rows() != layout_.total_dim()) throw DimensionError("layout does not match matrix");
}

DensityMatrix make_trusted(SubsystemLayout layout, Matrix matrix) {
  return DensityMatrix(DensityMatrix::Trusted{}, std::move(layout), std::move(matrix));
}

DensityMatrix DensityMatrix::pure(SubsystemLayout layout, const Vector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw ValidationError("zero state vector");
  const Vector v = psi / norm;
  return DensityMatrix(std::move(layout), v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(SubsystemLayout layout) {
  const int d = layout.total_dim();
  return DensityMatrix(std::move(layout), identity(d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::diagonal(SubsystemLayout layout, std::span<const double> probs) {
  Vector diag(static_cast<Index>(probs.size()));
  for (size_t k = 0; k < probs.size(); ++k) diag(static_cast<Index>(k)) = probs[k];
  Matrix m = diag.asDiagonal();
  return DensityMatrix(std::move(layout), std::move(m));
}

DensityMatrix DensityMatrix::basis_state(SubsystemLayout layout, int k) {
  const int d = layout.total_dim();
  if (k < 0 || k >= d) throw DimensionError("basis index out of range");
  return DensityMatrix(std::move(layout), matrix_unit(d, k, k));
}

DensityMatrix DensityMatrix::with_layout(SubsystemLayout layout) const {
  if (layout.total_dim() != dim()) throw DimensionError("layout does not match matrix dimension");
  return make_trusted(std::move(layout), matrix_);
}

ProbVector::ProbVector(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) throw ValidationError("empty probability vector");
  double total = 0.0;
  for (double& x : p_) {
    if (!(x >= -tol::kPsd)) throw ValidationError("negative probability " + std::to_string(x));
    x = std::max(x, 0.0);
    total += x;
  }
  if (!(std::abs(total - 1.0) <= tol::kTrace)) {
    throw ValidationError("probabilities sum to " + std::to_string(total) + ", expected 1");
  }
}

ClassicalJoint::ClassicalJoint(std::vector<int> shape, std::vector<double> p)
    : shape_(std::move(shape)), p_(std::move(p)) {
  size_t expected = 1;
  for (int s : shape_) {
    if (s < 1) throw ValidationError("joint distribution has an empty outcome axis");
    expected *= static_cast<size_t>(s);
  }
  if (shape_.empty() || expected != p_.size()) {
    throw ValidationError("joint distribution size does not match its shape");
  }
  double total = 0.0;
  for (double& x : p_) {
    if (!(x >= -tol::kPsd)) throw ValidationError("negative joint probability");
    x = std::max(x, 0.0);
    total += x;
  }
  if (!(std::abs(total - 1.0) <= tol::kTrace)) {
    throw ValidationError("joint probabilities sum to " + std::to_string(total));
  }
}

double ClassicalJoint::at(std::span<const int> index) const {
  if (index.size() != shape_.size()) throw DimensionError("index arity mismatch");
  return p_[index_of(std::vector<int>(index.begin(), index.end()), shape_)];
}

ClassicalJoint ClassicalJoint::marginal(std::span<const int> parties) const {
  check_positions(parties, static_cast<int>(shape_.size()), false);
  std::vector<int> shape;
  for (int k : parties) shape.push_back(shape_[k]);
  size_t total = 1;
  for (int s : shape) total *= static_cast<size_t>(s);
  std::vector<double> out(total, 0.0);
  for (size_t i = 0; i < p_.size(); ++i) {
    const auto digits = digits_of(static_cast<int>(i), shape_);
    std::vector<int> kept;
    for (int k : parties) kept.push_back(digits[k]);
    out[index_of(kept, shape)] += p_[i];
  }
  return ClassicalJoint(std::move(shape), std::move(out));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return make_trusted(a.layout().concat(b.layout()), kron(a.matrix(), b.matrix()));
}

DensityMatrix tensor(std::span<const DensityMatrix> factors) {
  if (factors.empty()) throw DimensionError("tensor of no factors");
  DensityMatrix out = factors[0];
  for (size_t k = 1; k < factors.size(); ++k) out = tensor(out, factors[k]);
  return out;
}

Matrix partial_trace(const Matrix& m, const SubsystemLayout& layout, std::span<const int> keep_in) {
  std::vector<int> keep(keep_in.begin(), keep_in.end());
  check_positions(keep, layout.size(), false);
  std::sort(keep.begin(), keep.end());
  const auto& dims = layout.dims();
  std::vector<int> traced;
  for (int p = 0; p < layout.size(); ++p) {
    if (!std::binary_search(keep.begin(), keep.end(), p)) traced.push_back(p);
  }
  std::vector<int> kept_dims, traced_dims;
  for (int p : keep) kept_dims.push_back(dims[p]);
  for (int p : traced) traced_dims.push_back(dims[p]);

  const int total = layout.total_dim();
  std::vector<int> kept_index(total), traced_index(total);
  for (int i = 0; i < total; ++i) {
    const auto digits = digits_of(i, dims);
    std::vector<int> kd, td;
    for (int p : keep) kd.push_back(digits[p]);
    for (int p : traced) td.push_back(digits[p]);
    kept_index[i] = index_of(kd, kept_dims);
    traced_index[i] = index_of(td, traced_dims);
  }
  int out_dim = 1;
  for (int d : kept_dims) out_dim *= d;
  Matrix out = Matrix::Zero(out_dim, out_dim);
  for (int i = 0; i < total; ++i) {
    for (int j = 0; j < total; ++j) {
      if (traced_index[i] == traced_index[j]) out(kept_index[i], kept_index[j]) += m(i, j);
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep_in) {
  std::vector<int> keep(keep_in.begin(), keep_in.end());
  check_positions(keep, rho.parties(), false);
  std::sort(keep.begin(), keep.end());
  return make_trusted(rho.layout().restrict_to(keep), partial_trace(rho.matrix(), rho.layout(), keep));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

Matrix permute_subsystems(const Matrix& m, const SubsystemLayout& layout, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != layout.size()) throw DimensionError("permutation length mismatch");
  check_positions(perm, layout.size(), false);
  const auto& dims = layout.dims();
  const auto out_dims = layout.permuted(perm).dims();
  const int total = layout.total_dim();
  std::vector<int> target(total);
  for (int i = 0; i < total; ++i) {
    const auto digits = digits_of(i, dims);
    std::vector<int> out_digits(perm.size());
    for (size_t k = 0; k < perm.size(); ++k) out_digits[k] = digits[perm[k]];
    target[i] = index_of(out_digits, out_dims);
  }
  Matrix out(total, total);
  for (int i = 0; i < total; ++i) {
    for (int j = 0; j < total; ++j) out(target[i], target[j]) = m(i, j);
  }
  return out;
}

Matrix permutation_operator(const SubsystemLayout& layout, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != layout.size()) throw DimensionError("permutation length mismatch");
  check_positions(perm, layout.size(), false);
  const auto& dims = layout.dims();
  const auto out_dims = layout.permuted(perm).dims();
  const int total = layout.total_dim();
  Matrix p = Matrix::Zero(total, total);
  for (int i = 0; i < total; ++i) {
    const auto digits = digits_of(i, dims);
    std::vector<int> out_digits(perm.size());
    for (size_t k = 0; k < perm.size(); ++k) out_digits[k] = digits[perm[k]];
    p(index_of(out_digits, out_dims), i) = 1.0;
  }
  return p;
}

DensityMatrix permute_subsystems(const DensityMatrix& rho, std::span<const int> perm) {
  return make_trusted(rho.layout().permuted(perm), permute_subsystems(rho.matrix(), rho.layout(), perm));
}

Matrix partial_transpose(const DensityMatrix& rho, int position) {
  const auto& dims = rho.layout().dims();
  rho.layout().dim(position);
  const int total = rho.dim();
  Matrix out(total, total);
  for (int i = 0; i < total; ++i) {
    const auto di = digits_of(i, dims);
    for (int j = 0; j < total; ++j) {
      auto a = di;
      auto b = digits_of(j, dims);
      std::swap(a[position], b[position]);
      out(index_of(a, dims), index_of(b, dims)) = rho.matrix()(i, j);
    }
  }
  return out;
}

double von_neumann_entropy(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("matrix is not square");
  const double herm = hermiticity_residual(m);
  if (!(herm <= tol::kHermitian)) throw ValidationError("entropy of a non-Hermitian matrix");
  const RealVector ev = eigvalsh(m);
  if (ev.size() > 0 && !(ev.minCoeff() >= -tol::kPsd)) {
    throw ValidationError("entropy of a matrix with eigenvalue below -tau_psd");
  }
  return entropy_bits(ev);
}

double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

double shannon_entropy(std::span<const double> p) { return entropy_bits(p); }

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("relative entropy of states with different dimensions");
  const HermitianEigen er = eigh(rho.matrix());
  const HermitianEigen es = eigh(sigma.matrix());
  double rho_log_rho = 0.0;
  for (Index k = 0; k < er.values.size(); ++k) {
    const double x = er.values(k);
    if (x > 0.0) rho_log_rho += x * std::log2(x);
  }
  // Diagonal of rho in sigma's eigenbasis.
  const Matrix rotated = es.vectors.adjoint() * rho.matrix() * es.vectors;
  double rho_log_sigma = 0.0;
  double kernel_weight = 0.0;
  for (Index k = 0; k < es.values.size(); ++k) {
    const double w = rotated(k, k).real();
    if (es.values(k) > tol::kSupport) {
      rho_log_sigma += w * std::log2(es.values(k));
    } else {
      kernel_weight += w;
    }
  }
  if (kernel_weight > tol::kSupport) return kInfinity;
  return std::max(rho_log_rho - rho_log_sigma, 0.0);
}

double trace_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("trace distance dimension mismatch");
  return 0.5 * trace_norm_hermitian(a - b);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return trace_distance(rho.matrix(), sigma.matrix());
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("fidelity dimension mismatch");
  const Matrix s = sqrt_psd(rho.matrix());
  const RealVector ev = eigvalsh(s * sigma.matrix() * s);
  double root_sum = 0.0;
  for (Index k = 0; k < ev.size(); ++k) root_sum += ev(k) > 0.0 ? std::sqrt(ev(k)) : 0.0;
  return std::clamp(root_sum * root_sum, 0.0, 1.0);
}

}  // namespace qcorr
