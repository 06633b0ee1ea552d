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

#include "qcorr/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcorr/errors.hpp"

namespace qcorr {
namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

Povm::Povm(std::vector<Matrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw ValidationError("POVM has no elements");
  const Index d = elements_.front().rows();
  Matrix total = Matrix::Zero(d, d);
  for (size_t k = 0; k < elements_.size(); ++k) {
    Matrix& m = elements_[k];
    if (m.rows() != d || m.cols() != d) throw ValidationError("POVM elements differ in shape");
    if (!(hermiticity_residual(m) <= tol::kHermitian)) {
      throw ValidationError("POVM element " + std::to_string(k) + " is not Hermitian");
    }
    m = hermitian_part(m);
    const double min_eig = eigvalsh(m).minCoeff();
    if (!(min_eig >= -tol::kPsd)) {
      std::ostringstream os;
      os << "POVM element " << k << " has eigenvalue " << min_eig;
      throw ValidationError(os.str());
    }
    total += m;
  }
  const double residual = max_abs(total - identity(d));
  if (!(residual <= tol::kNumeric)) {
    std::ostringstream os;
    os << "POVM elements do not sum to identity (residual " << residual << ")";
    throw ValidationError(os.str());
  }
}

Povm Povm::from_vectors(const Matrix& vectors) {
  std::vector<Matrix> elements;
  elements.reserve(static_cast<size_t>(vectors.cols()));
  for (Index k = 0; k < vectors.cols(); ++k) elements.push_back(vectors.col(k) * vectors.col(k).adjoint());
  return Povm(std::move(elements));
}

Povm Povm::from_basis(const Matrix& basis) {
  if (basis.rows() != basis.cols()) throw DimensionError("basis matrix must be square");
  return from_vectors(basis);
}

Povm Povm::computational(int d) { return from_basis(identity(d)); }

double Povm::completeness_residual() const {
  Matrix total = Matrix::Zero(dim(), dim());
  for (const auto& m : elements_) total += m;
  return max_abs(total - identity(dim()));
}

KrausMap::KrausMap(std::vector<Matrix> kraus, std::vector<int> out_dims)
    : kraus_(std::move(kraus)), out_dims_(std::move(out_dims)) {
  if (kraus_.empty()) throw ValidationError("map has no Kraus operators");
  d_out_ = static_cast<int>(kraus_.front().rows());
  d_in_ = static_cast<int>(kraus_.front().cols());
  for (const auto& k : kraus_) {
    if (k.rows() != d_out_ || k.cols() != d_in_) throw DimensionError("Kraus operators differ in shape");
  }
  if (out_dims_.empty()) out_dims_ = {d_out_};
  int product = 1;
  for (int d : out_dims_) {
    if (d < 1) throw DimensionError("output sub-dimension must be positive");
    product *= d;
  }
  if (product != d_out_) throw DimensionError("declared output sub-dimensions do not multiply to d_out");
}

Matrix KrausMap::apply(const Matrix& x) const {
  if (x.rows() != d_in_ || x.cols() != d_in_) throw DimensionError("map input dimension mismatch");
  Matrix out = Matrix::Zero(d_out_, d_out_);
  for (const auto& k : kraus_) out.noalias() += k * x * k.adjoint();
  return out;
}

double KrausMap::trace_preservation_residual() const {
  Matrix total = Matrix::Zero(d_in_, d_in_);
  for (const auto& k : kraus_) total.noalias() += k.adjoint() * k;
  return max_abs(total - identity(d_in_));
}

KrausChannel::KrausChannel(std::vector<Matrix> kraus, std::vector<int> out_dims)
    : KrausMap(std::move(kraus), std::move(out_dims)) {
  const double residual = trace_preservation_residual();
  if (!(residual <= tol::kNumeric)) {
    std::ostringstream os;
    os << "Kraus operators are not trace preserving (residual " << residual << ")";
    throw ValidationError(os.str());
  }
}

KrausChannel::KrausChannel(const KrausMap& map) : KrausChannel(map.kraus(), map.out_dims()) {}

KrausChannel KrausChannel::identity(int d) { return KrausChannel({qcorr::identity(d)}); }

KrausChannel KrausChannel::unitary(const Matrix& u) {
  if (u.rows() != u.cols()) throw DimensionError("unitary must be square");
  return KrausChannel({u});
}

KrausChannel KrausChannel::isometry(const Matrix& v, std::vector<int> out_dims) {
  return KrausChannel({v}, std::move(out_dims));
}

KrausChannel KrausChannel::fully_depolarizing(int d) {
  std::vector<Matrix> kraus;
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) kraus.push_back(scale * matrix_unit(d, i, j));
  }
  return KrausChannel(std::move(kraus));
}

KrausChannel KrausChannel::replacement(int d_in, const DensityMatrix& tau) {
  const HermitianEigen e = eigh(tau.matrix());
  std::vector<Matrix> kraus;
  for (Index m = 0; m < e.values.size(); ++m) {
    if (e.values(m) <= 0.0) continue;
    for (int j = 0; j < d_in; ++j) {
      Matrix k = Matrix::Zero(tau.dim(), d_in);
      k.col(j) = std::sqrt(e.values(m)) * e.vectors.col(m);
      kraus.push_back(std::move(k));
    }
  }
  return KrausChannel(std::move(kraus), tau.layout().dims());
}

KrausChannel KrausChannel::partial_trace(const std::vector<int>& dims, const std::vector<int>& keep) {
  const SubsystemLayout layout(dims);
  // Kraus operators are (<t| on traced parties) (x) I on kept parties,
  // assembled after permuting kept parties to the front.
  std::vector<int> sorted_keep = keep;
  std::sort(sorted_keep.begin(), sorted_keep.end());
  std::vector<int> perm = sorted_keep;
  for (int p = 0; p < layout.size(); ++p) {
    if (!std::binary_search(sorted_keep.begin(), sorted_keep.end(), p)) perm.push_back(p);
  }
  const SubsystemLayout kept_layout = layout.restrict_to(sorted_keep);
  const int kept = kept_layout.total_dim();
  const int traced = layout.total_dim() / kept;
  const Matrix p = permutation_operator(layout, perm);
  std::vector<Matrix> kraus;
  for (int t = 0; t < traced; ++t) {
    Matrix bra = Matrix::Zero(1, traced);
    bra(0, t) = 1.0;
    kraus.push_back(kron(qcorr::identity(kept), bra) * p);
  }
  return KrausChannel(std::move(kraus), kept_layout.dims());
}

KrausChannel KrausChannel::append(int d_in, const DensityMatrix& tau) {
  const HermitianEigen e = eigh(tau.matrix());
  std::vector<Matrix> kraus;
  for (Index m = 0; m < e.values.size(); ++m) {
    if (e.values(m) <= 0.0) continue;
    kraus.push_back(kron(qcorr::identity(d_in), std::sqrt(e.values(m)) * e.vectors.col(m)));
  }
  std::vector<int> out = {d_in};
  for (int d : tau.layout().dims()) out.push_back(d);
  return KrausChannel(std::move(kraus), std::move(out));
}

KrausChannel measurement_channel(const Povm& povm) {
  const int n = povm.outcome_count();
  const int d = povm.dim();
  std::vector<Matrix> kraus;
  for (int i = 0; i < n; ++i) {
    const HermitianEigen e = eigh(povm.elements()[i]);
    for (Index k = 0; k < e.values.size(); ++k) {
      if (e.values(k) <= 0.0) continue;
      Matrix op = Matrix::Zero(n, d);
      op.row(i) = std::sqrt(e.values(k)) * e.vectors.col(k).adjoint();
      kraus.push_back(std::move(op));
    }
  }
  return KrausChannel(std::move(kraus));
}

DensityMatrix apply_channel(const KrausMap& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.d_in()) throw DimensionError("channel input dimension does not match state");
  return make_trusted(SubsystemLayout(ch.out_dims()), ch.apply(rho.matrix()));
}

Matrix apply_local(const KrausMap& ch, int position, const SubsystemLayout& layout, const Matrix& x) {
  if (position < 0 || position >= layout.size()) throw DimensionError("invalid subsystem position");
  if (layout.dim(position) != ch.d_in()) {
    throw DimensionError("channel input dimension " + std::to_string(ch.d_in()) +
                         " does not match subsystem dimension " + std::to_string(layout.dim(position)));
  }
  if (x.rows() != layout.total_dim()) throw DimensionError("matrix does not match layout");
  int left = 1, right = 1;
  for (int p = 0; p < position; ++p) left *= layout.dim(p);
  for (int p = position + 1; p < layout.size(); ++p) right *= layout.dim(p);
  const int d_out = left * ch.d_out() * right;
  Matrix out = Matrix::Zero(d_out, d_out);
  const Matrix id_left = identity(left);
  const Matrix id_right = identity(right);
  for (const auto& k : ch.kraus()) {
    const Matrix big = kron(kron(id_left, k), id_right);
    out.noalias() += big * x * big.adjoint();
  }
  return out;
}

DensityMatrix apply_local(const KrausMap& ch, int position, const DensityMatrix& rho) {
  Matrix out = apply_local(ch, position, rho.layout(), rho.matrix());
  return make_trusted(rho.layout().with_replaced(position, ch.out_dims()), std::move(out));
}

KrausMap transpose_channel(const KrausMap& ch) {
  std::vector<Matrix> adj;
  adj.reserve(ch.kraus().size());
  for (const auto& k : ch.kraus()) adj.push_back(k.adjoint());
  return KrausMap(std::move(adj));
}

KrausMap compose(const KrausMap& second, const KrausMap& first) {
  if (second.d_in() != first.d_out()) throw DimensionError("cannot compose: dimension mismatch");
  std::vector<Matrix> kraus;
  for (const auto& a : second.kraus()) {
    for (const auto& b : first.kraus()) kraus.push_back(a * b);
  }
  return KrausMap(std::move(kraus), second.out_dims());
}

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
  return KrausChannel(compose(static_cast<const KrausMap&>(second), static_cast<const KrausMap&>(first)));
}

KrausMap tensor_channels(const KrausMap& a, const KrausMap& b) {
  std::vector<Matrix> kraus;
  for (const auto& x : a.kraus()) {
    for (const auto& y : b.kraus()) kraus.push_back(kron(x, y));
  }
  std::vector<int> out = a.out_dims();
  out.insert(out.end(), b.out_dims().begin(), b.out_dims().end());
  return KrausMap(std::move(kraus), std::move(out));
}

KrausChannel tensor_channels(const KrausChannel& a, const KrausChannel& b) {
  return KrausChannel(tensor_channels(static_cast<const KrausMap&>(a), static_cast<const KrausMap&>(b)));
}

PetzRecovery::PetzRecovery(const KrausMap& channel, const DensityMatrix& reference)
    : transpose_(transpose_channel(channel)), output_layout_(reference.layout()) {
  if (reference.dim() != channel.d_in()) {
    throw DimensionError("reference state dimension does not match channel input");
  }
  d_in_ = channel.d_out();
  d_out_ = channel.d_in();
  reference_sqrt_ = sqrt_psd(reference.matrix());
  const Matrix image = channel.apply(reference.matrix());
  image_inv_sqrt_ = inv_sqrt_on_support(image);
  if (eigvalsh(image).minCoeff() <= tol::kSupport) {
    full_support_ = false;
    warnings_.push_back(
        "channel image of the reference is rank deficient; recovery is extended by zero on its kernel "
        "and is trace preserving only on its support");
  }
  if (eigvalsh(reference.matrix()).minCoeff() <= tol::kSupport) {
    warnings_.push_back("reference state is not full rank");
  }
}

Matrix PetzRecovery::apply(const Matrix& x) const {
  if (x.rows() != d_in_ || x.cols() != d_in_) throw DimensionError("recovery input dimension mismatch");
  return reference_sqrt_ * transpose_.apply(image_inv_sqrt_ * x * image_inv_sqrt_) * reference_sqrt_;
}

RecoveredState PetzRecovery::recover(const DensityMatrix& x) const {
  Matrix y = apply(x.matrix());
  const double tr = y.trace().real();
  const double drift = std::abs(tr - 1.0);
  bool renormalized = false;
  if (drift > tol::kTrace && tr > 0.0) {
    y /= tr;
    renormalized = true;
  }
  return {DensityMatrix(output_layout_, std::move(y)), drift, renormalized};
}

KrausMap PetzRecovery::kraus_map() const {
  const int n = d_in_ * d_out_;
  Matrix choi = Matrix::Zero(n, n);
  for (int i = 0; i < d_in_; ++i) {
    for (int j = 0; j < d_in_; ++j) {
      choi.block(i * d_out_, j * d_out_, d_out_, d_out_) = apply(matrix_unit(d_in_, i, j));
    }
  }
  const HermitianEigen e = eigh(choi);
  const double cut = 1e-13 * std::max(1.0, e.values.maxCoeff());
  std::vector<Matrix> kraus;
  for (Index k = 0; k < e.values.size(); ++k) {
    if (e.values(k) <= cut) continue;
    Matrix op(d_out_, d_in_);
    for (int i = 0; i < d_in_; ++i) {
      for (int o = 0; o < d_out_; ++o) op(o, i) = e.vectors(i * d_out_ + o, k);
    }
    kraus.push_back(std::sqrt(e.values(k)) * op);
  }
  if (kraus.empty()) kraus.push_back(Matrix::Zero(d_out_, d_in_));
  return KrausMap(std::move(kraus), output_layout_.dims());
}

PetzRecovery petz_recovery(const KrausMap& ch, const DensityMatrix& reference) {
  return PetzRecovery(ch, reference);
}

}  // namespace qcorr
