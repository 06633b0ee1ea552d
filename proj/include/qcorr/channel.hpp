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

#include <string>
#include <vector>

#include "qcorr/linalg.hpp"
#include "qcorr/state.hpp"

namespace qcorr {

// Finite POVM on one subsystem: PSD elements summing to the identity.
class Povm {
 public:
  explicit Povm(std::vector<Matrix> elements);

  // Rank-one POVM with elements |v_k><v_k| for the columns v_k of vectors.
  static Povm from_vectors(const Matrix& vectors);
  // Complete projective measurement onto the columns of a unitary.
  static Povm from_basis(const Matrix& basis);
  static Povm computational(int d);

  const std::vector<Matrix>& elements() const { return elements_; }
  int outcome_count() const { return static_cast<int>(elements_.size()); }
  int dim() const { return static_cast<int>(elements_.front().rows()); }
  // Largest entry of |sum_k M_k - I|.
  double completeness_residual() const;

 private:
  std::vector<Matrix> elements_;
};

// Completely positive map X -> sum_k K_k X K_k^dagger. Not necessarily trace
// preserving. out_dims optionally splits the output into subsystems.
class KrausMap {
 public:
  KrausMap(std::vector<Matrix> kraus, std::vector<int> out_dims = {});

  const std::vector<Matrix>& kraus() const { return kraus_; }
  int d_in() const { return d_in_; }
  int d_out() const { return d_out_; }
  const std::vector<int>& out_dims() const { return out_dims_; }

  Matrix apply(const Matrix& x) const;
  // Largest entry of |sum_k K_k^dagger K_k - I|.
  double trace_preservation_residual() const;
  bool is_trace_preserving(double tolerance = tol::kNumeric) const {
    return trace_preservation_residual() <= tolerance;
  }

 private:
  std::vector<Matrix> kraus_;
  int d_in_ = 0;
  int d_out_ = 0;
  std::vector<int> out_dims_;
};

// Trace-preserving KrausMap; construction checks sum K^dagger K = I.
class KrausChannel : public KrausMap {
 public:
  KrausChannel(std::vector<Matrix> kraus, std::vector<int> out_dims = {});
  explicit KrausChannel(const KrausMap& map);

  static KrausChannel identity(int d);
  static KrausChannel unitary(const Matrix& u);
  // Isometry V (rows >= cols) as the channel X -> V X V^dagger.
  static KrausChannel isometry(const Matrix& v, std::vector<int> out_dims = {});
  // X -> Tr(X) I/d.
  static KrausChannel fully_depolarizing(int d);
  // X -> Tr(X) tau.
  static KrausChannel replacement(int d_in, const DensityMatrix& tau);
  // Trace out every position of `dims` not listed in keep.
  static KrausChannel partial_trace(const std::vector<int>& dims, const std::vector<int>& keep);
  // X -> X (x) tau, with the output split as {d_in, dim(tau)}.
  static KrausChannel append(int d_in, const DensityMatrix& tau);
};

// Quantum-to-classical map X -> sum_i Tr(M_i X)|i><i|, realized with Kraus
// operators sqrt(l_ik)|i><psi_ik| from M_i = sum_k l_ik |psi_ik><psi_ik|.
KrausChannel measurement_channel(const Povm& povm);

// Applies a map to the whole state. The output layout is the map's out_dims.
DensityMatrix apply_channel(const KrausMap& ch, const DensityMatrix& rho);
// Applies ch (x) id on the other parties; the target position is replaced by
// ch.out_dims().
DensityMatrix apply_local(const KrausMap& ch, int position, const DensityMatrix& rho);
Matrix apply_local(const KrausMap& ch, int position, const SubsystemLayout& layout, const Matrix& x);

// Y -> sum_k K_k^dagger Y K_k. Unital whenever ch is trace preserving.
KrausMap transpose_channel(const KrausMap& ch);

KrausMap compose(const KrausMap& second, const KrausMap& first);
KrausChannel compose(const KrausChannel& second, const KrausChannel& first);
KrausMap tensor_channels(const KrausMap& a, const KrausMap& b);
KrausChannel tensor_channels(const KrausChannel& a, const KrausChannel& b);

struct RecoveredState {
  DensityMatrix state;
  double trace_drift = 0.0;  // |Tr(output) - 1| before renormalization
  bool renormalized = false;
};

// Petz recovery channel of `channel` with respect to the reference state
//   R[X] = s^{1/2} T[ C^{-1/2} X C^{-1/2} ] s^{1/2},  C = channel[s],
// where T is the transpose channel. C^{-1/2} is the pseudo-inverse on the
// support of C (kernel cut at tau_supp), so R extends by zero on ker C and is
// trace preserving on supp C only.
class PetzRecovery {
 public:
  PetzRecovery(const KrausMap& channel, const DensityMatrix& reference);

  int d_in() const { return d_in_; }
  int d_out() const { return d_out_; }
  const SubsystemLayout& output_layout() const { return output_layout_; }

  Matrix apply(const Matrix& x) const;
  // Applies the map and renormalizes when the trace drifts beyond tau_tr.
  RecoveredState recover(const DensityMatrix& x) const;
  // Kraus form from the eigendecomposition of the Choi matrix.
  KrausMap kraus_map() const;
  bool trace_preserving() const { return full_support_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  KrausMap transpose_;
  Matrix reference_sqrt_;
  Matrix image_inv_sqrt_;
  SubsystemLayout output_layout_;
  int d_in_ = 0;
  int d_out_ = 0;
  bool full_support_ = true;
  std::vector<std::string> warnings_;
};

PetzRecovery petz_recovery(const KrausMap& ch, const DensityMatrix& reference);

}  // namespace qcorr
