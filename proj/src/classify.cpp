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

#include "qcorr/classify.hpp"

#include <algorithm>
#include <cmath>

#include "qcorr/errors.hpp"

namespace qcorr {
namespace {

void require_bipartite(const DensityMatrix& rho) {
  if (rho.parties() != 2) {
    throw DimensionError("expected a bipartite state, got " + std::to_string(rho.parties()) + " parties");
  }
}

// Labels consecutive ascending eigenvalues closer than kDegenerate alike.
std::vector<int> degenerate_blocks(const RealVector& values) {
  std::vector<int> labels(values.size());
  int label = 0;
  for (Index k = 0; k < values.size(); ++k) {
    if (k > 0 && values(k) - values(k - 1) >= tol::kDegenerate) ++label;
    labels[k] = label;
  }
  return labels;
}

// Hermitian family whose joint eigenbases are the classical bases of A:
// with S_kl = (I (x) <k|) rho (I (x) |l>), the operators S_kk, S_kl + S_lk
// and i(S_kl - S_lk).
std::vector<Matrix> conditional_family(const Matrix& rho, int da, int db) {
  auto slice = [&](int k, int l) {
    Matrix s(da, da);
    for (int i = 0; i < da; ++i) {
      for (int j = 0; j < da; ++j) s(i, j) = rho(i * db + k, j * db + l);
    }
    return s;
  };
  std::vector<Matrix> family;
  for (int k = 0; k < db; ++k) {
    family.push_back(hermitian_part(slice(k, k)));
    for (int l = k + 1; l < db; ++l) {
      const Matrix skl = slice(k, l);
      const Matrix slk = slice(l, k);
      family.push_back(skl + slk);
      family.push_back(Complex(0.0, 1.0) * (skl - slk));
    }
  }
  return family;
}

double off_block_magnitude(const Matrix& rho, const Matrix& basis_a, int db) {
  const Matrix u = kron(basis_a, identity(db));
  const Matrix rotated = u.adjoint() * rho * u;
  double worst = 0.0;
  for (Index r = 0; r < rotated.rows(); ++r) {
    for (Index c = 0; c < rotated.cols(); ++c) {
      if (r / db != c / db) worst = std::max(worst, std::abs(rotated(r, c)));
    }
  }
  return worst;
}

struct OneSided {
  Matrix basis;
  double residual;
};

OneSided classical_basis_of_first(const DensityMatrix& rho) {
  const int da = rho.layout().dim(0);
  const int db = rho.layout().dim(1);
  const HermitianEigen marginal = eigh(partial_trace(rho.matrix(), rho.layout(), std::vector<int>{0}));
  const std::vector<int> labels = degenerate_blocks(marginal.values);
  const std::vector<Matrix> family = conditional_family(rho.matrix(), da, db);
  const JointDiagonalization jd = joint_diagonalize(family, marginal.vectors, labels);
  return {jd.basis, off_block_magnitude(rho.matrix(), jd.basis, db)};
}

const std::vector<int> kSwap = {1, 0};

}  // namespace

std::string to_string(Classicality kind) {
  switch (kind) {
    case Classicality::CC: return "CC";
    case Classicality::CQ: return "CQ";
    case Classicality::QC: return "QC";
    case Classicality::Neither: return "neither";
  }
  return "neither";
}

std::string to_string(PptLabel label) { return label == PptLabel::Ppt ? "ppt" : "npt"; }

JointDiagonalization joint_diagonalize(std::span<const Matrix> family, const Matrix& initial,
                                       std::span<const int> block_labels, double tolerance, int max_sweeps) {
  const Index d = initial.rows();
  if (initial.cols() != d) throw DimensionError("initial basis must be square");
  if (static_cast<Index>(block_labels.size()) != d) throw DimensionError("one block label per column required");
  std::vector<Matrix> a;
  a.reserve(family.size());
  for (const auto& m : family) {
    if (m.rows() != d || m.cols() != d) throw DimensionError("family member has the wrong shape");
    a.push_back(initial.adjoint() * m * initial);
  }
  Matrix v = initial;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (Index p = 0; p < d; ++p) {
      for (Index q = p + 1; q < d; ++q) {
        if (block_labels[p] != block_labels[q]) continue;
        Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
        for (const auto& m : a) {
          const Complex h0 = m(p, p) - m(q, q);
          const Complex h1 = m(p, q) + m(q, p);
          const Complex h2 = Complex(0.0, 1.0) * (m(q, p) - m(p, q));
          const Eigen::Vector3cd h(h0, h1, h2);
          g += (h * h.adjoint()).real();
        }
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(g);
        Eigen::Vector3d angles = es.eigenvectors().col(2);
        if (angles(0) < 0.0) angles = -angles;
        const double c = std::sqrt(0.5 + angles(0) / 2.0);
        const Complex s = 0.5 * Complex(angles(1), -angles(2)) / c;
        if (std::abs(s) <= tolerance) continue;
        rotated = true;
        Eigen::Matrix2cd rot;
        rot << c, -std::conj(s), s, c;
        auto rotate_cols = [&](Matrix& m) {
          const Vector cp = m.col(p), cq = m.col(q);
          m.col(p) = cp * rot(0, 0) + cq * rot(1, 0);
          m.col(q) = cp * rot(0, 1) + cq * rot(1, 1);
        };
        rotate_cols(v);
        for (auto& m : a) {
          const Eigen::RowVectorXcd rp = m.row(p), rq = m.row(q);
          m.row(p) = std::conj(rot(0, 0)) * rp + std::conj(rot(1, 0)) * rq;
          m.row(q) = std::conj(rot(0, 1)) * rp + std::conj(rot(1, 1)) * rq;
          rotate_cols(m);
        }
      }
    }
    if (!rotated) break;
  }
  double off = 0.0;
  for (const auto& m : a) {
    for (Index p = 0; p < d; ++p) {
      for (Index q = 0; q < d; ++q) {
        if (p != q) off = std::max(off, std::abs(m(p, q)));
      }
    }
  }
  return {v, off, sweep};
}

ClassicalityVerdict is_cq(const DensityMatrix& rho, double tolerance, Side side) {
  require_bipartite(rho);
  ClassicalityVerdict verdict;
  if (side == Side::A) {
    const OneSided a = classical_basis_of_first(rho);
    verdict.basis_a = a.basis;
    verdict.residual_a = a.residual;
    verdict.residual = a.residual;
    verdict.kind = a.residual <= tolerance ? Classicality::CQ : Classicality::Neither;
  } else {
    const OneSided b = classical_basis_of_first(permute_subsystems(rho, kSwap));
    verdict.basis_b = b.basis;
    verdict.residual_b = b.residual;
    verdict.residual = b.residual;
    verdict.kind = b.residual <= tolerance ? Classicality::QC : Classicality::Neither;
  }
  return verdict;
}

ClassicalityVerdict is_cc(const DensityMatrix& rho, double tolerance) {
  require_bipartite(rho);
  const OneSided a = classical_basis_of_first(rho);
  const OneSided b = classical_basis_of_first(permute_subsystems(rho, kSwap));
  const Matrix u = kron(a.basis, b.basis);
  const Matrix rotated = u.adjoint() * rho.matrix() * u;
  double off = 0.0;
  for (Index r = 0; r < rotated.rows(); ++r) {
    for (Index c = 0; c < rotated.cols(); ++c) {
      if (r != c) off = std::max(off, std::abs(rotated(r, c)));
    }
  }
  ClassicalityVerdict verdict;
  verdict.basis_a = a.basis;
  verdict.basis_b = b.basis;
  verdict.residual = off;
  verdict.residual_a = a.residual;
  verdict.residual_b = b.residual;
  if (off <= tolerance) {
    verdict.kind = Classicality::CC;
  } else if (a.residual <= tolerance) {
    verdict.kind = Classicality::CQ;
  } else if (b.residual <= tolerance) {
    verdict.kind = Classicality::QC;
  } else {
    verdict.kind = Classicality::Neither;
  }
  return verdict;
}

double commute_residual(std::span<const Matrix> ops) {
  double worst = 0.0;
  for (size_t i = 0; i < ops.size(); ++i) {
    for (size_t j = i + 1; j < ops.size(); ++j) {
      if (ops[i].rows() != ops[j].rows() || ops[i].cols() != ops[j].cols()) {
        throw DimensionError("commutator of operators with different shapes");
      }
      worst = std::max(worst, (ops[i] * ops[j] - ops[j] * ops[i]).norm());
    }
  }
  return worst;
}

double min_partial_transpose_eigenvalue(const DensityMatrix& rho) {
  require_bipartite(rho);
  return eigvalsh(partial_transpose(rho, 1)).minCoeff();
}

PptLabel ppt_label(const DensityMatrix& rho) {
  return min_partial_transpose_eigenvalue(rho) >= -tol::kPsd ? PptLabel::Ppt : PptLabel::Npt;
}

}  // namespace qcorr
