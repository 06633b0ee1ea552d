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

#include "qcorr/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include <Eigen/Eigenvalues>

#include "qcorr/errors.hpp"

namespace qcorr {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Matrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  }
  return g;
}

Matrix complex_from_params(std::span<const double> params, int rows, int cols) {
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const size_t k = 2 * static_cast<size_t>(j * rows + i);
      m(i, j) = Complex(params[k], params[k + 1]);
    }
  }
  return m;
}

RealVector params_from_complex(const Matrix& m) {
  RealVector p(2 * m.size());
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const Index k = 2 * (j * m.rows() + i);
      p(k) = m(i, j).real();
      p(k + 1) = m(i, j).imag();
    }
  }
  return p;
}

Matrix embedding(int rows, int cols) {
  Matrix e = Matrix::Zero(rows, cols);
  for (int k = 0; k < std::min(rows, cols); ++k) e(k, k) = 1.0;
  return e;
}

void check_length(std::span<const double> params, int expected, const char* what) {
  if (static_cast<int>(params.size()) != expected) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(expected) + " parameters, got " +
                         std::to_string(params.size()));
  }
}

struct RestartOutcome {
  double value = -std::numeric_limits<double>::infinity();
  RealVector x;
  int evals = 0;
  bool aborted = false;
  std::string message;
};

class NonFinite {};

// One restart: Nelder-Mead with dimension-adaptive coefficients, re-seeded
// at its best vertex until a rerun stops improving.
RestartOutcome run_restart(const Objective& objective, RealVector x0, const OptimizerConfig& cfg,
                           double initial_step) {
  const Index n = x0.size();
  RestartOutcome out;
  out.x = x0;

  auto eval = [&](const RealVector& x) {
    const double f = objective(x);
    ++out.evals;
    if (!std::isfinite(f)) throw NonFinite{};
    if (f > out.value) {
      out.value = f;
      out.x = x;
    }
    return -f;
  };

  try {
    if (n == 0) {
      eval(x0);
      return out;
    }
    const double dn = static_cast<double>(n);
    const double alpha = 1.0;
    const double gamma = 1.0 + 2.0 / dn;
    const double rho = 0.75 - 1.0 / (2.0 * dn);
    const double sigma = 1.0 - 1.0 / dn;

    double step = initial_step;
    double previous_best = -std::numeric_limits<double>::infinity();
    RealVector start = x0;
    while (out.evals < cfg.max_evals) {
      std::vector<RealVector> simplex(n + 1, start);
      std::vector<double> fv(n + 1);
      fv[0] = eval(start);
      for (Index i = 0; i < n && out.evals < cfg.max_evals; ++i) {
        simplex[i + 1](i) += step;
        fv[i + 1] = eval(simplex[i + 1]);
      }
      std::vector<Index> order(n + 1);
      while (out.evals < cfg.max_evals) {
        for (Index i = 0; i <= n; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return fv[a] < fv[b]; });
        const Index best = order[0], worst = order[n], second = order[n - 1];
        double diameter = 0.0;
        for (Index i = 1; i <= n; ++i) {
          diameter = std::max(diameter, (simplex[order[i]] - simplex[best]).norm());
        }
        const double spread = fv[worst] - fv[best];
        if (diameter < cfg.tol || spread <= 1e-14 * (1.0 + std::abs(fv[best]))) break;

        RealVector centroid = RealVector::Zero(n);
        for (Index i = 0; i < n; ++i) centroid += simplex[order[i]];
        centroid /= dn;
        const RealVector xr = centroid + alpha * (centroid - simplex[worst]);
        const double fr = eval(xr);
        if (fr < fv[best]) {
          const RealVector xe = centroid + gamma * (xr - centroid);
          const double fe = eval(xe);
          if (fe < fr) {
            simplex[worst] = xe;
            fv[worst] = fe;
          } else {
            simplex[worst] = xr;
            fv[worst] = fr;
          }
        } else if (fr < fv[second]) {
          simplex[worst] = xr;
          fv[worst] = fr;
        } else {
          const bool outside = fr < fv[worst];
          const RealVector xc = outside ? RealVector(centroid + rho * (xr - centroid))
                                        : RealVector(centroid - rho * (centroid - simplex[worst]));
          const double fc = eval(xc);
          if (fc < (outside ? fr : fv[worst])) {
            simplex[worst] = xc;
            fv[worst] = fc;
          } else {
            for (Index i = 1; i <= n && out.evals < cfg.max_evals; ++i) {
              const Index k = order[i];
              simplex[k] = simplex[best] + sigma * (simplex[k] - simplex[best]);
              fv[k] = eval(simplex[k]);
            }
          }
        }
      }
      if (out.value - previous_best <= 1e-12) break;
      previous_best = out.value;
      start = out.x;
      step = std::max(0.5 * step, 1e-3);
    }
  } catch (const NonFinite&) {
    out.aborted = true;
    out.message = "non-finite objective value after " + std::to_string(out.evals) + " evaluations";
  }
  return out;
}

}  // namespace

void OptimizerConfig::validate() const {
  if (restarts < 1) throw ValidationError("restarts must be >= 1");
  if (max_evals < 1) throw ValidationError("max_evals must be >= 1");
  if (!(tol > 0.0)) throw ValidationError("tol must be > 0");
  if (outcome_count < 0) throw ValidationError("outcome_count must be >= 0");
  if (ancilla_dim < 0) throw ValidationError("ancilla_dim must be >= 0");
  if (threads < 1) throw ValidationError("threads must be >= 1");
}

OptimizerConfig OptimizerConfig::broadcast_defaults() {
  OptimizerConfig cfg;
  cfg.restarts = 32;
  cfg.max_evals = 2000;
  return cfg;
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
}

Matrix haar_unitary(int d, Rng& rng) {
  if (d < 1) throw DimensionError("unitary dimension must be >= 1");
  const Matrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * identity(d);
  const Matrix& r = qr.matrixQR();
  for (int k = 0; k < d; ++k) {
    const Complex diag = r(k, k);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(k) *= diag / mag;
  }
  return q;
}

Vector random_pure_vector(int d, Rng& rng) {
  Vector v = ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

DensityMatrix random_density(const SubsystemLayout& layout, int rank, Rng& rng) {
  const int d = layout.total_dim();
  if (rank < 1 || rank > d) throw ValidationError("rank must lie in [1, dim]");
  const Matrix g = ginibre(d, rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(layout, std::move(rho));
}

DensityMatrix random_density(const SubsystemLayout& layout, Rng& rng) {
  return random_density(layout, layout.total_dim(), rng);
}

KrausChannel random_channel(int d_in, int d_out, int kraus_count, Rng& rng) {
  if (d_out * kraus_count < d_in) throw DimensionError("too few Kraus operators for an isometry");
  const Matrix v = haar_unitary(d_out * kraus_count, rng).leftCols(d_in);
  std::vector<Matrix> kraus;
  for (int a = 0; a < kraus_count; ++a) {
    Matrix k(d_out, d_in);
    for (int o = 0; o < d_out; ++o) k.row(o) = v.row(o * kraus_count + a);
    kraus.push_back(std::move(k));
  }
  return KrausChannel(std::move(kraus));
}

int projective_param_count(int d) { return d * d; }

Matrix unitary_from_params(std::span<const double> params, int d) {
  check_length(params, projective_param_count(d), "projective parameterization");
  // H = -iA is Hermitian and exp(A) = exp(iH).
  Matrix h = Matrix::Zero(d, d);
  size_t k = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const Complex a(params[k], params[k + 1]);
      k += 2;
      h(i, j) = Complex(0.0, -1.0) * a;
      h(j, i) = std::conj(h(i, j));
    }
  }
  for (int i = 0; i < d; ++i) h(i, i) = params[k++];
  const HermitianEigen e = eigh(h);
  Vector phases(d);
  for (int i = 0; i < d; ++i) phases(i) = std::polar(1.0, e.values(i));
  return e.vectors * phases.asDiagonal() * e.vectors.adjoint();
}

Povm projective_povm(std::span<const double> params, int d) {
  return Povm::from_basis(unitary_from_params(params, d));
}

RealVector projective_params_from_basis(const Matrix& basis) {
  const int d = static_cast<int>(basis.rows());
  if (basis.cols() != d) throw DimensionError("basis matrix must be square");
  if ((basis.adjoint() * basis - identity(d)).cwiseAbs().maxCoeff() > 1e-8) {
    throw ValidationError("basis is not orthonormal");
  }
  // Schur form of a unitary is diagonal, so Q diag(i arg t) Q^dagger is a
  // logarithm.
  Eigen::ComplexSchur<Matrix> schur(basis);
  const Matrix& q = schur.matrixU();
  const Matrix& t = schur.matrixT();
  Vector log_diag(d);
  for (int i = 0; i < d; ++i) log_diag(i) = Complex(0.0, std::arg(t(i, i)));
  const Matrix a = q * log_diag.asDiagonal() * q.adjoint();
  RealVector params(projective_param_count(d));
  Index k = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      params(k++) = a(i, j).real();
      params(k++) = a(i, j).imag();
    }
  }
  for (int i = 0; i < d; ++i) params(k++) = a(i, i).imag();
  return params;
}

int general_param_count(int d, int n_outcomes) { return 2 * d * n_outcomes; }

Matrix povm_vectors_from_params(std::span<const double> params, int d, int n_outcomes) {
  if (n_outcomes < d) throw DimensionError("a rank-one POVM needs at least d outcomes");
  check_length(params, general_param_count(d, n_outcomes), "POVM parameterization");
  const Matrix g = embedding(d, n_outcomes) + complex_from_params(params, d, n_outcomes);
  return inv_sqrt_on_support(g * g.adjoint(), 1e-12) * g;
}

Povm general_povm(std::span<const double> params, int d, int n_outcomes) {
  return Povm::from_vectors(povm_vectors_from_params(params, d, n_outcomes));
}

RealVector general_params_from_basis(const Matrix& basis, int n_outcomes) {
  const int d = static_cast<int>(basis.rows());
  if (n_outcomes < basis.cols()) throw DimensionError("too few outcomes for the basis");
  Matrix g = Matrix::Zero(d, n_outcomes);
  g.leftCols(basis.cols()) = basis;
  return params_from_complex(g - embedding(d, n_outcomes));
}

int isometry_param_count(int d_in, int d_out) { return 2 * d_in * d_out; }

Matrix isometry_from_params(std::span<const double> params, int d_in, int d_out) {
  if (d_out < d_in) throw DimensionError("isometry needs d_out >= d_in");
  check_length(params, isometry_param_count(d_in, d_out), "isometry parameterization");
  const Matrix g = embedding(d_out, d_in) + complex_from_params(params, d_out, d_in);
  return g * inv_sqrt_on_support(g.adjoint() * g, 1e-12);
}

RealVector isometry_params(const Matrix& isometry) {
  return params_from_complex(isometry - embedding(static_cast<int>(isometry.rows()),
                                                  static_cast<int>(isometry.cols())));
}

OptimizationResult maximize(const Objective& objective, int param_dim, const OptimizerConfig& cfg,
                            const MaximizeOptions& options) {
  cfg.validate();
  for (const auto& s : options.seed_points) {
    if (s.size() != param_dim) throw DimensionError("seed point has the wrong dimension");
  }
  const int n_seeds = static_cast<int>(options.seed_points.size());
  const int total = n_seeds + cfg.restarts;

  std::vector<RestartOutcome> outcomes(total);
  auto run = [&](int r) {
    RealVector x0;
    if (r < n_seeds) {
      x0 = options.seed_points[r];
    } else {
      Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(r));
      std::uniform_real_distribution<double> unif(-options.start_scale, options.start_scale);
      x0.resize(param_dim);
      for (int i = 0; i < param_dim; ++i) x0(i) = unif(rng);
    }
    outcomes[r] = run_restart(objective, x0, cfg, options.initial_step);
  };

  const int workers = std::min(cfg.threads, total);
  if (workers <= 1) {
    for (int r = 0; r < total; ++r) run(r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int r = next++; r < total; r = next++) run(r);
      });
    }
    for (auto& t : pool) t.join();
  }

  OptimizationResult result;
  result.seed = cfg.seed;
  result.value = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < total; ++r) {
    const auto& o = outcomes[r];
    result.n_evals += o.evals;
    result.restart_values.push_back(o.value);
    if (o.aborted) result.diagnostics.push_back("restart " + std::to_string(r) + ": " + o.message);
    if (o.value > result.value) {
      result.value = o.value;
      result.params = o.x;
      result.best_restart = r;
    }
  }
  if (result.best_restart < 0) throw OptimizerError("every restart aborted without a finite objective value");
  return result;
}

}  // namespace qcorr
