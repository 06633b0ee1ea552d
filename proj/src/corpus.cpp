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

#include "qcorr/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qcorr/errors.hpp"
#include "qcorr/io.hpp"
#include "qcorr/optimize.hpp"

namespace qcorr {

namespace {

std::vector<int> dims_for(int i) { return i % 3 == 2 ? std::vector<int>{2, 3} : std::vector<int>{2, 2}; }

std::string make_id(CorpusKind kind, int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s-%02d", to_string(kind).c_str(), i);
  return buf;
}

RealVector random_probabilities(int n, Rng& rng) {
  // Bounded away from zero so every outcome carries weight.
  std::uniform_real_distribution<double> u(0.2, 1.0);
  RealVector p(n);
  for (int i = 0; i < n; ++i) p[i] = u(rng);
  return p / p.sum();
}

Matrix projector(const Vector& v) { return v * v.adjoint(); }

DensityMatrix cc_state_sample(const std::vector<int>& dims, Rng& rng) {
  const int da = dims[0], db = dims[1];
  std::uniform_real_distribution<double> weight(0.2, 1.0);
  RealVector p(da * db);
  // Extra weight on i == j keeps the correlations well above zero.
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) p[i * db + j] = weight(rng) + (i == j ? 3.0 : 0.0);
  p /= p.sum();
  Matrix diag = Matrix::Zero(da * db, da * db);
  for (int k = 0; k < da * db; ++k) diag(k, k) = p[k];
  Matrix u = kron(haar_unitary(da, rng), haar_unitary(db, rng));
  return DensityMatrix(SubsystemLayout(dims), hermitian_part(u * diag * u.adjoint()));
}

DensityMatrix cq_state_sample(const std::vector<int>& dims, Rng& rng) {
  const int da = dims[0], db = dims[1];
  SubsystemLayout b({db});
  RealVector p = random_probabilities(da, rng);
  Matrix u = haar_unitary(da, rng);
  Matrix m = Matrix::Zero(da * db, da * db);
  for (int i = 0; i < da; ++i) {
    // Pure conditionals never commute unless orthogonal or equal; mixing in
    // a little noise keeps them full rank.
    Matrix sigma = 0.8 * projector(random_pure_vector(db, rng)) + 0.2 * random_density(b, rng).matrix();
    m += p[i] * kron(projector(u.col(i)), sigma);
  }
  return DensityMatrix(SubsystemLayout(dims), hermitian_part(m));
}

DensityMatrix separable_state_sample(const std::vector<int>& dims, Rng& rng) {
  const int da = dims[0], db = dims[1];
  RealVector q = random_probabilities(3, rng);
  Matrix m = Matrix::Zero(da * db, da * db);
  for (int k = 0; k < 3; ++k)
    m += q[k] * kron(projector(random_pure_vector(da, rng)), projector(random_pure_vector(db, rng)));
  return DensityMatrix(SubsystemLayout(dims), hermitian_part(m));
}

Vector bell(int which) {
  Vector v = Vector::Zero(4);
  const double s = 1.0 / std::sqrt(2.0);
  if (which == 0) {
    v[0] = s;
    v[3] = s;
  } else {
    v[1] = s;
    v[2] = -s;
  }
  return v;
}

DensityMatrix werner(double p) {
  Matrix m = p * projector(bell(1)) + (1.0 - p) * Matrix::Identity(4, 4) / 4.0;
  return DensityMatrix(SubsystemLayout({2, 2}), m);
}

// Random pure state whose smallest Schmidt coefficient is not tiny.
DensityMatrix entangled_pure_sample(const std::vector<int>& dims, Rng& rng) {
  const int da = dims[0], db = dims[1];
  for (;;) {
    Vector v = random_pure_vector(da * db, rng);
    Matrix c(da, db);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < db; ++j) c(i, j) = v[i * db + j];
    Eigen::JacobiSVD<Matrix> svd(c);
    const double smallest = svd.singularValues()[std::min(da, db) - 1];
    if (smallest * smallest >= 0.1) return DensityMatrix::pure(SubsystemLayout(dims), v);
  }
}

}  // namespace

std::string to_string(CorpusKind kind) {
  switch (kind) {
    case CorpusKind::CC:
      return "cc";
    case CorpusKind::CQ:
      return "cq";
    case CorpusKind::Separable:
      return "separable";
    case CorpusKind::Entangled:
      return "entangled";
  }
  return "unknown";
}

CorpusKind parse_corpus_kind(const std::string& text) {
  if (text == "cc") return CorpusKind::CC;
  if (text == "cq") return CorpusKind::CQ;
  if (text == "separable") return CorpusKind::Separable;
  if (text == "entangled") return CorpusKind::Entangled;
  throw ParseError("unknown corpus label '" + text + "'");
}

std::vector<CorpusEntry> generate_corpus(int per_kind, std::uint64_t seed) {
  if (per_kind < 1) throw ValidationError("per_kind must be positive");
  std::vector<CorpusEntry> out;
  const CorpusKind kinds[] = {CorpusKind::CC, CorpusKind::CQ, CorpusKind::Separable, CorpusKind::Entangled};
  for (int k = 0; k < 4; ++k) {
    // One stream per kind so changing per_kind keeps earlier entries.
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(k));
    std::uniform_real_distribution<double> werner_p(0.45, 0.95);
    for (int i = 0; i < per_kind; ++i) {
      const CorpusKind kind = kinds[k];
      const auto dims = dims_for(i);
      CorpusEntry e{make_id(kind, i), kind, DensityMatrix::maximally_mixed(SubsystemLayout(dims)), false};
      switch (kind) {
        case CorpusKind::CC:
          e.state = cc_state_sample(dims, rng);
          break;
        case CorpusKind::CQ:
          e.state = cq_state_sample(dims, rng);
          break;
        case CorpusKind::Separable:
          e.state = separable_state_sample(dims, rng);
          break;
        case CorpusKind::Entangled:
          if (i == 0 || i == 3) {
            e.state = DensityMatrix::pure(SubsystemLayout({2, 2}), bell(i == 0 ? 0 : 1));
            e.pure = true;
          } else if (i % 3 == 1) {
            e.state = werner(werner_p(rng));
          } else {
            e.state = entangled_pure_sample(dims, rng);
            e.pure = true;
          }
          break;
      }
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<std::filesystem::path> write_corpus(const std::filesystem::path& dir,
                                                const std::vector<CorpusEntry>& corpus) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  for (const auto& e : corpus) {
    auto path = dir / (e.id + ".json");
    Json j = state_to_json(e.state, to_string(e.kind), e.id);
    if (e.pure) j["pure"] = true;
    write_text_file(path, dump_json(j));
    paths.push_back(path);
  }
  return paths;
}

std::vector<CorpusEntry> read_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw ParseError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& f : std::filesystem::directory_iterator(dir))
    if (f.is_regular_file() && f.path().extension() == ".json") files.push_back(f.path());
  std::sort(files.begin(), files.end());
  std::vector<CorpusEntry> out;
  for (const auto& path : files) {
    Json j = read_json_file(path);
    StateRecord rec = state_record_from_json(j);
    if (rec.label.empty()) throw ParseError(path.string() + ": missing \"label\"");
    std::string id = rec.id.empty() ? path.stem().string() : rec.id;
    out.push_back(CorpusEntry{id, parse_corpus_kind(rec.label), rec.state, j.value("pure", false)});
  }
  return out;
}

}  // namespace qcorr
