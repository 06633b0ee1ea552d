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

#include "qcorr/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

template <typename F>
auto parsing(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

Json number_or_null(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

double number_from(const Json& j, double if_null) {
  if (j.is_null()) return if_null;
  if (!j.is_number()) throw ParseError("expected a number, got " + std::string(j.type_name()));
  return j.get<double>();
}

std::vector<int> dims_from(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("\"dims\" must be a non-empty array");
  std::vector<int> dims;
  for (const auto& d : j) {
    if (!d.is_number_integer()) throw ParseError("\"dims\" entries must be integers");
    int v = d.get<int>();
    if (v < 1) throw ParseError("\"dims\" entries must be positive");
    dims.push_back(v);
  }
  return dims;
}

std::string optional_string(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return "";
  if (!it->is_string()) throw ParseError(std::string("\"") + key + "\" must be a string");
  return it->get<std::string>();
}

Json basis_or_null(const std::optional<Matrix>& b) {
  if (!b) return nullptr;
  return Json{{"dim", b->rows()}, {"matrix", matrix_to_json(*b)}};
}

std::optional<Matrix> basis_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  Index d = j.at("dim").get<Index>();
  return matrix_from_json(j.at("matrix"), d, d);
}

}  // namespace

Units parse_units(const std::string& text) {
  if (text == "bits") return Units::Bits;
  if (text == "nats") return Units::Nats;
  throw ParseError("unknown units '" + text + "' (expected bits or nats)");
}

std::string to_string(Units units) { return units == Units::Bits ? "bits" : "nats"; }

double unit_scale(Units units) { return units == Units::Bits ? 1.0 : std::log(2.0); }

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out.push_back({m(i, j).real(), m(i, j).imag()});
  return out;
}

Matrix matrix_from_json(const Json& j, Index rows, Index cols) {
  if (!j.is_array()) throw ParseError("matrix must be an array of [re, im] pairs");
  if (static_cast<Index>(j.size()) != rows * cols)
    throw ParseError("matrix has " + std::to_string(j.size()) + " entries, expected " +
                     std::to_string(rows * cols));
  Matrix m(rows, cols);
  for (Index k = 0; k < rows * cols; ++k) {
    const Json& e = j[static_cast<size_t>(k)];
    double re = 0.0, im = 0.0;
    if (e.is_number()) {
      re = e.get<double>();
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
      re = e[0].get<double>();
      im = e[1].get<double>();
    } else {
      throw ParseError("matrix entry " + std::to_string(k) + " is not a number or [re, im] pair");
    }
    if (!std::isfinite(re) || !std::isfinite(im))
      throw ParseError("matrix entry " + std::to_string(k) + " is not finite");
    m(k / cols, k % cols) = Complex(re, im);
  }
  return m;
}

Json state_to_json(const DensityMatrix& rho, const std::string& label, const std::string& id) {
  Json j;
  if (!id.empty()) j["id"] = id;
  if (!label.empty()) j["label"] = label;
  j["dims"] = rho.layout().dims();
  j["matrix"] = matrix_to_json(rho.matrix());
  return j;
}

StateRecord state_record_from_json(const Json& j) {
  auto [dims, m, label, id] = parsing("state", [&] {
    if (!j.is_object()) throw ParseError("state must be a JSON object");
    auto dims = dims_from(j.at("dims"));
    Index d = 1;
    for (int x : dims) d *= x;
    Matrix m = matrix_from_json(j.at("matrix"), d, d);
    return std::tuple{dims, m, optional_string(j, "label"), optional_string(j, "id")};
  });
  return StateRecord{DensityMatrix(SubsystemLayout(dims), m), label, id};
}

DensityMatrix state_from_json(const Json& j) { return state_record_from_json(j).state; }

Json channel_to_json(const KrausMap& ch) {
  Json j;
  j["d_in"] = ch.d_in();
  j["d_out"] = ch.d_out();
  if (ch.out_dims().size() > 1) j["out_dims"] = ch.out_dims();
  Json ks = Json::array();
  for (const auto& k : ch.kraus()) ks.push_back(matrix_to_json(k));
  j["kraus"] = ks;
  return j;
}

KrausMap kraus_map_from_json(const Json& j) {
  auto [kraus, out_dims] = parsing("channel", [&] {
    if (!j.is_object()) throw ParseError("channel must be a JSON object");
    int d_in = j.at("d_in").get<int>();
    int d_out = j.at("d_out").get<int>();
    if (d_in < 1 || d_out < 1) throw ParseError("channel dimensions must be positive");
    std::vector<int> out_dims;
    if (j.contains("out_dims")) out_dims = dims_from(j.at("out_dims"));
    const Json& ks = j.at("kraus");
    if (!ks.is_array() || ks.empty()) throw ParseError("\"kraus\" must be a non-empty array");
    std::vector<Matrix> kraus;
    for (const auto& k : ks) kraus.push_back(matrix_from_json(k, d_out, d_in));
    return std::pair{kraus, out_dims};
  });
  return KrausMap(kraus, out_dims);
}

KrausChannel channel_from_json(const Json& j) { return KrausChannel(kraus_map_from_json(j)); }

Json povm_to_json(const Povm& povm) {
  Json els = Json::array();
  for (const auto& m : povm.elements()) els.push_back(matrix_to_json(m));
  return Json{{"dim", povm.dim()}, {"elements", els}};
}

Povm povm_from_json(const Json& j) {
  auto els = parsing("povm", [&] {
    int d = j.at("dim").get<int>();
    std::vector<Matrix> out;
    for (const auto& e : j.at("elements")) out.push_back(matrix_from_json(e, d, d));
    if (out.empty()) throw ParseError("povm has no elements");
    return out;
  });
  return Povm(els);
}

Json config_to_json(const OptimizerConfig& cfg) {
  return Json{{"seed", cfg.seed},
              {"restarts", cfg.restarts},
              {"max_evals", cfg.max_evals},
              {"tol", cfg.tol},
              {"outcome_count", cfg.outcome_count},
              {"projective_only", cfg.projective_only},
              {"ancilla_dim", cfg.ancilla_dim},
              {"threads", cfg.threads}};
}

OptimizerConfig config_from_json(const Json& j) {
  return parsing("config", [&] {
    OptimizerConfig cfg;
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.restarts = j.at("restarts").get<int>();
    cfg.max_evals = j.at("max_evals").get<int>();
    cfg.tol = j.at("tol").get<double>();
    cfg.outcome_count = j.at("outcome_count").get<int>();
    cfg.projective_only = j.at("projective_only").get<bool>();
    cfg.ancilla_dim = j.at("ancilla_dim").get<int>();
    cfg.threads = j.value("threads", 1);
    return cfg;
  });
}

Json optimization_to_json(const OptimizationResult& r) {
  Json restarts = Json::array();
  for (double v : r.restart_values) restarts.push_back(number_or_null(v));
  Json params = Json::array();
  for (Index i = 0; i < r.params.size(); ++i) params.push_back(r.params[i]);
  return Json{{"value", number_or_null(r.value)},
              {"n_evals", r.n_evals},
              {"seed", r.seed},
              {"best_restart", r.best_restart},
              {"restart_values", restarts},
              {"params", params},
              {"diagnostics", r.diagnostics}};
}

OptimizationResult optimization_from_json(const Json& j) {
  return parsing("optimization result", [&] {
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    OptimizationResult r;
    r.value = number_from(j.at("value"), kNegInf);
    r.n_evals = j.at("n_evals").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.best_restart = j.at("best_restart").get<int>();
    for (const auto& v : j.at("restart_values")) r.restart_values.push_back(number_from(v, kNegInf));
    const Json& p = j.at("params");
    r.params.resize(static_cast<Index>(p.size()));
    for (size_t i = 0; i < p.size(); ++i) r.params[static_cast<Index>(i)] = p[i].get<double>();
    r.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
    return r;
  });
}

Json report_to_json(const CorrelationReport& report, Units units) {
  const double s = unit_scale(units);
  Json j;
  j["units"] = to_string(units);
  j["mutual_information"] = report.mutual_information * s;
  j["i_cq_lower"] = report.i_cq_lower * s;
  j["i_cc_lower"] = report.i_cc_lower * s;
  j["delta_cc_upper"] = report.delta_cc_upper * s;
  j["discord_upper"] = report.discord_upper * s;
  j["outcome_count"] = report.outcome_count;
  j["config"] = config_to_json(report.config);
  j["tolerances"] = Json{{"hermitian", tol::kHermitian}, {"psd", tol::kPsd},          {"trace", tol::kTrace},
                         {"support", tol::kSupport},     {"numeric", tol::kNumeric},  {"classical", tol::kClassical},
                         {"degenerate", tol::kDegenerate}};
  j["cq_povm"] = povm_to_json(report.cq_povm);
  j["best_povm_a"] = povm_to_json(report.best_povm_a);
  j["best_povm_b"] = povm_to_json(report.best_povm_b);
  j["discord_povm"] = povm_to_json(report.discord_povm);
  j["searches"] = Json{{"i_cq", optimization_to_json(report.icq_search)},
                       {"i_cc", optimization_to_json(report.icc_search)},
                       {"discord", optimization_to_json(report.discord_search)}};
  return j;
}

CorrelationReport report_from_json(const Json& j) {
  CorrelationReport r;
  double s = 1.0;
  parsing("report", [&] {
    s = unit_scale(parse_units(j.at("units").get<std::string>()));
    r.mutual_information = j.at("mutual_information").get<double>() / s;
    r.i_cq_lower = j.at("i_cq_lower").get<double>() / s;
    r.i_cc_lower = j.at("i_cc_lower").get<double>() / s;
    r.delta_cc_upper = j.at("delta_cc_upper").get<double>() / s;
    r.discord_upper = j.at("discord_upper").get<double>() / s;
    r.outcome_count = j.at("outcome_count").get<int>();
    return 0;
  });
  r.config = config_from_json(j.at("config"));
  r.cq_povm = povm_from_json(j.at("cq_povm"));
  r.best_povm_a = povm_from_json(j.at("best_povm_a"));
  r.best_povm_b = povm_from_json(j.at("best_povm_b"));
  r.discord_povm = povm_from_json(j.at("discord_povm"));
  const Json& searches = parsing("report", [&]() -> const Json& { return j.at("searches"); });
  r.icq_search = optimization_from_json(parsing("report", [&]() -> const Json& { return searches.at("i_cq"); }));
  r.icc_search = optimization_from_json(parsing("report", [&]() -> const Json& { return searches.at("i_cc"); }));
  r.discord_search =
      optimization_from_json(parsing("report", [&]() -> const Json& { return searches.at("discord"); }));
  return r;
}

Json verdict_to_json(const ClassicalityVerdict& v) {
  return Json{{"kind", to_string(v.kind)},
              {"residual", v.residual},
              {"residual_a", v.residual_a},
              {"residual_b", v.residual_b},
              {"basis_a", basis_or_null(v.basis_a)},
              {"basis_b", basis_or_null(v.basis_b)}};
}

ClassicalityVerdict verdict_from_json(const Json& j) {
  return parsing("verdict", [&] {
    ClassicalityVerdict v;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "CC") v.kind = Classicality::CC;
    else if (kind == "CQ") v.kind = Classicality::CQ;
    else if (kind == "QC") v.kind = Classicality::QC;
    else if (kind == "neither") v.kind = Classicality::Neither;
    else throw ParseError("unknown classicality '" + kind + "'");
    v.residual = j.at("residual").get<double>();
    v.residual_a = j.at("residual_a").get<double>();
    v.residual_b = j.at("residual_b").get<double>();
    v.basis_a = basis_from(j.at("basis_a"));
    v.basis_b = basis_from(j.at("basis_b"));
    return v;
  });
}

Json candidate_to_json(const BroadcastCandidate& c, Units units) {
  Json j;
  j["units"] = to_string(units);
  j["valid"] = c.valid;
  j["residual_ab"] = c.residual_ab;
  j["residual_a1b1"] = c.residual_a1b1;
  j["min_marginal_fidelity"] = c.min_marginal_fidelity;
  j["mi_deficit"] = c.mi_deficit * unit_scale(units);
  j["seed_kind"] = c.seed_kind;
  j["ancilla_dim"] = c.ancilla_dim;
  j["sigma"] = state_to_json(c.sigma);
  j["theta_a"] = c.theta_a ? channel_to_json(*c.theta_a) : Json(nullptr);
  j["theta_b"] = c.theta_b ? channel_to_json(*c.theta_b) : Json(nullptr);
  j["search"] = optimization_to_json(c.search);
  return j;
}

BroadcastCandidate candidate_from_json(const Json& j) {
  BroadcastCandidate c(state_from_json(parsing("candidate", [&]() -> const Json& { return j.at("sigma"); })));
  parsing("candidate", [&] {
    const double s = unit_scale(parse_units(j.at("units").get<std::string>()));
    c.valid = j.at("valid").get<bool>();
    c.residual_ab = j.at("residual_ab").get<double>();
    c.residual_a1b1 = j.at("residual_a1b1").get<double>();
    c.min_marginal_fidelity = j.at("min_marginal_fidelity").get<double>();
    c.mi_deficit = j.at("mi_deficit").get<double>() / s;
    c.seed_kind = j.at("seed_kind").get<std::string>();
    c.ancilla_dim = j.at("ancilla_dim").get<int>();
    return 0;
  });
  const Json& ta = parsing("candidate", [&]() -> const Json& { return j.at("theta_a"); });
  const Json& tb = parsing("candidate", [&]() -> const Json& { return j.at("theta_b"); });
  if (!ta.is_null()) c.theta_a = channel_from_json(ta);
  if (!tb.is_null()) c.theta_b = channel_from_json(tb);
  c.search = optimization_from_json(parsing("candidate", [&]() -> const Json& { return j.at("search"); }));
  return c;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

DensityMatrix read_state_file(const std::filesystem::path& path) { return state_from_json(read_json_file(path)); }

StateRecord read_state_record(const std::filesystem::path& path) {
  return state_record_from_json(read_json_file(path));
}

void write_state_file(const std::filesystem::path& path, const DensityMatrix& rho, const std::string& label,
                      const std::string& id) {
  write_text_file(path, dump_json(state_to_json(rho, label, id)));
}

KrausChannel read_channel_file(const std::filesystem::path& path) {
  return channel_from_json(read_json_file(path));
}

void write_channel_file(const std::filesystem::path& path, const KrausMap& ch) {
  write_text_file(path, dump_json(channel_to_json(ch)));
}

}  // namespace qcorr
