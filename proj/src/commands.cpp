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

#include "qcorr/commands.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "qcorr/broadcast.hpp"
#include "qcorr/channel.hpp"
#include "qcorr/classify.hpp"
#include "qcorr/corpus.hpp"
#include "qcorr/correlations.hpp"
#include "qcorr/errors.hpp"

#ifndef QCORR_VERSION
#define QCORR_VERSION "0.0.0"
#endif

namespace qcorr {

namespace {

using Clock = std::chrono::steady_clock;

RunManifest make_manifest(const std::string& command, std::vector<std::string> inputs, Json config,
                          std::uint64_t seed) {
  RunManifest m;
  m.command = command;
  m.inputs = std::move(inputs);
  m.config = std::move(config);
  m.version = tool_version();
  m.seed = seed;
  return m;
}

void finish(RunManifest& m, const RunOptions& opts, Clock::time_point start) {
  if (opts.record_wall_time) m.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
}

Json options_json(const RunOptions& opts) {
  return Json{{"measurement", config_to_json(opts.cfg)},
              {"broadcast", config_to_json(opts.broadcast_cfg)},
              {"units", to_string(opts.units)},
              {"classical_tolerance", opts.class_tol},
              {"party", opts.party}};
}

void check_chain(const CorrelationReport& r) {
  // I >= I_CQ >= I_CC >= 0 must hold for every report.
  const double slack = tol::kNumeric;
  if (r.i_cc_lower < -slack || r.i_cc_lower > r.i_cq_lower + slack ||
      r.i_cq_lower > r.mutual_information + slack || r.delta_cc_upper < -slack) {
    throw ValidationError("correlation chain I >= I_CQ >= I_CC >= 0 violated");
  }
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::vector<std::string>> parse_csv_records(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, field_started = false;
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      field_started = true;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (field_started || !field.empty()) {
        row.push_back(std::move(field));
        records.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      field_started = false;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) throw ParseError("unterminated quoted CSV field");
  if (field_started || !field.empty()) {
    row.push_back(std::move(field));
    records.push_back(std::move(row));
  }
  return records;
}

double parse_double(const std::string& s) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ParseError("not a number: '" + s + "'");
  return v;
}

const char* const kSuiteColumns[] = {"state_id",       "kind_label",  "I",          "I_cq_lower", "I_cc_lower",
                                     "delta_cc_upper", "lb_residual", "mi_deficit", "seed"};

}  // namespace

std::string tool_version() { return QCORR_VERSION; }

Json manifest_to_json(const RunManifest& m) {
  Json j{{"command", m.command}, {"inputs", m.inputs}, {"config", m.config}, {"version", m.version},
         {"seed", m.seed}};
  j["wall_time_s"] = m.wall_time_s ? Json(*m.wall_time_s) : Json(nullptr);
  return j;
}

RunManifest manifest_from_json(const Json& j) {
  try {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.inputs = j.at("inputs").get<std::vector<std::string>>();
    m.config = j.at("config");
    m.version = j.at("version").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("wall_time_s") && !j.at("wall_time_s").is_null()) m.wall_time_s = j.at("wall_time_s").get<double>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
}

Json cmd_measures(const std::filesystem::path& state_path, const RunOptions& opts) {
  const auto start = Clock::now();
  RunManifest manifest = make_manifest("measures", {state_path.string()}, options_json(opts), opts.cfg.seed);
  const StateRecord rec = read_state_record(state_path);
  const double s = unit_scale(opts.units);
  Json out;
  out["state"] = Json{{"id", rec.id}, {"label", rec.label}, {"dims", rec.state.layout().dims()}};
  if (rec.state.parties() != 2) {
    out["units"] = to_string(opts.units);
    out["multipartite_mutual_information"] = multipartite_mutual_information(rec.state) * s;
  } else {
    const CorrelationReport report = correlation_report(rec.state, opts.cfg);
    check_chain(report);
    out["report"] = report_to_json(report, opts.units);
    out["classification"] = to_string(is_cc(rec.state, opts.class_tol).kind);
  }
  finish(manifest, opts, start);
  out["manifest"] = manifest_to_json(manifest);
  return out;
}

Json cmd_classify(const std::filesystem::path& state_path, const RunOptions& opts) {
  const auto start = Clock::now();
  Json config = options_json(opts);
  RunManifest manifest = make_manifest("classify", {state_path.string()}, config, opts.cfg.seed);
  const StateRecord rec = read_state_record(state_path);
  const ClassicalityVerdict cc = is_cc(rec.state, opts.class_tol);
  const ClassicalityVerdict cq_a = is_cq(rec.state, opts.class_tol, Side::A);
  const ClassicalityVerdict cq_b = is_cq(rec.state, opts.class_tol, Side::B);
  if (cc.kind == Classicality::CC && (cq_a.kind == Classicality::Neither || cq_b.kind == Classicality::Neither))
    throw ValidationError("CC verdict without one-sided classicality");
  Json out;
  out["state"] = Json{{"id", rec.id}, {"label", rec.label}, {"dims", rec.state.layout().dims()}};
  out["verdict"] = verdict_to_json(cc);
  out["classical_on_a"] = verdict_to_json(cq_a);
  out["classical_on_b"] = verdict_to_json(cq_b);
  out["ppt"] = to_string(ppt_label(rec.state));
  out["min_partial_transpose_eigenvalue"] = min_partial_transpose_eigenvalue(rec.state);
  finish(manifest, opts, start);
  out["manifest"] = manifest_to_json(manifest);
  return out;
}

Json cmd_broadcast(const std::filesystem::path& state_path, const RunOptions& opts) {
  const auto start = Clock::now();
  RunManifest manifest =
      make_manifest("broadcast", {state_path.string()}, options_json(opts), opts.broadcast_cfg.seed);
  const StateRecord rec = read_state_record(state_path);
  const BroadcastCandidate candidate = broadcast_search(rec.state, opts.broadcast_cfg);
  if (candidate.valid) {
    const BroadcastResiduals check = verify_broadcast(candidate.sigma, rec.state);
    if (!check.valid) throw ValidationError("candidate flagged valid but fails verification");
  }
  Json out;
  out["state"] = Json{{"id", rec.id}, {"label", rec.label}, {"dims", rec.state.layout().dims()}};
  out["units"] = to_string(opts.units);
  out["mutual_information"] = mutual_information(rec.state) * unit_scale(opts.units);
  out["classification"] = to_string(is_cc(rec.state, opts.class_tol).kind);
  out["candidate"] = candidate_to_json(candidate, opts.units);
  finish(manifest, opts, start);
  out["manifest"] = manifest_to_json(manifest);
  return out;
}

Json cmd_petz(const std::filesystem::path& state_path, const std::filesystem::path& channel_path,
              const RunOptions& opts) {
  const auto start = Clock::now();
  RunManifest manifest = make_manifest("petz", {state_path.string(), channel_path.string()}, options_json(opts),
                                       opts.cfg.seed);
  const StateRecord rec = read_state_record(state_path);
  const KrausChannel channel = read_channel_file(channel_path);
  const DensityMatrix& rho = rec.state;
  if (opts.party < 0 || opts.party >= rho.parties())
    throw DimensionError("party " + std::to_string(opts.party) + " out of range");
  if (channel.d_in() != rho.layout().dim(opts.party))
    throw DimensionError("channel input dimension does not match the party");

  const DensityMatrix output = apply_local(channel, opts.party, rho);
  const DensityMatrix reference = partial_trace(rho, {opts.party});
  const PetzRecovery recovery(channel, reference);
  const KrausMap recovery_map = recovery.kraus_map();
  Matrix y = apply_local(recovery_map, opts.party, output.layout(), output.matrix());
  const double drift = std::abs(y.trace().real() - 1.0);
  if (std::abs(y.trace()) > 0.0) y /= y.trace().real();
  const DensityMatrix recovered(rho.layout(), hermitian_part(y));

  const double s = unit_scale(opts.units);
  Json out;
  out["state"] = Json{{"id", rec.id}, {"label", rec.label}, {"dims", rho.layout().dims()}};
  out["party"] = opts.party;
  out["units"] = to_string(opts.units);
  if (rho.parties() == 2) {
    const double before = mutual_information(rho);
    const double after = mutual_information(output);
    out["mutual_information_before"] = before * s;
    out["mutual_information_after"] = after * s;
    out["mutual_information_loss"] = (before - after) * s;
  }
  out["recovery"] = Json{{"trace_distance", trace_distance(recovered, rho)},
                         {"trace_drift", drift},
                         {"trace_preserving", recovery.trace_preserving()},
                         {"warnings", recovery.warnings()},
                         {"kraus", channel_to_json(recovery_map)}};
  out["recovered_state"] = state_to_json(recovered);
  finish(manifest, opts, start);
  out["manifest"] = manifest_to_json(manifest);
  return out;
}

Json cmd_corpus(const std::filesystem::path& dir, int per_kind, std::uint64_t seed) {
  RunManifest manifest = make_manifest("corpus", {}, Json{{"per_kind", per_kind}, {"directory", dir.string()}}, seed);
  const auto paths = write_corpus(dir, generate_corpus(per_kind, seed));
  Json files = Json::array();
  for (const auto& p : paths) files.push_back(p.filename().string());
  return Json{{"files", files}, {"manifest", manifest_to_json(manifest)}};
}

SuiteResult cmd_suite(const std::filesystem::path& corpus_dir, const RunOptions& opts) {
  const auto start = Clock::now();
  SuiteResult result;
  result.units = opts.units;
  result.manifest = make_manifest("suite", {corpus_dir.string()}, options_json(opts), opts.cfg.seed);
  for (const CorpusEntry& e : read_corpus(corpus_dir)) {
    const CorrelationReport report = correlation_report(e.state, opts.cfg);
    check_chain(report);
    const BroadcastCandidate candidate = broadcast_search(e.state, opts.broadcast_cfg);
    SuiteRow row;
    row.state_id = e.id;
    row.kind_label = to_string(e.kind);
    row.mutual_information = report.mutual_information;
    row.i_cq_lower = report.i_cq_lower;
    row.i_cc_lower = report.i_cc_lower;
    row.delta_cc_upper = report.delta_cc_upper;
    row.lb_residual = std::max(candidate.residual_ab, candidate.residual_a1b1);
    row.mi_deficit = candidate.mi_deficit;
    row.seed = opts.cfg.seed;
    result.rows.push_back(std::move(row));
  }
  finish(result.manifest, opts, start);
  return result;
}

std::string suite_csv(const SuiteResult& result) {
  const double s = unit_scale(result.units);
  std::ostringstream out;
  for (size_t i = 0; i < std::size(kSuiteColumns); ++i) out << (i ? "," : "") << kSuiteColumns[i];
  out << "\r\n";
  for (const auto& r : result.rows) {
    out << csv_field(r.state_id) << ',' << csv_field(r.kind_label) << ',' << format_number(r.mutual_information * s)
        << ',' << format_number(r.i_cq_lower * s) << ',' << format_number(r.i_cc_lower * s) << ','
        << format_number(r.delta_cc_upper * s) << ',' << format_number(r.lb_residual) << ','
        << format_number(r.mi_deficit * s) << ',' << r.seed << "\r\n";
  }
  return out.str();
}

std::vector<SuiteRow> parse_suite_csv(const std::string& text) {
  const auto records = parse_csv_records(text);
  if (records.empty()) throw ParseError("empty CSV");
  const auto& header = records.front();
  if (header.size() != std::size(kSuiteColumns)) throw ParseError("unexpected CSV header");
  for (size_t i = 0; i < header.size(); ++i)
    if (header[i] != kSuiteColumns[i]) throw ParseError("unexpected CSV column '" + header[i] + "'");
  std::vector<SuiteRow> rows;
  for (size_t k = 1; k < records.size(); ++k) {
    const auto& f = records[k];
    if (f.size() != header.size()) throw ParseError("CSV row " + std::to_string(k) + " has wrong field count");
    SuiteRow r;
    r.state_id = f[0];
    r.kind_label = f[1];
    r.mutual_information = parse_double(f[2]);
    r.i_cq_lower = parse_double(f[3]);
    r.i_cc_lower = parse_double(f[4]);
    r.delta_cc_upper = parse_double(f[5]);
    r.lb_residual = parse_double(f[6]);
    r.mi_deficit = parse_double(f[7]);
    try {
      r.seed = std::stoull(f[8]);
    } catch (const std::exception&) {
      throw ParseError("bad seed '" + f[8] + "'");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace qcorr
