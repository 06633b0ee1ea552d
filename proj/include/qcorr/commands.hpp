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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qcorr/io.hpp"
#include "qcorr/optimize.hpp"

namespace qcorr {

std::string tool_version();

struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  Json config;
  std::string version;
  std::uint64_t seed = 0;
  // Omitted unless requested, so that reruns produce identical files.
  std::optional<double> wall_time_s;
};

Json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const Json& j);

struct RunOptions {
  OptimizerConfig cfg;  // measurement searches
  OptimizerConfig broadcast_cfg = OptimizerConfig::broadcast_defaults();
  Units units = Units::Bits;
  double class_tol = tol::kClassical;
  int party = 0;  // party acted on by cmd_petz
  bool record_wall_time = false;
};

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitInvariant = 3;
inline constexpr int kExitOptimizer = 4;

// Each command returns a JSON document with a "manifest" member. Errors
// propagate as ParseError, ValidationError/DimensionError or OptimizerError.
Json cmd_measures(const std::filesystem::path& state_path, const RunOptions& opts);
Json cmd_classify(const std::filesystem::path& state_path, const RunOptions& opts);
Json cmd_broadcast(const std::filesystem::path& state_path, const RunOptions& opts);
Json cmd_petz(const std::filesystem::path& state_path, const std::filesystem::path& channel_path,
              const RunOptions& opts);
Json cmd_corpus(const std::filesystem::path& dir, int per_kind, std::uint64_t seed);

struct SuiteRow {
  std::string state_id;
  std::string kind_label;
  double mutual_information = 0.0;
  double i_cq_lower = 0.0;
  double i_cc_lower = 0.0;
  double delta_cc_upper = 0.0;
  double lb_residual = 0.0;  // larger marginal residual of the best broadcast candidate
  double mi_deficit = 0.0;
  std::uint64_t seed = 0;
};

struct SuiteResult {
  std::vector<SuiteRow> rows;
  RunManifest manifest;
  Units units = Units::Bits;
};

SuiteResult cmd_suite(const std::filesystem::path& corpus_dir, const RunOptions& opts);

// RFC 4180 text with a header row; values in result.units.
std::string suite_csv(const SuiteResult& result);
// Returns rows with values as written.
std::vector<SuiteRow> parse_suite_csv(const std::string& text);

}  // namespace qcorr
