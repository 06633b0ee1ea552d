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

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "qcorr/broadcast.hpp"
#include "qcorr/channel.hpp"
#include "qcorr/classify.hpp"
#include "qcorr/correlations.hpp"
#include "qcorr/optimize.hpp"
#include "qcorr/state.hpp"

namespace qcorr {

using Json = nlohmann::json;

enum class Units { Bits, Nats };
Units parse_units(const std::string& text);
std::string to_string(Units units);
// Multiplier converting bits to `units`.
double unit_scale(Units units);

// Matrices are flattened row-major as [[re, im], ...].
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, Index rows, Index cols);

// State file: {"dims": [...], "matrix": [[re, im], ...]} plus optional
// "label" and "id" strings.
struct StateRecord {
  DensityMatrix state;
  std::string label;
  std::string id;
};
Json state_to_json(const DensityMatrix& rho, const std::string& label = "", const std::string& id = "");
StateRecord state_record_from_json(const Json& j);
DensityMatrix state_from_json(const Json& j);

// Channel file: {"d_in": m, "d_out": n, "kraus": [[[re, im], ...], ...]}
// plus optional "out_dims".
Json channel_to_json(const KrausMap& ch);
KrausMap kraus_map_from_json(const Json& j);
KrausChannel channel_from_json(const Json& j);

Json povm_to_json(const Povm& povm);
Povm povm_from_json(const Json& j);

Json config_to_json(const OptimizerConfig& cfg);
OptimizerConfig config_from_json(const Json& j);
Json optimization_to_json(const OptimizationResult& r);
OptimizationResult optimization_from_json(const Json& j);

// Correlation report with values in `units`.
Json report_to_json(const CorrelationReport& report, Units units = Units::Bits);
CorrelationReport report_from_json(const Json& j);  // values returned in bits

Json verdict_to_json(const ClassicalityVerdict& v);
ClassicalityVerdict verdict_from_json(const Json& j);

Json candidate_to_json(const BroadcastCandidate& c, Units units = Units::Bits);
BroadcastCandidate candidate_from_json(const Json& j);  // values returned in bits

// Parse errors raise ParseError; invariant violations raise ValidationError.
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string dump_json(const Json& j);

DensityMatrix read_state_file(const std::filesystem::path& path);
StateRecord read_state_record(const std::filesystem::path& path);
void write_state_file(const std::filesystem::path& path, const DensityMatrix& rho, const std::string& label = "",
                      const std::string& id = "");
KrausChannel read_channel_file(const std::filesystem::path& path);
void write_channel_file(const std::filesystem::path& path, const KrausMap& ch);

}  // namespace qcorr
