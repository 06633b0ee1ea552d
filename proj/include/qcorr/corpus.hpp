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
#include <string>
#include <vector>

#include "qcorr/state.hpp"

namespace qcorr {

// Ground-truth label of a corpus state.
enum class CorpusKind { CC, CQ, Separable, Entangled };

std::string to_string(CorpusKind kind);  // "cc", "cq", "separable", "entangled"
CorpusKind parse_corpus_kind(const std::string& text);

struct CorpusEntry {
  std::string id;
  CorpusKind kind;
  DensityMatrix state;
  // Pure entangled states, for which I_CC <= min(S_A, S_B) < I.
  bool pure = false;
};

inline constexpr std::uint64_t kCorpusSeed = 20260101;

// per_kind states of each kind, mostly 2 x 2 with every third one 2 x 3:
//   cc         (U (x) V) diag(p) (U (x) V)^dagger
//   cq         sum_i p_i |u_i><u_i| (x) sigma_i with non-commuting sigma_i
//   separable  mixtures of three random product pure states
//   entangled  Bell states, Werner states above 1/3, random pure states
std::vector<CorpusEntry> generate_corpus(int per_kind, std::uint64_t seed = kCorpusSeed);

// Writes <dir>/<id>.json for every entry; returns the written paths.
std::vector<std::filesystem::path> write_corpus(const std::filesystem::path& dir,
                                                const std::vector<CorpusEntry>& corpus);
// Reads every *.json state file in dir, ordered by file name. The kind comes
// from the file's "label".
std::vector<CorpusEntry> read_corpus(const std::filesystem::path& dir);

}  // namespace qcorr
