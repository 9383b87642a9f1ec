// Copyright 2026 The seqproc Authors
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

#include <iosfwd>
#include <span>
#include <string>

#include "json.hpp"
#include "seqproc/annealer.hpp"
#include "seqproc/apps.hpp"
#include "seqproc/bounds.hpp"
#include "seqproc/classical.hpp"
#include "seqproc/core.hpp"
#include "seqproc/quantum.hpp"

namespace seqproc {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &content);

Json to_json(const ProcessorTopology &topology);
ProcessorTopology topology_from_json(const Json &doc);

/// {"format": "seqproc-target", "version": 1, topology fields, "values": [...]}
Json to_json(const TargetFunction &target);
TargetFunction target_from_json(const Json &doc);

/// Tables listed per module as one array per incoming symbol.
Json to_json(const StrategySet &strategies);
StrategySet strategies_from_json(const Json &doc);

Json to_json(const BoundCertificate &certificate);
Json to_json(const Schedule &schedule);
/// Energy, errors, decoded tables, schedule, per-restart summaries and timing.
Json anneal_report(const AnnealResult &result, const Schedule &schedule);

Json parse_json(const std::string &text);

/// `mat m n` followed by m lines of n values in {-1, 0, 1}.
void write_matrix(std::ostream &out, const SignMatrix &matrix);
SignMatrix read_matrix(std::istream &in);

/// Aligned text rendering with one matrix row per line.
std::string render_matrix(const SignMatrix &matrix);

/// `word_index,outcome` per shot; outcome +1, -1, or D for a discarded detection.
void write_shot_log(std::ostream &out, std::span<const ShotRecord> shots);

}  // namespace seqproc
