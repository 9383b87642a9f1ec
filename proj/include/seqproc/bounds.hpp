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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqproc/classical.hpp"
#include "seqproc/core.hpp"

namespace seqproc {

struct ExpressibilityResult {
  bool expressible = true;
  /// Cut j separates modules 1..j from the rest (1-based).
  std::optional<int> first_violating_cut;
  /// Row classes found at each cut examined.
  std::vector<std::size_t> classes_per_cut;
};

/// Row-rank criterion: every cut's reshape must have at most q distinct rows.
/// In compatibility mode zeros are wildcards and rows must split into at most
/// q classes of mutually compatible rows.
ExpressibilityResult expressibility_check(const TargetFunction &target, const ProcessorTopology &topology,
                                          bool compatibility_mode = false);

/// Smallest number of classes of mutually compatible rows, or limit + 1 if it exceeds `limit`.
std::size_t min_compatible_classes(const SignMatrix &matrix, std::size_t limit);

struct Reconstruction {
  std::optional<StrategySet> strategies;
  /// Describes the first inconsistency when the row classes do not induce tables.
  std::optional<std::string> conflict;
};

/// Builds a strategy set whose output equals a fully specified target by
/// labelling the distinct rows of each cut.
Reconstruction reconstruct_strategies(const TargetFunction &target, const ProcessorTopology &topology);

/// Lower bound on the errors of any processor output with the given module
/// input sizes and channel arity. At each cut the rows are split into at most
/// q classes that must become identical; each class is then bounded on its own
/// with a fresh alphabet, which can only lower the count.
std::int64_t branch_error_bound(std::span<const std::int8_t> values, std::span<const int> local_bits, int q);

enum class FactRelation { kEqual, kAtLeast };

struct CertificateFact {
  std::string description;
  std::string operation;
  std::int64_t observed = 0;
  std::int64_t required = 0;
  FactRelation relation = FactRelation::kEqual;
  bool holds = false;
};

struct BoundCertificate {
  std::string target_id;
  std::int64_t claimed_bound = 0;
  std::vector<CertificateFact> facts;
  bool pass = false;

  /// The certified bound on errors; zero when any fact fails.
  std::int64_t bound() const { return pass ? claimed_bound : 0; }
};

/// Three-module one-bit processor: at least 8 errors.
BoundCertificate certify_qubit3(const TargetFunction &target);
/// Three-module one-trit processor: at least 2 errors.
BoundCertificate certify_qutrit3(const TargetFunction &target);
/// Four-module one-trit processor: at least 16 errors.
BoundCertificate certify_qutrit4(const TargetFunction &target);

std::string render(const BoundCertificate &certificate);

}  // namespace seqproc
