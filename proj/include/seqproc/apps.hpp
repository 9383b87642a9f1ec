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
#include <vector>

#include "seqproc/annealer.hpp"
#include "seqproc/classical.hpp"
#include "seqproc/core.hpp"

namespace seqproc {

/// Entries in {-1, 0, +1}; 0 is unobserved and costs nothing.
using BinaryMatrix = SignMatrix;

enum class ApproxMethod { kExact, kAnneal };

const char *to_string(ApproxMethod method);
ApproxMethod parse_approx_method(const std::string &name);

/// Largest matrix the exact method accepts.
inline constexpr std::size_t kExactMaxRows = 16;
inline constexpr std::size_t kExactMaxCols = 20;

struct LowRankResult {
  /// Every row is one of the centroids, so entries are all +-1.
  BinaryMatrix approximation;
  /// Disagreements with the observed entries.
  std::int64_t distance = 0;
  /// Class of each row, first-use ordered.
  std::vector<std::size_t> assignment;
  BinaryMatrix centroids;
};

/// Best approximation with at most k distinct rows. Centroids are the
/// per-column majority of their rows with ties going to +1.
LowRankResult lowrank_approx(const BinaryMatrix &matrix, std::size_t k, ApproxMethod method,
                             const Schedule &schedule = {});

/// Fills unobserved entries from the best k-row approximation.
LowRankResult complete(const BinaryMatrix &matrix, std::size_t k, ApproxMethod method = ApproxMethod::kExact,
                       const Schedule &schedule = {});

/// Centroids and distance for a fixed row-to-class assignment.
LowRankResult score_assignment(const BinaryMatrix &matrix, std::span<const std::size_t> assignment);

struct TensorApproximation {
  StrategySet strategies;
  std::int64_t errors = 0;
  Rational correlation;
};

/// Best sequential-processor representation found by encoding and annealing.
TensorApproximation tensor_approx(const TargetFunction &target, const ProcessorTopology &topology,
                                  const Schedule &schedule = {});

}  // namespace seqproc
