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
#include <span>
#include <string>
#include <vector>

#include "seqproc/core.hpp"

namespace seqproc {

/// Lookup table of one module. Entry (s, y) is at index s * 2^local_bits + y,
/// where s is the incoming symbol and y the local input. Intermediate modules
/// store symbols in [0, q); the last module stores outputs in {-1, +1}.
struct ModuleStrategy {
  int incoming = 1;
  int local_bits = 0;
  std::vector<std::int8_t> table;

  std::size_t cells_per_symbol() const { return std::size_t{1} << local_bits; }
  std::int8_t at(int symbol, std::uint32_t local) const {
    return table[static_cast<std::size_t>(symbol) * cells_per_symbol() + local];
  }
  std::int8_t &at(int symbol, std::uint32_t local) {
    return table[static_cast<std::size_t>(symbol) * cells_per_symbol() + local];
  }

  bool operator==(const ModuleStrategy &other) const = default;
};

/// Complete lookup tables F_1..F_N of a deterministic classical processor.
class StrategySet {
 public:
  StrategySet(ProcessorTopology topology, std::vector<ModuleStrategy> modules);

  /// Every table filled with zeros (intermediate) or +1 (last module).
  static StrategySet constant(const ProcessorTopology &topology);

  const ProcessorTopology &topology() const { return topology_; }
  const std::vector<ModuleStrategy> &modules() const { return modules_; }
  const ModuleStrategy &module(int m) const { return modules_.at(static_cast<std::size_t>(m)); }

  /// Replaces one module's table; the shape must match.
  void set_module(int m, ModuleStrategy strategy);

  bool operator==(const StrategySet &other) const = default;

 private:
  void validate() const;

  ProcessorTopology topology_;
  std::vector<ModuleStrategy> modules_;
};

/// Shape the topology requires for module `m`, filled with `fill`.
ModuleStrategy empty_module(const ProcessorTopology &topology, int m, std::int8_t fill);

int evaluate(const StrategySet &strategies, std::uint32_t word_index);
int evaluate(const StrategySet &strategies, std::span<const std::uint8_t> word);

/// Output over all words in index order.
std::vector<std::int8_t> output_table(const StrategySet &strategies);

struct OracleOptions {
  /// Largest accepted (canonical strategy count x words) product.
  double budget = 5e9;
  unsigned workers = 1;
};

struct OracleResult {
  Rational max_correlation;
  std::int64_t min_errors = 0;
  StrategySet witness;
  std::uint64_t strategies_scored = 0;
};

/// Estimated work of exact_oracle: canonical tables of modules 1..N-1 times words.
double estimate_oracle_cost(const ProcessorTopology &topology);

/// Exact maximum correlation over all deterministic strategy sets. Intermediate
/// tables are enumerated in canonical form (symbols appear in first-use order,
/// rows for unreachable incoming symbols fixed to 0); the last module is the
/// per-cell weighted majority, ties and unreachable cells going to +1.
/// Throws SizeGuardError when the estimated cost exceeds the budget.
OracleResult exact_oracle(const TargetFunction &target, const ProcessorTopology &topology,
                          const OracleOptions &options = {});

StrategySet random_strategy(const ProcessorTopology &topology, std::uint64_t seed);

/// Best known strategies for the three reference processors.
enum class ReferenceStrategy { kBit3, kTrit3, kTrit4 };

StrategySet reference_strategy(ReferenceStrategy which);

}  // namespace seqproc
