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
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "seqproc/classical.hpp"
#include "seqproc/core.hpp"
#include "seqproc/pbo.hpp"

namespace seqproc {

struct Schedule {
  /// Estimated from random single-move probes when unset.
  std::optional<double> initial_temperature;
  double final_temperature = 0.01;
  /// Temperature multiplier applied after every sweep.
  double cooling = 0.98;
  int sweeps = 2000;
  int restarts = 32;
  std::uint64_t seed = 0;
  unsigned workers = 1;

  void validate() const;
  double temperature(double initial, int sweep) const;
};

/// A state space of independent sites, each holding a symbol in [0, arity).
/// Implementations keep incremental bookkeeping so proposals are cheap.
class CategoricalModel {
 public:
  virtual ~CategoricalModel() = default;

  virtual std::size_t num_sites() const = 0;
  virtual int arity(std::size_t site) const = 0;

  virtual void reset(std::span<const std::uint8_t> state) = 0;
  virtual const std::vector<std::uint8_t> &state() const = 0;
  virtual double energy() const = 0;
  /// Energy change if `site` took `value`; remembered until accept().
  virtual double propose(std::size_t site, std::uint8_t value) = 0;
  virtual void accept() = 0;

  /// Exact energy of an arbitrary state, independent of the incremental path.
  virtual Rational exact_energy(std::span<const std::uint8_t> state) const = 0;
  virtual std::unique_ptr<CategoricalModel> clone() const = 0;
};

struct RestartSummary {
  int index = 0;
  std::uint64_t seed = 0;
  double best_energy = 0;
  double final_energy = 0;
  /// First sweep at which the restart's best energy was reached.
  int best_sweep = 0;
  std::uint64_t accepted_moves = 0;
};

struct AnnealResult {
  /// Binary assignment for polynomial runs, table symbols for strategy runs.
  std::vector<std::uint8_t> best_state;
  Rational best_energy;
  int best_restart = 0;
  std::vector<RestartSummary> restarts;
  double initial_temperature = 0;
  double wall_seconds = 0;
  std::optional<StrategySet> strategies;
  std::optional<std::int64_t> errors;
};

/// Metropolis annealing over any model; restarts use seed + i and the best
/// restart wins, ties going to the lowest index.
AnnealResult anneal_model(const CategoricalModel &model, const Schedule &schedule);

/// Single-bit-flip model over a pseudo-Boolean polynomial.
std::unique_ptr<CategoricalModel> make_poly_model(const PseudoBooleanPoly &poly);

/// Direct model over strategy tables; energy -(matches - mismatches).
std::unique_ptr<CategoricalModel> make_strategy_model(const TargetFunction &target,
                                                      const ProcessorTopology &topology);
StrategySet strategies_from_state(const ProcessorTopology &topology, std::span<const std::uint8_t> state);

AnnealResult anneal_poly(const PseudoBooleanPoly &poly, const Schedule &schedule);
AnnealResult anneal_strategies(const TargetFunction &target, const ProcessorTopology &topology,
                               const Schedule &schedule);
/// Anneals an encoded (possibly partly frozen) problem and decodes the result.
/// With no free variables the frozen strategies are evaluated directly.
AnnealResult anneal_frozen(const EncodedProblem &problem, const TargetFunction &target, const Schedule &schedule);

}  // namespace seqproc
