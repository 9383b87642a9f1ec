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
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "seqproc/classical.hpp"
#include "seqproc/core.hpp"

namespace seqproc {

/// Sorted, duplicate-free variable indices of one product term.
using Monomial = std::vector<std::uint32_t>;

/// Multilinear polynomial over 0/1 variables with exact coefficients. The
/// constant lives under the empty monomial; zero coefficients are never stored.
class PseudoBooleanPoly {
 public:
  explicit PseudoBooleanPoly(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  static PseudoBooleanPoly constant_poly(std::size_t num_vars, Rational value);
  static PseudoBooleanPoly variable(std::size_t num_vars, std::uint32_t index);

  std::size_t num_vars() const { return num_vars_; }
  const std::map<Monomial, Rational> &terms() const { return terms_; }
  Rational constant() const;
  int degree() const;

  /// Adds coeff * prod(vars); repeated variables collapse since x*x = x.
  void add(Monomial vars, Rational coeff);
  void add(const PseudoBooleanPoly &other, Rational scale = Rational(1));

  Rational evaluate(std::span<const std::uint8_t> assignment) const;

  PseudoBooleanPoly operator*(const PseudoBooleanPoly &other) const;
  PseudoBooleanPoly &operator+=(const PseudoBooleanPoly &other);

  bool operator==(const PseudoBooleanPoly &other) const = default;

 private:
  std::size_t num_vars_;
  std::map<Monomial, Rational> terms_;
};

enum class Encoding {
  kBit,         ///< one variable per cell, symbol = a
  kTritTwoBit,  ///< two variables per cell: 00->0, 01->1, 10->2, 11->2
  kTritOneHot,  ///< three variables per cell plus a one-hot penalty
};

const char *to_string(Encoding encoding);
Encoding parse_encoding(const std::string &name);
/// kBit for binary channels, kTritTwoBit for ternary ones.
Encoding default_encoding(const ProcessorTopology &topology);

/// Maps every strategy-table cell to its binary variables. Last-module cells
/// always hold one variable b with output 2b - 1.
class VariableLayout {
 public:
  struct VarInfo {
    int module = 0;
    int symbol = 0;
    std::uint32_t local = 0;
    int slot = 0;
  };

  VariableLayout(ProcessorTopology topology, Encoding encoding);

  const ProcessorTopology &topology() const { return topology_; }
  Encoding encoding() const { return encoding_; }
  std::size_t num_vars() const { return inverse_.size(); }
  int vars_per_cell(int module) const;

  /// Variable indices of one cell; -1 marks a frozen variable.
  std::span<const std::int32_t> cell_vars(int module, int symbol, std::uint32_t local) const;
  const VarInfo &info(std::size_t var) const { return inverse_.at(var); }

  bool frozen(int module) const { return frozen_.at(static_cast<std::size_t>(module)).has_value(); }
  const std::optional<ModuleStrategy> &frozen_strategy(int module) const {
    return frozen_.at(static_cast<std::size_t>(module));
  }

  /// Values a cell's variables take to encode `value` (a symbol, or +-1 for the last module).
  std::vector<std::uint8_t> encode_value(int module, int value) const;

  /// Drops the module's variables and renumbers the rest in order. Returns the
  /// old-to-new index map (-1 for removed variables).
  std::vector<std::int32_t> freeze(int module, const ModuleStrategy &strategy);

 private:
  std::size_t cell_offset(int module, int symbol, std::uint32_t local) const;
  void rebuild_inverse();

  ProcessorTopology topology_;
  Encoding encoding_;
  std::vector<std::vector<std::int32_t>> vars_;  // per module, cell-major then slot
  std::vector<std::optional<ModuleStrategy>> frozen_;
  std::vector<VarInfo> inverse_;
};

struct EncodedProblem {
  PseudoBooleanPoly poly;
  VariableLayout layout;
  /// One-hot penalty weight; zero for penalty-free encodings.
  Rational penalty;
};

/// P(a) = -sum_X T(X) O_a(X) (+ penalty * sum over cells of (sum v - 1)^2 for one-hot).
/// Minimising P maximises correlation; P = -(matches - mismatches) for valid assignments.
EncodedProblem encode_correlation(const TargetFunction &target, const ProcessorTopology &topology, Encoding encoding,
                                  std::optional<Rational> penalty = std::nullopt);

/// Substitutes a fixed table for one module and removes its variables.
EncodedProblem freeze_module(const EncodedProblem &problem, int module, const ModuleStrategy &strategy);

StrategySet decode(std::span<const std::uint8_t> assignment, const VariableLayout &layout);
std::vector<std::uint8_t> encode_assignment(const StrategySet &strategies, const VariableLayout &layout);

/// errors = (|support| + energy) / 2 under the -(matches - mismatches) convention.
std::int64_t errors_from_energy(const TargetFunction &target, const Rational &energy);

struct AuxVariable {
  std::uint32_t index = 0;
  std::uint32_t left = 0;
  std::uint32_t right = 0;
};

/// Quadratic problem sum_{i<=j} Q_ij x_i x_j + offset; (i, i) entries are linear.
struct QuadratizedProblem {
  std::size_t num_vars = 0;
  std::size_t num_original = 0;
  std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> coefficients;
  Rational offset;
  Rational penalty;
  std::vector<AuxVariable> aux;

  Rational energy(std::span<const std::uint8_t> assignment) const;
  PseudoBooleanPoly to_poly() const;
  /// Extends an assignment of the original variables with consistent auxiliaries.
  std::vector<std::uint8_t> extend(std::span<const std::uint8_t> original) const;

  bool operator==(const QuadratizedProblem &other) const = default;
};

/// Replaces the most frequent variable pair of terms above degree two by an
/// auxiliary z with penalty M (xy - 2xz - 2yz + 3z) until the polynomial is
/// quadratic. Default M = 1 + sum of |coefficients|.
QuadratizedProblem quadratize(const PseudoBooleanPoly &poly, std::optional<Rational> penalty = std::nullopt);

/// `pbo <num_vars> <num_terms>` then `i j k : coeff` per term (`: c` for the constant).
void write_poly(std::ostream &out, const PseudoBooleanPoly &poly);
PseudoBooleanPoly read_poly(std::istream &in);

/// `qubo <num_vars> <offset>` then `i j coeff` with i <= j.
void write_qubo(std::ostream &out, const QuadratizedProblem &problem);
QuadratizedProblem read_qubo(std::istream &in);

}  // namespace seqproc
