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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "seqproc/error.hpp"

namespace seqproc {

/// Shape of a sequential processor: a chain of modules, each reading its own
/// local input bits plus one symbol from a `channel_arity`-letter link.
class ProcessorTopology {
 public:
  static constexpr int kMaxTotalBits = 24;

  ProcessorTopology(int num_modules, std::vector<int> local_bits, int channel_arity);

  /// Every module reads `bits_per_module` local bits.
  static ProcessorTopology uniform(int num_modules, int bits_per_module, int channel_arity);

  int num_modules() const { return static_cast<int>(local_bits_.size()); }
  const std::vector<int> &local_bits() const { return local_bits_; }
  int local_bits(int module) const { return local_bits_.at(static_cast<std::size_t>(module)); }
  int channel_arity() const { return channel_arity_; }
  int total_bits() const { return total_bits_; }
  std::size_t num_words() const { return std::size_t{1} << total_bits_; }

  /// Number of input bits consumed by modules [0, modules).
  int prefix_bits(int modules) const;

  /// Local input of `module` inside the word with index `word`.
  std::uint32_t local_input(std::uint32_t word, int module) const;

  bool operator==(const ProcessorTopology &other) const = default;

 private:
  std::vector<int> local_bits_;
  int channel_arity_;
  int total_bits_;
};

/// Bits of an input word, X1 first.
using InputWord = std::vector<std::uint8_t>;

/// X1 is the most significant bit.
std::uint32_t index_of(const ProcessorTopology &topology, std::span<const std::uint8_t> word);
InputWord word_of(const ProcessorTopology &topology, std::uint32_t index);

/// Dense row-major matrix with entries in {-1, 0, +1}.
class SignMatrix {
 public:
  SignMatrix() = default;
  SignMatrix(std::size_t rows, std::size_t cols);
  SignMatrix(std::size_t rows, std::size_t cols, std::vector<std::int8_t> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int8_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::int8_t &at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const std::int8_t> row(std::size_t r) const {
    return std::span<const std::int8_t>(data_).subspan(r * cols_, cols_);
  }
  const std::vector<std::int8_t> &data() const { return data_; }
  bool fully_specified() const;

  bool operator==(const SignMatrix &other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int8_t> data_;
};

using ReshapedMatrix = SignMatrix;

/// Ternary table over all input words; 0 marks "don't care".
class TargetFunction {
 public:
  TargetFunction(ProcessorTopology topology, std::vector<std::int8_t> values);

  const ProcessorTopology &topology() const { return topology_; }
  const std::vector<std::int8_t> &values() const { return values_; }
  std::int8_t operator[](std::size_t word) const { return values_[word]; }
  std::size_t size() const { return values_.size(); }
  std::size_t support_size() const;
  bool fully_specified() const { return support_size() == values_.size(); }
  TargetFunction negated() const;

  bool operator==(const TargetFunction &other) const = default;

 private:
  ProcessorTopology topology_;
  std::vector<std::int8_t> values_;
};

/// Row r, column c holds values[r * 2^(total - prefix_bits) + c].
ReshapedMatrix reshape(const TargetFunction &target, int prefix_bits);
ReshapedMatrix reshape(std::span<const std::int8_t> values, std::size_t rows);

/// (1 / 2^total) * sum_x output(x) * target(x), exactly.
Rational correlation(const TargetFunction &target, std::span<const std::int8_t> output);

/// Support entries where the output disagrees with the target.
std::int64_t hamming_errors(const TargetFunction &target, std::span<const std::int8_t> output);

/// Exact correlation of an output that makes `errors` mistakes on the support.
Rational correlation_from_errors(const TargetFunction &target, std::int64_t errors);

/// Entrywise sum of two rows with disjoint supports.
std::vector<std::int8_t> merge_complementary_rows(std::span<const std::int8_t> a,
                                                  std::span<const std::int8_t> b);

bool rows_compatible(std::span<const std::int8_t> a, std::span<const std::int8_t> b);

struct RowClasses {
  std::size_t count = 0;
  std::vector<std::size_t> labels;
};

/// Groups identical rows. With `zeros_as_wildcards`, a row joins the first
/// class whose accumulated pattern it is compatible with (greedy, so the
/// count is an upper bound on the minimum compatible partition).
RowClasses distinct_rows(const SignMatrix &matrix, bool zeros_as_wildcards = false);

std::int64_t hamming_distance(std::span<const std::int8_t> a, std::span<const std::int8_t> b);

/// Minimum, over row pairs, of the number of differing positions.
std::int64_t min_pairwise_hamming(const SignMatrix &matrix);

}  // namespace seqproc
