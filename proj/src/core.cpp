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

#include "seqproc/core.hpp"

#include <algorithm>
#include <numeric>

namespace seqproc {

std::string to_string(const Rational &r) {
  if (r.denominator() == 1) {
    return std::to_string(r.numerator());
  }
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string &text) {
  try {
    std::size_t used = 0;
    auto slash = text.find('/');
    std::int64_t num = std::stoll(text.substr(0, slash), &used);
    if (slash == std::string::npos) {
      if (used != text.size()) throw ContractError("trailing characters");
      return Rational(num);
    }
    std::string den_text = text.substr(slash + 1);
    std::int64_t den = std::stoll(den_text, &used);
    if (used != den_text.size() || den == 0) throw ContractError("bad denominator");
    return Rational(num, den);
  } catch (const std::logic_error &) {
    throw ContractError("not a rational number: '" + text + "'");
  }
}

ProcessorTopology::ProcessorTopology(int num_modules, std::vector<int> local_bits, int channel_arity)
    : local_bits_(std::move(local_bits)), channel_arity_(channel_arity), total_bits_(0) {
  if (num_modules < 2) throw ContractError("a processor needs at least 2 modules");
  if (static_cast<std::size_t>(num_modules) != local_bits_.size()) {
    throw ContractError("local_bits must list one entry per module");
  }
  if (channel_arity_ < 2) throw ContractError("channel arity must be at least 2");
  for (int b : local_bits_) {
    if (b < 1) throw ContractError("every module must read at least one local bit");
    total_bits_ += b;
  }
  if (total_bits_ > kMaxTotalBits) {
    throw ContractError("total input bits " + std::to_string(total_bits_) + " exceed the cap of " +
                        std::to_string(kMaxTotalBits));
  }
}

ProcessorTopology ProcessorTopology::uniform(int num_modules, int bits_per_module, int channel_arity) {
  if (num_modules < 0) throw ContractError("negative module count");
  return ProcessorTopology(num_modules, std::vector<int>(static_cast<std::size_t>(num_modules), bits_per_module),
                           channel_arity);
}

int ProcessorTopology::prefix_bits(int modules) const {
  if (modules < 0 || modules > num_modules()) throw ContractError("module count out of range");
  return std::accumulate(local_bits_.begin(), local_bits_.begin() + modules, 0);
}

std::uint32_t ProcessorTopology::local_input(std::uint32_t word, int module) const {
  int shift = total_bits_ - prefix_bits(module + 1);
  return (word >> shift) & ((1u << local_bits(module)) - 1u);
}

std::uint32_t index_of(const ProcessorTopology &topology, std::span<const std::uint8_t> word) {
  if (word.size() != static_cast<std::size_t>(topology.total_bits())) {
    throw ContractError("input word has " + std::to_string(word.size()) + " bits, topology expects " +
                        std::to_string(topology.total_bits()));
  }
  std::uint32_t index = 0;
  for (std::uint8_t bit : word) {
    if (bit > 1) throw ContractError("input word entries must be 0 or 1");
    index = (index << 1) | bit;
  }
  return index;
}

InputWord word_of(const ProcessorTopology &topology, std::uint32_t index) {
  if (index >= topology.num_words()) throw ContractError("word index out of range");
  InputWord word(static_cast<std::size_t>(topology.total_bits()));
  for (std::size_t i = word.size(); i-- > 0;) {
    word[i] = index & 1u;
    index >>= 1;
  }
  return word;
}

SignMatrix::SignMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

SignMatrix::SignMatrix(std::size_t rows, std::size_t cols, std::vector<std::int8_t> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw ContractError("matrix data does not match its shape");
  for (std::int8_t v : data_) {
    if (v < -1 || v > 1) throw ContractError("matrix entries must be -1, 0 or +1");
  }
}

bool SignMatrix::fully_specified() const {
  return std::none_of(data_.begin(), data_.end(), [](std::int8_t v) { return v == 0; });
}

TargetFunction::TargetFunction(ProcessorTopology topology, std::vector<std::int8_t> values)
    : topology_(std::move(topology)), values_(std::move(values)) {
  if (values_.size() != topology_.num_words()) {
    throw ContractError("target has " + std::to_string(values_.size()) + " values, topology needs " +
                        std::to_string(topology_.num_words()));
  }
  for (std::int8_t v : values_) {
    if (v < -1 || v > 1) throw ContractError("target values must be -1, 0 or +1");
  }
}

std::size_t TargetFunction::support_size() const {
  return static_cast<std::size_t>(std::count_if(values_.begin(), values_.end(), [](std::int8_t v) { return v != 0; }));
}

TargetFunction TargetFunction::negated() const {
  std::vector<std::int8_t> flipped(values_.size());
  std::transform(values_.begin(), values_.end(), flipped.begin(), [](std::int8_t v) { return static_cast<std::int8_t>(-v); });
  return TargetFunction(topology_, std::move(flipped));
}

ReshapedMatrix reshape(const TargetFunction &target, int prefix_bits) {
  int total = target.topology().total_bits();
  if (prefix_bits <= 0 || prefix_bits >= total) {
    throw ContractError("prefix_bits must lie strictly between 0 and " + std::to_string(total));
  }
  return reshape(target.values(), std::size_t{1} << prefix_bits);
}

ReshapedMatrix reshape(std::span<const std::int8_t> values, std::size_t rows) {
  if (rows == 0 || values.size() % rows != 0) throw ContractError("row count does not divide the vector length");
  return SignMatrix(rows, values.size() / rows, std::vector<std::int8_t>(values.begin(), values.end()));
}

namespace {

void check_output(const TargetFunction &target, std::span<const std::int8_t> output) {
  if (output.size() != target.size()) {
    throw ContractError("output has " + std::to_string(output.size()) + " entries, target has " +
                        std::to_string(target.size()));
  }
  for (std::int8_t o : output) {
    if (o != 1 && o != -1) throw ContractError("output entries must be -1 or +1");
  }
}

}  // namespace

Rational correlation(const TargetFunction &target, std::span<const std::int8_t> output) {
  check_output(target, output);
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < output.size(); ++i) sum += output[i] * target[i];
  return Rational(sum, static_cast<std::int64_t>(target.size()));
}

std::int64_t hamming_errors(const TargetFunction &target, std::span<const std::int8_t> output) {
  check_output(target, output);
  std::int64_t errors = 0;
  for (std::size_t i = 0; i < output.size(); ++i) {
    if (target[i] != 0 && output[i] != target[i]) ++errors;
  }
  return errors;
}

Rational correlation_from_errors(const TargetFunction &target, std::int64_t errors) {
  auto support = static_cast<std::int64_t>(target.support_size());
  return Rational(support - 2 * errors, static_cast<std::int64_t>(target.size()));
}

std::vector<std::int8_t> merge_complementary_rows(std::span<const std::int8_t> a, std::span<const std::int8_t> b) {
  if (a.size() != b.size()) throw ContractError("rows to merge differ in length");
  std::vector<std::int8_t> merged(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) {
      throw ContractError("rows overlap at position " + std::to_string(i) + "; only complementary rows merge");
    }
    merged[i] = static_cast<std::int8_t>(a[i] + b[i]);
  }
  return merged;
}

bool rows_compatible(std::span<const std::int8_t> a, std::span<const std::int8_t> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0 && a[i] != b[i]) return false;
  }
  return true;
}

RowClasses distinct_rows(const SignMatrix &matrix, bool zeros_as_wildcards) {
  if (!zeros_as_wildcards && !matrix.fully_specified()) {
    throw ContractError("distinct_rows needs a fully specified matrix unless zeros are wildcards");
  }
  RowClasses classes;
  classes.labels.resize(matrix.rows());
  std::vector<std::vector<std::int8_t>> patterns;
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    auto row = matrix.row(r);
    std::size_t label = patterns.size();
    for (std::size_t c = 0; c < patterns.size(); ++c) {
      bool same = zeros_as_wildcards ? rows_compatible(patterns[c], row) : std::ranges::equal(patterns[c], row);
      if (same) {
        label = c;
        break;
      }
    }
    if (label == patterns.size()) {
      patterns.emplace_back(row.begin(), row.end());
    } else if (zeros_as_wildcards) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (patterns[label][i] == 0) patterns[label][i] = row[i];
      }
    }
    classes.labels[r] = label;
  }
  classes.count = patterns.size();
  return classes;
}

std::int64_t hamming_distance(std::span<const std::int8_t> a, std::span<const std::int8_t> b) {
  if (a.size() != b.size()) throw ContractError("rows differ in length");
  std::int64_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

std::int64_t min_pairwise_hamming(const SignMatrix &matrix) {
  if (matrix.rows() < 2) throw ContractError("min_pairwise_hamming needs at least two rows");
  std::int64_t best = static_cast<std::int64_t>(matrix.cols());
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    for (std::size_t j = i + 1; j < matrix.rows(); ++j) {
      best = std::min(best, hamming_distance(matrix.row(i), matrix.row(j)));
    }
  }
  return best;
}

}  // namespace seqproc
