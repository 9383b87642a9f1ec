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

#include "seqproc/apps.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "canonical.hpp"
#include "seqproc/pbo.hpp"

namespace seqproc {

const char *to_string(ApproxMethod method) { return method == ApproxMethod::kExact ? "exact" : "anneal"; }

ApproxMethod parse_approx_method(const std::string &name) {
  if (name == "exact") return ApproxMethod::kExact;
  if (name == "anneal") return ApproxMethod::kAnneal;
  throw ContractError("unknown method '" + name + "' (expected exact or anneal)");
}

LowRankResult score_assignment(const BinaryMatrix &matrix, std::span<const std::size_t> assignment) {
  if (assignment.size() != matrix.rows()) throw ContractError("assignment length differs from the row count");
  // Relabel classes in first-use order.
  std::map<std::size_t, std::size_t> relabel;
  LowRankResult out;
  for (std::size_t c : assignment) {
    auto [it, inserted] = relabel.try_emplace(c, relabel.size());
    out.assignment.push_back(it->second);
  }
  const std::size_t classes = relabel.size();
  const std::size_t cols = matrix.cols();
  std::vector<std::int64_t> pos(classes * cols, 0), neg(classes * cols, 0);
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    for (std::size_t j = 0; j < cols; ++j) {
      const auto v = matrix.at(r, j);
      if (v > 0) ++pos[out.assignment[r] * cols + j];
      if (v < 0) ++neg[out.assignment[r] * cols + j];
    }
  }
  out.centroids = BinaryMatrix(classes, cols);
  for (std::size_t c = 0; c < classes; ++c) {
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t i = c * cols + j;
      out.centroids.at(c, j) = pos[i] >= neg[i] ? 1 : -1;
      out.distance += std::min(pos[i], neg[i]);
    }
  }
  out.approximation = BinaryMatrix(matrix.rows(), cols);
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    for (std::size_t j = 0; j < cols; ++j) out.approximation.at(r, j) = out.centroids.at(out.assignment[r], j);
  }
  return out;
}

namespace {

LowRankResult lowrank_exact(const BinaryMatrix &matrix, std::size_t k) {
  if (matrix.rows() > kExactMaxRows || matrix.cols() > kExactMaxCols) {
    throw SizeGuardError("exact low-rank search is limited to " + std::to_string(kExactMaxRows) + "x" +
                         std::to_string(kExactMaxCols) + " matrices");
  }
  const std::size_t rows = matrix.rows();
  const std::size_t cols = matrix.cols();
  const int q = static_cast<int>(std::min(k, rows));
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<std::size_t> best_labels;
  std::vector<std::int64_t> pos(static_cast<std::size_t>(q) * cols), neg(pos.size());
  std::vector<std::int8_t> labels;
  detail::for_each_canonical(static_cast<int>(std::min(rows, kExactMaxRows)), q, labels, [&](const std::vector<std::int8_t> &l, int used) {
    std::fill(pos.begin(), pos.end(), 0);
    std::fill(neg.begin(), neg.end(), 0);
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t base = static_cast<std::size_t>(l[r]) * cols;
      for (std::size_t j = 0; j < cols; ++j) {
        const auto v = matrix.at(r, j);
        pos[base + j] += v > 0;
        neg[base + j] += v < 0;
      }
    }
    std::int64_t cost = 0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(used) * cols; ++i) cost += std::min(pos[i], neg[i]);
    if (cost < best) {
      best = cost;
      best_labels.assign(l.begin(), l.end());
    }
  });
  return score_assignment(matrix, best_labels);
}

// Sites are rows, symbols are classes; energy is the majority-vote distance.
class LowRankModel final : public CategoricalModel {
 public:
  LowRankModel(const BinaryMatrix &matrix, int k)
      : matrix_(std::make_shared<const BinaryMatrix>(matrix)), k_(k),
        pos_(static_cast<std::size_t>(k) * matrix.cols()), neg_(pos_.size()) {}

  std::size_t num_sites() const override { return matrix_->rows(); }
  int arity(std::size_t) const override { return k_; }

  void reset(std::span<const std::uint8_t> state) override {
    state_.assign(state.begin(), state.end());
    std::fill(pos_.begin(), pos_.end(), 0);
    std::fill(neg_.begin(), neg_.end(), 0);
    for (std::size_t r = 0; r < state_.size(); ++r) shift(r, state_[r], 1);
    energy_ = 0;
    for (std::size_t i = 0; i < pos_.size(); ++i) energy_ += std::min(pos_[i], neg_[i]);
  }

  const std::vector<std::uint8_t> &state() const override { return state_; }
  double energy() const override { return static_cast<double>(energy_); }

  double propose(std::size_t site, std::uint8_t value) override {
    const std::size_t cols = matrix_->cols();
    const std::size_t from = state_[site] * cols;
    const std::size_t to = static_cast<std::size_t>(value) * cols;
    std::int64_t delta = 0;
    for (std::size_t j = 0; j < cols; ++j) {
      const auto v = matrix_->at(site, j);
      if (v == 0) continue;
      const std::int64_t p = v > 0, n = v < 0;
      delta += std::min(pos_[from + j] - p, neg_[from + j] - n) - std::min(pos_[from + j], neg_[from + j]);
      delta += std::min(pos_[to + j] + p, neg_[to + j] + n) - std::min(pos_[to + j], neg_[to + j]);
    }
    pending_ = site;
    pending_value_ = value;
    pending_delta_ = delta;
    return static_cast<double>(delta);
  }

  void accept() override {
    shift(pending_, state_[pending_], -1);
    state_[pending_] = pending_value_;
    shift(pending_, pending_value_, 1);
    energy_ += pending_delta_;
  }

  Rational exact_energy(std::span<const std::uint8_t> state) const override {
    std::vector<std::size_t> labels(state.begin(), state.end());
    return Rational(score_assignment(*matrix_, labels).distance);
  }

  std::unique_ptr<CategoricalModel> clone() const override { return std::make_unique<LowRankModel>(*this); }

 private:
  void shift(std::size_t r, std::size_t c, std::int64_t sign) {
    const std::size_t cols = matrix_->cols();
    for (std::size_t j = 0; j < cols; ++j) {
      const auto v = matrix_->at(r, j);
      if (v > 0) pos_[c * cols + j] += sign;
      if (v < 0) neg_[c * cols + j] += sign;
    }
  }

  std::shared_ptr<const BinaryMatrix> matrix_;
  int k_;
  std::vector<std::int64_t> pos_, neg_;
  std::vector<std::uint8_t> state_;
  std::int64_t energy_ = 0;
  std::size_t pending_ = 0;
  std::uint8_t pending_value_ = 0;
  std::int64_t pending_delta_ = 0;
};

}  // namespace

LowRankResult lowrank_approx(const BinaryMatrix &matrix, std::size_t k, ApproxMethod method,
                             const Schedule &schedule) {
  if (k < 1) throw ContractError("k must be at least 1");
  if (matrix.rows() < 1 || matrix.cols() < 1) throw ContractError("matrix must have at least one row and column");
  if (method == ApproxMethod::kExact) return lowrank_exact(matrix, k);
  const int classes = static_cast<int>(std::min<std::size_t>({k, matrix.rows(), 255}));
  const AnnealResult run = anneal_model(LowRankModel(matrix, classes), schedule);
  std::vector<std::size_t> labels(run.best_state.begin(), run.best_state.end());
  return score_assignment(matrix, labels);
}

LowRankResult complete(const BinaryMatrix &matrix, std::size_t k, ApproxMethod method, const Schedule &schedule) {
  const auto &d = matrix.data();
  if (std::all_of(d.begin(), d.end(), [](std::int8_t v) { return v == 0; })) {
    throw ContractError("matrix has no observed entries to complete from");
  }
  return lowrank_approx(matrix, k, method, schedule);
}

TensorApproximation tensor_approx(const TargetFunction &target, const ProcessorTopology &topology,
                                  const Schedule &schedule) {
  const EncodedProblem problem = encode_correlation(target, topology, default_encoding(topology));
  const AnnealResult run = anneal_frozen(problem, target, schedule);
  TensorApproximation out{*run.strategies, *run.errors, correlation_from_errors(target, *run.errors)};
  return out;
}

}  // namespace seqproc
