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

#include "seqproc/bounds.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>

#include "canonical.hpp"

namespace seqproc {

std::size_t min_compatible_classes(const SignMatrix &matrix, std::size_t limit) {
  std::vector<std::vector<std::int8_t>> rows;
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    auto row = matrix.row(r);
    if (std::all_of(row.begin(), row.end(), [](std::int8_t v) { return v == 0; })) continue;
    std::vector<std::int8_t> copy(row.begin(), row.end());
    if (std::find(rows.begin(), rows.end(), copy) == rows.end()) rows.push_back(std::move(copy));
  }
  if (rows.empty()) return 1;

  // Pairwise compatibility implies joint compatibility for sign patterns, so a
  // class is represented by the union of its members' entries.
  std::vector<std::vector<std::int8_t>> classes;
  auto place = [&](auto &&self, std::size_t i, std::size_t k) -> bool {
    if (i == rows.size()) return true;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (!rows_compatible(classes[c], rows[i])) continue;
      auto saved = classes[c];
      for (std::size_t j = 0; j < rows[i].size(); ++j) {
        if (classes[c][j] == 0) classes[c][j] = rows[i][j];
      }
      if (self(self, i + 1, k)) return true;
      classes[c] = std::move(saved);
    }
    if (classes.size() < k) {
      classes.push_back(rows[i]);
      if (self(self, i + 1, k)) return true;
      classes.pop_back();
    }
    return false;
  };
  for (std::size_t k = 1; k <= limit; ++k) {
    classes.clear();
    if (place(place, 0, k)) return k;
  }
  return limit + 1;
}

ExpressibilityResult expressibility_check(const TargetFunction &target, const ProcessorTopology &topology,
                                          bool compatibility_mode) {
  if (target.topology().total_bits() != topology.total_bits()) {
    throw ContractError("target and topology disagree on the number of input bits");
  }
  if (!compatibility_mode && !target.fully_specified()) {
    throw ContractError("target has don't-care entries; enable compatibility mode to check it");
  }
  const auto q = static_cast<std::size_t>(topology.channel_arity());
  ExpressibilityResult result;
  for (int cut = 1; cut < topology.num_modules(); ++cut) {
    auto matrix = reshape(target, topology.prefix_bits(cut));
    std::size_t classes = compatibility_mode ? min_compatible_classes(matrix, q) : distinct_rows(matrix).count;
    result.classes_per_cut.push_back(classes);
    if (classes > q) {
      result.expressible = false;
      result.first_violating_cut = cut;
      break;
    }
  }
  return result;
}

Reconstruction reconstruct_strategies(const TargetFunction &target, const ProcessorTopology &topology) {
  Reconstruction out;
  auto check = expressibility_check(target, topology);
  if (!check.expressible) {
    out.conflict = "cut " + std::to_string(*check.first_violating_cut) + " has " +
                   std::to_string(check.classes_per_cut.back()) + " distinct rows";
    return out;
  }
  const int n = topology.num_modules();
  std::vector<std::vector<std::size_t>> labels;
  for (int cut = 1; cut < n; ++cut) {
    labels.push_back(distinct_rows(reshape(target, topology.prefix_bits(cut))).labels);
  }

  std::vector<ModuleStrategy> modules;
  for (int m = 0; m < n; ++m) modules.push_back(empty_module(topology, m, m + 1 == n ? 1 : 0));
  std::vector<std::vector<bool>> assigned;
  for (const auto &s : modules) assigned.emplace_back(s.table.size(), false);

  for (int m = 0; m < n; ++m) {
    const int bits = topology.local_bits(m);
    const std::size_t prefixes = std::size_t{1} << topology.prefix_bits(m);
    for (std::size_t p = 0; p < prefixes; ++p) {
      const std::size_t incoming = m == 0 ? 0 : labels[static_cast<std::size_t>(m) - 1][p];
      for (std::uint32_t y = 0; y < (1u << bits); ++y) {
        const std::size_t next = (p << bits) | y;
        const auto value = static_cast<std::int8_t>(m + 1 == n ? target[next] : labels[static_cast<std::size_t>(m)][next]);
        const std::size_t cell = incoming * modules[static_cast<std::size_t>(m)].cells_per_symbol() + y;
        auto &slot = modules[static_cast<std::size_t>(m)].table[cell];
        if (assigned[static_cast<std::size_t>(m)][cell] && slot != value) {
          out.conflict = "module " + std::to_string(m + 1) + " cell (" + std::to_string(incoming) + ", " +
                         std::to_string(y) + ") needs two different values";
          return out;
        }
        slot = value;
        assigned[static_cast<std::size_t>(m)][cell] = true;
      }
    }
  }
  out.strategies = StrategySet(topology, std::move(modules));
  return out;
}

namespace {

// Per entry: how many +1 and how many -1 values a shared output must satisfy.
using Weights = std::vector<std::array<std::int32_t, 2>>;

Weights weights_of(std::span<const std::int8_t> values) {
  Weights w(values.size(), {0, 0});
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > 0) w[i][0] = 1;
    if (values[i] < 0) w[i][1] = 1;
  }
  return w;
}

std::int64_t bound_of(const Weights &w, std::span<const int> levels, int q);

std::int64_t partition_cost(const Weights &w, std::span<const int> levels, int q, const std::vector<std::int8_t> &labels,
                            int used) {
  const std::size_t rows = labels.size();
  const std::size_t len = w.size() / rows;
  std::int64_t total = 0;
  for (int c = 0; c < used; ++c) {
    Weights merged(len, {0, 0});
    for (std::size_t r = 0; r < rows; ++r) {
      if (labels[r] != c) continue;
      for (std::size_t i = 0; i < len; ++i) {
        merged[i][0] += w[r * len + i][0];
        merged[i][1] += w[r * len + i][1];
      }
    }
    total += bound_of(merged, levels.subspan(1), q);
  }
  return total;
}

std::int64_t bound_of(const Weights &w, std::span<const int> levels, int q) {
  if (levels.size() == 1) {
    std::int64_t cost = 0;
    for (const auto &e : w) cost += std::min(e[0], e[1]);
    return cost;
  }
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int8_t> labels;
  detail::for_each_canonical(1 << levels[0], q, labels, [&](const std::vector<std::int8_t> &l, int used) {
    best = std::min(best, partition_cost(w, levels, q, l, used));
  });
  return best;
}

std::string describe_partition(const std::vector<std::int8_t> &labels, int used) {
  std::string s;
  for (int c = 0; c < used; ++c) {
    s += "{";
    bool first = true;
    for (std::size_t r = 0; r < labels.size(); ++r) {
      if (labels[r] != c) continue;
      if (!first) s += ",";
      s += std::to_string(r + 1);
      first = false;
    }
    s += "}";
  }
  return s;
}

std::int64_t support_of(std::span<const std::int8_t> row) {
  return std::count_if(row.begin(), row.end(), [](std::int8_t v) { return v != 0; });
}

bool complementary(std::span<const std::int8_t> a, std::span<const std::int8_t> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] != 0) == (b[i] != 0)) return false;
  }
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> complementary_pairs(const SignMatrix &m) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i + 1; j < m.rows(); ++j) {
      if (complementary(m.row(i), m.row(j))) pairs.emplace_back(i, j);
    }
  }
  return pairs;
}

std::string pair_name(std::pair<std::size_t, std::size_t> p) {
  return std::to_string(p.first + 1) + "+" + std::to_string(p.second + 1);
}

class Script {
 public:
  Script(std::string id, std::int64_t bound, int modules, int q, const TargetFunction &target)
      : levels_(static_cast<std::size_t>(modules), 2), q_(q), target_(target) {
    cert_.target_id = std::move(id);
    cert_.claimed_bound = bound;
    if (target.topology().total_bits() != 2 * modules) {
      throw ContractError(cert_.target_id + " certificate needs a target over " + std::to_string(2 * modules) +
                          " input bits");
    }
  }

  void fact(std::string description, std::string operation, std::int64_t observed, std::int64_t required,
            FactRelation relation) {
    bool holds = relation == FactRelation::kEqual ? observed == required : observed >= required;
    cert_.facts.push_back({std::move(description), std::move(operation), observed, required, relation, holds});
  }

  std::span<const int> levels() const { return levels_; }
  int q() const { return q_; }

  /// Rows of the first cut: one per input of module 1.
  SignMatrix first_cut() const { return reshape(target_, 2); }

  std::int64_t class_bound(std::span<const std::int8_t> values) const {
    return bound_of(weights_of(values), levels().subspan(1), q_);
  }

  void prelude(const SignMatrix &rows) {
    fact("target has a nonempty support", "support_size", static_cast<std::int64_t>(target_.support_size()), 1,
         FactRelation::kAtLeast);
    fact("first-cut rows outnumber channel symbols, so two rows must coincide", "reshape(prefix=2).rows",
         static_cast<std::int64_t>(rows.rows()), q_ + 1, FactRelation::kAtLeast);
    std::int64_t with_partner = 0;
    auto pairs = complementary_pairs(rows);
    for (std::size_t r = 0; r < rows.rows(); ++r) {
      bool found = std::any_of(pairs.begin(), pairs.end(), [&](auto p) { return p.first == r || p.second == r; });
      with_partner += found && support_of(rows.row(r)) > 0;
    }
    fact("every first-cut row has a partner with complementary support", "complementary_pairs",
         with_partner, static_cast<std::int64_t>(rows.rows()), FactRelation::kEqual);
  }

  /// Discharges every grouping of the first-cut rows into at most q classes.
  void partitions(const SignMatrix &rows) {
    const Weights w = weights_of(target_.values());
    std::int64_t least = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int8_t> labels;
    detail::for_each_canonical(static_cast<int>(rows.rows()), q_, labels,
                               [&](const std::vector<std::int8_t> &l, int used) {
                                 std::int64_t cost = partition_cost(w, levels(), q_, l, used);
                                 least = std::min(least, cost);
                                 fact("rows grouped as " + describe_partition(l, used) + " need at least the bound",
                                      "branch_error_bound", cost, cert_.claimed_bound, FactRelation::kAtLeast);
                               });
    fact("minimum over all first-cut groupings", "branch_error_bound", least, cert_.claimed_bound,
         FactRelation::kAtLeast);
  }

  BoundCertificate finish() {
    cert_.pass = !cert_.facts.empty() &&
                 std::all_of(cert_.facts.begin(), cert_.facts.end(), [](const auto &f) { return f.holds; });
    return cert_;
  }

 private:
  std::vector<int> levels_;
  int q_;
  const TargetFunction &target_;
  BoundCertificate cert_;
};

// Merged complementary rows reshaped into four blocks: distinct count, closest
// pair and the cost of collapsing them to the channel alphabet.
void merged_block_facts(Script &script, const SignMatrix &rows, std::int64_t min_hamming, std::int64_t collapse) {
  for (auto p : complementary_pairs(rows)) {
    auto merged = merge_complementary_rows(rows.row(p.first), rows.row(p.second));
    auto blocks = reshape(merged, 4);
    script.fact("rows " + pair_name(p) + " merged: distinct blocks", "distinct_rows",
                static_cast<std::int64_t>(distinct_rows(blocks).count), 4, FactRelation::kEqual);
    script.fact("rows " + pair_name(p) + " merged: minimum block Hamming distance", "min_pairwise_hamming",
                min_pairwise_hamming(blocks), min_hamming, FactRelation::kEqual);
    script.fact("rows " + pair_name(p) + " merged: errors to reach the channel alphabet", "branch_error_bound",
                script.class_bound(merged), collapse, FactRelation::kAtLeast);
  }
}

}  // namespace

std::int64_t branch_error_bound(std::span<const std::int8_t> values, std::span<const int> local_bits, int q) {
  if (local_bits.empty()) throw ContractError("branch_error_bound needs at least one module");
  if (q < 1) throw ContractError("channel arity must be positive");
  std::size_t expected = 1;
  for (int b : local_bits) expected <<= b;
  if (values.size() != expected) throw ContractError("value count does not match the module input sizes");
  return bound_of(weights_of(values), local_bits, q);
}

BoundCertificate certify_qubit3(const TargetFunction &target) {
  Script script("qubit3", 8, 3, 2, target);
  auto rows = script.first_cut();
  script.prelude(rows);
  merged_block_facts(script, rows, 2, 4);
  script.partitions(rows);
  return script.finish();
}

BoundCertificate certify_qutrit3(const TargetFunction &target) {
  Script script("qutrit3", 2, 3, 3, target);
  auto rows = script.first_cut();
  script.prelude(rows);
  merged_block_facts(script, rows, 2, 2);
  script.partitions(rows);
  return script.finish();
}

BoundCertificate certify_qutrit4(const TargetFunction &target) {
  Script script("qutrit4", 16, 4, 3, target);
  auto rows = script.first_cut();
  script.prelude(rows);

  auto distinct_block_lines = [](const SignMatrix &lines) {
    std::int64_t count = 0;
    for (std::size_t r = 0; r < lines.rows(); ++r) {
      count += distinct_rows(reshape(lines.row(r), 4)).count == 4 && support_of(lines.row(r)) > 0;
    }
    return count;
  };

  // A merged pair of first-cut rows: four lines of 16 that must drop to three.
  for (auto p : complementary_pairs(rows)) {
    auto merged = merge_complementary_rows(rows.row(p.first), rows.row(p.second));
    auto lines = reshape(merged, 4);
    script.fact("rows " + pair_name(p) + " merged: minimum line Hamming distance", "min_pairwise_hamming",
                min_pairwise_hamming(lines), 8, FactRelation::kEqual);
    script.fact("rows " + pair_name(p) + " merged: lines made of four distinct blocks", "distinct_rows",
                distinct_block_lines(lines), 4, FactRelation::kEqual);
    script.fact("rows " + pair_name(p) + " merged: errors to reach the channel alphabet", "branch_error_bound",
                script.class_bound(merged), 12, FactRelation::kAtLeast);
  }

  // A first-cut row on its own: its complementary lines merge into four distinct blocks.
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    auto lines = reshape(rows.row(r), 4);
    std::int64_t four_block_merges = 0;
    auto pairs = complementary_pairs(lines);
    for (auto p : pairs) {
      auto merged = merge_complementary_rows(lines.row(p.first), lines.row(p.second));
      four_block_merges += distinct_rows(reshape(merged, 4)).count == 4;
    }
    script.fact("row " + std::to_string(r + 1) + ": complementary line merges with four distinct blocks",
                "distinct_rows", four_block_merges, static_cast<std::int64_t>(pairs.size()), FactRelation::kEqual);
    script.fact("row " + std::to_string(r + 1) + ": complementary line pairs", "complementary_pairs",
                static_cast<std::int64_t>(pairs.size()), 1, FactRelation::kAtLeast);
    script.fact("row " + std::to_string(r + 1) + " alone: errors to reach the channel alphabet", "branch_error_bound",
                script.class_bound(rows.row(r)), 2, FactRelation::kAtLeast);
  }
  script.partitions(rows);
  return script.finish();
}

std::string render(const BoundCertificate &certificate) {
  std::ostringstream out;
  out << "certificate " << certificate.target_id << ": " << (certificate.pass ? "PASS" : "FAIL")
      << ", lower bound " << certificate.bound() << " errors";
  if (!certificate.pass) out << " (claimed " << certificate.claimed_bound << " not certified)";
  out << "\n";
  for (const auto &f : certificate.facts) {
    out << "  [" << (f.holds ? "ok" : "FAIL") << "] " << f.description << " (" << f.operation << "): observed "
        << f.observed << ", required " << (f.relation == FactRelation::kEqual ? "= " : ">= ") << f.required << "\n";
  }
  return out.str();
}

}  // namespace seqproc
