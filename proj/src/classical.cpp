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

#include "seqproc/classical.hpp"

#include "canonical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>

namespace seqproc {

ModuleStrategy empty_module(const ProcessorTopology &topology, int m, std::int8_t fill) {
  ModuleStrategy s;
  s.incoming = m == 0 ? 1 : topology.channel_arity();
  s.local_bits = topology.local_bits(m);
  s.table.assign(static_cast<std::size_t>(s.incoming) * s.cells_per_symbol(), fill);
  return s;
}

StrategySet::StrategySet(ProcessorTopology topology, std::vector<ModuleStrategy> modules)
    : topology_(std::move(topology)), modules_(std::move(modules)) {
  validate();
}

StrategySet StrategySet::constant(const ProcessorTopology &topology) {
  std::vector<ModuleStrategy> modules;
  for (int m = 0; m < topology.num_modules(); ++m) {
    modules.push_back(empty_module(topology, m, m + 1 == topology.num_modules() ? 1 : 0));
  }
  return StrategySet(topology, std::move(modules));
}

void StrategySet::set_module(int m, ModuleStrategy strategy) {
  auto &slot = modules_.at(static_cast<std::size_t>(m));
  std::swap(slot, strategy);
  try {
    validate();
  } catch (...) {
    std::swap(slot, strategy);
    throw;
  }
}

void StrategySet::validate() const {
  const int n = topology_.num_modules();
  if (static_cast<int>(modules_.size()) != n) {
    throw ContractError("strategy set has " + std::to_string(modules_.size()) + " modules, topology has " +
                        std::to_string(n));
  }
  const int q = topology_.channel_arity();
  for (int m = 0; m < n; ++m) {
    const auto &s = modules_[static_cast<std::size_t>(m)];
    const auto expected = empty_module(topology_, m, 0);
    if (s.incoming != expected.incoming || s.local_bits != expected.local_bits ||
        s.table.size() != expected.table.size()) {
      throw ContractError("module " + std::to_string(m + 1) + " table shape does not match the topology");
    }
    for (std::int8_t v : s.table) {
      bool ok = m + 1 == n ? (v == 1 || v == -1) : (v >= 0 && v < q);
      if (!ok) {
        throw ContractError("module " + std::to_string(m + 1) + " has entry " + std::to_string(v) +
                            " outside its alphabet");
      }
    }
  }
}

int evaluate(const StrategySet &strategies, std::uint32_t word_index) {
  const auto &topology = strategies.topology();
  const int n = topology.num_modules();
  int symbol = 0;
  for (int m = 0; m < n; ++m) {
    symbol = strategies.module(m).at(symbol, topology.local_input(word_index, m));
  }
  return symbol;
}

int evaluate(const StrategySet &strategies, std::span<const std::uint8_t> word) {
  return evaluate(strategies, index_of(strategies.topology(), word));
}

std::vector<std::int8_t> output_table(const StrategySet &strategies) {
  std::vector<std::int8_t> out(strategies.topology().num_words());
  for (std::uint32_t w = 0; w < out.size(); ++w) out[w] = static_cast<std::int8_t>(evaluate(strategies, w));
  return out;
}

namespace {

// Number of restricted growth strings of the given length over at most q letters.
double canonical_count(int length, int q) {
  // Stirling numbers of the second kind, row by row.
  std::vector<double> row(static_cast<std::size_t>(q) + 1, 0.0);
  row[0] = 1.0;
  for (int n = 1; n <= length; ++n) {
    for (int k = std::min(n, q); k >= 1; --k) {
      row[static_cast<std::size_t>(k)] = k * row[static_cast<std::size_t>(k)] + row[static_cast<std::size_t>(k) - 1];
    }
    row[0] = 0.0;
  }
  double total = 0.0;
  for (int k = 1; k <= q; ++k) total += row[static_cast<std::size_t>(k)];
  return total;
}

class OracleSearch {
 public:
  OracleSearch(const TargetFunction &target, const ProcessorTopology &topology)
      : target_(target), topology_(topology), n_(topology.num_modules()), q_(topology.channel_arity()) {
    symbols_.resize(static_cast<std::size_t>(n_ - 1));
    tables_.resize(static_cast<std::size_t>(n_ - 1));
    for (int m = 0; m + 1 < n_; ++m) {
      symbols_[static_cast<std::size_t>(m)].resize(std::size_t{1} << topology.prefix_bits(m + 1));
    }
    last_cells_ = std::size_t{1} << topology.local_bits(n_ - 1);
    weights_.resize(static_cast<std::size_t>(q_) * last_cells_);
  }

  // Scores every completion of the given canonical first-module table.
  void run(const std::vector<std::int8_t> &first, int used) {
    tables_[0] = first;
    auto &sym = symbols_[0];
    for (std::size_t p = 0; p < sym.size(); ++p) sym[p] = first[p];
    descend(1, used);
  }

  std::int64_t best_value() const { return best_value_; }
  bool found() const { return found_; }
  const std::vector<std::vector<std::int8_t>> &best_tables() const { return best_tables_; }
  std::uint64_t scored() const { return scored_; }

 private:
  void descend(int module, int incoming_used) {
    if (module == n_ - 1) {
      score(incoming_used);
      return;
    }
    const int bits = topology_.local_bits(module);
    const std::size_t cells = static_cast<std::size_t>(incoming_used) << bits;
    std::vector<std::int8_t> table;
    detail::for_each_canonical(static_cast<int>(cells), q_, table, [&](const std::vector<std::int8_t> &t, int used) {
      tables_[static_cast<std::size_t>(module)] = t;
      const auto &prev = symbols_[static_cast<std::size_t>(module) - 1];
      auto &cur = symbols_[static_cast<std::size_t>(module)];
      const std::size_t span = std::size_t{1} << bits;
      for (std::size_t p = 0; p < prev.size(); ++p) {
        const std::size_t base = static_cast<std::size_t>(prev[p]) << bits;
        for (std::size_t y = 0; y < span; ++y) cur[(p << bits) | y] = t[base + y];
      }
      descend(module + 1, used);
    });
  }

  void score(int incoming_used) {
    ++scored_;
    std::fill(weights_.begin(), weights_.end(), 0);
    const auto &sym = symbols_.back();
    const auto &values = target_.values();
    for (std::size_t p = 0; p < sym.size(); ++p) {
      std::int64_t *w = &weights_[static_cast<std::size_t>(sym[p]) * last_cells_];
      const std::int8_t *t = &values[p * last_cells_];
      for (std::size_t y = 0; y < last_cells_; ++y) w[y] += t[y];
    }
    std::int64_t value = 0;
    const std::size_t reachable = static_cast<std::size_t>(incoming_used) * last_cells_;
    for (std::size_t c = 0; c < reachable; ++c) value += std::abs(weights_[c]);
    if (!found_ || value > best_value_) {
      found_ = true;
      best_value_ = value;
      best_tables_ = tables_;
      std::vector<std::int8_t> last(static_cast<std::size_t>(q_) * last_cells_, 1);
      for (std::size_t c = 0; c < reachable; ++c) last[c] = weights_[c] >= 0 ? 1 : -1;
      best_tables_.push_back(std::move(last));
    }
  }

  const TargetFunction &target_;
  const ProcessorTopology &topology_;
  int n_;
  int q_;
  std::size_t last_cells_;
  std::vector<std::vector<std::int8_t>> symbols_;
  std::vector<std::vector<std::int8_t>> tables_;
  std::vector<std::int64_t> weights_;
  bool found_ = false;
  std::int64_t best_value_ = 0;
  std::vector<std::vector<std::int8_t>> best_tables_;
  std::uint64_t scored_ = 0;
};

StrategySet assemble(const ProcessorTopology &topology, const std::vector<std::vector<std::int8_t>> &tables) {
  std::vector<ModuleStrategy> modules;
  for (int m = 0; m < topology.num_modules(); ++m) {
    const bool last = m + 1 == topology.num_modules();
    ModuleStrategy s = empty_module(topology, m, last ? 1 : 0);
    const auto &t = tables[static_cast<std::size_t>(m)];
    std::copy(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(std::min(t.size(), s.table.size())), s.table.begin());
    modules.push_back(std::move(s));
  }
  return StrategySet(topology, std::move(modules));
}

}  // namespace

double estimate_oracle_cost(const ProcessorTopology &topology) {
  const int q = topology.channel_arity();
  double count = canonical_count(1 << topology.local_bits(0), q);
  for (int m = 1; m + 1 < topology.num_modules(); ++m) {
    count *= canonical_count(q << topology.local_bits(m), q);
  }
  return count * static_cast<double>(topology.num_words());
}

OracleResult exact_oracle(const TargetFunction &target, const ProcessorTopology &topology,
                          const OracleOptions &options) {
  if (target.topology().total_bits() != topology.total_bits()) {
    throw ContractError("target and topology disagree on the number of input bits");
  }
  const double cost = estimate_oracle_cost(topology);
  if (cost > options.budget) {
    std::ostringstream msg;
    msg << "instance too large for exact oracle: estimated " << cost << " word evaluations (budget "
        << options.budget << ")";
    throw SizeGuardError(msg.str());
  }

  // Work items are the canonical first-module tables.
  std::vector<std::pair<std::vector<std::int8_t>, int>> firsts;
  {
    std::vector<std::int8_t> table;
    detail::for_each_canonical(1 << topology.local_bits(0), topology.channel_arity(), table,
                       [&](const std::vector<std::int8_t> &t, int used) { firsts.emplace_back(t, used); });
  }

  struct Item {
    bool found = false;
    std::int64_t value = 0;
    std::vector<std::vector<std::int8_t>> tables;
    std::uint64_t scored = 0;
  };
  std::vector<Item> items(firsts.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < firsts.size(); i += stride) {
      OracleSearch search(target, topology);
      search.run(firsts[i].first, firsts[i].second);
      items[i] = Item{search.found(), search.best_value(), search.best_tables(), search.scored()};
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(firsts.size())));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  }

  // Merge in enumeration order so the witness does not depend on the worker count.
  const Item *best = nullptr;
  std::uint64_t scored = 0;
  for (const auto &item : items) {
    scored += item.scored;
    if (item.found && (best == nullptr || item.value > best->value)) best = &item;
  }
  const auto support = static_cast<std::int64_t>(target.support_size());
  OracleResult result{Rational(best->value, static_cast<std::int64_t>(target.size())), (support - best->value) / 2,
                      assemble(topology, best->tables), scored};
  return result;
}

StrategySet random_strategy(const ProcessorTopology &topology, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> symbol(0, topology.channel_arity() - 1);
  std::uniform_int_distribution<int> bit(0, 1);
  std::vector<ModuleStrategy> modules;
  for (int m = 0; m < topology.num_modules(); ++m) {
    const bool last = m + 1 == topology.num_modules();
    ModuleStrategy s = empty_module(topology, m, 0);
    for (auto &v : s.table) v = static_cast<std::int8_t>(last ? 2 * bit(rng) - 1 : symbol(rng));
    modules.push_back(std::move(s));
  }
  return StrategySet(topology, std::move(modules));
}

StrategySet reference_strategy(ReferenceStrategy which) {
  auto build = [](const ProcessorTopology &topology, std::vector<std::vector<std::int8_t>> tables) {
    std::vector<ModuleStrategy> modules;
    for (int m = 0; m < topology.num_modules(); ++m) {
      ModuleStrategy s = empty_module(topology, m, 0);
      s.table = tables[static_cast<std::size_t>(m)];
      modules.push_back(std::move(s));
    }
    return StrategySet(topology, std::move(modules));
  };
  switch (which) {
    case ReferenceStrategy::kBit3:
      return build(ProcessorTopology::uniform(3, 2, 2), {{0, 1, 1, 1},
                                                         {0, 1, 1, 0, 1, 0, 0, 1},
                                                         {-1, 1, -1, 1, 1, -1, 1, -1}});
    case ReferenceStrategy::kTrit3:
      return build(ProcessorTopology::uniform(3, 2, 3), {{0, 1, 2, 1},
                                                         {2, 1, 2, 1, 1, 2, 0, 2, 2, 1, 1, 2},
                                                         {-1, 1, -1, 1, 1, -1, -1, 1, -1, 1, 1, -1}});
    case ReferenceStrategy::kTrit4:
      return build(ProcessorTopology::uniform(4, 2, 3), {{0, 2, 1, 0},
                                                         {1, 2, 0, 1, 2, 1, 2, 0, 2, 0, 1, 2},
                                                         {1, 0, 1, 2, 2, 1, 1, 0, 1, 2, 0, 1},
                                                         {1, -1, -1, 1, -1, 1, 1, -1, -1, 1, -1, 1}});
  }
  throw ContractError("unknown reference strategy");
}

}  // namespace seqproc
