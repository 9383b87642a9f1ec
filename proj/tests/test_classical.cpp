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

#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "seqproc/classical.hpp"
#include "seqproc/quantum.hpp"

using namespace seqproc;

namespace {

// Maximum signed match count over every table assignment, by plain enumeration.
std::int64_t brute_force_best(const TargetFunction &target, const ProcessorTopology &topology) {
  const int n = topology.num_modules();
  const int q = topology.channel_arity();
  std::vector<std::pair<int, int>> cells;  // (module, radix)
  for (int m = 0; m < n; ++m) {
    const int count = (m == 0 ? 1 : q) << topology.local_bits(m);
    for (int c = 0; c < count; ++c) cells.emplace_back(m, m + 1 == n ? 2 : q);
  }
  std::vector<int> digits(cells.size(), 0);
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  while (true) {
    std::vector<ModuleStrategy> modules;
    std::size_t pos = 0;
    for (int m = 0; m < n; ++m) {
      ModuleStrategy s = empty_module(topology, m, 0);
      for (auto &v : s.table) {
        const int d = digits[pos++];
        v = static_cast<std::int8_t>(m + 1 == n ? (d ? 1 : -1) : d);
      }
      modules.push_back(std::move(s));
    }
    auto out = output_table(StrategySet(topology, std::move(modules)));
    std::int64_t score = 0;
    for (std::size_t w = 0; w < out.size(); ++w) score += target[w] * out[w];
    best = std::max(best, score);
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == cells[i].second) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  return best;
}

TargetFunction random_target(const ProcessorTopology &t, std::mt19937_64 &rng, bool zeros) {
  std::uniform_int_distribution<int> d(zeros ? -1 : 0, 1);
  std::vector<std::int8_t> v(t.num_words());
  for (auto &x : v) {
    int r = d(rng);
    x = static_cast<std::int8_t>(zeros ? r : (r ? 1 : -1));
  }
  return TargetFunction(t, v);
}

}  // namespace

TEST_SUITE("classical") {
  TEST_CASE("evaluate follows the tables") {
    auto bit3 = reference_strategy(ReferenceStrategy::kBit3);
    CHECK(bit3.module(0).at(0, 0) == 0);
    CHECK(bit3.module(1).at(0, 0) == 0);
    CHECK(bit3.module(2).at(0, 0) == -1);
    CHECK(evaluate(bit3, InputWord{0, 0, 0, 0, 0, 0}) == -1);
    auto trit3 = reference_strategy(ReferenceStrategy::kTrit3);
    CHECK(trit3.module(1).at(0, 0) == 2);
    CHECK(trit3.module(2).at(2, 0) == -1);
    CHECK(evaluate(trit3, 0u) == -1);
    auto constant = StrategySet::constant(fixtures::qutrit4_topology());
    auto out = output_table(constant);
    CHECK(std::all_of(out.begin(), out.end(), [](std::int8_t v) { return v == 1; }));
  }

  TEST_CASE("strategy validation") {
    auto t = fixtures::qubit3_topology();
    auto bad = empty_module(t, 0, 2);
    auto set = StrategySet::constant(t);
    CHECK_THROWS_AS(set.set_module(0, bad), ContractError);
    CHECK_THROWS_AS(set.set_module(2, empty_module(t, 2, 0)), ContractError);
    CHECK_THROWS_AS(set.set_module(1, empty_module(t, 0, 0)), ContractError);
    CHECK_THROWS_AS(evaluate(set, InputWord{0, 1}), ContractError);
  }

  TEST_CASE("reference strategies against their targets") {
    auto qubit3 = generate_target(make_processor(ProcessorKind::kQubit3));
    auto qutrit3 = generate_target(make_processor(ProcessorKind::kQutrit3));
    auto qutrit4 = generate_target(make_processor(ProcessorKind::kQutrit4));
    CHECK(hamming_errors(qubit3, output_table(reference_strategy(ReferenceStrategy::kBit3))) == 8);
    CHECK(hamming_errors(qutrit3, output_table(reference_strategy(ReferenceStrategy::kTrit3))) == 2);
    CHECK(hamming_errors(qutrit4, output_table(reference_strategy(ReferenceStrategy::kTrit4))) == 16);
    CHECK(correlation(qutrit4, output_table(reference_strategy(ReferenceStrategy::kTrit4))) == Rational(3, 8));
  }

  TEST_CASE("oracle on the one-bit target") {
    auto target = fixtures::qubit3_target();
    auto result = exact_oracle(target, target.topology());
    CHECK(result.max_correlation == Rational(16, 64));
    CHECK(result.min_errors == 8);
    CHECK(correlation(target, output_table(result.witness)) == result.max_correlation);
  }

  TEST_CASE("oracle on the three-module trit targets") {
    for (const auto &target :
         {fixtures::qutrit3_block_target(), generate_target(make_processor(ProcessorKind::kQutrit3))}) {
      auto result = exact_oracle(target, target.topology());
      CHECK(result.max_correlation == Rational(28, 64));
      CHECK(result.min_errors == 2);
      CHECK(hamming_errors(target, output_table(result.witness)) == 2);
    }
  }

  TEST_CASE("oracle trivia and guards") {
    auto t = fixtures::qutrit3_topology();
    TargetFunction ones(t, std::vector<std::int8_t>(64, 1));
    CHECK(exact_oracle(ones, t).max_correlation == Rational(1));
    CHECK_THROWS_AS(exact_oracle(fixtures::qutrit4_target(), fixtures::qutrit4_topology()), SizeGuardError);
    CHECK(estimate_oracle_cost(fixtures::qutrit4_topology()) > OracleOptions{}.budget);
    CHECK_THROWS_AS(exact_oracle(ones, fixtures::qutrit4_topology()), ContractError);
  }

  TEST_CASE("oracle matches brute force on small topologies") {
    std::mt19937_64 rng(3);
    const std::vector<ProcessorTopology> topologies{ProcessorTopology(2, {1, 1}, 2), ProcessorTopology(2, {1, 2}, 2),
                                                    ProcessorTopology(3, {1, 1, 1}, 2),
                                                    ProcessorTopology(2, {1, 1}, 3)};
    for (const auto &t : topologies) {
      for (int trial = 0; trial < 20; ++trial) {
        auto target = random_target(t, rng, trial % 2 == 0);
        auto result = exact_oracle(target, t);
        CHECK(result.max_correlation ==
              Rational(brute_force_best(target, t), static_cast<std::int64_t>(t.num_words())));
      }
    }
    // All sixteen fully specified two-module one-bit targets.
    ProcessorTopology t(2, {1, 1}, 2);
    for (int bits = 0; bits < 16; ++bits) {
      std::vector<std::int8_t> v(4);
      for (int i = 0; i < 4; ++i) v[static_cast<std::size_t>(i)] = (bits >> i) & 1 ? 1 : -1;
      TargetFunction target(t, v);
      CHECK(exact_oracle(target, t).max_correlation == Rational(brute_force_best(target, t), 4));
    }
  }

  TEST_CASE("oracle is deterministic across worker counts") {
    auto target = fixtures::qubit3_target();
    OracleOptions many;
    many.workers = 3;
    auto a = exact_oracle(target, target.topology());
    auto b = exact_oracle(target, target.topology(), many);
    CHECK(a.max_correlation == b.max_correlation);
    CHECK(a.witness == b.witness);
    CHECK(a.strategies_scored == b.strategies_scored);
  }

  TEST_CASE("oracle value is invariant under target negation") {
    auto target = fixtures::qubit3_target();
    CHECK(exact_oracle(target.negated(), target.topology()).max_correlation ==
          exact_oracle(target, target.topology()).max_correlation);
  }

  TEST_CASE("random strategies") {
    auto t = fixtures::qubit3_topology();
    CHECK(random_strategy(t, 17) == random_strategy(t, 17));
    CHECK_FALSE(random_strategy(t, 17) == random_strategy(t, 18));
    auto target = fixtures::qubit3_target();
    const Rational best = exact_oracle(target, t).max_correlation;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      auto s = random_strategy(t, seed);
      for (int m = 0; m < 3; ++m) {
        for (auto v : s.module(m).table) {
          if (m == 2) {
            CHECK((v == 1 || v == -1));
          } else {
            CHECK((v == 0 || v == 1));
          }
        }
      }
      CHECK(correlation(target, output_table(s)) <= best);
    }
  }

  TEST_CASE("relabeling a channel alphabet leaves the output unchanged (property)") {
    auto t = fixtures::qutrit4_topology();
    const std::vector<int> perm{2, 0, 1};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      auto s = random_strategy(t, seed);
      const int channel = static_cast<int>(seed % 3);  // between modules channel and channel + 1
      auto sender = s.module(channel);
      for (auto &v : sender.table) v = static_cast<std::int8_t>(perm[static_cast<std::size_t>(v)]);
      auto receiver = s.module(channel + 1);
      auto relabeled = receiver;
      for (int sym = 0; sym < 3; ++sym)
        for (std::uint32_t y = 0; y < receiver.cells_per_symbol(); ++y)
          relabeled.at(perm[static_cast<std::size_t>(sym)], y) = receiver.at(sym, y);
      auto moved = s;
      moved.set_module(channel, sender);
      moved.set_module(channel + 1, relabeled);
      CHECK(output_table(moved) == output_table(s));
    }
  }

  TEST_CASE("last-module majority cannot be beaten on two-module instances") {
    std::mt19937_64 rng(8);
    ProcessorTopology t(2, {2, 2}, 2);
    for (int trial = 0; trial < 20; ++trial) {
      auto target = random_target(t, rng, true);
      auto best = exact_oracle(target, t);
      // Try every last-module table with the witness's first module.
      for (int table = 0; table < 256; ++table) {
        auto s = best.witness;
        auto last = s.module(1);
        for (std::size_t c = 0; c < 8; ++c) last.table[c] = static_cast<std::int8_t>((table >> c) & 1 ? 1 : -1);
        s.set_module(1, last);
        CHECK(correlation(target, output_table(s)) <= best.max_correlation);
      }
    }
  }
}
