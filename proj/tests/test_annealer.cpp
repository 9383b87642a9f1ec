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

#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "seqproc/annealer.hpp"
#include "seqproc/quantum.hpp"

using namespace seqproc;

namespace {

Schedule quick(std::uint64_t seed, int sweeps = 300, int restarts = 8) {
  Schedule s;
  s.seed = seed;
  s.sweeps = sweeps;
  s.restarts = restarts;
  return s;
}

TargetFunction random_target(const ProcessorTopology &t, std::uint64_t seed, bool allow_zero) {
  std::mt19937_64 rng(seed);
  std::vector<std::int8_t> v(t.num_words());
  for (auto &x : v) {
    int r = static_cast<int>(rng() % (allow_zero ? 3 : 2));
    x = static_cast<std::int8_t>(allow_zero ? r - 1 : 2 * r - 1);
  }
  return TargetFunction(t, v);
}

void check_incremental(CategoricalModel &model, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> state(model.num_sites());
  for (std::size_t s = 0; s < state.size(); ++s) state[s] = static_cast<std::uint8_t>(rng() % model.arity(s));
  model.reset(state);
  CHECK(model.energy() == doctest::Approx(boost::rational_cast<double>(model.exact_energy(state))));
  for (int move = 0; move < 500; ++move) {
    auto site = static_cast<std::size_t>(rng() % model.num_sites());
    if (model.arity(site) < 2) continue;
    auto value = static_cast<std::uint8_t>(rng() % model.arity(site));
    if (value == model.state()[site]) continue;
    auto before = model.exact_energy(model.state());
    auto next = model.state();
    next[site] = value;
    double delta = model.propose(site, value);
    CHECK(delta == doctest::Approx(boost::rational_cast<double>(model.exact_energy(next) - before)));
    if (rng() & 1) {
      model.accept();
      CHECK(model.state() == next);
    }
  }
  CHECK(model.energy() == doctest::Approx(boost::rational_cast<double>(model.exact_energy(model.state()))));
}

}  // namespace

TEST_SUITE("annealer") {
  TEST_CASE("schedule validation") {
    Schedule s;
    CHECK_NOTHROW(s.validate());
    s.cooling = 1.0;
    CHECK_THROWS_AS(s.validate(), ContractError);
    s = Schedule{};
    s.sweeps = 0;
    CHECK_THROWS_AS(s.validate(), ContractError);
    s = Schedule{};
    s.final_temperature = 0;
    CHECK_THROWS_AS(s.validate(), ContractError);
    s = Schedule{};
    s.initial_temperature = 0.001;
    CHECK_THROWS_AS(s.validate(), ContractError);
    s = Schedule{};
    s.restarts = 0;
    CHECK_THROWS_AS(s.validate(), ContractError);
  }

  TEST_CASE("temperature never drops below the final value") {
    Schedule s;
    CHECK(s.temperature(10.0, 0) == doctest::Approx(10.0));
    CHECK(s.temperature(10.0, 1) == doctest::Approx(9.8));
    CHECK(s.temperature(10.0, 1999) == doctest::Approx(0.01));
  }

  TEST_CASE("minimizes a single variable") {
    PseudoBooleanPoly p(1);
    p.add(Monomial{0}, Rational(-1));
    auto r = anneal_poly(p, quick(1, 20, 2));
    CHECK(r.best_energy == Rational(-1));
    CHECK(r.best_state == std::vector<std::uint8_t>{1});
    CHECK(r.restarts.size() == 2);
    CHECK_THROWS_AS(anneal_poly(PseudoBooleanPoly(0), quick(1)), ContractError);
  }

  TEST_CASE("incremental energies match exact evaluation") {
    auto target = fixtures::qutrit4_target();
    auto enc = encode_correlation(target, target.topology(), Encoding::kTritTwoBit);
    check_incremental(*make_poly_model(enc.poly), 3);
    check_incremental(*make_strategy_model(target, target.topology()), 4);
    auto bits = fixtures::qubit3_target();
    check_incremental(*make_strategy_model(bits, bits.topology()), 5);
    auto partial = random_target(ProcessorTopology(3, {1, 2, 1}, 3), 6, true);
    check_incremental(*make_strategy_model(partial, partial.topology()), 7);
  }

  TEST_CASE("best energy is the exact energy of the best state") {
    auto target = fixtures::qubit3_target();
    auto model = make_strategy_model(target, target.topology());
    auto r = anneal_model(*model, quick(11, 100, 4));
    CHECK(model->exact_energy(r.best_state) == r.best_energy);
    auto s = strategies_from_state(target.topology(), r.best_state);
    CHECK(Rational(-(static_cast<std::int64_t>(target.support_size()) - 2 * hamming_errors(target, output_table(s)))) ==
          r.best_energy);
    auto best = r.restarts.at(static_cast<std::size_t>(r.best_restart)).best_energy;
    for (const auto &restart : r.restarts) CHECK(restart.best_energy >= best);
  }

  TEST_CASE("two-module problems reach the enumerated optimum") {
    const std::vector<ProcessorTopology> shapes{ProcessorTopology(2, {1, 2}, 2), ProcessorTopology(2, {2, 2}, 3),
                                                ProcessorTopology(2, {2, 1}, 2)};
    std::uint64_t seed = 0;
    for (const auto &t : shapes) {
      for (int trial = 0; trial < 10; ++trial, ++seed) {
        auto target = random_target(t, seed, trial % 2 == 0);
        auto oracle = exact_oracle(target, t);
        auto via_strategies = anneal_strategies(target, t, quick(seed, 200, 4));
        REQUIRE(via_strategies.errors.has_value());
        CHECK(*via_strategies.errors == oracle.min_errors);
        auto enc = encode_correlation(target, t, default_encoding(t));
        auto via_poly = anneal_frozen(enc, target, quick(seed, 200, 4));
        REQUIRE(via_poly.errors.has_value());
        CHECK(*via_poly.errors == oracle.min_errors);
      }
    }
  }

  TEST_CASE("constant targets need no errors") {
    auto t = ProcessorTopology::uniform(3, 2, 2);
    TargetFunction target(t, std::vector<std::int8_t>(t.num_words(), -1));
    auto r = anneal_strategies(target, t, quick(2));
    CHECK(r.errors == 0);
    CHECK(r.best_energy == Rational(-64));
  }

  TEST_CASE("three-module bit processor reaches eight errors with both methods") {
    auto target = fixtures::qubit3_target();
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      CHECK(anneal_strategies(target, target.topology(), quick(seed)).errors == 8);
      auto enc = encode_correlation(target, target.topology(), Encoding::kBit);
      CHECK(anneal_frozen(enc, target, quick(seed)).errors == 8);
    }
  }

  TEST_CASE("frozen four-module search") {
    auto target = fixtures::qutrit4_target();
    auto enc = encode_correlation(target, target.topology(), Encoding::kTritTwoBit);
    auto table3 = reference_strategy(ReferenceStrategy::kTrit4);
    auto frozen = freeze_module(freeze_module(enc, 0, table3.module(0)), 3, table3.module(3));
    REQUIRE(frozen.layout.num_vars() == 48);
    auto r = anneal_frozen(frozen, target, quick(1));
    CHECK(r.errors == 16);
    REQUIRE(r.strategies.has_value());
    CHECK(r.strategies->module(0) == table3.module(0));
    CHECK(r.strategies->module(3) == table3.module(3));

    auto all = enc;
    for (int m = 0; m < 4; ++m) all = freeze_module(all, m, table3.module(m));
    auto fixed = anneal_frozen(all, target, quick(1));
    CHECK(fixed.errors == 16);
    CHECK(fixed.best_energy == Rational(-96));
  }

  TEST_CASE("a constant first module cannot reach sixteen errors") {
    auto target = fixtures::qutrit4_target();
    auto enc = encode_correlation(target, target.topology(), Encoding::kTritTwoBit);
    auto flat = empty_module(target.topology(), 0, 0);
    auto frozen = freeze_module(enc, 0, flat);
    // With a constant first module the output ignores X1, so every suffix pays
    // for its minority sign among the four first-module inputs.
    std::int64_t floor = 0;
    const std::size_t suffixes = target.size() / 4;
    for (std::size_t s = 0; s < suffixes; ++s) {
      std::int64_t plus = 0, minus = 0;
      for (std::size_t x1 = 0; x1 < 4; ++x1) {
        auto v = target[x1 * suffixes + s];
        plus += v > 0;
        minus += v < 0;
      }
      floor += std::min(plus, minus);
    }
    CHECK(floor > 16);
    auto r = anneal_frozen(frozen, target, quick(2));
    REQUIRE(r.errors.has_value());
    CHECK(*r.errors >= floor);
  }

  TEST_CASE("results do not depend on the worker count") {
    auto target = fixtures::qutrit4_target();
    auto a = anneal_strategies(target, target.topology(), quick(9, 50, 6));
    auto s = quick(9, 50, 6);
    s.workers = 4;
    auto b = anneal_strategies(target, target.topology(), s);
    CHECK(a.best_state == b.best_state);
    CHECK(a.best_energy == b.best_energy);
    CHECK(a.best_restart == b.best_restart);
    REQUIRE(a.restarts.size() == b.restarts.size());
    for (std::size_t i = 0; i < a.restarts.size(); ++i) {
      CHECK(a.restarts[i].seed == b.restarts[i].seed);
      CHECK(a.restarts[i].best_energy == b.restarts[i].best_energy);
      CHECK(a.restarts[i].accepted_moves == b.restarts[i].accepted_moves);
    }
    auto c = anneal_strategies(target, target.topology(), quick(10, 50, 6));
    CHECK(c.restarts[0].seed != a.restarts[0].seed);
  }

  TEST_CASE("state decoding") {
    auto t = fixtures::qubit3_topology();
    std::vector<std::uint8_t> state(20, 0);
    state[19] = 1;
    auto s = strategies_from_state(t, state);
    CHECK(s.module(2).at(1, 3) == 1);
    CHECK(s.module(2).at(0, 0) == -1);
    state.push_back(0);
    CHECK_THROWS_AS(strategies_from_state(t, state), ContractError);
  }
}
