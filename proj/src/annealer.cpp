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

#include "seqproc/annealer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>

namespace seqproc {

void Schedule::validate() const {
  if (!(final_temperature > 0)) throw ContractError("final temperature must be positive");
  if (initial_temperature && *initial_temperature < final_temperature) {
    throw ContractError("initial temperature must be at least the final temperature");
  }
  if (!(cooling > 0 && cooling < 1)) throw ContractError("cooling factor must lie in (0, 1)");
  if (sweeps < 1) throw ContractError("sweeps must be at least 1");
  if (restarts < 1) throw ContractError("restarts must be at least 1");
  if (workers < 1) throw ContractError("workers must be at least 1");
}

double Schedule::temperature(double initial, int sweep) const {
  return std::max(final_temperature, initial * std::pow(cooling, sweep));
}

namespace {

constexpr int kTemperatureProbes = 1000;
constexpr int kProbesPerState = 50;

std::vector<std::size_t> movable_sites(const CategoricalModel &model) {
  std::vector<std::size_t> sites;
  for (std::size_t s = 0; s < model.num_sites(); ++s) {
    if (model.arity(s) >= 2) sites.push_back(s);
  }
  return sites;
}

void randomize(const CategoricalModel &model, std::vector<std::uint8_t> &state, std::mt19937_64 &rng) {
  state.resize(model.num_sites());
  for (std::size_t s = 0; s < state.size(); ++s) {
    state[s] = static_cast<std::uint8_t>(std::uniform_int_distribution<int>(0, model.arity(s) - 1)(rng));
  }
}

std::uint8_t other_value(int arity, std::uint8_t current, std::mt19937_64 &rng) {
  auto v = static_cast<std::uint8_t>(std::uniform_int_distribution<int>(0, arity - 2)(rng));
  return v >= current ? static_cast<std::uint8_t>(v + 1) : v;
}

double estimate_temperature(CategoricalModel &model, const std::vector<std::size_t> &sites, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::uint8_t> state;
  double largest = 0;
  for (int probe = 0; probe < kTemperatureProbes; ++probe) {
    if (probe % kProbesPerState == 0) {
      randomize(model, state, rng);
      model.reset(state);
    }
    const std::size_t site = sites[std::uniform_int_distribution<std::size_t>(0, sites.size() - 1)(rng)];
    const double delta = model.propose(site, other_value(model.arity(site), model.state()[site], rng));
    largest = std::max(largest, std::abs(delta));
  }
  return largest > 0 ? largest : 1.0;
}

struct RestartOutcome {
  RestartSummary summary;
  std::vector<std::uint8_t> best_state;
};

RestartOutcome run_restart(CategoricalModel &model, const std::vector<std::size_t> &sites, const Schedule &schedule,
                           double initial, int index) {
  RestartOutcome out;
  out.summary.index = index;
  out.summary.seed = schedule.seed + static_cast<std::uint64_t>(index);
  std::mt19937_64 rng(out.summary.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<std::uint8_t> state;
  randomize(model, state, rng);
  model.reset(state);
  double current = model.energy();
  double best = current;
  out.best_state = model.state();

  for (int sweep = 0; sweep < schedule.sweeps; ++sweep) {
    const double t = schedule.temperature(initial, sweep);
    for (std::size_t site : sites) {
      const double delta = model.propose(site, other_value(model.arity(site), model.state()[site], rng));
      if (delta <= 0 || unit(rng) < std::exp(-delta / t)) {
        model.accept();
        current += delta;
        ++out.summary.accepted_moves;
        if (current < best - 1e-9) {
          best = current;
          out.best_state = model.state();
          out.summary.best_sweep = sweep + 1;
        }
      }
    }
  }
  out.summary.best_energy = best;
  out.summary.final_energy = current;
  return out;
}

}  // namespace

AnnealResult anneal_model(const CategoricalModel &prototype, const Schedule &schedule) {
  schedule.validate();
  const auto start = std::chrono::steady_clock::now();
  AnnealResult result;
  auto sites = movable_sites(prototype);

  if (sites.empty()) {
    std::vector<std::uint8_t> state(prototype.num_sites(), 0);
    result.best_state = state;
    result.best_energy = prototype.exact_energy(state);
    result.initial_temperature = schedule.initial_temperature.value_or(schedule.final_temperature);
    return result;
  }

  auto probe = prototype.clone();
  const double initial = schedule.initial_temperature.value_or(
      std::max(schedule.final_temperature, estimate_temperature(*probe, sites, schedule.seed)));
  result.initial_temperature = initial;

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(schedule.restarts));
  const unsigned workers = std::min<unsigned>(schedule.workers, static_cast<unsigned>(schedule.restarts));
  auto work = [&](unsigned worker) {
    auto model = prototype.clone();
    for (int i = static_cast<int>(worker); i < schedule.restarts; i += static_cast<int>(workers)) {
      outcomes[static_cast<std::size_t>(i)] = run_restart(*model, sites, schedule, initial, i);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < outcomes.size(); ++i) {
    if (outcomes[i].summary.best_energy < outcomes[best].summary.best_energy) best = i;
  }
  for (const auto &o : outcomes) result.restarts.push_back(o.summary);
  result.best_restart = static_cast<int>(best);
  result.best_state = outcomes[best].best_state;
  result.best_energy = prototype.exact_energy(result.best_state);
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

namespace {

class PolyModel final : public CategoricalModel {
 public:
  explicit PolyModel(const PseudoBooleanPoly &poly)
      : poly_(std::make_shared<const PseudoBooleanPoly>(poly)), var_terms_(poly.num_vars()) {
    for (const auto &[vars, coeff] : poly.terms()) {
      const double c = boost::rational_cast<double>(coeff);
      if (vars.empty()) {
        constant_ = c;
        continue;
      }
      const auto t = static_cast<std::uint32_t>(coeffs_.size());
      coeffs_.push_back(c);
      sizes_.push_back(static_cast<std::uint32_t>(vars.size()));
      for (std::uint32_t v : vars) var_terms_[v].push_back(t);
    }
    zeros_.resize(coeffs_.size());
  }

  std::size_t num_sites() const override { return var_terms_.size(); }
  int arity(std::size_t) const override { return 2; }

  void reset(std::span<const std::uint8_t> state) override {
    state_.assign(state.begin(), state.end());
    std::copy(sizes_.begin(), sizes_.end(), zeros_.begin());
    for (std::size_t v = 0; v < state_.size(); ++v) {
      if (!state_[v]) continue;
      for (std::uint32_t t : var_terms_[v]) --zeros_[t];
    }
    energy_ = constant_;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
      if (zeros_[t] == 0) energy_ += coeffs_[t];
    }
  }

  const std::vector<std::uint8_t> &state() const override { return state_; }
  double energy() const override { return energy_; }

  double propose(std::size_t site, std::uint8_t) override {
    double delta = 0;
    if (state_[site]) {
      for (std::uint32_t t : var_terms_[site]) {
        if (zeros_[t] == 0) delta -= coeffs_[t];
      }
    } else {
      for (std::uint32_t t : var_terms_[site]) {
        if (zeros_[t] == 1) delta += coeffs_[t];
      }
    }
    pending_ = site;
    pending_delta_ = delta;
    return delta;
  }

  void accept() override {
    const bool rising = !state_[pending_];
    for (std::uint32_t t : var_terms_[pending_]) zeros_[t] += rising ? -1 : 1;
    state_[pending_] = rising;
    energy_ += pending_delta_;
  }

  Rational exact_energy(std::span<const std::uint8_t> state) const override { return poly_->evaluate(state); }
  std::unique_ptr<CategoricalModel> clone() const override { return std::make_unique<PolyModel>(*this); }

 private:
  std::shared_ptr<const PseudoBooleanPoly> poly_;
  double constant_ = 0;
  std::vector<double> coeffs_;
  std::vector<std::uint32_t> sizes_;
  std::vector<std::vector<std::uint32_t>> var_terms_;
  std::vector<std::uint32_t> zeros_;
  std::vector<std::uint8_t> state_;
  double energy_ = 0;
  std::size_t pending_ = 0;
  double pending_delta_ = 0;
};

// Sites are table cells in module, symbol, local order; last-module values 0/1 mean -1/+1.
class StrategyModel final : public CategoricalModel {
 public:
  StrategyModel(const TargetFunction &target, const ProcessorTopology &topology)
      : target_(std::make_shared<const TargetFunction>(target)), topology_(topology) {
    if (target.topology().total_bits() != topology.total_bits()) {
      throw ContractError("target and topology disagree on the number of input bits");
    }
    const int n = topology_.num_modules();
    const int q = topology_.channel_arity();
    for (int m = 0; m < n; ++m) {
      offsets_.push_back(arities_.size());
      const std::size_t cells = static_cast<std::size_t>(m == 0 ? 1 : q) << topology_.local_bits(m);
      arities_.insert(arities_.end(), cells, m + 1 == n ? 2 : q);
      shifts_.push_back(topology_.total_bits() - topology_.prefix_bits(m + 1));
    }
    offsets_.push_back(arities_.size());
    symbols_.assign(static_cast<std::size_t>(n - 1) * topology_.num_words(), 0);
    outputs_.assign(topology_.num_words(), 1);
  }

  std::size_t num_sites() const override { return arities_.size(); }
  int arity(std::size_t site) const override { return arities_[site]; }

  void reset(std::span<const std::uint8_t> state) override {
    state_.assign(state.begin(), state.end());
    energy_ = 0;
    for (std::size_t w = 0; w < outputs_.size(); ++w) {
      int symbol = 0;
      for (int m = 0; m + 1 < topology_.num_modules(); ++m) {
        symbol = cell_value(m, symbol, local(w, m));
        symbols_[index(m, w)] = static_cast<std::int8_t>(symbol);
      }
      outputs_[w] = output_value(symbol, local(w, topology_.num_modules() - 1));
      energy_ -= (*target_)[w] * outputs_[w];
    }
  }

  const std::vector<std::uint8_t> &state() const override { return state_; }
  double energy() const override { return energy_; }

  double propose(std::size_t site, std::uint8_t value) override {
    pending_ = site;
    pending_value_ = value;
    const std::uint8_t old = state_[site];
    state_[site] = value;
    std::int64_t delta = 0;
    for_each_affected([&](std::size_t w, int out) {
      delta -= (*target_)[w] * (out - outputs_[w]);
    }, false);
    state_[site] = old;
    pending_delta_ = static_cast<double>(delta);
    return pending_delta_;
  }

  void accept() override {
    state_[pending_] = pending_value_;
    for_each_affected([&](std::size_t w, int out) { outputs_[w] = static_cast<std::int8_t>(out); }, true);
    energy_ += pending_delta_;
  }

  Rational exact_energy(std::span<const std::uint8_t> state) const override {
    auto out = output_table(strategies_from_state(topology_, state));
    std::int64_t sum = 0;
    for (std::size_t w = 0; w < out.size(); ++w) sum += (*target_)[w] * out[w];
    return Rational(-sum);
  }

  std::unique_ptr<CategoricalModel> clone() const override { return std::make_unique<StrategyModel>(*this); }

 private:
  std::uint32_t local(std::size_t w, int m) const {
    return static_cast<std::uint32_t>(w >> shifts_[static_cast<std::size_t>(m)]) &
           ((1u << topology_.local_bits(m)) - 1);
  }
  std::size_t index(int m, std::size_t w) const { return static_cast<std::size_t>(m) * outputs_.size() + w; }
  int cell_value(int m, int symbol, std::uint32_t y) const {
    return state_[offsets_[static_cast<std::size_t>(m)] + (static_cast<std::size_t>(symbol) << topology_.local_bits(m)) + y];
  }
  int output_value(int symbol, std::uint32_t y) const {
    return cell_value(topology_.num_modules() - 1, symbol, y) ? 1 : -1;
  }

  // Visits words routed through the pending cell with their output under the
  // current state_, optionally refreshing the symbol cache along the way.
  template <class Visit>
  void for_each_affected(Visit visit, bool commit) {
    const int n = topology_.num_modules();
    int m = 0;
    while (offsets_[static_cast<std::size_t>(m) + 1] <= pending_) ++m;
    const std::size_t cell = pending_ - offsets_[static_cast<std::size_t>(m)];
    const int bits = topology_.local_bits(m);
    const int symbol = static_cast<int>(cell >> bits);
    const auto y = static_cast<std::uint32_t>(cell & ((std::size_t{1} << bits) - 1));
    const int suffix = shifts_[static_cast<std::size_t>(m)];
    const std::size_t prefixes = std::size_t{1} << topology_.prefix_bits(m);
    const std::size_t tails = std::size_t{1} << suffix;
    for (std::size_t hi = 0; hi < prefixes; ++hi) {
      const std::size_t base = (((hi << bits) | y) << suffix);
      if (m > 0 && symbols_[index(m - 1, base)] != symbol) continue;
      for (std::size_t lo = 0; lo < tails; ++lo) {
        const std::size_t w = base | lo;
        int s = symbol;
        for (int k = m; k + 1 < n; ++k) {
          s = cell_value(k, s, local(w, k));
          if (commit) symbols_[index(k, w)] = static_cast<std::int8_t>(s);
        }
        visit(w, output_value(s, local(w, n - 1)));
      }
    }
  }

  std::shared_ptr<const TargetFunction> target_;
  ProcessorTopology topology_;
  std::vector<int> arities_;
  std::vector<std::size_t> offsets_;
  std::vector<int> shifts_;
  std::vector<std::int8_t> symbols_;
  std::vector<std::int8_t> outputs_;
  std::vector<std::uint8_t> state_;
  double energy_ = 0;
  std::size_t pending_ = 0;
  std::uint8_t pending_value_ = 0;
  double pending_delta_ = 0;
};

}  // namespace

std::unique_ptr<CategoricalModel> make_poly_model(const PseudoBooleanPoly &poly) {
  return std::make_unique<PolyModel>(poly);
}

std::unique_ptr<CategoricalModel> make_strategy_model(const TargetFunction &target,
                                                      const ProcessorTopology &topology) {
  return std::make_unique<StrategyModel>(target, topology);
}

StrategySet strategies_from_state(const ProcessorTopology &topology, std::span<const std::uint8_t> state) {
  const int n = topology.num_modules();
  std::vector<ModuleStrategy> modules;
  std::size_t pos = 0;
  for (int m = 0; m < n; ++m) {
    ModuleStrategy s = empty_module(topology, m, 0);
    for (auto &cell : s.table) {
      if (pos >= state.size()) throw ContractError("state is shorter than the strategy tables");
      const int v = state[pos++];
      cell = static_cast<std::int8_t>(m + 1 == n ? (v ? 1 : -1) : v);
    }
    modules.push_back(std::move(s));
  }
  if (pos != state.size()) throw ContractError("state is longer than the strategy tables");
  return StrategySet(topology, std::move(modules));
}

AnnealResult anneal_poly(const PseudoBooleanPoly &poly, const Schedule &schedule) {
  if (poly.num_vars() == 0) throw ContractError("polynomial has no variables to anneal");
  return anneal_model(*make_poly_model(poly), schedule);
}

AnnealResult anneal_strategies(const TargetFunction &target, const ProcessorTopology &topology,
                               const Schedule &schedule) {
  AnnealResult result = anneal_model(*make_strategy_model(target, topology), schedule);
  result.strategies = strategies_from_state(topology, result.best_state);
  result.errors = errors_from_energy(target, result.best_energy);
  return result;
}

AnnealResult anneal_frozen(const EncodedProblem &problem, const TargetFunction &target, const Schedule &schedule) {
  AnnealResult result;
  if (problem.layout.num_vars() == 0) {
    schedule.validate();
    result.best_energy = problem.poly.constant();
    result.initial_temperature = schedule.initial_temperature.value_or(schedule.final_temperature);
  } else {
    result = anneal_poly(problem.poly, schedule);
  }
  try {
    result.strategies = decode(result.best_state, problem.layout);
    result.errors = errors_from_energy(target, result.best_energy);
  } catch (const ContractError &) {
    // An assignment violating the one-hot constraints has no strategy reading.
    result.strategies.reset();
    result.errors.reset();
  }
  return result;
}

}  // namespace seqproc
