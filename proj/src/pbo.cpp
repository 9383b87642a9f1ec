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

#include "seqproc/pbo.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace seqproc {

PseudoBooleanPoly PseudoBooleanPoly::constant_poly(std::size_t num_vars, Rational value) {
  PseudoBooleanPoly p(num_vars);
  p.add(Monomial{}, value);
  return p;
}

PseudoBooleanPoly PseudoBooleanPoly::variable(std::size_t num_vars, std::uint32_t index) {
  PseudoBooleanPoly p(num_vars);
  p.add(Monomial{index}, Rational(1));
  return p;
}

Rational PseudoBooleanPoly::constant() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

int PseudoBooleanPoly::degree() const {
  std::size_t d = 0;
  for (const auto &[vars, coeff] : terms_) d = std::max(d, vars.size());
  return static_cast<int>(d);
}

void PseudoBooleanPoly::add(Monomial vars, Rational coeff) {
  if (coeff == Rational(0)) return;
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  if (!vars.empty() && vars.back() >= num_vars_) {
    throw ContractError("variable " + std::to_string(vars.back()) + " outside a polynomial over " +
                        std::to_string(num_vars_) + " variables");
  }
  auto [it, inserted] = terms_.try_emplace(std::move(vars), coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == Rational(0)) terms_.erase(it);
  }
}

void PseudoBooleanPoly::add(const PseudoBooleanPoly &other, Rational scale) {
  for (const auto &[vars, coeff] : other.terms_) add(vars, coeff * scale);
}

Rational PseudoBooleanPoly::evaluate(std::span<const std::uint8_t> assignment) const {
  if (assignment.size() != num_vars_) {
    throw ContractError("assignment has " + std::to_string(assignment.size()) + " values, polynomial has " +
                        std::to_string(num_vars_) + " variables");
  }
  Rational total(0);
  for (const auto &[vars, coeff] : terms_) {
    if (std::all_of(vars.begin(), vars.end(), [&](std::uint32_t v) { return assignment[v] != 0; })) total += coeff;
  }
  return total;
}

PseudoBooleanPoly PseudoBooleanPoly::operator*(const PseudoBooleanPoly &other) const {
  PseudoBooleanPoly product(std::max(num_vars_, other.num_vars_));
  for (const auto &[a, ca] : terms_) {
    for (const auto &[b, cb] : other.terms_) {
      Monomial merged;
      merged.reserve(a.size() + b.size());
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
      product.add(std::move(merged), ca * cb);
    }
  }
  return product;
}

PseudoBooleanPoly &PseudoBooleanPoly::operator+=(const PseudoBooleanPoly &other) {
  num_vars_ = std::max(num_vars_, other.num_vars_);
  add(other);
  return *this;
}

const char *to_string(Encoding encoding) {
  switch (encoding) {
    case Encoding::kBit: return "bit";
    case Encoding::kTritTwoBit: return "trit-twobit";
    case Encoding::kTritOneHot: return "trit-onehot";
  }
  return "?";
}

Encoding parse_encoding(const std::string &name) {
  if (name == "bit") return Encoding::kBit;
  if (name == "trit-twobit") return Encoding::kTritTwoBit;
  if (name == "trit-onehot") return Encoding::kTritOneHot;
  throw ContractError("unknown encoding '" + name + "' (expected bit, trit-twobit or trit-onehot)");
}

Encoding default_encoding(const ProcessorTopology &topology) {
  return topology.channel_arity() == 2 ? Encoding::kBit : Encoding::kTritTwoBit;
}

VariableLayout::VariableLayout(ProcessorTopology topology, Encoding encoding)
    : topology_(std::move(topology)), encoding_(encoding) {
  const int q = topology_.channel_arity();
  if ((encoding_ == Encoding::kBit) != (q == 2) || q > 3) {
    throw ContractError(std::string("encoding ") + seqproc::to_string(encoding_) +
                        " does not fit channel arity " + std::to_string(q));
  }
  const int n = topology_.num_modules();
  frozen_.resize(static_cast<std::size_t>(n));
  std::int32_t next = 0;
  for (int m = 0; m < n; ++m) {
    const std::size_t cells = static_cast<std::size_t>(m == 0 ? 1 : q) << topology_.local_bits(m);
    std::vector<std::int32_t> vars(cells * static_cast<std::size_t>(vars_per_cell(m)));
    for (auto &v : vars) v = next++;
    vars_.push_back(std::move(vars));
  }
  rebuild_inverse();
}

int VariableLayout::vars_per_cell(int module) const {
  if (module + 1 == topology_.num_modules()) return 1;
  switch (encoding_) {
    case Encoding::kBit: return 1;
    case Encoding::kTritTwoBit: return 2;
    case Encoding::kTritOneHot: return 3;
  }
  return 1;
}

std::size_t VariableLayout::cell_offset(int module, int symbol, std::uint32_t local) const {
  const std::size_t cell = (static_cast<std::size_t>(symbol) << topology_.local_bits(module)) + local;
  return cell * static_cast<std::size_t>(vars_per_cell(module));
}

std::span<const std::int32_t> VariableLayout::cell_vars(int module, int symbol, std::uint32_t local) const {
  const auto &vars = vars_.at(static_cast<std::size_t>(module));
  return std::span<const std::int32_t>(vars).subspan(cell_offset(module, symbol, local),
                                                     static_cast<std::size_t>(vars_per_cell(module)));
}

std::vector<std::uint8_t> VariableLayout::encode_value(int module, int value) const {
  if (module + 1 == topology_.num_modules()) return {static_cast<std::uint8_t>(value > 0)};
  switch (encoding_) {
    case Encoding::kBit: return {static_cast<std::uint8_t>(value)};
    case Encoding::kTritTwoBit: return {static_cast<std::uint8_t>(value == 2), static_cast<std::uint8_t>(value == 1)};
    case Encoding::kTritOneHot:
      return {static_cast<std::uint8_t>(value == 0), static_cast<std::uint8_t>(value == 1),
              static_cast<std::uint8_t>(value == 2)};
  }
  return {};
}

std::vector<std::int32_t> VariableLayout::freeze(int module, const ModuleStrategy &strategy) {
  if (module < 0 || module >= topology_.num_modules()) throw ContractError("module index out of range");
  if (frozen(module)) throw ContractError("module " + std::to_string(module + 1) + " is already frozen");
  // Validates the table against the module's alphabet.
  StrategySet probe = StrategySet::constant(topology_);
  probe.set_module(module, strategy);

  std::vector<std::int32_t> remap(num_vars(), -1);
  for (auto &v : vars_[static_cast<std::size_t>(module)]) v = -1;
  std::int32_t next = 0;
  for (auto &vars : vars_) {
    for (auto &v : vars) {
      if (v < 0) continue;
      remap[static_cast<std::size_t>(v)] = next;
      v = next++;
    }
  }
  frozen_[static_cast<std::size_t>(module)] = strategy;
  rebuild_inverse();
  return remap;
}

void VariableLayout::rebuild_inverse() {
  std::size_t count = 0;
  for (const auto &vars : vars_) count += static_cast<std::size_t>(std::count_if(vars.begin(), vars.end(), [](auto v) { return v >= 0; }));
  inverse_.assign(count, VarInfo{});
  for (int m = 0; m < topology_.num_modules(); ++m) {
    const auto &vars = vars_[static_cast<std::size_t>(m)];
    const std::size_t per = static_cast<std::size_t>(vars_per_cell(m));
    const std::size_t span = std::size_t{1} << topology_.local_bits(m);
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (vars[i] < 0) continue;
      const std::size_t cell = i / per;
      inverse_[static_cast<std::size_t>(vars[i])] =
          VarInfo{m, static_cast<int>(cell / span), static_cast<std::uint32_t>(cell % span), static_cast<int>(i % per)};
    }
  }
}

namespace {

// Indicator polynomials of one intermediate cell, one per outgoing symbol.
std::vector<PseudoBooleanPoly> indicators(const VariableLayout &layout, int module, int symbol, std::uint32_t local) {
  const std::size_t n = layout.num_vars();
  const int q = layout.topology().channel_arity();
  auto vars = layout.cell_vars(module, symbol, local);
  auto var = [&](int slot) { return PseudoBooleanPoly::variable(n, static_cast<std::uint32_t>(vars[static_cast<std::size_t>(slot)])); };
  auto one_minus = [&](int slot) {
    PseudoBooleanPoly p = PseudoBooleanPoly::constant_poly(n, Rational(1));
    p.add(var(slot), Rational(-1));
    return p;
  };
  std::vector<PseudoBooleanPoly> ind;
  switch (layout.encoding()) {
    case Encoding::kBit:
      ind = {one_minus(0), var(0)};
      break;
    case Encoding::kTritTwoBit:
      ind = {one_minus(0) * one_minus(1), one_minus(0) * var(1), var(0)};
      break;
    case Encoding::kTritOneHot:
      for (int s = 0; s < q; ++s) ind.push_back(var(s));
      break;
  }
  return ind;
}

}  // namespace

EncodedProblem encode_correlation(const TargetFunction &target, const ProcessorTopology &topology, Encoding encoding,
                                  std::optional<Rational> penalty) {
  if (target.topology().total_bits() != topology.total_bits()) {
    throw ContractError("target and topology disagree on the number of input bits");
  }
  VariableLayout layout(topology, encoding);
  const std::size_t n = layout.num_vars();
  const int modules = topology.num_modules();
  const int q = topology.channel_arity();
  PseudoBooleanPoly poly(n);

  // Walks the prefix tree; reach[s] is the indicator that the chain so far emits s.
  const int last = modules - 1;
  const int last_bits = topology.local_bits(last);
  auto walk = [&](auto &&self, int module, std::uint32_t prefix, const std::vector<PseudoBooleanPoly> &reach) -> void {
    if (module == last) {
      for (int s = 0; s < q; ++s) {
        if (reach[static_cast<std::size_t>(s)].terms().empty()) continue;
        // sum_y -T(prefix, y) (2 b_{s,y} - 1)
        PseudoBooleanPoly tail(n);
        for (std::uint32_t y = 0; y < (1u << last_bits); ++y) {
          const int t = target[(static_cast<std::size_t>(prefix) << last_bits) | y];
          if (t == 0) continue;
          auto b = static_cast<std::uint32_t>(layout.cell_vars(last, s, y)[0]);
          tail.add(Monomial{b}, Rational(-2 * t));
          tail.add(Monomial{}, Rational(t));
        }
        poly += reach[static_cast<std::size_t>(s)] * tail;
      }
      return;
    }
    const int bits = topology.local_bits(module);
    for (std::uint32_t y = 0; y < (1u << bits); ++y) {
      std::vector<PseudoBooleanPoly> next(static_cast<std::size_t>(q), PseudoBooleanPoly(n));
      if (module == 0) {
        next = indicators(layout, 0, 0, y);
      } else {
        for (int s = 0; s < q; ++s) {
          const auto &r = reach[static_cast<std::size_t>(s)];
          if (r.terms().empty()) continue;
          auto ind = indicators(layout, module, s, y);
          for (int t = 0; t < q; ++t) next[static_cast<std::size_t>(t)] += r * ind[static_cast<std::size_t>(t)];
        }
      }
      self(self, module + 1, (prefix << bits) | y, next);
    }
  };
  walk(walk, 0, 0, {});

  Rational weight(0);
  if (encoding == Encoding::kTritOneHot) {
    weight = penalty.value_or(Rational(1 + static_cast<std::int64_t>(target.support_size())));
    if (weight <= 0) throw ContractError("one-hot penalty must be positive");
    for (int m = 0; m < last; ++m) {
      const int incoming = m == 0 ? 1 : q;
      for (int s = 0; s < incoming; ++s) {
        for (std::uint32_t y = 0; y < (1u << topology.local_bits(m)); ++y) {
          auto vars = layout.cell_vars(m, s, y);
          // (sum v - 1)^2 = 1 - sum v + 2 sum_{i<j} v_i v_j on 0/1 values.
          poly.add(Monomial{}, weight);
          for (std::size_t i = 0; i < vars.size(); ++i) {
            poly.add(Monomial{static_cast<std::uint32_t>(vars[i])}, -weight);
            for (std::size_t j = i + 1; j < vars.size(); ++j) {
              poly.add(Monomial{static_cast<std::uint32_t>(vars[i]), static_cast<std::uint32_t>(vars[j])},
                       2 * weight);
            }
          }
        }
      }
    }
  }
  return EncodedProblem{std::move(poly), std::move(layout), weight};
}

EncodedProblem freeze_module(const EncodedProblem &problem, int module, const ModuleStrategy &strategy) {
  VariableLayout layout = problem.layout;
  // Fixed values of the module's variables, by old index.
  std::vector<int> fixed(problem.layout.num_vars(), -1);
  const int incoming = strategy.incoming;
  for (int s = 0; s < incoming; ++s) {
    for (std::uint32_t y = 0; y < strategy.cells_per_symbol(); ++y) {
      if (static_cast<std::size_t>(s) * strategy.cells_per_symbol() + y >= strategy.table.size()) break;
      auto vars = problem.layout.cell_vars(module, s, y);
      auto bits = problem.layout.encode_value(module, strategy.at(s, y));
      for (std::size_t k = 0; k < vars.size(); ++k) {
        if (vars[k] >= 0) fixed[static_cast<std::size_t>(vars[k])] = bits[k];
      }
    }
  }
  auto remap = layout.freeze(module, strategy);

  PseudoBooleanPoly poly(layout.num_vars());
  for (const auto &[vars, coeff] : problem.poly.terms()) {
    Monomial reduced;
    bool vanishes = false;
    for (std::uint32_t v : vars) {
      if (fixed[v] == 0) {
        vanishes = true;
        break;
      }
      if (fixed[v] == 1) continue;
      reduced.push_back(static_cast<std::uint32_t>(remap[v]));
    }
    if (!vanishes) poly.add(std::move(reduced), coeff);
  }
  return EncodedProblem{std::move(poly), std::move(layout), problem.penalty};
}

StrategySet decode(std::span<const std::uint8_t> assignment, const VariableLayout &layout) {
  if (assignment.size() != layout.num_vars()) {
    throw ContractError("assignment has " + std::to_string(assignment.size()) + " values, layout has " +
                        std::to_string(layout.num_vars()) + " variables");
  }
  const auto &topology = layout.topology();
  const int n = topology.num_modules();
  std::vector<ModuleStrategy> modules;
  for (int m = 0; m < n; ++m) {
    if (layout.frozen(m)) {
      modules.push_back(*layout.frozen_strategy(m));
      continue;
    }
    ModuleStrategy s = empty_module(topology, m, 0);
    for (int sym = 0; sym < s.incoming; ++sym) {
      for (std::uint32_t y = 0; y < s.cells_per_symbol(); ++y) {
        auto vars = layout.cell_vars(m, sym, y);
        auto bit = [&](std::size_t k) { return assignment[static_cast<std::size_t>(vars[k])] != 0; };
        int value = 0;
        if (m + 1 == n) {
          value = bit(0) ? 1 : -1;
        } else if (layout.encoding() == Encoding::kBit) {
          value = bit(0);
        } else if (layout.encoding() == Encoding::kTritTwoBit) {
          value = bit(0) ? 2 : (bit(1) ? 1 : 0);
        } else {
          int hot = bit(0) + bit(1) + bit(2);
          if (hot != 1) {
            throw ContractError("module " + std::to_string(m + 1) + " cell (" + std::to_string(sym) + ", " +
                                std::to_string(y) + ") is not one-hot");
          }
          value = bit(1) ? 1 : (bit(2) ? 2 : 0);
        }
        s.at(sym, y) = static_cast<std::int8_t>(value);
      }
    }
    modules.push_back(std::move(s));
  }
  return StrategySet(topology, std::move(modules));
}

std::vector<std::uint8_t> encode_assignment(const StrategySet &strategies, const VariableLayout &layout) {
  if (!(strategies.topology() == layout.topology())) throw ContractError("strategy set and layout topologies differ");
  std::vector<std::uint8_t> assignment(layout.num_vars(), 0);
  for (int m = 0; m < layout.topology().num_modules(); ++m) {
    if (layout.frozen(m)) continue;
    const auto &s = strategies.module(m);
    for (int sym = 0; sym < s.incoming; ++sym) {
      for (std::uint32_t y = 0; y < s.cells_per_symbol(); ++y) {
        auto vars = layout.cell_vars(m, sym, y);
        auto bits = layout.encode_value(m, s.at(sym, y));
        for (std::size_t k = 0; k < vars.size(); ++k) assignment[static_cast<std::size_t>(vars[k])] = bits[k];
      }
    }
  }
  return assignment;
}

std::int64_t errors_from_energy(const TargetFunction &target, const Rational &energy) {
  Rational errors = (Rational(static_cast<std::int64_t>(target.support_size())) + energy) / 2;
  if (errors.denominator() != 1) throw ContractError("energy " + to_string(energy) + " is not a signed match count");
  return errors.numerator();
}

Rational QuadratizedProblem::energy(std::span<const std::uint8_t> assignment) const {
  if (assignment.size() != num_vars) throw ContractError("assignment length does not match the QUBO");
  Rational total = offset;
  for (const auto &[ij, coeff] : coefficients) {
    if (assignment[ij.first] && assignment[ij.second]) total += coeff;
  }
  return total;
}

PseudoBooleanPoly QuadratizedProblem::to_poly() const {
  PseudoBooleanPoly p(num_vars);
  p.add(Monomial{}, offset);
  for (const auto &[ij, coeff] : coefficients) p.add(Monomial{ij.first, ij.second}, coeff);
  return p;
}

std::vector<std::uint8_t> QuadratizedProblem::extend(std::span<const std::uint8_t> original) const {
  if (original.size() != num_original) throw ContractError("assignment length does not match the original problem");
  std::vector<std::uint8_t> full(num_vars, 0);
  std::copy(original.begin(), original.end(), full.begin());
  for (const auto &a : aux) full[a.index] = full[a.left] & full[a.right];
  return full;
}

QuadratizedProblem quadratize(const PseudoBooleanPoly &poly, std::optional<Rational> penalty) {
  Rational total(0);
  for (const auto &[vars, coeff] : poly.terms()) {
    if (!vars.empty()) total += coeff < 0 ? -coeff : coeff;
  }
  const Rational m = penalty.value_or(total + 1);
  if (m <= 0) throw ContractError("quadratization penalty must be positive");

  QuadratizedProblem out;
  out.num_original = poly.num_vars();
  out.penalty = m;
  std::map<Monomial, Rational> terms = poly.terms();
  std::uint32_t next = static_cast<std::uint32_t>(poly.num_vars());
  std::map<Monomial, Rational> penalties;
  auto add = [](std::map<Monomial, Rational> &map, Monomial vars, Rational c) {
    std::sort(vars.begin(), vars.end());
    auto &slot = map[vars];
    slot += c;
    if (slot == Rational(0)) map.erase(vars);
  };

  while (true) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> counts;
    for (const auto &[vars, coeff] : terms) {
      if (vars.size() < 3) continue;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        for (std::size_t j = i + 1; j < vars.size(); ++j) ++counts[{vars[i], vars[j]}];
      }
    }
    if (counts.empty()) break;
    // Most frequent pair; std::map order breaks ties toward the lowest pair.
    auto best = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    const auto [x, y] = best->first;
    const std::uint32_t z = next++;
    out.aux.push_back({z, x, y});

    std::map<Monomial, Rational> rewritten;
    for (auto &[vars, coeff] : terms) {
      Monomial v = vars;
      if (v.size() >= 3 && std::binary_search(v.begin(), v.end(), x) && std::binary_search(v.begin(), v.end(), y)) {
        std::erase(v, x);
        std::erase(v, y);
        v.push_back(z);
      }
      add(rewritten, std::move(v), coeff);
    }
    terms = std::move(rewritten);
    add(penalties, {x, y}, m);
    add(penalties, {x, z}, -2 * m);
    add(penalties, {y, z}, -2 * m);
    add(penalties, {z}, 3 * m);
  }
  for (const auto &[vars, coeff] : penalties) add(terms, vars, coeff);

  out.num_vars = next;
  for (const auto &[vars, coeff] : terms) {
    if (vars.empty()) {
      out.offset += coeff;
    } else if (vars.size() == 1) {
      out.coefficients[{vars[0], vars[0]}] += coeff;
    } else {
      out.coefficients[{vars[0], vars[1]}] += coeff;
    }
  }
  std::erase_if(out.coefficients, [](const auto &kv) { return kv.second == Rational(0); });
  return out;
}

namespace {

bool next_data_line(std::istream &in, std::string &line) {
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

void write_poly(std::ostream &out, const PseudoBooleanPoly &poly) {
  out << "pbo " << poly.num_vars() << " " << poly.terms().size() << "\n";
  for (const auto &[vars, coeff] : poly.terms()) {
    for (std::uint32_t v : vars) out << v << " ";
    out << ": " << to_string(coeff) << "\n";
  }
}

PseudoBooleanPoly read_poly(std::istream &in) {
  std::string line;
  if (!next_data_line(in, line)) throw ContractError("empty polynomial file");
  std::istringstream header(line);
  std::string tag;
  std::size_t num_vars = 0, num_terms = 0;
  if (!(header >> tag >> num_vars >> num_terms) || tag != "pbo") throw ContractError("bad polynomial header: " + line);
  PseudoBooleanPoly poly(num_vars);
  for (std::size_t t = 0; t < num_terms; ++t) {
    if (!next_data_line(in, line)) throw ContractError("polynomial file ends after " + std::to_string(t) + " terms");
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ContractError("term line without ':': " + line);
    std::istringstream vars_in(line.substr(0, colon));
    Monomial vars;
    for (std::uint32_t v; vars_in >> v;) vars.push_back(v);
    if (!vars_in.eof()) throw ContractError("bad variable list: " + line);
    std::istringstream coeff_in(line.substr(colon + 1));
    std::string coeff;
    coeff_in >> coeff;
    poly.add(std::move(vars), parse_rational(coeff));
  }
  return poly;
}

void write_qubo(std::ostream &out, const QuadratizedProblem &problem) {
  out << "qubo " << problem.num_vars << " " << to_string(problem.offset) << "\n";
  for (const auto &[ij, coeff] : problem.coefficients) {
    out << ij.first << " " << ij.second << " " << to_string(coeff) << "\n";
  }
}

QuadratizedProblem read_qubo(std::istream &in) {
  std::string line;
  if (!next_data_line(in, line)) throw ContractError("empty QUBO file");
  std::istringstream header(line);
  std::string tag, offset;
  QuadratizedProblem problem;
  if (!(header >> tag >> problem.num_vars >> offset) || tag != "qubo") throw ContractError("bad QUBO header: " + line);
  problem.offset = parse_rational(offset);
  problem.num_original = problem.num_vars;
  while (next_data_line(in, line)) {
    std::istringstream row(line);
    std::uint32_t i = 0, j = 0;
    std::string coeff;
    if (!(row >> i >> j >> coeff) || i > j || j >= problem.num_vars) throw ContractError("bad QUBO entry: " + line);
    problem.coefficients[{i, j}] += parse_rational(coeff);
  }
  return problem;
}

}  // namespace seqproc
