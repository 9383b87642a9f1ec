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

#include "seqproc/quantum.hpp"

#include <cmath>
#include <complex>
#include <random>

namespace seqproc {

namespace {

using namespace std::complex_literals;

constexpr double kUnitaryTolerance = 1e-10;
constexpr double kNormTolerance = 1e-10;

ModeUnitary make(std::complex<double> a, std::complex<double> b, std::complex<double> c, std::complex<double> d) {
  ModeUnitary m;
  m << a, b, c, d;
  return m;
}

}  // namespace

ModeUnitary gate_for(int b0, int b1, GateFamily family) {
  if ((b0 != 0 && b0 != 1) || (b1 != 0 && b1 != 1)) throw ContractError("gate bits must be 0 or 1");
  const double s = 1.0 / std::sqrt(2.0);
  int pair = 2 * b0 + b1;
  if (family == GateFamily::kStandard) {
    switch (pair) {
      case 0: return ModeUnitary::Identity();
      case 1: return make(0, 1, 1, 0);
      case 2: return s * make(1, 1i, 1i, 1);
      default: return s * make(1, -1i, -1i, 1);
    }
  }
  switch (pair) {
    case 0: return s * make(1, 1i, -1i, -1);
    case 1: return make(0, 1, -1, 0);
    case 2: return make(-1, 0, 0, 1);
    default: return s * make(1, -1i, 1i, -1);
  }
}

bool is_unitary(const Eigen::MatrixXcd &m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  Eigen::MatrixXcd residual = m * m.adjoint() - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  return residual.cwiseAbs().maxCoeff() <= tolerance;
}

TwoPhotonUnitary lift_two_photon(const ModeUnitary &u) {
  if (!is_unitary(u, kUnitaryTolerance)) throw ContractError("lift_two_photon needs a unitary mode transform");
  const double r2 = std::sqrt(2.0);
  const auto u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  TwoPhotonUnitary lifted;
  // Columns are the images of |20>, |11>, |02> under a_j^dag -> sum_i u_ij a_i^dag.
  lifted << u00 * u00, r2 * u00 * u01, u01 * u01,
            r2 * u00 * u10, u00 * u11 + u01 * u10, r2 * u01 * u11,
            u10 * u10, r2 * u10 * u11, u11 * u11;
  return lifted;
}

const char *to_string(ProcessorKind kind) {
  switch (kind) {
    case ProcessorKind::kQubit3: return "qubit3";
    case ProcessorKind::kQutrit3: return "qutrit3";
    case ProcessorKind::kQutrit4: return "qutrit4";
  }
  return "?";
}

ProcessorKind parse_processor_kind(const std::string &name) {
  if (name == "qubit3") return ProcessorKind::kQubit3;
  if (name == "qutrit3") return ProcessorKind::kQutrit3;
  if (name == "qutrit4") return ProcessorKind::kQutrit4;
  throw ContractError("unknown processor kind '" + name + "' (expected qubit3, qutrit3 or qutrit4)");
}

QuantumProcessorSpec make_processor(ProcessorKind kind) {
  const int modules = kind == ProcessorKind::kQutrit4 ? 4 : 3;
  const int arity = kind == ProcessorKind::kQubit3 ? 2 : 3;
  QuantumProcessorSpec spec{kind, ProcessorTopology::uniform(modules, 2, arity),
                            std::vector<ModuleGates>(static_cast<std::size_t>(modules)), PureState{}};
  spec.initial.amplitudes = Eigen::VectorXcd::Zero(arity);
  spec.initial.amplitudes(0) = 1.0;
  if (kind == ProcessorKind::kQutrit4) {
    // On the chip's first stage the inputs (1,0) and (1,1) drive each other's gate.
    spec.modules[0] = ModuleGates{GateFamily::kAltFirst, {0, 1, 3, 2}};
  }
  return spec;
}

PureState run_circuit(const QuantumProcessorSpec &spec, std::span<const std::uint8_t> word) {
  return run_circuit(spec, index_of(spec.topology, word));
}

PureState run_circuit(const QuantumProcessorSpec &spec, std::uint32_t word_index) {
  if (word_index >= spec.topology.num_words()) throw ContractError("word index out of range");
  PureState state = spec.initial;
  for (int m = 0; m < spec.topology.num_modules(); ++m) {
    const auto &gates = spec.modules[static_cast<std::size_t>(m)];
    int slot = gates.routing[spec.topology.local_input(word_index, m)];
    ModeUnitary u = gate_for(slot >> 1, slot & 1, gates.family);
    if (spec.two_photon()) {
      state.amplitudes = lift_two_photon(u) * state.amplitudes;
    } else {
      state.amplitudes = u * state.amplitudes;
    }
  }
  return state;
}

int classify_deterministic(const PureState &state, double epsilon) {
  if (std::abs(state.amplitudes.squaredNorm() - 1.0) > kNormTolerance) {
    throw ContractError("classify_deterministic needs a normalized state");
  }
  if (state.probability(0) >= 1.0 - epsilon) return 1;
  if (state.probability(state.dimension() - 1) >= 1.0 - epsilon) return -1;
  return 0;
}

const char *to_string(SignConvention convention) {
  return convention == SignConvention::kFirstBasisPositive ? "first-basis-positive" : "first-basis-negative";
}

SignConvention parse_sign_convention(const std::string &name) {
  if (name == "first-basis-positive") return SignConvention::kFirstBasisPositive;
  if (name == "first-basis-negative") return SignConvention::kFirstBasisNegative;
  throw ContractError("unknown sign convention '" + name + "'");
}

TargetFunction generate_target(const QuantumProcessorSpec &spec, SignConvention convention) {
  const int sign = convention == SignConvention::kFirstBasisPositive ? 1 : -1;
  std::vector<std::int8_t> values(spec.topology.num_words());
  for (std::uint32_t w = 0; w < values.size(); ++w) {
    values[w] = static_cast<std::int8_t>(sign * classify_deterministic(run_circuit(spec, w)));
  }
  return TargetFunction(spec.topology, std::move(values));
}

std::vector<ShotRecord> sample_shots(const QuantumProcessorSpec &spec, std::size_t num_shots, std::uint64_t seed,
                                     std::optional<double> visibility, SignConvention convention) {
  if (num_shots == 0) throw ContractError("num_shots must be positive");
  const double v = visibility.value_or(1.0);
  if (v < 0.0 || v > 1.0) throw ContractError("visibility must lie in [0, 1]");

  const std::size_t words = spec.topology.num_words();
  const std::size_t dim = spec.initial.dimension();
  std::vector<double> probabilities(words * dim);
  for (std::uint32_t w = 0; w < words; ++w) {
    PureState state = run_circuit(spec, w);
    double accepted = 0.0;
    for (std::size_t b = 0; b < dim; ++b) {
      double p = v * state.probability(b) + (1.0 - v) / static_cast<double>(dim);
      probabilities[w * dim + b] = p;
      if (b == 0 || b + 1 == dim) accepted += p;
    }
    if (accepted < 1e-12) throw ContractError("word " + std::to_string(w) + " never yields an accepted outcome");
  }

  const int first_sign = convention == SignConvention::kFirstBasisPositive ? 1 : -1;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick_word(0, static_cast<std::uint32_t>(words - 1));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<ShotRecord> shots;
  shots.reserve(num_shots);
  for (std::size_t accepted = 0; accepted < num_shots;) {
    std::uint32_t w = pick_word(rng);
    while (true) {
      double u = unit(rng);
      std::size_t b = 0;
      for (double acc = probabilities[w * dim]; b + 1 < dim && u >= acc; acc += probabilities[w * dim + b]) ++b;
      ShotRecord shot{w, 0, static_cast<std::uint8_t>(b)};
      if (b == 0) {
        shot.outcome = static_cast<std::int8_t>(first_sign);
      } else if (b + 1 == dim) {
        shot.outcome = static_cast<std::int8_t>(-first_sign);
      }
      shots.push_back(shot);
      if (!shot.discarded()) {
        ++accepted;
        break;
      }
    }
  }
  return shots;
}

SubsetStatistics subset_statistics(std::span<const ShotRecord> shots, const TargetFunction &target,
                                   std::size_t subset_size) {
  if (subset_size == 0) throw ContractError("subset_size must be at least 1");
  SubsetStatistics stats;
  std::vector<const ShotRecord *> kept;
  kept.reserve(shots.size());
  for (const auto &shot : shots) {
    if (shot.word >= target.size()) throw ContractError("shot word index outside the target");
    if (shot.discarded()) {
      ++stats.discarded;
    } else {
      kept.push_back(&shot);
    }
  }
  stats.accepted = kept.size();
  const std::size_t subsets = kept.size() / subset_size;
  if (subsets == 0) {
    throw ContractError("only " + std::to_string(kept.size()) + " accepted shots, fewer than one subset of " +
                        std::to_string(subset_size));
  }
  stats.correlations.reserve(subsets);
  for (std::size_t s = 0; s < subsets; ++s) {
    std::int64_t sum = 0;
    for (std::size_t i = s * subset_size; i < (s + 1) * subset_size; ++i) {
      sum += kept[i]->outcome * target[kept[i]->word];
    }
    stats.correlations.push_back(static_cast<double>(sum) / static_cast<double>(subset_size));
  }
  double total = 0.0;
  for (double c : stats.correlations) total += c;
  stats.mean = total / static_cast<double>(subsets);
  if (subsets > 1) {
    double ss = 0.0;
    for (double c : stats.correlations) ss += (c - stats.mean) * (c - stats.mean);
    double sd = std::sqrt(ss / static_cast<double>(subsets - 1));
    stats.standard_error = sd / std::sqrt(static_cast<double>(subsets));
  }
  return stats;
}

}  // namespace seqproc
