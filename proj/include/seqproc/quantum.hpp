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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "seqproc/core.hpp"

namespace seqproc {

/// 2x2 transform of the two optical modes.
using ModeUnitary = Eigen::Matrix2cd;
/// Transform induced on the two-photon basis (|20>, |11>, |02>).
using TwoPhotonUnitary = Eigen::Matrix3cd;

/// Amplitudes over (|0>, |1>) for a qubit or (|20>, |11>, |02>) for a qutrit.
struct PureState {
  Eigen::VectorXcd amplitudes;

  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes.size()); }
  double probability(std::size_t basis) const { return std::norm(amplitudes(static_cast<Eigen::Index>(basis))); }
};

enum class GateFamily {
  kStandard,  ///< identity, X, (1 i; i 1)/sqrt2, (1 -i; -i 1)/sqrt2
  kAltFirst,  ///< first-module gates of the four-module two-photon chip
};

/// Gate selected by the local bit pair (b0, b1); b0 is the earlier input bit.
ModeUnitary gate_for(int b0, int b1, GateFamily family);

bool is_unitary(const Eigen::MatrixXcd &m, double tolerance);

/// Throws ContractError if `u` is not unitary within 1e-10.
TwoPhotonUnitary lift_two_photon(const ModeUnitary &u);

enum class ProcessorKind { kQubit3, kQutrit3, kQutrit4 };

const char *to_string(ProcessorKind kind);
ProcessorKind parse_processor_kind(const std::string &name);

struct ModuleGates {
  GateFamily family = GateFamily::kStandard;
  /// routing[pair] is the gate slot applied for local input `pair` (b0 b1 read as a 2-bit number).
  std::array<int, 4> routing{0, 1, 2, 3};
};

struct QuantumProcessorSpec {
  ProcessorKind kind;
  ProcessorTopology topology;
  std::vector<ModuleGates> modules;
  PureState initial;

  bool two_photon() const { return initial.dimension() == 3; }
};

QuantumProcessorSpec make_processor(ProcessorKind kind);

PureState run_circuit(const QuantumProcessorSpec &spec, std::span<const std::uint8_t> word);
PureState run_circuit(const QuantumProcessorSpec &spec, std::uint32_t word_index);

/// +1 for a deterministic first basis state, -1 for a deterministic last basis
/// state, 0 otherwise (including a deterministic |11>).
int classify_deterministic(const PureState &state, double epsilon = 1e-6);

/// How measured basis states map to target signs. The tabulated reference
/// targets assign -1 to the first basis state.
enum class SignConvention { kFirstBasisPositive, kFirstBasisNegative };

const char *to_string(SignConvention convention);
SignConvention parse_sign_convention(const std::string &name);

TargetFunction generate_target(const QuantumProcessorSpec &spec,
                               SignConvention convention = SignConvention::kFirstBasisNegative);

struct ShotRecord {
  std::uint32_t word = 0;
  /// Signed outcome, or 0 for a discarded (|11>) detection.
  std::int8_t outcome = 0;
  /// Measured basis index: 0/1 for qubits, 0=|20>, 1=|11>, 2=|02> for qutrits.
  std::uint8_t basis = 0;

  bool discarded() const { return outcome == 0; }
};

/// Draws `num_shots` accepted detections. Each shot picks a uniform word and
/// measures in the computational basis; |11> detections are logged as
/// discarded and the same word is measured again. `visibility` mixes Born
/// probabilities with the uniform distribution: p' = v p + (1 - v) / dim.
std::vector<ShotRecord> sample_shots(const QuantumProcessorSpec &spec, std::size_t num_shots, std::uint64_t seed,
                                     std::optional<double> visibility = std::nullopt,
                                     SignConvention convention = SignConvention::kFirstBasisNegative);

struct SubsetStatistics {
  std::vector<double> correlations;
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t accepted = 0;
  std::size_t discarded = 0;

  double discard_rate() const {
    auto total = accepted + discarded;
    return total == 0 ? 0.0 : static_cast<double>(discarded) / static_cast<double>(total);
  }
};

/// Splits accepted shots, in order, into floor(n / subset_size) subsets and
/// reports C = (1/n_s) sum O(x) T(x) for each, their mean and the standard
/// error of the mean.
SubsetStatistics subset_statistics(std::span<const ShotRecord> shots, const TargetFunction &target,
                                   std::size_t subset_size);

}  // namespace seqproc
