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

#include <cstdint>
#include <vector>

#include "seqproc/classical.hpp"
#include "seqproc/core.hpp"

namespace fixtures {

// Reference target matrices, row-major. Rows are indexed by the leading
// input bits: 4x16 for the one-bit processor, 16x16 for the four-module trit one.
inline const std::vector<std::int8_t> kQubit3Matrix = {
    -1,  1,  0,  0,  1, -1,  0,  0,  0,  0,  1, -1,  0,  0, -1,  1,
     1, -1,  0,  0, -1,  1,  0,  0,  0,  0, -1,  1,  0,  0,  1, -1,
     0,  0,  1, -1,  0,  0, -1,  1,  1, -1,  0,  0, -1,  1,  0,  0,
     0,  0, -1,  1,  0,  0,  1, -1, -1,  1,  0,  0,  1, -1,  0,  0,
};

inline const std::vector<std::int8_t> kQutrit4Matrix = {
     0,  0, -1,  1,  0,  0,  1, -1, -1,  1,  0,  0,  1, -1,  0,  0,
     0,  0,  1, -1,  0,  0, -1,  1,  1, -1,  0,  0, -1,  1,  0,  0,
    -1,  1,  0,  0,  1, -1,  0,  0,  0,  0,  1, -1,  0,  0, -1,  1,
     1, -1,  0,  0, -1,  1,  0,  0,  0,  0, -1,  1,  0,  0,  1, -1,
     1, -1,  0,  0, -1,  1,  0,  0,  0,  0, -1,  1,  0,  0,  1, -1,
    -1,  1,  0,  0,  1, -1,  0,  0,  0,  0,  1, -1,  0,  0, -1,  1,
     0,  0, -1,  1,  0,  0,  1, -1, -1,  1,  0,  0,  1, -1,  0,  0,
     0,  0,  1, -1,  0,  0, -1,  1,  1, -1,  0,  0, -1,  1,  0,  0,
     0,  0,  1, -1,  0,  0, -1,  1,  1, -1,  0,  0, -1,  1,  0,  0,
     0,  0, -1,  1,  0,  0,  1, -1, -1,  1,  0,  0,  1, -1,  0,  0,
     1, -1,  0,  0, -1,  1,  0,  0,  0,  0, -1,  1,  0,  0,  1, -1,
    -1,  1,  0,  0,  1, -1,  0,  0,  0,  0,  1, -1,  0,  0, -1,  1,
    -1,  1,  0,  0,  1, -1,  0,  0,  0,  0,  1, -1,  0,  0, -1,  1,
     1, -1,  0,  0, -1,  1,  0,  0,  0,  0, -1,  1,  0,  0,  1, -1,
     0,  0,  1, -1,  0,  0, -1,  1,  1, -1,  0,  0, -1,  1,  0,  0,
     0,  0, -1,  1,  0,  0,  1, -1, -1,  1,  0,  0,  1, -1,  0,  0,
};

/// First 4x16 block of the four-module matrix.
inline std::vector<std::int8_t> qutrit4_first_block() {
  return std::vector<std::int8_t>(kQutrit4Matrix.begin(), kQutrit4Matrix.begin() + 64);
}

inline seqproc::ProcessorTopology qubit3_topology() { return seqproc::ProcessorTopology(3, {2, 2, 2}, 2); }
inline seqproc::ProcessorTopology qutrit3_topology() { return seqproc::ProcessorTopology(3, {2, 2, 2}, 3); }
inline seqproc::ProcessorTopology qutrit4_topology() { return seqproc::ProcessorTopology(4, {2, 2, 2, 2}, 3); }

inline seqproc::TargetFunction qubit3_target() { return seqproc::TargetFunction(qubit3_topology(), kQubit3Matrix); }
inline seqproc::TargetFunction qutrit3_block_target() {
  return seqproc::TargetFunction(qutrit3_topology(), qutrit4_first_block());
}
inline seqproc::TargetFunction qutrit4_target() { return seqproc::TargetFunction(qutrit4_topology(), kQutrit4Matrix); }

}  // namespace fixtures
