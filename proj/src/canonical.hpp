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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace seqproc::detail {

/// Calls visit(labels, used) for every restricted growth string of `length`
/// letters below `q` (first occurrences appear in increasing order); `used` is
/// one past the largest letter. Each string is one partition of the positions
/// into at most q unlabelled classes.
template <typename Visit>
void for_each_canonical(int length, int q, std::vector<std::int8_t> &labels, Visit &&visit) {
  labels.assign(static_cast<std::size_t>(length), 0);
  if (labels.empty()) {
    visit(labels, 0);
    return;
  }
  std::vector<int> prefix_max(static_cast<std::size_t>(length) + 1, -1);
  auto refresh = [&](int from) {
    for (int i = from; i < length; ++i) {
      auto k = static_cast<std::size_t>(i);
      prefix_max[k + 1] = std::max(prefix_max[k], static_cast<int>(labels[k]));
    }
  };
  refresh(0);
  while (true) {
    visit(labels, prefix_max[static_cast<std::size_t>(length)] + 1);
    int i = static_cast<int>(labels.size()) - 1;
    for (; i >= 0; --i) {
      auto k = static_cast<std::size_t>(i);
      if (labels[k] < std::min(q - 1, prefix_max[k] + 1)) {
        ++labels[k];
        break;
      }
      labels[k] = 0;
    }
    if (i < 0) return;
    refresh(i);
  }
}

}  // namespace seqproc::detail
