// Copyright 2026 The sawstrip Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sawstrip/signature.hpp"

#include <stdexcept>

namespace sawstrip {

int Signature::free_ends() const {
  int n = 0;
  for (int i = 0; i < kMaxSlots; ++i) n += slot(i) == EdgeState::FreeEnd;
  return n;
}

int Signature::partner(int i) const {
  const EdgeState s = slot(i);
  if (s == EdgeState::LoopLower) {
    int depth = 0;
    for (int j = i + 1; j < kMaxSlots; ++j) {
      const EdgeState t = slot(j);
      if (t == EdgeState::LoopLower) {
        ++depth;
      } else if (t == EdgeState::LoopUpper) {
        if (depth == 0) return j;
        --depth;
      }
    }
  } else if (s == EdgeState::LoopUpper) {
    int depth = 0;
    for (int j = i - 1; j >= 0; --j) {
      const EdgeState t = slot(j);
      if (t == EdgeState::LoopUpper) {
        ++depth;
      } else if (t == EdgeState::LoopLower) {
        if (depth == 0) return j;
        --depth;
      }
    }
  }
  throw std::logic_error("signature has no partner for slot " + std::to_string(i));
}

bool Signature::well_formed(int n_slots) const {
  if ((slot_bits() >> (2 * n_slots)) != 0) return false;
  int depth = 0;
  int free = 0;
  for (int i = 0; i < n_slots; ++i) {
    switch (slot(i)) {
      case EdgeState::LoopLower: ++depth; break;
      case EdgeState::LoopUpper:
        if (--depth < 0) return false;
        break;
      case EdgeState::FreeEnd: ++free; break;
      case EdgeState::Empty: break;
    }
  }
  return depth == 0 && free <= 2;
}

std::string Signature::to_string(int n_slots) const {
  std::string s;
  for (int i = 0; i < n_slots; ++i) s += ".()3"[static_cast<int>(slot(i))];
  s += '|';
  s += "-ABE"[static_cast<int>(end_kind())];
  return s;
}

}  // namespace sawstrip
