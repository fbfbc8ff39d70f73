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

#pragma once

#include <cstdint>
#include <string>

#include "sawstrip/lattice.hpp"

namespace sawstrip {

/// State of one cut edge. LoopLower/LoopUpper are the two ends of an arc of
/// the partial walk that has both ends on the cut (lower = earlier in cut
/// order); FreeEnd is a strand whose other end is a walk endpoint.
enum class EdgeState : std::uint8_t { Empty = 0, LoopLower = 1, LoopUpper = 2, FreeEnd = 3 };

/// Packed boundary-line state: 2 bits per cut slot in bits 0..59, plus the
/// boundary class of the non-origin walk endpoint (if already placed) in
/// bits 62..63.
class Signature {
 public:
  using Bits = std::uint64_t;

  constexpr Signature() = default;
  constexpr explicit Signature(Bits bits) : bits_(bits) {}

  [[nodiscard]] constexpr Bits bits() const { return bits_; }

  [[nodiscard]] constexpr EdgeState slot(int i) const {
    return static_cast<EdgeState>((bits_ >> (2 * i)) & 3u);
  }
  constexpr void set_slot(int i, EdgeState s) {
    bits_ = (bits_ & ~(Bits{3} << (2 * i))) | (Bits{static_cast<std::uint8_t>(s)} << (2 * i));
  }

  [[nodiscard]] constexpr Boundary end_kind() const {
    return static_cast<Boundary>((bits_ >> 62) & 3u);
  }
  constexpr void set_end_kind(Boundary b) {
    bits_ = (bits_ & ~(Bits{3} << 62)) | (Bits{static_cast<std::uint8_t>(b)} << 62);
  }

  [[nodiscard]] constexpr Bits slot_bits() const { return bits_ & ((Bits{1} << 60) - 1); }
  [[nodiscard]] int free_ends() const;

  /// Index of the arc end matched with slot i (which must be a loop end).
  [[nodiscard]] int partner(int i) const;

  /// True if the loop ends form a balanced, non-crossing matching and there
  /// are at most two free ends.
  [[nodiscard]] bool well_formed(int n_slots) const;

  /// e.g. "(.3)|A": one character per slot, then the endpoint class.
  [[nodiscard]] std::string to_string(int n_slots) const;

  friend constexpr auto operator<=>(const Signature&, const Signature&) = default;

 private:
  Bits bits_ = 0;
};

}  // namespace sawstrip
