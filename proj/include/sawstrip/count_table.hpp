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
#include <iosfwd>
#include <vector>

namespace sawstrip {

/// c[n][m]: number of walks with n visited sites and m surface contacts.
class CountTable {
 public:
  CountTable() = default;
  explicit CountTable(int n_max)
      : n_max_(n_max), cells_(static_cast<std::size_t>((n_max + 1) * (n_max + 1)), 0) {}

  [[nodiscard]] int n_max() const { return n_max_; }
  [[nodiscard]] std::uint64_t at(int n, int m) const {
    return cells_[static_cast<std::size_t>(n * (n_max_ + 1) + m)];
  }
  std::uint64_t& at(int n, int m) { return cells_[static_cast<std::size_t>(n * (n_max_ + 1) + m)]; }

  [[nodiscard]] bool all_zero() const {
    for (auto c : cells_) {
      if (c != 0) return false;
    }
    return true;
  }

  friend bool operator==(const CountTable&, const CountTable&) = default;

 private:
  int n_max_ = 0;
  std::vector<std::uint64_t> cells_;
};

/// CSV "n,m,count" listing nonzero cells.
void write_csv(std::ostream& out, const CountTable& table);

}  // namespace sawstrip
