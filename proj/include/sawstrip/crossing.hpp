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

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sawstrip/bigreal.hpp"
#include "sawstrip/lattice.hpp"
#include "sawstrip/poly.hpp"

namespace sawstrip {

class CrossingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Bracket {
  AnalysisReal lo;
  AnalysisReal hi;
};

/// (1, mu^2): the range any adsorption fugacity can occupy.
Bracket default_bracket(LatticeKind lattice);

struct CrossingOptions {
  std::optional<Bracket> bracket;     // default_bracket of the lattice when unset
  AnalysisReal tol{"1e-20"};
  int scan_samples = 64;
  std::optional<AnalysisReal> hint;   // prefer the root nearest this value
};

struct CrossingEstimate {
  int T = 0;
  AnalysisReal y_cross;
  AnalysisReal A_at_cross;
  Bracket bracket_used;
  int iterations = 0;
  int sign_changes = 0;  // seen on the initial scan
};

/// Intersection of A_T and A_{T+1} inside `bracket`. The scan isolates sign
/// changes of A_T - A_{T+1}; with several, the one nearest `hint` wins, or
/// the largest without a hint. Bisection then runs to |hi - lo| <= tol.
CrossingEstimate find_crossing(const ContactPolynomial& a_t, const ContactPolynomial& a_t1,
                               const Bracket& bracket, const CrossingOptions& options = {});

/// Root of A_T(y) = level inside `bracket`.
AnalysisReal solve_level(const ContactPolynomial& a_t, const AnalysisReal& level,
                         const Bracket& bracket, const AnalysisReal& tol = AnalysisReal("1e-20"));

/// Crossings of consecutive widths: series[i] is A_{first_T + i}. Each
/// crossing after the first is steered towards its predecessor.
std::vector<CrossingEstimate> crossing_sequence(const std::vector<ContactPolynomial>& series,
                                                int first_T, LatticeKind lattice,
                                                CrossingOptions options = {});

/// +1 if y_cross strictly increases with T, -1 if it strictly decreases, 0 otherwise.
int monotone_direction(const std::vector<CrossingEstimate>& rows);

/// "T,y_c,A" rows with 15 decimals.
void write_csv(std::ostream& out, const std::vector<CrossingEstimate>& rows);

}  // namespace sawstrip
