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

// Sequence acceleration for the finite-width crossing estimates.

#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "sawstrip/bigreal.hpp"

namespace sawstrip {

class ExtrapolationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Algorithm { BulirschStoer, WynnEpsilon, LevinU, BrezinskiTheta, Neville, BarberHamer };

inline constexpr Algorithm kAllAlgorithms[] = {
    Algorithm::BulirschStoer, Algorithm::WynnEpsilon, Algorithm::LevinU,
    Algorithm::BrezinskiTheta, Algorithm::Neville, Algorithm::BarberHamer};

std::string_view algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct ExtrapolationParams {
  AnalysisReal w{1};            // Bulirsch-Stoer and Neville abscissae T^-w
  int first_index = 1;          // T of seq[0]
  AnalysisReal levin_beta{1};
  AnalysisReal theta{1};        // Barber-Hamer step offset
  AnalysisReal threshold{"1e-40"};
};

using Column = std::vector<std::optional<AnalysisReal>>;

/// entries[0] is the input; entries[k] the k-th order estimates, one shorter
/// (or more) than entries[k-1]. Absent cells hit a near-zero denominator or
/// depend on one that did. Epsilon-type tables keep only the even columns.
struct ExtrapolationTable {
  Algorithm algorithm = Algorithm::BulirschStoer;
  std::vector<Column> entries;
  AnalysisReal w{1};
  AnalysisReal best;
  AnalysisReal spread;
  int best_column = 0;
};

/// Fills the algorithm's table. best is the last entry of the highest column
/// with no absent cells; spread is max - min over that column and the one
/// below it. Throws ExtrapolationError for fewer than 3 terms or when no
/// accelerated column survives.
ExtrapolationTable accelerate(const std::vector<AnalysisReal>& seq, Algorithm algorithm,
                              const ExtrapolationParams& params = {});

enum class ConsensusRule {
  PreferBulirschStoer,  // its best when valid, else the inverse-spread mean
  InverseSpreadMean,
  Median,
};

struct AlgorithmSummary {
  Algorithm algorithm;
  AnalysisReal best;
  AnalysisReal spread;
};

struct ConsensusReport {
  std::vector<AlgorithmSummary> rows;
  ConsensusRule rule = ConsensusRule::PreferBulirschStoer;
  AnalysisReal consensus;
  AnalysisReal inverse_spread_mean;
  AnalysisReal median;
  AnalysisReal max_disagreement;  // max - min of the bests
};

ConsensusReport estimate_limit(const std::vector<ExtrapolationTable>& tables,
                               ConsensusRule rule = ConsensusRule::PreferBulirschStoer);

/// Runs every algorithm that succeeds on `seq` and reports the consensus.
ConsensusReport estimate_limit(const std::vector<AnalysisReal>& seq,
                               const ExtrapolationParams& params = {},
                               ConsensusRule rule = ConsensusRule::PreferBulirschStoer);

/// "column,index,value" with absent cells left empty.
void write_csv(std::ostream& out, const ExtrapolationTable& table);

}  // namespace sawstrip
