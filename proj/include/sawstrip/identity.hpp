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

// Honeycomb identity checks on finite patches and the edge/alternate-site
// maps between strip series.

#pragma once

#include <stdexcept>

#include "sawstrip/bigreal.hpp"
#include "sawstrip/poly.hpp"
#include "sawstrip/transfer_matrix.hpp"

namespace sawstrip {

class IdentityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct HoneycombConstants {
  AnalysisReal x_c;     // 1/sqrt(2 + sqrt 2)
  AnalysisReal y_star;  // 1 + sqrt 2
  AnalysisReal c_A;     // cos(3 pi/8)
  AnalysisReal c_E;     // cos(pi/4)

  /// (y* - y) / (y (y* - 1)); zero at y*.
  [[nodiscard]] AnalysisReal B_weight(const AnalysisReal& y) const;
};

const HoneycombConstants& honeycomb_constants();

/// Generating functions of walks on S(T,L) from a, split by where they end:
/// A on alpha (other than a), B on beta, E on eps or eps-bar. The beta
/// boundary is alternate-site weighted.
struct PatchSeries {
  int T = 0;
  int L = 0;
  AnalysisReal x;
  ContactPolynomial A;
  ContactPolynomial B;
  ContactPolynomial E;
};

/// Degree that holds every contact on S(T,L) exactly.
int patch_full_degree(int width, int half_length);

/// Transfer-matrix sweep of the patch. trunc_degree < 0 picks
/// patch_full_degree, which makes the series exact. Throws BudgetError past
/// options.max_states.
PatchSeries build_patch(int width, int half_length, const AnalysisReal& x,
                        int trunc_degree = -1, const EngineOptions& options = {});

/// Same series from the DFS oracle; only for tiny patches.
PatchSeries build_patch_dfs(int width, int half_length, const AnalysisReal& x);

/// |1 - c_A A(y) - c_E E(y) - B_weight(y) B(y)|. Throws IdentityError unless
/// the patch was built at x_c and y > 0.
AnalysisReal identity_residual(const PatchSeries& patch, const AnalysisReal& y);

/// |1 - c_A A(y*) - c_E E(y*)|.
AnalysisReal corollary_residual(const PatchSeries& patch);

struct EdgeSiteReport {
  int T = 0;
  AnalysisReal a_deviation;  // max |A_e - A_a(y^2)| over coefficients
  AnalysisReal b_deviation;  // max |B_e - B_a(y^2)/y|
};

/// Builds alternate-site and edge strips of width T at x_c and compares them
/// coefficient-wise through y -> y^2.
EdgeSiteReport check_edge_site_maps(int width, int half_length, int trunc_degree,
                                    const EngineOptions& options = {});

/// The map check on already-built series.
EdgeSiteReport compare_edge_site(int width, const SeriesResult& alternate, const SeriesResult& edge);

}  // namespace sawstrip
