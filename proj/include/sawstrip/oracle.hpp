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

// Brute-force walk enumeration, independent of the transfer-matrix code
// path: the lattice is rebuilt here as an explicit graph and walked by DFS.

#pragma once

#include <stdexcept>

#include "sawstrip/bigreal.hpp"
#include "sawstrip/count_table.hpp"
#include "sawstrip/lattice.hpp"
#include "sawstrip/poly.hpp"

namespace sawstrip {

/// Largest n_max the DFS accepts.
inline constexpr int kOracleMaxSites = 32;

class ZeroPartitionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Counts c[n][m] of strip walks from the origin half-edge back to another
/// origin-boundary half-edge, n visited sites, m contacts under spec.mode.
CountTable enumerate_walks(const StripSpec& spec, int n_max);

struct PatchCounts {
  CountTable A;  // ending on alpha (other than the origin)
  CountTable B;  // ending on beta
  CountTable E;  // ending on eps or eps-bar
};

/// Same enumeration on the honeycomb patch S(T,L), split by terminal boundary.
PatchCounts enumerate_patch(int width, int half_length, WeightingMode mode, int n_max);

/// sum_n c[n][m] x^n as the y^m coefficient, truncated at `trunc_degree`.
ContactPolynomial collapse_x(const CountTable& table, const AnalysisReal& x, int trunc_degree);

/// Z_n(y) = sum_m c[n][m] y^m.
AnalysisReal partition_function(const CountTable& table, const AnalysisReal& y, int n);

/// rho_n(y) = (1/n) sum_m m c[n][m] y^m / Z_n(y). Throws ZeroPartitionError if Z_n = 0.
AnalysisReal mean_contact_density(const CountTable& table, const AnalysisReal& y, int n);

}  // namespace sawstrip
