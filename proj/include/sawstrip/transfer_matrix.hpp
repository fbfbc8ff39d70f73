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

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sawstrip/count_table.hpp"
#include "sawstrip/lattice.hpp"
#include "sawstrip/poly.hpp"
#include "sawstrip/signature.hpp"

namespace sawstrip {

/// Raised when a build would exceed the configured state budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EngineOptions {
  int threads = 0;                   // 0: hardware concurrency
  bool with_beta = false;            // also collect walks ending on beta (honeycomb)
  bool check_signatures = false;     // validate every signature after each site
  std::size_t max_states = 0;        // 0: unlimited
};

int resolve_threads(int requested);

struct EngineStats {
  std::size_t peak_states = 0;
  double wall_seconds = 0.0;
};

/// Generating functions at fixed x, truncated at y-degree M. A collects
/// walks from the origin back to the origin boundary; B (honeycomb only)
/// those ending on beta; E those ending on the patch's slanted edges.
struct SeriesResult {
  StripSpec spec;
  ContactPolynomial A;
  std::optional<ContactPolynomial> B;
  std::optional<ContactPolynomial> E;
  EngineStats stats;
};

/// Sorted signature -> polynomial map of the current sweep position.
class StateMap {
 public:
  StateMap(std::vector<Signature::Bits> sigs, std::vector<DoubleDouble> data, int trunc_degree);

  [[nodiscard]] std::size_t size() const { return sigs_.size(); }
  [[nodiscard]] Signature signature(std::size_t i) const { return Signature(sigs_[i]); }
  [[nodiscard]] ContactPolynomial polynomial(std::size_t i) const;
  [[nodiscard]] std::optional<ContactPolynomial> find(Signature s) const;

 private:
  std::vector<Signature::Bits> sigs_;
  std::vector<DoubleDouble> data_;
  int trunc_degree_;
};

/// Transfer-matrix sweep over a strip (or honeycomb patch) accumulating
/// contact polynomials at fixed step fugacity. Exclusive-use while running.
class TransferMatrix {
 public:
  explicit TransferMatrix(const StripSpec& spec, EngineOptions options = {});
  TransferMatrix(TransferMatrix&&) noexcept;
  TransferMatrix& operator=(TransferMatrix&&) noexcept;
  ~TransferMatrix();

  /// Patch sweep (identity checks) on an arbitrary site stream.
  static TransferMatrix for_stream(SiteStream stream, const StripSpec& spec,
                                   EngineOptions options = {});

  [[nodiscard]] bool done() const;
  [[nodiscard]] std::size_t position() const;
  [[nodiscard]] std::size_t total_moves() const;
  [[nodiscard]] const StripSpec& spec() const;

  /// Advances the boundary line across one site.
  void sweep_site();
  /// Sweeps up to `max_moves` sites (all remaining by default).
  void run(std::size_t max_moves = static_cast<std::size_t>(-1));

  [[nodiscard]] StateMap states() const;
  [[nodiscard]] SeriesResult result() const;

  /// Little-endian binary checkpoint: magic, version, spec, position,
  /// signatures, coefficients and partial results.
  void save_checkpoint(std::ostream& out) const;
  static TransferMatrix load_checkpoint(std::istream& in, EngineOptions options = {});

 private:
  struct Impl;
  explicit TransferMatrix(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

/// Rough single-thread cost of build_A, extrapolated from measured peak
/// state counts (about 2.7^T honeycomb/square, 5.3^T triangular).
struct CostEstimate {
  double peak_states = 0;
  double bytes = 0;
  double seconds = 0;
};

CostEstimate estimate_cost(const StripSpec& spec);

/// A_T(x, y) for the strip described by `spec`.
SeriesResult build_A(const StripSpec& spec, const EngineOptions& options = {});

/// Exact counts c[n][m] of strip walks with n visited sites and m contacts
/// (the x-exponent counts sites, i.e. mid-edge to mid-edge steps).
CountTable build_two_variable(const StripSpec& spec, int n_max, const EngineOptions& options = {});

}  // namespace sawstrip
