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

// Strip and patch geometry for the transfer-matrix sweep.
//
// Coordinates: a site is (depth, column). depth runs 0..T across the strip,
// depth 0 carries the origin boundary (the walk starts on the half-edge to
// the left of site (0, 0)), depth T is the weighted surface. column runs
// along the strip, -L..L for strips. The sweep visits columns bottom-up and
// depths left to right within a column.
//
// The honeycomb is a brick wall: every longitudinal edge (d,c)-(d,c+1) is
// present and the lateral edge (d,c)-(d+1,c) exists iff d + c is odd, so
// each site has degree 3. Sites with d + c odd own a lateral edge to the
// right ("right-type"); at depth T those are the solid-circle sites of the
// alternate-site model.
//
// The triangular lattice adds the diagonal (d,c)-(d+1,c+1) to the square
// lattice.
//
// Honeycomb patch S(T,L) (identity checks): depth d holds the columns
// |c| <= J + d with J = 2L + 1, so the top and bottom edges slant at the
// lattice angle:
//
//            eps       beta
//          ___/ ...  |
//     alpha|         |   (right-type sites at depth T are weighted)
//        a-|  ....   |
//          |___      |
//              \ ... |
//            eps-bar
//
// alpha half-edges sit on the left of even-column depth-0 sites, beta
// half-edges on the right of right-type depth-T sites, eps/eps-bar
// half-edges on the open longitudinal edge of each depth's end sites.

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sawstrip/bigreal.hpp"

namespace sawstrip {

enum class LatticeKind { Honeycomb, Square, Triangular };
enum class WeightingMode { AlternateSite, AllSite, Edge };

/// Where a walk may terminate through a dangling half-edge.
enum class Boundary : std::uint8_t { None = 0, Alpha = 1, Beta = 2, Epsilon = 3 };

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string_view to_string(LatticeKind k);
std::string_view to_string(WeightingMode m);
LatticeKind parse_lattice(std::string_view s);
WeightingMode parse_mode(std::string_view s);

/// Largest number of cut slots a signature can hold.
inline constexpr int kMaxSlots = 30;

struct StripSpec {
  LatticeKind lattice = LatticeKind::Square;
  WeightingMode mode = WeightingMode::AllSite;
  int width = 1;          // T
  int half_length = 250;  // L
  int trunc_degree = 250; // M
  DoubleDouble x;         // step fugacity; zero means critical_x(lattice)

  /// Throws GeometryError on an unsupported or out-of-range spec.
  void validate() const;
  [[nodiscard]] DoubleDouble step_fugacity() const;
};

/// Largest width the engine can hold for this lattice.
int max_width(LatticeKind lattice);

/// Critical step fugacity: exact for the honeycomb, quoted series estimates
/// (zero-padded) for square and triangular.
AnalysisReal critical_x(LatticeKind lattice);

/// Square of the connective constant, 1 / x_c^2; upper end of the crossing bracket.
AnalysisReal mu_squared(LatticeKind lattice);

/// The reference crossing data were produced with slightly different x
/// values than the quoted x_c, and with a per-lattice normalisation of A.
/// `sweep_x` reproduces their crossings, `a_factor` their A ordinates
/// (reported A = a_factor * A as computed here, x counted per visited site).
struct ReferenceConvention {
  AnalysisReal sweep_x;
  AnalysisReal a_factor;
};

enum class ReferenceSet {
  Crossings,         // y_c(T) and A tables for every lattice
  ConvergenceStudy,  // square-lattice M/L study of y_c(9)
};

ReferenceConvention reference_convention(LatticeKind lattice,
                                         ReferenceSet set = ReferenceSet::Crossings);

/// One site of the sweep. The site consumes the contiguous cut slots
/// [first_slot, first_slot + n_in) and writes n_out slots in their place,
/// both listed in cut order.
struct SiteMove {
  int depth = 0;
  int column = 0;
  std::uint8_t first_slot = 0;
  std::uint8_t n_in = 0;
  std::uint8_t n_out = 0;
  std::uint8_t in_edges = 0;      // input slots that are lattice edges
  std::uint8_t out_allowed = 0;   // bit p: output p is a lattice edge
  std::uint8_t out_weighted = 0;  // bit p: output p is a weighted surface edge
  bool exists = true;
  bool site_weighted = false;
  bool origin = false;            // the walk must start here through an alpha half-edge
  std::array<Boundary, 2> half_edges{Boundary::None, Boundary::None};

  [[nodiscard]] bool has_half_edge() const { return half_edges[0] != Boundary::None; }
  /// Number of lattice edges meeting the site (inputs plus outputs).
  [[nodiscard]] int incident_edges() const;

  friend bool operator==(const SiteMove&, const SiteMove&) = default;
};

struct SiteStream {
  std::vector<SiteMove> moves;
  int max_slots = 0;
  std::size_t origin_index = 0;
};

/// Sweep order for the strip: 2L+1 columns of T+1 sites with alpha
/// half-edges on depth 0. With `with_beta`, honeycomb right-type sites at
/// depth T also get beta half-edges.
SiteStream column_stream(const StripSpec& spec, bool with_beta = false);

/// Honeycomb patch S(T,L) with alpha, beta and eps half-edges, weighted
/// with `mode` at depth T.
SiteStream patch_stream(int width, int half_length, WeightingMode mode);

}  // namespace sawstrip
