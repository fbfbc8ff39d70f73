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

#include "sawstrip/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>

namespace sawstrip {

std::string_view to_string(LatticeKind k) {
  switch (k) {
    case LatticeKind::Honeycomb: return "honeycomb";
    case LatticeKind::Square: return "square";
    case LatticeKind::Triangular: return "triangular";
  }
  return "?";
}

std::string_view to_string(WeightingMode m) {
  switch (m) {
    case WeightingMode::AlternateSite: return "alternate-site";
    case WeightingMode::AllSite: return "all-site";
    case WeightingMode::Edge: return "edge";
  }
  return "?";
}

LatticeKind parse_lattice(std::string_view s) {
  if (s == "honeycomb" || s == "hc") return LatticeKind::Honeycomb;
  if (s == "square" || s == "sq") return LatticeKind::Square;
  if (s == "triangular" || s == "tr") return LatticeKind::Triangular;
  throw GeometryError("unknown lattice '" + std::string(s) + "'");
}

WeightingMode parse_mode(std::string_view s) {
  if (s == "alternate-site" || s == "alternate") return WeightingMode::AlternateSite;
  if (s == "all-site" || s == "site") return WeightingMode::AllSite;
  if (s == "edge") return WeightingMode::Edge;
  throw GeometryError("unknown weighting mode '" + std::string(s) + "'");
}

int max_width(LatticeKind lattice) {
  // square/honeycomb cut: T + 2 slots; triangular: 2T + 3 slots.
  return lattice == LatticeKind::Triangular ? (kMaxSlots - 3) / 2 : kMaxSlots - 2;
}

void StripSpec::validate() const {
  if (mode == WeightingMode::AlternateSite && lattice != LatticeKind::Honeycomb) {
    throw GeometryError("alternate-site weighting exists only on the honeycomb lattice");
  }
  if (width < 0) throw GeometryError("width must be nonnegative");
  if (width > max_width(lattice)) {
    throw GeometryError("width " + std::to_string(width) + " exceeds the engine limit " +
                        std::to_string(max_width(lattice)) + " for the " +
                        std::string(to_string(lattice)) + " lattice");
  }
  if (half_length < 1) throw GeometryError("half-length must be at least 1");
  if (trunc_degree < 1) throw GeometryError("truncation degree must be at least 1");
  if (!x.is_finite() || x.hi < 0.0) throw GeometryError("step fugacity must be finite and >= 0");
}

DoubleDouble StripSpec::step_fugacity() const {
  return x.is_zero() ? to_working(critical_x(lattice)) : x;
}

AnalysisReal critical_x(LatticeKind lattice) {
  switch (lattice) {
    case LatticeKind::Honeycomb: return 1 / sqrt(2 + sqrt(AnalysisReal(2)));
    case LatticeKind::Square: return parse_real("0.37905227776");
    case LatticeKind::Triangular: return parse_real("0.2409175745");
  }
  return 0;
}

AnalysisReal mu_squared(LatticeKind lattice) {
  const AnalysisReal x = critical_x(lattice);
  return 1 / (x * x);
}

ReferenceConvention reference_convention(LatticeKind lattice, ReferenceSet set) {
  switch (lattice) {
    case LatticeKind::Honeycomb: return {critical_x(lattice), AnalysisReal(1)};
    case LatticeKind::Square: {
      if (set == ReferenceSet::ConvergenceStudy) {
        return {1 / parse_real("2.63815853034"), AnalysisReal(1)};
      }
      // single-precision copy of the quoted x_c; the extra half-step factor
      // was applied with the quoted value
      const AnalysisReal x(static_cast<double>(static_cast<float>(0.37905227776)));
      return {x, critical_x(lattice) / x};
    }
    case LatticeKind::Triangular: {
      const AnalysisReal x = 1 / parse_real("4.150797226");
      return {x, 1 / x};
    }
  }
  return {critical_x(lattice), AnalysisReal(1)};
}

int SiteMove::incident_edges() const {
  return in_edges + std::popcount(static_cast<unsigned>(out_allowed));
}

namespace {

bool right_type(int depth, int column) { return ((depth + column) & 1) != 0; }

bool has_lateral(LatticeKind lattice, int depth, int column) {
  return lattice != LatticeKind::Honeycomb || right_type(depth, column);
}

struct Builder {
  LatticeKind lattice;
  WeightingMode mode;
  int width;

  [[nodiscard]] int sites() const { return width + 1; }

  [[nodiscard]] bool weighted_site(int depth, int column) const {
    if (depth != width) return false;
    if (mode == WeightingMode::AllSite) return true;
    if (mode == WeightingMode::AlternateSite) return right_type(depth, column);
    return false;
  }

  // Slot layout between columns: square/honeycomb hold one longitudinal
  // edge per depth (W slots); triangular interleaves the diagonals
  // (2W - 1 slots). Inside a column the lateral edge adds one more slot,
  // the triangular diagonal just emitted adds another.
  // `left_open`: the site at (depth, column - 1) exists; `below` likewise for
  // (depth - 1, column) and `diag_below` for (depth - 1, column - 1).
  SiteMove make(int depth, int column, bool exists, bool top_open, bool left_open, bool below,
                bool diag_below) const {
    SiteMove m;
    m.depth = depth;
    m.column = column;
    m.exists = exists;
    const int last = width;
    const bool tri = lattice == LatticeKind::Triangular;
    if (!tri) {
      m.first_slot = static_cast<std::uint8_t>(depth);
      m.n_in = depth == 0 ? 1 : 2;
      m.n_out = depth == last ? 1 : 2;
      // outputs: [longitudinal up, lateral right]
      std::uint8_t allowed = 0;
      if (top_open) allowed |= 1u;
      if (depth != last && has_lateral(lattice, depth, column)) allowed |= 2u;
      m.out_allowed = exists ? allowed : 0;
    } else {
      m.first_slot = static_cast<std::uint8_t>(depth == 0 ? 0 : 2 * depth);
      m.n_in = depth == 0 ? 1 : 3;
      m.n_out = depth == last ? 1 : 3;
      // outputs: [longitudinal up, diagonal up-right, lateral right]
      std::uint8_t allowed = 0;
      if (top_open) allowed |= 1u;
      if (depth != last) {
        if (top_open) allowed |= 2u;
        allowed |= 4u;
      }
      m.out_allowed = exists ? allowed : 0;
    }
    if (exists) {
      int in = left_open ? 1 : 0;
      if (below && has_lateral(lattice, depth - 1, column)) ++in;
      if (tri && diag_below) ++in;
      m.in_edges = static_cast<std::uint8_t>(in);
      m.site_weighted = weighted_site(depth, column);
      if (mode == WeightingMode::Edge && depth == last && (m.out_allowed & 1u)) {
        m.out_weighted = 1u;
      }
    }
    return m;
  }
};

int slots_for(LatticeKind lattice, int width) {
  const int w = width + 1;
  return lattice == LatticeKind::Triangular ? 2 * w + 1 : w + 1;
}

}  // namespace

SiteStream column_stream(const StripSpec& spec, bool with_beta) {
  spec.validate();
  const Builder b{spec.lattice, spec.mode, spec.width};
  SiteStream s;
  s.max_slots = slots_for(spec.lattice, spec.width);
  const int L = spec.half_length;
  s.moves.reserve(static_cast<std::size_t>(2 * L + 1) * static_cast<std::size_t>(b.sites()));
  for (int c = -L; c <= L; ++c) {
    for (int d = 0; d <= spec.width; ++d) {
      SiteMove m = b.make(d, c, true, c < L, c > -L, d > 0, d > 0 && c > -L);
      int h = 0;
      if (d == 0 && (spec.lattice != LatticeKind::Honeycomb || !right_type(0, c))) {
        m.half_edges[h++] = Boundary::Alpha;
      }
      if (with_beta && spec.lattice == LatticeKind::Honeycomb && d == spec.width &&
          right_type(d, c)) {
        m.half_edges[h++] = Boundary::Beta;
      }
      if (d == 0 && c == 0) {
        m.origin = true;
        s.origin_index = s.moves.size();
      }
      s.moves.push_back(m);
    }
  }
  return s;
}

SiteStream patch_stream(int width, int half_length, WeightingMode mode) {
  if (width < 0 || width > max_width(LatticeKind::Honeycomb)) {
    throw GeometryError("patch width out of range");
  }
  if (half_length < 0) throw GeometryError("patch half-length must be nonnegative");
  const Builder b{LatticeKind::Honeycomb, mode, width};
  const int J = 2 * half_length + 1;
  SiteStream s;
  s.max_slots = slots_for(LatticeKind::Honeycomb, width);
  for (int c = -J - width; c <= J + width; ++c) {
    for (int d = 0; d <= width; ++d) {
      const int reach = J + d;
      const bool exists = std::abs(c) <= reach;
      const auto inside = [J](int dd, int cc) { return dd >= 0 && std::abs(cc) <= J + dd; };
      SiteMove m = b.make(d, c, exists, exists && c < reach, inside(d, c - 1), inside(d - 1, c),
                          inside(d - 1, c - 1));
      if (!exists) {
        m.site_weighted = false;
        m.out_weighted = 0;
      } else {
        int h = 0;
        if (d == 0 && !right_type(0, c)) m.half_edges[h++] = Boundary::Alpha;
        if (d == width && right_type(d, c)) m.half_edges[h++] = Boundary::Beta;
        if (std::abs(c) == reach) m.half_edges[h++] = Boundary::Epsilon;
      }
      if (d == 0 && c == 0) {
        m.origin = true;
        s.origin_index = s.moves.size();
      }
      s.moves.push_back(m);
    }
  }
  return s;
}

}  // namespace sawstrip
