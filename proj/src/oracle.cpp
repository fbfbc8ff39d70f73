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

#include "sawstrip/oracle.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

namespace sawstrip {

namespace {

struct Neighbor {
  int site;
  bool weighted;  // surface edge under Edge weighting
};

struct Graph {
  std::vector<std::vector<Neighbor>> adj;
  std::vector<std::vector<Boundary>> ends;  // dangling half-edges of each site
  std::vector<bool> weighted;               // surface site under site weighting
  int origin = -1;
};

bool odd(int v) { return (v & 1) != 0; }

// Sites are (depth, column) with depth 0..T and column in columns(depth).
class GraphBuilder {
 public:
  GraphBuilder(LatticeKind lattice, WeightingMode mode, int width)
      : lattice_(lattice), mode_(mode), width_(width) {}

  template <class Range>
  Graph build(Range&& columns) {
    for (int d = 0; d <= width_; ++d) {
      const auto [lo, hi] = columns(d);
      for (int c = lo; c <= hi; ++c) ids_.emplace(key(d, c), static_cast<int>(ids_.size()));
    }
    Graph g;
    g.adj.resize(ids_.size());
    g.ends.resize(ids_.size());
    g.weighted.resize(ids_.size());
    for (const auto& [k, id] : ids_) {
      const int d = static_cast<int>(k >> 32);
      const int c = static_cast<int>(static_cast<std::int32_t>(k & 0xffffffffu));
      g.weighted[static_cast<std::size_t>(id)] = site_weighted(d, c);
      for (auto [dd, dc] : steps(d, c)) {
        const auto it = ids_.find(key(d + dd, c + dc));
        if (it == ids_.end()) continue;
        const bool surface = mode_ == WeightingMode::Edge && d == width_ && dd == 0;
        g.adj[static_cast<std::size_t>(id)].push_back({it->second, surface});
      }
    }
    g.origin = ids_.at(key(0, 0));
    return g;
  }

  [[nodiscard]] int id(int d, int c) const {
    const auto it = ids_.find(key(d, c));
    return it == ids_.end() ? -1 : it->second;
  }

 private:
  static std::uint64_t key(int d, int c) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(d)) << 32) |
           static_cast<std::uint32_t>(c);
  }

  [[nodiscard]] bool site_weighted(int d, int c) const {
    if (d != width_) return false;
    switch (mode_) {
      case WeightingMode::AllSite: return true;
      case WeightingMode::AlternateSite: return odd(d + c);
      case WeightingMode::Edge: return false;
    }
    return false;
  }

  [[nodiscard]] std::vector<std::pair<int, int>> steps(int d, int c) const {
    std::vector<std::pair<int, int>> s{{0, 1}, {0, -1}};
    switch (lattice_) {
      case LatticeKind::Honeycomb:
        s.emplace_back(odd(d + c) ? 1 : -1, 0);
        break;
      case LatticeKind::Square:
        s.insert(s.end(), {{1, 0}, {-1, 0}});
        break;
      case LatticeKind::Triangular:
        s.insert(s.end(), {{1, 0}, {-1, 0}, {1, 1}, {-1, -1}});
        break;
    }
    return s;
  }

  LatticeKind lattice_;
  WeightingMode mode_;
  int width_;
  std::unordered_map<std::uint64_t, int> ids_;
};

class Walker {
 public:
  Walker(const Graph& g, int n_max) : g_(g), n_max_(n_max), visited_(g.adj.size(), 0) {
    for (auto& t : tables_) t = CountTable(n_max);
  }

  void run() {
    if (n_max_ < 1) return;
    const int o = g_.origin;
    visited_[static_cast<std::size_t>(o)] = 1;
    dfs(o, 1, g_.weighted[static_cast<std::size_t>(o)] ? 1 : 0);
  }

  [[nodiscard]] const CountTable& table(Boundary b) const {
    return tables_[static_cast<std::size_t>(b)];
  }

 private:
  void dfs(int site, int n, int m) {
    const auto s = static_cast<std::size_t>(site);
    if (site != g_.origin) {
      for (Boundary b : g_.ends[s]) ++tables_[static_cast<std::size_t>(b)].at(n, m);
    }
    if (n == n_max_) return;
    for (const Neighbor& nb : g_.adj[s]) {
      const auto t = static_cast<std::size_t>(nb.site);
      if (visited_[t]) continue;
      visited_[t] = 1;
      dfs(nb.site, n + 1, m + (nb.weighted ? 1 : 0) + (g_.weighted[t] ? 1 : 0));
      visited_[t] = 0;
    }
  }

  const Graph& g_;
  int n_max_;
  std::vector<char> visited_;
  std::array<CountTable, 4> tables_;
};

void check_n_max(int n_max) {
  if (n_max < 0 || n_max > kOracleMaxSites) {
    throw std::invalid_argument("oracle n_max must lie in [0, " +
                                std::to_string(kOracleMaxSites) + "]");
  }
}

}  // namespace

CountTable enumerate_walks(const StripSpec& spec, int n_max) {
  spec.validate();
  check_n_max(n_max);
  const int L = spec.half_length;
  GraphBuilder b(spec.lattice, spec.mode, spec.width);
  Graph g = b.build([L](int) { return std::pair{-L, L}; });
  for (int c = -L; c <= L; ++c) {
    if (spec.lattice == LatticeKind::Honeycomb && odd(c)) continue;
    g.ends[static_cast<std::size_t>(b.id(0, c))].push_back(Boundary::Alpha);
  }
  Walker w(g, n_max);
  w.run();
  return w.table(Boundary::Alpha);
}

PatchCounts enumerate_patch(int width, int half_length, WeightingMode mode, int n_max) {
  if (width < 0 || half_length < 0) throw GeometryError("patch dimensions must be nonnegative");
  if (mode == WeightingMode::AllSite) throw GeometryError("patches use alternate-site or edge weighting");
  check_n_max(n_max);
  const int J = 2 * half_length + 1;
  GraphBuilder b(LatticeKind::Honeycomb, mode, width);
  Graph g = b.build([J](int d) { return std::pair{-J - d, J + d}; });
  for (int d = 0; d <= width; ++d) {
    for (int c = -J - d; c <= J + d; ++c) {
      auto& e = g.ends[static_cast<std::size_t>(b.id(d, c))];
      if (d == 0 && !odd(c)) e.push_back(Boundary::Alpha);
      if (d == width && odd(d + c)) e.push_back(Boundary::Beta);
      if (std::abs(c) == J + d) e.push_back(Boundary::Epsilon);
    }
  }
  Walker w(g, n_max);
  w.run();
  return {w.table(Boundary::Alpha), w.table(Boundary::Beta), w.table(Boundary::Epsilon)};
}

ContactPolynomial collapse_x(const CountTable& table, const AnalysisReal& x, int trunc_degree) {
  ContactPolynomial p(trunc_degree);
  for (int m = 0; m <= std::min(trunc_degree, table.n_max()); ++m) {
    AnalysisReal s = 0;
    for (int n = table.n_max(); n >= 0; --n) s = s * x + AnalysisReal(table.at(n, m));
    p[static_cast<std::size_t>(m)] = to_working(s);
  }
  return p;
}

AnalysisReal partition_function(const CountTable& table, const AnalysisReal& y, int n) {
  if (n < 0 || n > table.n_max()) throw std::out_of_range("n outside the count table");
  AnalysisReal z = 0;
  for (int m = table.n_max(); m >= 0; --m) z = z * y + AnalysisReal(table.at(n, m));
  return z;
}

AnalysisReal mean_contact_density(const CountTable& table, const AnalysisReal& y, int n) {
  const AnalysisReal z = partition_function(table, y, n);
  if (z == 0 || n == 0) throw ZeroPartitionError("Z_n vanishes; contact density undefined");
  AnalysisReal s = 0;
  for (int m = table.n_max(); m >= 1; --m) s = s * y + AnalysisReal(table.at(n, m)) * m;
  s *= y;
  return s / (z * n);
}

void write_csv(std::ostream& out, const CountTable& table) {
  out << "n,m,count\n";
  for (int n = 0; n <= table.n_max(); ++n) {
    for (int m = 0; m <= table.n_max(); ++m) {
      if (table.at(n, m) != 0) out << n << ',' << m << ',' << table.at(n, m) << '\n';
    }
  }
}

}  // namespace sawstrip
