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

#include <algorithm>

#include "doctest.h"
#include "sawstrip/lattice.hpp"

using namespace sawstrip;

namespace {

StripSpec strip(LatticeKind k, WeightingMode m, int width, int half_length) {
  StripSpec s;
  s.lattice = k;
  s.mode = m;
  s.width = width;
  s.half_length = half_length;
  s.trunc_degree = 10;
  return s;
}

}  // namespace

TEST_CASE("critical fugacities") {
  const AnalysisReal hc = critical_x(LatticeKind::Honeycomb);
  CHECK(abs(hc - parse_real("0.54119610014619698439972320536639")) < AnalysisReal("1e-30"));
  CHECK(critical_x(LatticeKind::Square) == parse_real("0.37905227776"));
  CHECK(critical_x(LatticeKind::Triangular) == parse_real("0.2409175745"));
  // honeycomb mu^2 = 2 + sqrt 2
  CHECK(abs(mu_squared(LatticeKind::Honeycomb) - (2 + sqrt(AnalysisReal(2)))) <
        AnalysisReal("1e-60"));
}

TEST_CASE("reference conventions") {
  const auto sq = reference_convention(LatticeKind::Square);
  CHECK(sq.sweep_x == AnalysisReal(0.3790522813796997));
  CHECK(abs(sq.a_factor * sq.sweep_x - critical_x(LatticeKind::Square)) < AnalysisReal("1e-60"));
  const auto tr = reference_convention(LatticeKind::Triangular);
  CHECK(abs(tr.sweep_x * tr.a_factor - 1) < AnalysisReal("1e-60"));
  CHECK(abs(tr.sweep_x - critical_x(LatticeKind::Triangular)) < AnalysisReal("1e-10"));
  const auto hc = reference_convention(LatticeKind::Honeycomb);
  CHECK(hc.a_factor == 1);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(strip(LatticeKind::Square, WeightingMode::AlternateSite, 1, 5).validate(),
                  GeometryError);
  CHECK_THROWS_AS(strip(LatticeKind::Triangular, WeightingMode::AlternateSite, 1, 5).validate(),
                  GeometryError);
  CHECK_NOTHROW(strip(LatticeKind::Honeycomb, WeightingMode::AlternateSite, 0, 5).validate());
  CHECK_THROWS_AS(strip(LatticeKind::Square, WeightingMode::AllSite, 1, 0).validate(),
                  GeometryError);
  CHECK_THROWS_AS(strip(LatticeKind::Square, WeightingMode::AllSite, 40, 5).validate(),
                  GeometryError);
  CHECK_THROWS_AS(
      strip(LatticeKind::Triangular, WeightingMode::AllSite, max_width(LatticeKind::Triangular) + 1, 5)
          .validate(),
      GeometryError);
  StripSpec bad = strip(LatticeKind::Square, WeightingMode::AllSite, 1, 5);
  bad.trunc_degree = 0;
  CHECK_THROWS_AS(bad.validate(), GeometryError);
}

TEST_CASE("names parse and print") {
  for (auto k : {LatticeKind::Honeycomb, LatticeKind::Square, LatticeKind::Triangular}) {
    CHECK(parse_lattice(to_string(k)) == k);
  }
  for (auto m : {WeightingMode::AlternateSite, WeightingMode::AllSite, WeightingMode::Edge}) {
    CHECK(parse_mode(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_lattice("kagome"), GeometryError);
}

TEST_CASE("square T=1 columns have two sites, one weighted under all-site") {
  const auto s = column_stream(strip(LatticeKind::Square, WeightingMode::AllSite, 1, 4));
  CHECK(s.moves.size() == 9 * 2);
  for (std::size_t i = 0; i < s.moves.size(); i += 2) {
    CHECK(s.moves[i].column == s.moves[i + 1].column);
    CHECK_FALSE(s.moves[i].site_weighted);
    CHECK(s.moves[i + 1].site_weighted);
  }
}

TEST_CASE("honeycomb alternate-site flags every other surface site") {
  const int L = 6;
  const auto s = column_stream(strip(LatticeKind::Honeycomb, WeightingMode::AlternateSite, 2, L));
  std::vector<int> flagged;
  int surface = 0;
  for (const auto& m : s.moves) {
    if (m.depth != 2) {
      CHECK_FALSE(m.site_weighted);
      continue;
    }
    ++surface;
    if (m.site_weighted) flagged.push_back(m.column);
  }
  CHECK(surface == 2 * L + 1);
  CHECK(flagged.size() == static_cast<std::size_t>(L));
  for (std::size_t i = 1; i < flagged.size(); ++i) CHECK(flagged[i] - flagged[i - 1] == 2);
}

TEST_CASE("weighted element counts per column") {
  const int L = 5;
  for (auto k : {LatticeKind::Square, LatticeKind::Triangular}) {
    const auto site = column_stream(strip(k, WeightingMode::AllSite, 3, L));
    CHECK(std::count_if(site.moves.begin(), site.moves.end(),
                        [](const SiteMove& m) { return m.site_weighted; }) == 2 * L + 1);
    const auto edge = column_stream(strip(k, WeightingMode::Edge, 3, L));
    // one surface edge between consecutive columns
    CHECK(std::count_if(edge.moves.begin(), edge.moves.end(),
                        [](const SiteMove& m) { return m.out_weighted != 0; }) == 2 * L);
  }
  const auto hc = column_stream(strip(LatticeKind::Honeycomb, WeightingMode::Edge, 2, L));
  CHECK(std::count_if(hc.moves.begin(), hc.moves.end(),
                      [](const SiteMove& m) { return m.out_weighted != 0; }) == 2 * L);
}

TEST_CASE("triangular interior sites see six edges, square four, honeycomb three") {
  const auto tr = column_stream(strip(LatticeKind::Triangular, WeightingMode::AllSite, 2, 3));
  const auto sq = column_stream(strip(LatticeKind::Square, WeightingMode::AllSite, 2, 3));
  const auto hc = column_stream(strip(LatticeKind::Honeycomb, WeightingMode::AllSite, 2, 3));
  int tr_max = 0, sq_max = 0, hc_max = 0;
  for (const auto& m : tr.moves) tr_max = std::max(tr_max, m.incident_edges());
  for (const auto& m : sq.moves) sq_max = std::max(sq_max, m.incident_edges());
  for (const auto& m : hc.moves) hc_max = std::max(hc_max, m.incident_edges());
  CHECK(tr_max == 6);
  CHECK(sq_max == 4);
  CHECK(hc_max == 3);
  for (const auto& m : hc.moves) {
    if (m.depth == 1 && m.column > -3 && m.column < 3) CHECK(m.incident_edges() == 3);
  }
  for (const auto& m : tr.moves) {
    if (m.depth == 1 && m.column > -3 && m.column < 3) CHECK(m.incident_edges() == 6);
  }
}

TEST_CASE("column_stream is deterministic") {
  const StripSpec s = strip(LatticeKind::Triangular, WeightingMode::Edge, 3, 7);
  const auto a = column_stream(s, false);
  const auto b = column_stream(s, false);
  CHECK(a.moves == b.moves);
  CHECK(a.origin_index == b.origin_index);
  CHECK(a.moves[a.origin_index].origin);
  CHECK(a.moves[a.origin_index].column == 0);
  CHECK(a.moves[a.origin_index].depth == 0);
}

TEST_CASE("honeycomb alpha half-edges only on even columns") {
  const auto s = column_stream(strip(LatticeKind::Honeycomb, WeightingMode::AllSite, 1, 4));
  for (const auto& m : s.moves) {
    const bool alpha = m.half_edges[0] == Boundary::Alpha;
    CHECK(alpha == (m.depth == 0 && m.column % 2 == 0));
  }
}

TEST_CASE("patch geometry widens by one column per depth") {
  const auto s = patch_stream(2, 1, WeightingMode::AlternateSite);
  int alpha = 0, beta = 0, eps = 0, sites = 0;
  for (const auto& m : s.moves) {
    if (!m.exists) continue;
    ++sites;
    for (Boundary b : m.half_edges) {
      alpha += b == Boundary::Alpha;
      beta += b == Boundary::Beta;
      eps += b == Boundary::Epsilon;
    }
  }
  // J = 3: depth d holds 2(3+d)+1 sites
  CHECK(sites == 7 + 9 + 11);
  CHECK(alpha == 3);
  CHECK(beta == 6);
  CHECK(eps == 6);
}
