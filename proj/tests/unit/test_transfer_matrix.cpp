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
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "sawstrip/oracle.hpp"
#include "sawstrip/transfer_matrix.hpp"

using namespace sawstrip;

namespace {

StripSpec strip(LatticeKind k, WeightingMode m, int width, int half_length, int degree) {
  StripSpec s;
  s.lattice = k;
  s.mode = m;
  s.width = width;
  s.half_length = half_length;
  s.trunc_degree = degree;
  return s;
}

bool same_bits(const ContactPolynomial& a, const ContactPolynomial& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].hi != b[k].hi || a[k].lo != b[k].lo) return false;
  }
  return true;
}

AnalysisReal max_rel_diff(const ContactPolynomial& a, const ContactPolynomial& b) {
  AnalysisReal worst = 0;
  for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
    const AnalysisReal x = to_analysis(a[k]);
    const AnalysisReal y = to_analysis(b[k]);
    const AnalysisReal scale = std::max(abs(x), abs(y));
    if (scale == 0) continue;
    worst = std::max(worst, AnalysisReal(abs(x - y) / scale));
  }
  return worst;
}

}  // namespace

TEST_CASE("honeycomb width zero counts") {
  const auto t =
      build_two_variable(strip(LatticeKind::Honeycomb, WeightingMode::AlternateSite, 0, 12, 5), 9);
  for (int n = 0; n <= 9; ++n) {
    for (int m = 0; m <= 9; ++m) {
      const std::uint64_t expect = (n % 2 == 1 && n >= 3 && m == (n - 1) / 2) ? 2 : 0;
      CHECK_MESSAGE(t.at(n, m) == expect, "n=" << n << " m=" << m);
    }
  }
}

TEST_CASE("honeycomb width zero series is 2 x^(2k+1) y^k") {
  const int M = 10;
  const auto r = build_A(strip(LatticeKind::Honeycomb, WeightingMode::AlternateSite, 0, 2 * M + 2, M));
  const AnalysisReal x = critical_x(LatticeKind::Honeycomb);
  CHECK(r.A[0].is_zero());
  AnalysisReal c = 2 * x;
  for (int k = 1; k <= M; ++k) {
    c *= x * x;
    const AnalysisReal got = to_analysis(r.A[static_cast<std::size_t>(k)]);
    CHECK(abs(got - c) <= AnalysisReal("1e-29") * c);
  }
}

TEST_CASE("degenerate builds are zero") {
  CHECK(build_two_variable(strip(LatticeKind::Square, WeightingMode::AllSite, 2, 5, 5), 0).all_zero());
  // honeycomb alpha half-edges sit two columns apart
  CHECK(build_A(strip(LatticeKind::Honeycomb, WeightingMode::AllSite, 2, 1, 8)).A.is_zero());
}

TEST_CASE("two-variable counts reproduce build_A on a finite strip") {
  // L = 2, T = 1 holds 10 sites, so the count table is complete
  for (auto k : {LatticeKind::Square, LatticeKind::Triangular}) {
    StripSpec s = strip(k, WeightingMode::AllSite, 1, 2, 10);
    s.x = DoubleDouble(0.3);
    const auto table = build_two_variable(s, 10);
    const ContactPolynomial from_counts = collapse_x(table, AnalysisReal(0.3), 10);
    CHECK(max_rel_diff(build_A(s).A, from_counts) < AnalysisReal("1e-29"));
  }
}

TEST_CASE("deterministic across thread counts") {
  const StripSpec s = strip(LatticeKind::Square, WeightingMode::Edge, 4, 20, 30);
  const auto a = build_A(s, EngineOptions{1});
  const auto b = build_A(s, EngineOptions{2});
  const auto c = build_A(s, EngineOptions{8});
  CHECK(same_bits(a.A, b.A));
  CHECK(same_bits(a.A, c.A));
}

TEST_CASE("resumed sweep matches an uninterrupted one") {
  const StripSpec s = strip(LatticeKind::Triangular, WeightingMode::AllSite, 2, 10, 12);
  const auto full = build_A(s);
  TransferMatrix tm(s);
  tm.run(tm.total_moves() / 2 + 3);
  std::stringstream buf;
  tm.save_checkpoint(buf);
  TransferMatrix resumed = TransferMatrix::load_checkpoint(buf);
  CHECK(resumed.position() == tm.position());
  resumed.run();
  CHECK(same_bits(resumed.result().A, full.A));

  std::stringstream junk("not a checkpoint at all");
  CHECK_THROWS_AS(TransferMatrix::load_checkpoint(junk), CheckpointError);
  std::stringstream cut(buf.str().substr(0, 40));
  CHECK_THROWS_AS(TransferMatrix::load_checkpoint(cut), CheckpointError);
}

TEST_CASE("honeycomb edge weighting is alternate-site weighting at y squared") {
  const int M = 40;
  for (int T : {0, 1, 2}) {
    const auto a = build_A(strip(LatticeKind::Honeycomb, WeightingMode::AlternateSite, T, 30, M / 2));
    const auto e = build_A(strip(LatticeKind::Honeycomb, WeightingMode::Edge, T, 30, M));
    CHECK(max_abs_diff(compose_square(a.A, M), e.A) < AnalysisReal("1e-25"));
  }
}

TEST_CASE("deep coefficients underflow to zero, not to noise") {
  // at size 1000 the alternate-site tail lies below the double exponent range
  const auto a = build_A(strip(LatticeKind::Honeycomb, WeightingMode::AlternateSite, 1, 1000, 1000));
  const auto e = build_A(strip(LatticeKind::Honeycomb, WeightingMode::Edge, 1, 1000, 1000));
  for (std::size_t k = 0; k < a.A.size(); ++k) {
    CHECK((a.A[k].hi == 0 || std::abs(a.A[k].hi) >= 1e-270));
  }
  const AnalysisReal y = 1 + sqrt(AnalysisReal(2));
  CHECK(abs(a.A.eval(y) - e.A.eval(sqrt(y))) < AnalysisReal("1e-20"));
}

TEST_CASE("signatures stay well formed") {
  EngineOptions o;
  o.check_signatures = true;
  for (auto k : {LatticeKind::Honeycomb, LatticeKind::Square, LatticeKind::Triangular}) {
    CHECK_NOTHROW(build_A(strip(k, WeightingMode::Edge, 3, 6, 6), o));
  }
  TransferMatrix tm(strip(LatticeKind::Square, WeightingMode::AllSite, 3, 6, 6), o);
  tm.run(20);
  const StateMap states = tm.states();
  for (std::size_t i = 0; i < states.size(); ++i) {
    CHECK(states.signature(i).well_formed(5));
    CHECK_FALSE(states.polynomial(i).is_zero());
  }
}

TEST_CASE("coefficients grow with the strip length and settle") {
  const auto small = build_A(strip(LatticeKind::Square, WeightingMode::AllSite, 2, 10, 10)).A;
  const auto mid = build_A(strip(LatticeKind::Square, WeightingMode::AllSite, 2, 20, 10)).A;
  const auto big = build_A(strip(LatticeKind::Square, WeightingMode::AllSite, 2, 40, 10)).A;
  for (std::size_t k = 0; k <= 10; ++k) {
    CHECK(!(mid[k] < small[k]));
    CHECK(!(big[k] < mid[k]));
  }
  const auto bigger = build_A(strip(LatticeKind::Square, WeightingMode::AllSite, 2, 80, 10)).A;
  CHECK(max_rel_diff(big, bigger) < max_rel_diff(small, mid));
}

TEST_CASE("state budget is enforced") {
  EngineOptions o;
  o.max_states = 5;
  CHECK_THROWS_AS(build_A(strip(LatticeKind::Square, WeightingMode::AllSite, 4, 10, 10), o),
                  BudgetError);
}

TEST_CASE("patch sweep matches the DFS split by boundary") {
  for (auto mode : {WeightingMode::AlternateSite, WeightingMode::Edge}) {
    StripSpec s = strip(LatticeKind::Honeycomb, mode, 1, 1, 20);
    auto tm = TransferMatrix::for_stream(patch_stream(1, 1, mode), s);
    tm.run();
    const SeriesResult r = tm.result();
    const PatchCounts dfs = enumerate_patch(1, 1, mode, 16);
    const AnalysisReal x = critical_x(LatticeKind::Honeycomb);
    CHECK(max_rel_diff(r.A, collapse_x(dfs.A, x, 20)) < AnalysisReal("1e-29"));
    REQUIRE(r.B.has_value());
    REQUIRE(r.E.has_value());
    CHECK(max_rel_diff(*r.B, collapse_x(dfs.B, x, 20)) < AnalysisReal("1e-29"));
    CHECK(max_rel_diff(*r.E, collapse_x(dfs.E, x, 20)) < AnalysisReal("1e-29"));
    CHECK_FALSE(r.B->is_zero());
    CHECK_FALSE(r.E->is_zero());
  }
}
