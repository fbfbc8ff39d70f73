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

#include "sawstrip/identity.hpp"

#include <algorithm>

#include <boost/math/constants/constants.hpp>

#include "sawstrip/oracle.hpp"

namespace sawstrip {

namespace {

StripSpec patch_spec(int width, int half_length, const AnalysisReal& x, int trunc_degree) {
  StripSpec s;
  s.lattice = LatticeKind::Honeycomb;
  s.mode = WeightingMode::AlternateSite;
  s.width = width;
  s.half_length = std::max(half_length, 1);
  s.trunc_degree = trunc_degree;
  s.x = to_working(x);
  return s;
}

void check_dims(int width, int half_length) {
  if (width < 0 || half_length < 0) throw IdentityError("patch dimensions must be nonnegative");
  if (width > max_width(LatticeKind::Honeycomb)) throw IdentityError("patch width exceeds the engine limit");
}

}  // namespace

AnalysisReal HoneycombConstants::B_weight(const AnalysisReal& y) const {
  return (y_star - y) / (y * (y_star - 1));
}

const HoneycombConstants& honeycomb_constants() {
  static const HoneycombConstants c = [] {
    const AnalysisReal pi = boost::math::constants::pi<AnalysisReal>();
    const AnalysisReal r2 = sqrt(AnalysisReal(2));
    return HoneycombConstants{1 / sqrt(2 + r2), 1 + r2, cos(3 * pi / 8), cos(pi / 4)};
  }();
  return c;
}

int patch_full_degree(int width, int half_length) {
  // every depth-T site, weighted or not
  return 2 * (2 * half_length + 1 + width) + 1;
}

PatchSeries build_patch(int width, int half_length, const AnalysisReal& x, int trunc_degree,
                        const EngineOptions& options) {
  check_dims(width, half_length);
  const int M = trunc_degree < 0 ? patch_full_degree(width, half_length) : trunc_degree;
  auto tm = TransferMatrix::for_stream(patch_stream(width, half_length, WeightingMode::AlternateSite),
                                       patch_spec(width, half_length, x, M), options);
  tm.run();
  SeriesResult r = tm.result();
  return {width, half_length, x, std::move(r.A), std::move(*r.B), std::move(*r.E)};
}

PatchSeries build_patch_dfs(int width, int half_length, const AnalysisReal& x) {
  check_dims(width, half_length);
  int sites = 0;
  for (int d = 0; d <= width; ++d) sites += 2 * (2 * half_length + 1 + d) + 1;
  if (sites > kOracleMaxSites) throw IdentityError("patch too large for exhaustive search");
  const PatchCounts c = enumerate_patch(width, half_length, WeightingMode::AlternateSite, sites);
  const int M = patch_full_degree(width, half_length);
  return {width, half_length, x, collapse_x(c.A, x, M), collapse_x(c.B, x, M), collapse_x(c.E, x, M)};
}

AnalysisReal identity_residual(const PatchSeries& patch, const AnalysisReal& y) {
  const auto& k = honeycomb_constants();
  if (abs(patch.x - k.x_c) > AnalysisReal("1e-30")) throw IdentityError("patch was not built at x_c");
  if (!(y > 0)) throw IdentityError("fugacity must be positive");
  return abs(1 - k.c_A * patch.A.eval(y) - k.c_E * patch.E.eval(y) - k.B_weight(y) * patch.B.eval(y));
}

AnalysisReal corollary_residual(const PatchSeries& patch) {
  const auto& k = honeycomb_constants();
  if (abs(patch.x - k.x_c) > AnalysisReal("1e-30")) throw IdentityError("patch was not built at x_c");
  return abs(1 - k.c_A * patch.A.eval(k.y_star) - k.c_E * patch.E.eval(k.y_star));
}

EdgeSiteReport compare_edge_site(int width, const SeriesResult& alternate, const SeriesResult& edge) {
  if (!alternate.B || !edge.B) throw IdentityError("edge/site map check needs beta series");
  EdgeSiteReport r;
  r.T = width;
  const int ma = alternate.A.trunc_degree();
  r.a_deviation = max_abs_diff(edge.A, compose_square(alternate.A, 2 * ma));
  r.b_deviation = max_abs_diff(*edge.B, scale_div_y(compose_square(*alternate.B, 2 * ma)));
  return r;
}

EdgeSiteReport check_edge_site_maps(int width, int half_length, int trunc_degree,
                                    const EngineOptions& options) {
  EngineOptions o = options;
  o.with_beta = true;
  StripSpec s;
  s.lattice = LatticeKind::Honeycomb;
  s.width = width;
  s.half_length = half_length;
  s.trunc_degree = trunc_degree;
  s.mode = WeightingMode::AlternateSite;
  const SeriesResult a = build_A(s, o);
  s.mode = WeightingMode::Edge;
  const SeriesResult e = build_A(s, o);
  return compare_edge_site(width, a, e);
}

}  // namespace sawstrip
