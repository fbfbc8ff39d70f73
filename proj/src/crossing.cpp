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

#include "sawstrip/crossing.hpp"

#include <ostream>

namespace sawstrip {

namespace {

template <class F>
AnalysisReal bisect(F&& f, AnalysisReal lo, AnalysisReal hi, const AnalysisReal& tol,
                    int& iterations) {
  AnalysisReal f_lo = f(lo);
  iterations = 0;
  while (hi - lo > tol && iterations < 400) {
    const AnalysisReal mid = (lo + hi) / 2;
    const AnalysisReal f_mid = f(mid);
    if (f_mid == 0) return mid;
    if ((f_mid < 0) == (f_lo < 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
    ++iterations;
  }
  return (lo + hi) / 2;
}

void check_bracket(const Bracket& b, const AnalysisReal& tol) {
  if (!(b.lo < b.hi)) throw CrossingError("empty bracket");
  if (!(tol > 0)) throw CrossingError("tolerance must be positive");
}

}  // namespace

Bracket default_bracket(LatticeKind lattice) { return {AnalysisReal(1), mu_squared(lattice)}; }

CrossingEstimate find_crossing(const ContactPolynomial& a_t, const ContactPolynomial& a_t1,
                               const Bracket& bracket, const CrossingOptions& options) {
  check_bracket(bracket, options.tol);
  if (options.scan_samples < 1) throw CrossingError("scan needs at least one interval");
  const auto d = [&](const AnalysisReal& y) { return a_t.eval(y) - a_t1.eval(y); };

  std::vector<Bracket> roots;
  const int n = options.scan_samples;
  AnalysisReal prev_y = bracket.lo;
  AnalysisReal prev_d = d(prev_y);
  for (int k = 1; k <= n; ++k) {
    const AnalysisReal y = k == n ? bracket.hi : bracket.lo + (bracket.hi - bracket.lo) * k / n;
    const AnalysisReal dy = d(y);
    if (prev_d == 0) {
      roots.push_back({prev_y, prev_y});
    } else if (dy != 0 && (dy < 0) != (prev_d < 0)) {
      roots.push_back({prev_y, y});
    }
    prev_y = y;
    prev_d = dy;
  }
  if (prev_d == 0) roots.push_back({prev_y, prev_y});
  if (roots.empty()) throw CrossingError("A_T - A_{T+1} does not change sign in the bracket");

  std::size_t pick = roots.size() - 1;
  if (options.hint) {
    AnalysisReal best = -1;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const AnalysisReal mid = (roots[i].lo + roots[i].hi) / 2;
      const AnalysisReal dist = abs(mid - *options.hint);
      if (best < 0 || dist < best) {
        best = dist;
        pick = i;
      }
    }
  }

  CrossingEstimate est;
  est.bracket_used = roots[pick];
  est.sign_changes = static_cast<int>(roots.size());
  est.y_cross = roots[pick].lo == roots[pick].hi
                    ? roots[pick].lo
                    : bisect(d, roots[pick].lo, roots[pick].hi, options.tol, est.iterations);
  est.A_at_cross = (a_t.eval(est.y_cross) + a_t1.eval(est.y_cross)) / 2;
  return est;
}

AnalysisReal solve_level(const ContactPolynomial& a_t, const AnalysisReal& level,
                         const Bracket& bracket, const AnalysisReal& tol) {
  check_bracket(bracket, tol);
  const auto f = [&](const AnalysisReal& y) { return a_t.eval(y) - level; };
  const AnalysisReal f_lo = f(bracket.lo);
  const AnalysisReal f_hi = f(bracket.hi);
  if (f_lo == 0) return bracket.lo;
  if (f_hi == 0) return bracket.hi;
  if ((f_lo < 0) == (f_hi < 0)) throw CrossingError("A_T - level does not change sign in the bracket");
  int iterations = 0;
  return bisect(f, bracket.lo, bracket.hi, tol, iterations);
}

std::vector<CrossingEstimate> crossing_sequence(const std::vector<ContactPolynomial>& series,
                                                int first_T, LatticeKind lattice,
                                                CrossingOptions options) {
  std::vector<CrossingEstimate> rows;
  const Bracket bracket = options.bracket.value_or(default_bracket(lattice));
  for (std::size_t i = 0; i + 1 < series.size(); ++i) {
    CrossingEstimate e = find_crossing(series[i], series[i + 1], bracket, options);
    e.T = first_T + static_cast<int>(i);
    options.hint = e.y_cross;
    rows.push_back(std::move(e));
  }
  return rows;
}

int monotone_direction(const std::vector<CrossingEstimate>& rows) {
  if (rows.size() < 2) return 0;
  bool up = true;
  bool down = true;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    up = up && rows[i - 1].y_cross < rows[i].y_cross;
    down = down && rows[i].y_cross < rows[i - 1].y_cross;
  }
  return up ? 1 : (down ? -1 : 0);
}

void write_csv(std::ostream& out, const std::vector<CrossingEstimate>& rows) {
  out << "T,y_c,A\n";
  for (const auto& r : rows) {
    out << r.T << ',' << format_fixed(r.y_cross, 15) << ',' << format_fixed(r.A_at_cross, 15)
        << '\n';
  }
}

}  // namespace sawstrip
