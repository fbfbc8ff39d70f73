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

#include "sawstrip/extrapolation.hpp"

#include <algorithm>
#include <ostream>
#include <string>

namespace sawstrip {

namespace {

using Cell = std::optional<AnalysisReal>;

class Guard {
 public:
  explicit Guard(const AnalysisReal& threshold) : threshold_(threshold) {}

  // num / den, absent when den is within the threshold of zero.
  [[nodiscard]] Cell div(const AnalysisReal& num, const AnalysisReal& den) const {
    if (abs(den) < threshold_) return std::nullopt;
    return num / den;
  }

 private:
  AnalysisReal threshold_;
};

Column lift(const std::vector<AnalysisReal>& seq) { return Column(seq.begin(), seq.end()); }

std::vector<AnalysisReal> abscissae(std::size_t n, int first_index) {
  std::vector<AnalysisReal> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = AnalysisReal(first_index + static_cast<int>(i));
  return t;
}

std::vector<Column> bulirsch_stoer(const std::vector<AnalysisReal>& s, const ExtrapolationParams& p,
                                   const Guard& g) {
  const std::size_t N = s.size();
  const auto T = abscissae(N, p.first_index);
  std::vector<Column> cols{lift(s)};
  Column prev(N + 1, AnalysisReal(0));
  for (std::size_t m = 1; m < N; ++m) {
    const Column& cur = cols.back();
    Column next(N - m);
    for (std::size_t n = 0; n + m < N; ++n) {
      const Cell& a = cur[n + 1];
      const Cell& b = cur[n];
      const Cell& c = prev[n + 1];
      if (!a || !b || !c) continue;
      const AnalysisReal d = *a - *b;
      const Cell q = g.div(d, *a - *c);
      if (!q) continue;
      const AnalysisReal den = pow(T[n + m] / T[n], p.w) * (1 - *q) - 1;
      const Cell step = g.div(d, den);
      if (step) next[n] = *a + *step;
    }
    prev = cur;
    cols.push_back(std::move(next));
  }
  return cols;
}

std::vector<Column> neville(const std::vector<AnalysisReal>& s, const ExtrapolationParams& p) {
  const std::size_t N = s.size();
  const auto T = abscissae(N, p.first_index);
  std::vector<AnalysisReal> h(N);
  for (std::size_t i = 0; i < N; ++i) h[i] = pow(T[i], -p.w);
  std::vector<Column> cols{lift(s)};
  for (std::size_t m = 1; m < N; ++m) {
    const Column& cur = cols.back();
    Column next(N - m);
    for (std::size_t n = 0; n + m < N; ++n) {
      if (cur[n] && cur[n + 1]) {
        next[n] = (h[n] * *cur[n + 1] - h[n + m] * *cur[n]) / (h[n] - h[n + m]);
      }
    }
    cols.push_back(std::move(next));
  }
  return cols;
}

// Wynn's epsilon (numerator 1) and the Barber-Hamer variant (numerator
// k - 1 + theta, which is the rho algorithm on abscissae T). Odd columns are
// auxiliary and dropped.
std::vector<Column> epsilon_type(const std::vector<AnalysisReal>& s, bool algebraic,
                                 const ExtrapolationParams& p, const Guard& g) {
  const std::size_t N = s.size();
  std::vector<Column> all{lift(s)};
  Column prev(N + 1, AnalysisReal(0));
  for (std::size_t k = 1; k < N; ++k) {
    const Column& cur = all.back();
    const AnalysisReal num = algebraic ? AnalysisReal(static_cast<int>(k) - 1) + p.theta : AnalysisReal(1);
    Column next(N - k);
    for (std::size_t n = 0; n + k < N; ++n) {
      if (!cur[n] || !cur[n + 1] || !prev[n + 1]) continue;
      const Cell q = g.div(num, *cur[n + 1] - *cur[n]);
      if (q) next[n] = *prev[n + 1] + *q;
    }
    prev = cur;
    all.push_back(std::move(next));
  }
  std::vector<Column> even;
  for (std::size_t k = 0; k < all.size(); k += 2) even.push_back(std::move(all[k]));
  return even;
}

std::vector<Column> theta(const std::vector<AnalysisReal>& s, const Guard& g) {
  std::vector<Column> cols{lift(s)};
  Column odd_prev(s.size() + 1, AnalysisReal(0));
  while (cols.back().size() >= 3) {
    const Column& t0 = cols.back();
    Column t1(t0.size() - 1);
    for (std::size_t n = 0; n + 1 < t0.size(); ++n) {
      if (!t0[n] || !t0[n + 1] || !odd_prev[n + 1]) continue;
      const Cell q = g.div(AnalysisReal(1), *t0[n + 1] - *t0[n]);
      if (q) t1[n] = *odd_prev[n + 1] + *q;
    }
    Column t2(t1.size() - 2);
    for (std::size_t n = 0; n < t2.size(); ++n) {
      if (!t0[n + 1] || !t0[n + 2] || !t1[n] || !t1[n + 1] || !t1[n + 2]) continue;
      const Cell q = g.div((*t0[n + 2] - *t0[n + 1]) * (*t1[n + 2] - *t1[n + 1]),
                           *t1[n + 2] - 2 * *t1[n + 1] + *t1[n]);
      if (q) t2[n] = *t0[n + 1] + *q;
    }
    odd_prev = std::move(t1);
    cols.push_back(std::move(t2));
  }
  return cols;
}

AnalysisReal binomial(int k, int j) {
  AnalysisReal b = 1;
  for (int i = 1; i <= j; ++i) b = b * (k - j + i) / i;
  return b;
}

// Levin u with remainder estimates (n + beta) * (s_n - s_{n-1}), n >= 1.
std::vector<Column> levin_u(const std::vector<AnalysisReal>& s, const ExtrapolationParams& p,
                            const Guard& g) {
  const int N = static_cast<int>(s.size());
  std::vector<Column> cols{lift(s)};
  for (int k = 1; k < N - 1; ++k) {
    Column col(static_cast<std::size_t>(N - k - 1));
    for (int n = 1; n + k < N; ++n) {
      AnalysisReal num = 0;
      AnalysisReal den = 0;
      bool ok = true;
      for (int j = 0; j <= k && ok; ++j) {
        const auto i = static_cast<std::size_t>(n + j);
        const AnalysisReal omega = (n + j + p.levin_beta) * (s[i] - s[i - 1]);
        if (abs(s[i] - s[i - 1]) < p.threshold) {
          ok = false;
          break;
        }
        AnalysisReal c = binomial(k, j) * pow((n + j + p.levin_beta) / (n + k + p.levin_beta), k - 1);
        if (j % 2 == 1) c = -c;
        num += c * s[i] / omega;
        den += c / omega;
      }
      if (!ok) continue;
      col[static_cast<std::size_t>(n - 1)] = g.div(num, den);
    }
    cols.push_back(std::move(col));
  }
  return cols;
}

bool complete(const Column& c) {
  return !c.empty() && std::all_of(c.begin(), c.end(), [](const Cell& x) { return x.has_value(); });
}

}  // namespace

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::BulirschStoer: return "bulirsch-stoer";
    case Algorithm::WynnEpsilon: return "wynn-epsilon";
    case Algorithm::LevinU: return "levin-u";
    case Algorithm::BrezinskiTheta: return "brezinski-theta";
    case Algorithm::Neville: return "neville";
    case Algorithm::BarberHamer: return "barber-hamer";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a : kAllAlgorithms) {
    if (algorithm_name(a) == name) return a;
  }
  return std::nullopt;
}

ExtrapolationTable accelerate(const std::vector<AnalysisReal>& seq, Algorithm algorithm,
                              const ExtrapolationParams& params) {
  if (seq.size() < 3) throw ExtrapolationError("extrapolation needs at least 3 terms");
  ExtrapolationTable t;
  t.algorithm = algorithm;
  t.w = params.w;

  const bool constant = std::all_of(seq.begin(), seq.end(), [&](const AnalysisReal& v) {
    return abs(v - seq.front()) < params.threshold;
  });
  if (constant) {
    t.entries = {lift(seq)};
    t.best = seq.back();
    t.spread = 0;
    return t;
  }

  const Guard g(params.threshold);
  switch (algorithm) {
    case Algorithm::BulirschStoer: t.entries = bulirsch_stoer(seq, params, g); break;
    case Algorithm::WynnEpsilon: t.entries = epsilon_type(seq, false, params, g); break;
    case Algorithm::BarberHamer: t.entries = epsilon_type(seq, true, params, g); break;
    case Algorithm::LevinU: t.entries = levin_u(seq, params, g); break;
    case Algorithm::BrezinskiTheta: t.entries = theta(seq, g); break;
    case Algorithm::Neville: t.entries = neville(seq, params); break;
  }

  int top = 0;
  for (int k = static_cast<int>(t.entries.size()) - 1; k >= 1; --k) {
    if (complete(t.entries[static_cast<std::size_t>(k)])) {
      top = k;
      break;
    }
  }
  if (top == 0) {
    throw ExtrapolationError(std::string(algorithm_name(algorithm)) + ": every accelerated column has absent entries");
  }
  t.best_column = top;
  t.best = *t.entries[static_cast<std::size_t>(top)].back();

  AnalysisReal lo = t.best;
  AnalysisReal hi = t.best;
  for (int k = top - 1; k <= top; ++k) {
    for (const Cell& c : t.entries[static_cast<std::size_t>(k)]) {
      if (!c) continue;
      lo = std::min(lo, *c);
      hi = std::max(hi, *c);
    }
  }
  t.spread = hi - lo;
  return t;
}

ConsensusReport estimate_limit(const std::vector<ExtrapolationTable>& tables, ConsensusRule rule) {
  if (tables.size() < 2) throw ExtrapolationError("consensus needs at least 2 algorithms");
  ConsensusReport r;
  r.rule = rule;
  std::vector<AnalysisReal> bests;
  for (const auto& t : tables) {
    r.rows.push_back({t.algorithm, t.best, t.spread});
    bests.push_back(t.best);
  }
  std::sort(bests.begin(), bests.end());
  const std::size_t k = bests.size();
  r.median = k % 2 == 1 ? bests[k / 2] : (bests[k / 2 - 1] + bests[k / 2]) / 2;
  r.max_disagreement = bests.back() - bests.front();

  // Zero-spread rows, if any, take all the weight.
  const bool exact = std::any_of(r.rows.begin(), r.rows.end(),
                                 [](const AlgorithmSummary& a) { return a.spread == 0; });
  AnalysisReal num = 0;
  AnalysisReal den = 0;
  for (const auto& a : r.rows) {
    if (exact && a.spread != 0) continue;
    const AnalysisReal wt = exact ? AnalysisReal(1) : 1 / (a.spread * a.spread);
    num += wt * a.best;
    den += wt;
  }
  r.inverse_spread_mean = num / den;

  switch (rule) {
    case ConsensusRule::PreferBulirschStoer: {
      r.consensus = r.inverse_spread_mean;
      for (const auto& a : r.rows) {
        if (a.algorithm == Algorithm::BulirschStoer) r.consensus = a.best;
      }
      break;
    }
    case ConsensusRule::InverseSpreadMean: r.consensus = r.inverse_spread_mean; break;
    case ConsensusRule::Median: r.consensus = r.median; break;
  }
  return r;
}

ConsensusReport estimate_limit(const std::vector<AnalysisReal>& seq, const ExtrapolationParams& params,
                               ConsensusRule rule) {
  std::vector<ExtrapolationTable> tables;
  for (Algorithm a : kAllAlgorithms) {
    try {
      tables.push_back(accelerate(seq, a, params));
    } catch (const ExtrapolationError&) {
      if (seq.size() < 3) throw;
    }
  }
  return estimate_limit(tables, rule);
}

void write_csv(std::ostream& out, const ExtrapolationTable& table) {
  out << "column,index,value\n";
  for (std::size_t k = 0; k < table.entries.size(); ++k) {
    for (std::size_t i = 0; i < table.entries[k].size(); ++i) {
      out << k << ',' << i << ',';
      if (table.entries[k][i]) out << table.entries[k][i]->str(40, std::ios_base::scientific);
      out << '\n';
    }
  }
}

}  // namespace sawstrip
