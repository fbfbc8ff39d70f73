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

#include "sawstrip.h"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "sawstrip/crossing.hpp"
#include "sawstrip/extrapolation.hpp"
#include "sawstrip/identity.hpp"
#include "sawstrip/oracle.hpp"
#include "sawstrip/transfer_matrix.hpp"

using namespace sawstrip;

struct sawstrip_series {
  SeriesResult r;
};

struct sawstrip_sweep {
  TransferMatrix tm;
};

struct sawstrip_crossings {
  std::vector<CrossingEstimate> rows;
};

struct sawstrip_extrapolation {
  std::vector<ExtrapolationTable> tables;
  ConsensusReport report;
};

struct sawstrip_patch {
  PatchSeries p;
};

namespace {

thread_local std::string g_last_error;

class ApiError : public std::runtime_error {
 public:
  ApiError(sawstrip_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  sawstrip_status status;
};

template <class F>
sawstrip_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return SAWSTRIP_OK;
  } catch (const ApiError& e) {
    g_last_error = e.what();
    return e.status;
  } catch (const BudgetError& e) {
    g_last_error = e.what();
    return SAWSTRIP_ERR_BUDGET;
  } catch (const CrossingError& e) {
    g_last_error = e.what();
    return SAWSTRIP_ERR_NO_CROSSING;
  } catch (const CheckpointError& e) {
    g_last_error = e.what();
    return SAWSTRIP_ERR_IO;
  } catch (const ExtrapolationError& e) {
    g_last_error = e.what();
    return SAWSTRIP_ERR_NUMERIC;
  } catch (const ZeroPartitionError& e) {
    g_last_error = e.what();
    return SAWSTRIP_ERR_NUMERIC;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return SAWSTRIP_ERR_INVALID_ARGUMENT;
  } catch (const std::out_of_range& e) {
    g_last_error = e.what();
    return SAWSTRIP_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SAWSTRIP_ERR_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SAWSTRIP_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SAWSTRIP_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw ApiError(SAWSTRIP_ERR_INVALID_ARGUMENT, what);
}

LatticeKind lattice_of(sawstrip_lattice l) {
  switch (l) {
    case SAWSTRIP_HONEYCOMB: return LatticeKind::Honeycomb;
    case SAWSTRIP_SQUARE: return LatticeKind::Square;
    case SAWSTRIP_TRIANGULAR: return LatticeKind::Triangular;
  }
  throw ApiError(SAWSTRIP_ERR_INVALID_ARGUMENT, "unknown lattice");
}

sawstrip_lattice lattice_to_c(LatticeKind l) {
  switch (l) {
    case LatticeKind::Honeycomb: return SAWSTRIP_HONEYCOMB;
    case LatticeKind::Square: return SAWSTRIP_SQUARE;
    case LatticeKind::Triangular: return SAWSTRIP_TRIANGULAR;
  }
  return SAWSTRIP_SQUARE;
}

WeightingMode mode_of(sawstrip_mode m) {
  switch (m) {
    case SAWSTRIP_ALL_SITE: return WeightingMode::AllSite;
    case SAWSTRIP_ALTERNATE_SITE: return WeightingMode::AlternateSite;
    case SAWSTRIP_EDGE: return WeightingMode::Edge;
  }
  throw ApiError(SAWSTRIP_ERR_INVALID_ARGUMENT, "unknown weighting mode");
}

sawstrip_mode mode_to_c(WeightingMode m) {
  switch (m) {
    case WeightingMode::AllSite: return SAWSTRIP_ALL_SITE;
    case WeightingMode::AlternateSite: return SAWSTRIP_ALTERNATE_SITE;
    case WeightingMode::Edge: return SAWSTRIP_EDGE;
  }
  return SAWSTRIP_ALL_SITE;
}

bool given(const char* s) { return s != nullptr && *s != '\0'; }

StripSpec spec_of(const sawstrip_strip* s) {
  require(s != nullptr, "null strip");
  StripSpec spec;
  spec.lattice = lattice_of(s->lattice);
  spec.mode = mode_of(s->mode);
  spec.width = s->width;
  spec.half_length = s->half_length;
  spec.trunc_degree = s->trunc_degree;
  if (given(s->x)) spec.x = to_working(parse_real(s->x));
  spec.validate();
  return spec;
}

EngineOptions options_of(const sawstrip_engine_options* o) {
  EngineOptions e;
  if (o != nullptr) {
    require(o->threads >= 0, "thread count must be nonnegative");
    e.threads = o->threads;
    e.with_beta = o->with_beta != 0;
    e.max_states = o->max_states;
  }
  return e;
}

std::string render(const AnalysisReal& v, int decimals) {
  return decimals < 0 ? format_full(v) : format_fixed(v, decimals);
}

void copy_out(const std::string& s, char* buf, std::size_t len) {
  if (buf == nullptr) return;
  require(len > s.size(), "output buffer too small");
  std::memcpy(buf, s.c_str(), s.size() + 1);
}

template <class T>
void check_out(T** out) {
  require(out != nullptr, "null output pointer");
  *out = nullptr;
}

const ContactPolynomial& part_of(const sawstrip_series* s, sawstrip_part part) {
  require(s != nullptr, "null series");
  switch (part) {
    case SAWSTRIP_PART_A: return s->r.A;
    case SAWSTRIP_PART_B:
      require(s->r.B.has_value(), "series has no B part");
      return *s->r.B;
    case SAWSTRIP_PART_E:
      require(s->r.E.has_value(), "series has no E part");
      return *s->r.E;
  }
  throw ApiError(SAWSTRIP_ERR_INVALID_ARGUMENT, "unknown series part");
}

AnalysisReal real_or(const char* s, const AnalysisReal& fallback) {
  return given(s) ? parse_real(s) : fallback;
}

}  // namespace

extern "C" {

const char* sawstrip_version(void) { return "1.0.0"; }

const char* sawstrip_last_error(void) { return g_last_error.c_str(); }

void sawstrip_strip_init(sawstrip_strip* strip) {
  if (strip == nullptr) return;
  const StripSpec d;
  strip->lattice = lattice_to_c(d.lattice);
  strip->mode = mode_to_c(d.mode);
  strip->width = d.width;
  strip->half_length = d.half_length;
  strip->trunc_degree = d.trunc_degree;
  strip->x = nullptr;
}

void sawstrip_engine_options_init(sawstrip_engine_options* options) {
  if (options == nullptr) return;
  options->threads = 0;
  options->with_beta = 0;
  options->max_states = 0;
}

int sawstrip_agreeing_digits(const char* a, const char* b) {
  if (a == nullptr || b == nullptr) return 0;
  return agreeing_digits(a, b);
}

sawstrip_status sawstrip_critical_x(sawstrip_lattice lattice, char* buf, size_t len) {
  return guarded([&] { copy_out(format_full(critical_x(lattice_of(lattice))), buf, len); });
}

sawstrip_status sawstrip_reference_convention(sawstrip_lattice lattice, int convergence_study, char* x_buf,
                                              size_t x_len, char* a_factor_buf, size_t a_factor_len) {
  return guarded([&] {
    const auto c = reference_convention(lattice_of(lattice),
                                        convergence_study ? ReferenceSet::ConvergenceStudy : ReferenceSet::Crossings);
    copy_out(format_full(c.sweep_x), x_buf, x_len);
    copy_out(format_full(c.a_factor), a_factor_buf, a_factor_len);
  });
}

sawstrip_status sawstrip_estimate_cost(const sawstrip_strip* strip, double* peak_states, double* bytes,
                                       double* seconds) {
  return guarded([&] {
    const CostEstimate c = estimate_cost(spec_of(strip));
    if (peak_states) *peak_states = c.peak_states;
    if (bytes) *bytes = c.bytes;
    if (seconds) *seconds = c.seconds;
  });
}

sawstrip_status sawstrip_build(const sawstrip_strip* strip, const sawstrip_engine_options* options,
                               sawstrip_series** out) {
  return guarded([&] {
    check_out(out);
    *out = new sawstrip_series{build_A(spec_of(strip), options_of(options))};
  });
}

void sawstrip_series_free(sawstrip_series* series) { delete series; }

int sawstrip_series_has(const sawstrip_series* series, sawstrip_part part) {
  if (series == nullptr) return 0;
  switch (part) {
    case SAWSTRIP_PART_A: return 1;
    case SAWSTRIP_PART_B: return series->r.B.has_value() ? 1 : 0;
    case SAWSTRIP_PART_E: return series->r.E.has_value() ? 1 : 0;
  }
  return 0;
}

sawstrip_status sawstrip_series_info(const sawstrip_series* series, sawstrip_strip* strip, size_t* peak_states,
                                     double* seconds) {
  return guarded([&] {
    require(series != nullptr, "null series");
    const StripSpec& s = series->r.spec;
    if (strip) {
      strip->lattice = lattice_to_c(s.lattice);
      strip->mode = mode_to_c(s.mode);
      strip->width = s.width;
      strip->half_length = s.half_length;
      strip->trunc_degree = s.trunc_degree;
      strip->x = nullptr;
    }
    if (peak_states) *peak_states = series->r.stats.peak_states;
    if (seconds) *seconds = series->r.stats.wall_seconds;
  });
}

sawstrip_status sawstrip_series_eval(const sawstrip_series* series, sawstrip_part part, const char* y, int decimals,
                                     char* buf, size_t len) {
  return guarded([&] {
    require(given(y), "missing y");
    copy_out(render(part_of(series, part).eval(parse_real(y)), decimals), buf, len);
  });
}

sawstrip_status sawstrip_series_coefficient(const sawstrip_series* series, sawstrip_part part, int k, char* buf,
                                            size_t len) {
  return guarded([&] {
    const ContactPolynomial& p = part_of(series, part);
    require(k >= 0 && k <= p.trunc_degree(), "coefficient index out of range");
    copy_out(format_full(p[static_cast<std::size_t>(k)]), buf, len);
  });
}

sawstrip_status sawstrip_series_write_csv(const sawstrip_series* series, sawstrip_part part, const char* path) {
  return guarded([&] {
    const ContactPolynomial& p = part_of(series, part);
    require(given(path), "missing path");
    std::ofstream f(path);
    if (!f) throw ApiError(SAWSTRIP_ERR_IO, std::string("cannot write ") + path);
    write_csv(f, p);
    if (!f) throw ApiError(SAWSTRIP_ERR_IO, std::string("write failed: ") + path);
  });
}

sawstrip_status sawstrip_series_read_csv(const char* path, const sawstrip_strip* strip, sawstrip_series** out) {
  return guarded([&] {
    check_out(out);
    require(given(path), "missing path");
    std::ifstream f(path);
    if (!f) throw ApiError(SAWSTRIP_ERR_IO, std::string("cannot read ") + path);
    SeriesResult r;
    r.spec = spec_of(strip);
    r.A = read_csv(f);
    r.spec.trunc_degree = r.A.trunc_degree();
    *out = new sawstrip_series{std::move(r)};
  });
}

sawstrip_status sawstrip_sweep_create(const sawstrip_strip* strip, const sawstrip_engine_options* options,
                                      sawstrip_sweep** out) {
  return guarded([&] {
    check_out(out);
    *out = new sawstrip_sweep{TransferMatrix(spec_of(strip), options_of(options))};
  });
}

sawstrip_status sawstrip_sweep_resume(const char* checkpoint, const sawstrip_engine_options* options,
                                      sawstrip_sweep** out) {
  return guarded([&] {
    check_out(out);
    require(given(checkpoint), "missing checkpoint path");
    std::ifstream f(checkpoint, std::ios::binary);
    if (!f) throw ApiError(SAWSTRIP_ERR_IO, std::string("cannot read ") + checkpoint);
    *out = new sawstrip_sweep{TransferMatrix::load_checkpoint(f, options_of(options))};
  });
}

sawstrip_status sawstrip_sweep_run(sawstrip_sweep* sweep, size_t max_moves, size_t* position, size_t* total) {
  return guarded([&] {
    require(sweep != nullptr, "null sweep");
    sweep->tm.run(max_moves);
    if (position) *position = sweep->tm.position();
    if (total) *total = sweep->tm.total_moves();
  });
}

sawstrip_status sawstrip_sweep_save(const sawstrip_sweep* sweep, const char* path) {
  return guarded([&] {
    require(sweep != nullptr, "null sweep");
    require(given(path), "missing path");
    const std::string tmp = std::string(path) + ".tmp";
    {
      std::ofstream f(tmp, std::ios::binary);
      if (!f) throw ApiError(SAWSTRIP_ERR_IO, "cannot write " + tmp);
      sweep->tm.save_checkpoint(f);
      if (!f) throw ApiError(SAWSTRIP_ERR_IO, "write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path) != 0) throw ApiError(SAWSTRIP_ERR_IO, std::string("cannot replace ") + path);
  });
}

sawstrip_status sawstrip_sweep_result(const sawstrip_sweep* sweep, sawstrip_series** out) {
  return guarded([&] {
    check_out(out);
    require(sweep != nullptr, "null sweep");
    require(sweep->tm.done(), "sweep has not finished");
    *out = new sawstrip_series{sweep->tm.result()};
  });
}

void sawstrip_sweep_free(sawstrip_sweep* sweep) { delete sweep; }

sawstrip_status sawstrip_cross(const sawstrip_series* const* series, size_t count,
                               const sawstrip_crossing_options* options, sawstrip_crossings** out) {
  return guarded([&] {
    check_out(out);
    require(series != nullptr && count >= 2, "crossings need at least two widths");
    std::vector<ContactPolynomial> polys;
    const StripSpec& first = series[0]->r.spec;
    for (size_t i = 0; i < count; ++i) {
      require(series[i] != nullptr, "null series");
      const StripSpec& s = series[i]->r.spec;
      require(s.lattice == first.lattice && s.mode == first.mode, "series mix lattices or modes");
      require(s.width == first.width + static_cast<int>(i), "series widths must be consecutive");
      polys.push_back(series[i]->r.A);
    }
    CrossingOptions o;
    AnalysisReal factor = 1;
    if (options) {
      if (given(options->lo) || given(options->hi)) {
        const Bracket d = default_bracket(first.lattice);
        o.bracket = Bracket{real_or(options->lo, d.lo), real_or(options->hi, d.hi)};
      }
      o.tol = real_or(options->tol, o.tol);
      factor = real_or(options->a_factor, factor);
    }
    auto rows = crossing_sequence(polys, first.width, first.lattice, o);
    for (auto& r : rows) r.A_at_cross *= factor;
    *out = new sawstrip_crossings{std::move(rows)};
  });
}

size_t sawstrip_crossings_count(const sawstrip_crossings* rows) { return rows ? rows->rows.size() : 0; }

sawstrip_status sawstrip_crossings_row(const sawstrip_crossings* rows, size_t i, int decimals, int* T, char* y_buf,
                                       size_t y_len, char* a_buf, size_t a_len) {
  return guarded([&] {
    require(rows != nullptr && i < rows->rows.size(), "crossing row out of range");
    const CrossingEstimate& e = rows->rows[i];
    if (T) *T = e.T;
    copy_out(render(e.y_cross, decimals), y_buf, y_len);
    copy_out(render(e.A_at_cross, decimals), a_buf, a_len);
  });
}

int sawstrip_crossings_monotone(const sawstrip_crossings* rows) {
  return rows ? monotone_direction(rows->rows) : 0;
}

void sawstrip_crossings_free(sawstrip_crossings* rows) { delete rows; }

sawstrip_status sawstrip_solve_level(const sawstrip_series* series, const char* level, const char* lo, const char* hi,
                                     int decimals, char* buf, size_t len) {
  return guarded([&] {
    require(series != nullptr && given(level), "missing series or level");
    const Bracket d = default_bracket(series->r.spec.lattice);
    const AnalysisReal y = solve_level(series->r.A, parse_real(level), {real_or(lo, d.lo), real_or(hi, d.hi)});
    copy_out(render(y, decimals), buf, len);
  });
}

sawstrip_status sawstrip_extrapolate(const char* const* values, size_t count, int first_index, const char* w,
                                     sawstrip_consensus rule, sawstrip_extrapolation** out) {
  return guarded([&] {
    check_out(out);
    require(values != nullptr, "null sequence");
    std::vector<AnalysisReal> seq;
    for (size_t i = 0; i < count; ++i) {
      require(given(values[i]), "empty sequence entry");
      seq.push_back(parse_real(values[i]));
    }
    ExtrapolationParams p;
    p.first_index = first_index;
    p.w = real_or(w, p.w);
    ConsensusRule r = ConsensusRule::PreferBulirschStoer;
    switch (rule) {
      case SAWSTRIP_CONSENSUS_BULIRSCH_STOER: break;
      case SAWSTRIP_CONSENSUS_INVERSE_SPREAD: r = ConsensusRule::InverseSpreadMean; break;
      case SAWSTRIP_CONSENSUS_MEDIAN: r = ConsensusRule::Median; break;
      default: throw ApiError(SAWSTRIP_ERR_INVALID_ARGUMENT, "unknown consensus rule");
    }
    auto ex = std::make_unique<sawstrip_extrapolation>();
    for (Algorithm a : kAllAlgorithms) {
      try {
        ex->tables.push_back(accelerate(seq, a, p));
      } catch (const ExtrapolationError&) {
        if (seq.size() < 3) throw;
      }
    }
    ex->report = estimate_limit(ex->tables, r);
    *out = ex.release();
  });
}

size_t sawstrip_extrapolation_count(const sawstrip_extrapolation* ex) { return ex ? ex->tables.size() : 0; }

sawstrip_status sawstrip_extrapolation_row(const sawstrip_extrapolation* ex, size_t i, int decimals,
                                           const char** algorithm, char* best, size_t best_len, char* spread,
                                           size_t spread_len) {
  return guarded([&] {
    require(ex != nullptr && i < ex->tables.size(), "extrapolation row out of range");
    const ExtrapolationTable& t = ex->tables[i];
    if (algorithm) *algorithm = algorithm_name(t.algorithm).data();
    copy_out(render(t.best, decimals), best, best_len);
    copy_out(render(t.spread, decimals), spread, spread_len);
  });
}

sawstrip_status sawstrip_extrapolation_summary(const sawstrip_extrapolation* ex, int decimals, char* consensus,
                                               char* median, char* mean, char* max_disagreement, size_t len) {
  return guarded([&] {
    require(ex != nullptr, "null extrapolation");
    const ConsensusReport& r = ex->report;
    copy_out(render(r.consensus, decimals), consensus, len);
    copy_out(render(r.median, decimals), median, len);
    copy_out(render(r.inverse_spread_mean, decimals), mean, len);
    copy_out(render(r.max_disagreement, decimals), max_disagreement, len);
  });
}

sawstrip_status sawstrip_extrapolation_write_csv(const sawstrip_extrapolation* ex, size_t i, const char* path) {
  return guarded([&] {
    require(ex != nullptr && i < ex->tables.size(), "extrapolation row out of range");
    require(given(path), "missing path");
    std::ofstream f(path);
    if (!f) throw ApiError(SAWSTRIP_ERR_IO, std::string("cannot write ") + path);
    write_csv(f, ex->tables[i]);
  });
}

void sawstrip_extrapolation_free(sawstrip_extrapolation* ex) { delete ex; }

sawstrip_status sawstrip_patch_build(int width, int half_length, const sawstrip_engine_options* options,
                                     sawstrip_patch** out) {
  return guarded([&] {
    check_out(out);
    *out = new sawstrip_patch{
        build_patch(width, half_length, honeycomb_constants().x_c, -1, options_of(options))};
  });
}

sawstrip_status sawstrip_patch_residual(const sawstrip_patch* patch, const char* y, int decimals, char* buf,
                                        size_t len) {
  return guarded([&] {
    require(patch != nullptr, "null patch");
    const AnalysisReal r = given(y) ? identity_residual(patch->p, parse_real(y)) : corollary_residual(patch->p);
    copy_out(render(r, decimals), buf, len);
  });
}

void sawstrip_patch_free(sawstrip_patch* patch) { delete patch; }

sawstrip_status sawstrip_edge_site_check(int width, int half_length, int trunc_degree,
                                         const sawstrip_engine_options* options, int decimals, char* a_dev,
                                         char* b_dev, size_t len) {
  return guarded([&] {
    const EdgeSiteReport r = check_edge_site_maps(width, half_length, trunc_degree, options_of(options));
    copy_out(render(r.a_deviation, decimals), a_dev, len);
    copy_out(render(r.b_deviation, decimals), b_dev, len);
  });
}

}  // extern "C"
