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

// sawstrip command-line front end. Talks to the core only through sawstrip.h.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sawstrip.h"

#ifndef SAWSTRIP_DATA_DIR
#define SAWSTRIP_DATA_DIR "data/tables"
#endif

namespace {

using nlohmann::ordered_json;

constexpr const char* kSchema = "sawstrip/1";

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kResource = 3, kIo = 4 };

struct CliError : std::runtime_error {
  CliError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

void check(sawstrip_status s) {
  if (s == SAWSTRIP_OK) return;
  int code = kFailed;
  switch (s) {
    case SAWSTRIP_ERR_INVALID_ARGUMENT: code = kUsage; break;
    case SAWSTRIP_ERR_BUDGET:
    case SAWSTRIP_ERR_OUT_OF_MEMORY: code = kResource; break;
    case SAWSTRIP_ERR_IO: code = kIo; break;
    default: break;
  }
  throw CliError(code, sawstrip_last_error());
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Series = std::unique_ptr<sawstrip_series, Deleter<sawstrip_series, sawstrip_series_free>>;
using Sweep = std::unique_ptr<sawstrip_sweep, Deleter<sawstrip_sweep, sawstrip_sweep_free>>;
using Crossings = std::unique_ptr<sawstrip_crossings, Deleter<sawstrip_crossings, sawstrip_crossings_free>>;
using Extrapolation =
    std::unique_ptr<sawstrip_extrapolation, Deleter<sawstrip_extrapolation, sawstrip_extrapolation_free>>;
using Patch = std::unique_ptr<sawstrip_patch, Deleter<sawstrip_patch, sawstrip_patch_free>>;

constexpr std::size_t kBuf = 160;

const std::map<std::string, sawstrip_lattice> kLattices{
    {"honeycomb", SAWSTRIP_HONEYCOMB}, {"square", SAWSTRIP_SQUARE}, {"triangular", SAWSTRIP_TRIANGULAR}};
const std::map<std::string, sawstrip_mode> kModes{
    {"site", SAWSTRIP_ALL_SITE}, {"alternate", SAWSTRIP_ALTERNATE_SITE}, {"edge", SAWSTRIP_EDGE}};

struct Range {
  int lo = 1;
  int hi = 1;
};

Range parse_range(const std::string& text) {
  Range r;
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoi(text);
    } else {
      r.lo = std::stoi(text.substr(0, dots));
      r.hi = std::stoi(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw CliError(kUsage, "bad range '" + text + "' (expected N or A..B)");
  }
  if (r.lo < 0 || r.hi < r.lo) throw CliError(kUsage, "bad range '" + text + "'");
  return r;
}

int default_threads() {
  if (const char* env = std::getenv("SAWSTRIP_THREADS")) {
    try {
      return std::max(0, std::stoi(env));
    } catch (const std::exception&) {
      throw CliError(kUsage, std::string("SAWSTRIP_THREADS is not a number: ") + env);
    }
  }
  return 0;
}

// Options shared by every subcommand that builds strips.
struct StripArgs {
  std::string lattice = "square";
  std::string mode = "site";
  int half_length = 250;
  int degree = 250;
  std::string x;
  int threads = -1;
  double max_memory_mb = 4096;

  void add(CLI::App* app, bool with_lattice = true) {
    if (with_lattice) {
      app->add_option("--lattice", lattice, "honeycomb, square or triangular")
          ->check(CLI::IsMember({"honeycomb", "square", "triangular"}));
      app->add_option("--mode", mode, "site, alternate (honeycomb) or edge")
          ->check(CLI::IsMember({"site", "alternate", "edge"}));
      app->add_option("-x,--x", x, "step fugacity (default: critical value)");
    }
    app->add_option("-L,--half-length", half_length, "strip half-length L");
    app->add_option("-M,--degree", degree, "truncation degree M in y");
    app->add_option("-j,--threads", threads, "worker threads (default $SAWSTRIP_THREADS or all cores)");
    app->add_option("--max-memory-mb", max_memory_mb, "refuse builds estimated above this");
  }

  [[nodiscard]] sawstrip_engine_options engine() const {
    sawstrip_engine_options o;
    sawstrip_engine_options_init(&o);
    o.threads = threads >= 0 ? threads : default_threads();
    const double per_state = 2.0 * (degree + 2) * 16.0 + 8.0;
    o.max_states = static_cast<std::size_t>(max_memory_mb * 1048576.0 / per_state);
    return o;
  }
};

sawstrip_strip make_strip(sawstrip_lattice lattice, sawstrip_mode mode, int width, int L, int M, const std::string& x) {
  sawstrip_strip s;
  sawstrip_strip_init(&s);
  s.lattice = lattice;
  s.mode = mode;
  s.width = width;
  s.half_length = L;
  s.trunc_degree = M;
  s.x = x.empty() ? nullptr : x.c_str();
  return s;
}

void refuse_if_over_budget(const sawstrip_strip& s, double max_memory_mb) {
  double states = 0;
  double bytes = 0;
  double seconds = 0;
  check(sawstrip_estimate_cost(&s, &states, &bytes, &seconds));
  const double mb = bytes / 1048576.0;
  if (mb > max_memory_mb) {
    std::ostringstream msg;
    msg.precision(3);
    msg << "width " << s.width << " needs about " << states << " states, " << mb << " MB and "
        << seconds << " s on one core (cost grows about " << (s.lattice == SAWSTRIP_TRIANGULAR ? "5.3" : "2.7")
        << "x per unit of width); budget is " << max_memory_mb << " MB (--max-memory-mb)";
    throw CliError(kResource, msg.str());
  }
}

Series build(const sawstrip_strip& s, const StripArgs& args, bool with_beta = false) {
  refuse_if_over_budget(s, args.max_memory_mb);
  sawstrip_engine_options o = args.engine();
  o.with_beta = with_beta ? 1 : 0;
  sawstrip_series* out = nullptr;
  check(sawstrip_build(&s, &o, &out));
  return Series(out);
}

std::string critical_or(const std::string& x, sawstrip_lattice lattice) {
  if (!x.empty()) return x;
  char buf[kBuf];
  check(sawstrip_critical_x(lattice, buf, sizeof buf));
  return buf;
}

struct Convention {
  std::string x;
  std::string a_factor;
};

Convention reference(sawstrip_lattice lattice, bool convergence_study) {
  char x[kBuf];
  char a[kBuf];
  check(sawstrip_reference_convention(lattice, convergence_study ? 1 : 0, x, sizeof x, a, sizeof a));
  return {x, a};
}

// Output sink: a file when --output is given, else stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw CliError(kIo, "cannot write " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

// ---- CSV input ----

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  [[nodiscard]] int column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
  }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    cells.push_back(cell.substr(cell.find_first_not_of(' ') == std::string::npos ? 0 : cell.find_first_not_of(' ')));
  }
  return cells;
}

bool numeric(const std::string& s) {
  if (s.empty()) return false;
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end != nullptr && *end == '\0';
}

CsvTable read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CliError(kIo, "cannot read " + path);
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto cells = split(line);
    if (first && !cells.empty() && !numeric(cells[0])) {
      t.header = cells;
    } else {
      t.rows.push_back(cells);
    }
    first = false;
  }
  return t;
}

std::string data_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("SAWSTRIP_DATA_DIR")) return env;
  return SAWSTRIP_DATA_DIR;
}

// ---- crossings ----

struct CrossRow {
  int T = 0;
  std::string y;
  std::string A;
};

struct CrossResult {
  std::vector<CrossRow> rows;
  int monotone = 0;
};

CrossResult cross_series(const std::vector<Series>& series, const std::string& a_factor, int decimals) {
  std::vector<const sawstrip_series*> ptrs;
  for (const auto& s : series) ptrs.push_back(s.get());
  sawstrip_crossing_options o{nullptr, nullptr, nullptr, a_factor.empty() ? nullptr : a_factor.c_str()};
  sawstrip_crossings* raw = nullptr;
  check(sawstrip_cross(ptrs.data(), ptrs.size(), &o, &raw));
  Crossings rows(raw);
  CrossResult r;
  for (std::size_t i = 0; i < sawstrip_crossings_count(rows.get()); ++i) {
    CrossRow row;
    char y[kBuf];
    char a[kBuf];
    check(sawstrip_crossings_row(rows.get(), i, decimals, &row.T, y, sizeof y, a, sizeof a));
    row.y = y;
    row.A = a;
    r.rows.push_back(row);
  }
  r.monotone = sawstrip_crossings_monotone(rows.get());
  return r;
}

std::vector<Series> build_widths(sawstrip_lattice lattice, sawstrip_mode mode, Range widths, const std::string& x,
                                 const StripArgs& args, bool verbose) {
  std::vector<Series> out;
  for (int t = widths.lo; t <= widths.hi; ++t) {
    const sawstrip_strip s = make_strip(lattice, mode, t, args.half_length, args.degree, x);
    out.push_back(build(s, args));
    if (verbose) {
      std::size_t peak = 0;
      double secs = 0;
      check(sawstrip_series_info(out.back().get(), nullptr, &peak, &secs));
      std::cerr << "built T=" << t << " (" << peak << " states, " << secs << " s)\n";
    }
  }
  return out;
}

// ---- subcommands ----

struct EnumerateArgs {
  StripArgs strip;
  int width = 1;
  std::string output;
  std::string format = "csv";
  std::string checkpoint;
  std::size_t checkpoint_every = 0;
  bool resume = false;
  bool with_beta = false;
};

int cmd_enumerate(const EnumerateArgs& a) {
  const sawstrip_lattice lattice = kLattices.at(a.strip.lattice);
  const sawstrip_strip s = make_strip(lattice, kModes.at(a.strip.mode), a.width, a.strip.half_length,
                                      a.strip.degree, a.strip.x);
  refuse_if_over_budget(s, a.strip.max_memory_mb);
  sawstrip_engine_options o = a.strip.engine();
  o.with_beta = a.with_beta ? 1 : 0;

  sawstrip_sweep* raw = nullptr;
  if (a.resume && !a.checkpoint.empty() && std::filesystem::exists(a.checkpoint)) {
    check(sawstrip_sweep_resume(a.checkpoint.c_str(), &o, &raw));
    std::cerr << "resumed from " << a.checkpoint << '\n';
  } else {
    check(sawstrip_sweep_create(&s, &o, &raw));
  }
  Sweep sweep(raw);
  const std::size_t chunk = a.checkpoint.empty() || a.checkpoint_every == 0 ? static_cast<std::size_t>(-1)
                                                                             : a.checkpoint_every;
  std::size_t pos = 0;
  std::size_t total = 1;
  do {
    check(sawstrip_sweep_run(sweep.get(), chunk, &pos, &total));
    if (!a.checkpoint.empty()) check(sawstrip_sweep_save(sweep.get(), a.checkpoint.c_str()));
  } while (pos < total);

  sawstrip_series* out = nullptr;
  check(sawstrip_sweep_result(sweep.get(), &out));
  Series series(out);
  sawstrip_strip info;
  std::size_t peak = 0;
  double secs = 0;
  check(sawstrip_series_info(series.get(), &info, &peak, &secs));

  if (a.format == "csv") {
    if (a.output.empty()) throw CliError(kUsage, "csv output needs --output");
    check(sawstrip_series_write_csv(series.get(), SAWSTRIP_PART_A, a.output.c_str()));
    for (auto [part, tag] : {std::pair{SAWSTRIP_PART_B, ".B.csv"}, std::pair{SAWSTRIP_PART_E, ".E.csv"}}) {
      if (sawstrip_series_has(series.get(), part)) {
        check(sawstrip_series_write_csv(series.get(), part, (a.output + tag).c_str()));
      }
    }
  } else {
    ordered_json j;
    j["schema"] = kSchema;
    j["lattice"] = a.strip.lattice;
    j["mode"] = a.strip.mode;
    j["width"] = a.width;
    j["half_length"] = info.half_length;
    j["degree"] = info.trunc_degree;
    j["x"] = critical_or(a.strip.x, lattice);
    j["peak_states"] = peak;
    j["seconds"] = secs;
    for (auto [part, key] : {std::pair{SAWSTRIP_PART_A, "A"}, std::pair{SAWSTRIP_PART_B, "B"},
                             std::pair{SAWSTRIP_PART_E, "E"}}) {
      if (!sawstrip_series_has(series.get(), part)) continue;
      std::vector<std::string> coeffs;
      for (int k = 0; k <= info.trunc_degree; ++k) {
        char buf[kBuf];
        check(sawstrip_series_coefficient(series.get(), part, k, buf, sizeof buf));
        coeffs.emplace_back(buf);
      }
      j[key] = coeffs;
    }
    Sink sink(a.output);
    sink.out() << j.dump(2) << '\n';
  }
  std::cerr << "T=" << a.width << ": " << peak << " peak states, " << secs << " s\n";
  return kOk;
}

struct CrossArgs {
  StripArgs strip;
  std::string widths = "1..4";
  std::vector<std::string> inputs;
  int first_width = 1;
  std::string convention = "reference";
  std::string output;
  std::string format = "csv";
};

void write_crossings(std::ostream& out, const CrossResult& r, const std::string& format, ordered_json meta) {
  if (format == "csv") {
    out << "T,y_c,A\n";
    for (const auto& row : r.rows) out << row.T << ',' << row.y << ',' << row.A << '\n';
    return;
  }
  meta["schema"] = kSchema;
  meta["monotone"] = r.monotone;
  meta["rows"] = ordered_json::array();
  for (const auto& row : r.rows) meta["rows"].push_back({{"T", row.T}, {"y_c", row.y}, {"A", row.A}});
  out << meta.dump(2) << '\n';
}

int cmd_cross(const CrossArgs& a) {
  const sawstrip_lattice lattice = kLattices.at(a.strip.lattice);
  const sawstrip_mode mode = kModes.at(a.strip.mode);
  std::vector<Series> series;
  std::string a_factor;
  if (!a.inputs.empty()) {
    int t = a.first_width;
    for (const auto& path : a.inputs) {
      const sawstrip_strip s = make_strip(lattice, mode, t++, a.strip.half_length, a.strip.degree, a.strip.x);
      sawstrip_series* out = nullptr;
      check(sawstrip_series_read_csv(path.c_str(), &s, &out));
      series.emplace_back(out);
    }
  } else {
    const Range w = parse_range(a.widths);
    std::string x = a.strip.x;
    if (x.empty() && a.convention == "reference") {
      const Convention c = reference(lattice, false);
      x = c.x;
      a_factor = c.a_factor;
    }
    series = build_widths(lattice, mode, {w.lo, w.hi + 1}, x, a.strip, true);
  }
  const CrossResult r = cross_series(series, a_factor, 15);
  Sink sink(a.output);
  write_crossings(sink.out(), r, a.format,
                  {{"lattice", a.strip.lattice}, {"mode", a.strip.mode}, {"half_length", a.strip.half_length},
                   {"degree", a.strip.degree}, {"convention", a.inputs.empty() ? a.convention : "input"}});
  if (r.monotone == 0 && r.rows.size() > 1) std::cerr << "warning: y_c(T) is not monotone\n";
  return kOk;
}

struct ExtrapolateArgs {
  std::string input;
  std::string column;
  int first_index = -1;
  std::string w = "1";
  std::string rule = "bulirsch-stoer";
  std::string dump_dir;
  std::string output;
  std::string format = "csv";
};

struct ExtrapolationSummary {
  std::vector<std::tuple<std::string, std::string, std::string>> rows;  // algorithm, best, spread
  std::string consensus, median, mean, max_disagreement;
};

ExtrapolationSummary extrapolate(const std::vector<std::string>& values, int first_index, const std::string& w,
                                 sawstrip_consensus rule, const std::string& dump_dir) {
  std::vector<const char*> ptrs;
  for (const auto& v : values) ptrs.push_back(v.c_str());
  sawstrip_extrapolation* raw = nullptr;
  check(sawstrip_extrapolate(ptrs.data(), ptrs.size(), first_index, w.c_str(), rule, &raw));
  Extrapolation ex(raw);
  ExtrapolationSummary s;
  for (std::size_t i = 0; i < sawstrip_extrapolation_count(ex.get()); ++i) {
    const char* name = nullptr;
    char best[kBuf];
    char spread[kBuf];
    check(sawstrip_extrapolation_row(ex.get(), i, 12, &name, best, sizeof best, spread, sizeof spread));
    s.rows.emplace_back(name, best, spread);
    if (!dump_dir.empty()) {
      std::filesystem::create_directories(dump_dir);
      const std::string path = dump_dir + "/" + name + ".csv";
      check(sawstrip_extrapolation_write_csv(ex.get(), i, path.c_str()));
    }
  }
  char c[kBuf], m[kBuf], mean[kBuf], d[kBuf];
  check(sawstrip_extrapolation_summary(ex.get(), 12, c, m, mean, d, kBuf));
  s.consensus = c;
  s.median = m;
  s.mean = mean;
  s.max_disagreement = d;
  return s;
}

sawstrip_consensus rule_of(const std::string& r) {
  if (r == "inverse-spread") return SAWSTRIP_CONSENSUS_INVERSE_SPREAD;
  if (r == "median") return SAWSTRIP_CONSENSUS_MEDIAN;
  return SAWSTRIP_CONSENSUS_BULIRSCH_STOER;
}

// Values (and the index of the first) from a crossings CSV or a bare column.
std::pair<std::vector<std::string>, int> read_sequence(const std::string& path, std::string column) {
  const CsvTable t = read_csv(path);
  int col = 0;
  if (!t.header.empty()) {
    if (column.empty()) column = t.column("y_c") >= 0 ? "y_c" : t.header[0];
    col = t.column(column);
    if (col < 0) throw CliError(kUsage, "no column '" + column + "' in " + path);
  }
  std::vector<std::string> v;
  for (const auto& r : t.rows) {
    if (static_cast<int>(r.size()) > col && !r[static_cast<std::size_t>(col)].empty()) {
      v.push_back(r[static_cast<std::size_t>(col)]);
    }
  }
  int first = 1;
  const int tcol = t.column("T");
  if (tcol >= 0 && !t.rows.empty()) first = std::stoi(t.rows[0][static_cast<std::size_t>(tcol)]);
  return {v, first};
}

int cmd_extrapolate(const ExtrapolateArgs& a) {
  auto [values, first] = read_sequence(a.input, a.column);
  const auto s = extrapolate(values, a.first_index >= 0 ? a.first_index : first, a.w, rule_of(a.rule), a.dump_dir);
  Sink sink(a.output);
  if (a.format == "csv") {
    sink.out() << "algorithm,best,spread\n";
    for (const auto& [name, best, spread] : s.rows) sink.out() << name << ',' << best << ',' << spread << '\n';
    sink.out() << "consensus," << s.consensus << ",\n"
               << "median," << s.median << ",\n"
               << "inverse-spread-mean," << s.mean << ",\n"
               << "max-disagreement," << s.max_disagreement << ",\n";
  } else {
    ordered_json j{{"schema", kSchema}, {"input", a.input}, {"rule", a.rule}, {"w", a.w}};
    j["algorithms"] = ordered_json::array();
    for (const auto& [name, best, spread] : s.rows) {
      j["algorithms"].push_back({{"name", name}, {"best", best}, {"spread", spread}});
    }
    j["consensus"] = s.consensus;
    j["median"] = s.median;
    j["inverse_spread_mean"] = s.mean;
    j["max_disagreement"] = s.max_disagreement;
    sink.out() << j.dump(2) << '\n';
  }
  return kOk;
}

struct IdentityArgs {
  StripArgs strip;
  int max_width = 4;
  int max_length = 4;
  int grid = 16;
  std::string tolerance = "1e-25";
  std::string map_widths = "0..2";
  std::string output;
  std::string format = "csv";
};

int cmd_verify_identity(const IdentityArgs& a) {
  const double tol = std::stod(a.tolerance);
  bool ok = true;
  ordered_json j{{"schema", kSchema}, {"tolerance", a.tolerance}};
  j["patches"] = ordered_json::array();
  const sawstrip_engine_options o = a.strip.engine();
  std::ostringstream csv;
  csv << "T,L,max_residual,corollary_residual\n";
  for (int T = 0; T <= a.max_width; ++T) {
    for (int L = 0; L <= a.max_length; ++L) {
      sawstrip_patch* raw = nullptr;
      check(sawstrip_patch_build(T, L, &o, &raw));
      Patch patch(raw);
      ordered_json pj{{"T", T}, {"L", L}};
      pj["residuals"] = ordered_json::array();
      double worst = 0;
      for (int i = 1; i <= a.grid; ++i) {
        const std::string y = std::to_string(3.0 * i / a.grid);
        char buf[kBuf];
        check(sawstrip_patch_residual(patch.get(), y.c_str(), -1, buf, sizeof buf));
        worst = std::max(worst, std::stod(buf));
        pj["residuals"].push_back({{"y", y}, {"residual", buf}});
      }
      char cor[kBuf];
      check(sawstrip_patch_residual(patch.get(), nullptr, -1, cor, sizeof cor));
      pj["corollary_residual"] = cor;
      ok = ok && worst <= tol && std::stod(cor) <= tol;
      j["patches"].push_back(pj);
      csv << T << ',' << L << ',' << worst << ',' << std::stod(cor) << '\n';
    }
  }
  const Range mw = parse_range(a.map_widths);
  j["edge_site_maps"] = ordered_json::array();
  csv << "T,a_deviation,b_deviation\n";
  for (int T = mw.lo; T <= mw.hi; ++T) {
    char da[kBuf];
    char db[kBuf];
    check(sawstrip_edge_site_check(T, a.strip.half_length, a.strip.degree, &o, -1, da, db, kBuf));
    ok = ok && std::stod(da) <= tol && std::stod(db) <= tol;
    j["edge_site_maps"].push_back({{"T", T}, {"a_deviation", da}, {"b_deviation", db}});
    csv << T << ',' << std::stod(da) << ',' << std::stod(db) << '\n';
  }
  j["pass"] = ok;
  Sink sink(a.output);
  if (a.format == "csv") {
    sink.out() << csv.str();
  } else {
    sink.out() << j.dump(2) << '\n';
  }
  if (!ok) std::cerr << "identity check exceeded tolerance " << a.tolerance << '\n';
  return ok ? kOk : kFailed;
}

struct ReproduceArgs {
  StripArgs strip;
  std::string table;
  std::string cell;
  std::string widths = "1..4";
  std::string data;
  std::string output;
  std::string format = "csv";
};

struct TableInfo {
  sawstrip_lattice lattice;
  sawstrip_mode mode;
  const char* name;
};

const std::map<std::string, TableInfo> kTables{
    {"table2", {SAWSTRIP_HONEYCOMB, SAWSTRIP_ALL_SITE, "honeycomb site"}},
    {"table3", {SAWSTRIP_SQUARE, SAWSTRIP_ALL_SITE, "square site"}},
    {"table4", {SAWSTRIP_SQUARE, SAWSTRIP_EDGE, "square edge"}},
    {"table5", {SAWSTRIP_TRIANGULAR, SAWSTRIP_ALL_SITE, "triangular site"}},
    {"table6", {SAWSTRIP_TRIANGULAR, SAWSTRIP_EDGE, "triangular edge"}},
};

std::map<std::string, std::string> parse_cell(const std::string& cell) {
  std::map<std::string, std::string> kv;
  for (const auto& part : split(cell)) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw CliError(kUsage, "bad --cell entry '" + part + "' (expected K=V)");
    kv[part.substr(0, eq)] = part.substr(eq + 1);
  }
  return kv;
}

int cmd_reproduce_table1(const ReproduceArgs& a, const CsvTable& t, Sink& sink) {
  const auto kv = parse_cell(a.cell.empty() ? "M=100" : a.cell);
  const Convention c = reference(SAWSTRIP_SQUARE, true);
  ordered_json j{{"schema", kSchema}, {"table", "table1"}, {"rows", ordered_json::array()}};
  std::ostringstream csv;
  csv << "M,L,computed,published,digits\n";
  int matched = 0;
  for (const auto& r : t.rows) {
    if (kv.count("M") && kv.at("M") != r[0]) continue;
    if (kv.count("L") && kv.at("L") != r[1]) continue;
    ++matched;
    StripArgs args = a.strip;
    args.degree = std::stoi(r[0]);
    args.half_length = std::stoi(r[1]);
    const auto series = build_widths(SAWSTRIP_SQUARE, SAWSTRIP_ALL_SITE, {9, 10}, c.x, args, true);
    const CrossResult res = cross_series(series, "", 12);
    const std::string& y = res.rows.at(0).y;
    const int digits = sawstrip_agreeing_digits(y.c_str(), r[2].c_str());
    csv << r[0] << ',' << r[1] << ',' << y << ',' << r[2] << ',' << digits << '\n';
    j["rows"].push_back({{"M", std::stoi(r[0])}, {"L", std::stoi(r[1])}, {"computed", y}, {"published", r[2]},
                         {"digits", digits}});
  }
  if (matched == 0) throw CliError(kUsage, "no table1 cell matches '" + a.cell + "'");
  sink.out() << (a.format == "csv" ? csv.str() : j.dump(2) + "\n");
  return kOk;
}

int cmd_reproduce(const ReproduceArgs& a) {
  const std::string path = data_dir(a.data) + "/" + a.table + ".csv";
  const CsvTable t = read_csv(path);
  Sink sink(a.output);
  if (a.table == "table1") return cmd_reproduce_table1(a, t, sink);

  const TableInfo& info = kTables.at(a.table);
  const Range w = parse_range(a.widths);
  if (w.lo < 1) throw CliError(kUsage, "table widths start at 1");
  const Convention c = reference(info.lattice, false);
  const auto series = build_widths(info.lattice, info.mode, {w.lo, w.hi + 1}, c.x, a.strip, true);
  const CrossResult res = cross_series(series, c.a_factor, 15);

  std::map<int, std::vector<std::string>> published;
  for (const auto& r : t.rows) published[std::stoi(r[0])] = r;
  ordered_json j{{"schema", kSchema},        {"table", a.table},    {"model", info.name},
                 {"half_length", a.strip.half_length}, {"degree", a.strip.degree}, {"rows", ordered_json::array()}};
  std::ostringstream csv;
  csv << "T,y_c,published_y_c,y_digits,A,published_A,A_digits\n";
  for (const auto& row : res.rows) {
    const auto it = published.find(row.T);
    const std::string py = it == published.end() ? "" : it->second[1];
    const std::string pa = it == published.end() ? "" : it->second[2];
    const int dy = py.empty() ? 0 : sawstrip_agreeing_digits(row.y.c_str(), py.c_str());
    const int da = pa.empty() ? 0 : sawstrip_agreeing_digits(row.A.c_str(), pa.c_str());
    csv << row.T << ',' << row.y << ',' << py << ',' << dy << ',' << row.A << ',' << pa << ',' << da << '\n';
    j["rows"].push_back({{"T", row.T}, {"y_c", row.y}, {"published_y_c", py}, {"y_digits", dy},
                         {"A", row.A}, {"published_A", pa}, {"A_digits", da}});
  }
  j["monotone"] = res.monotone;
  sink.out() << (a.format == "csv" ? csv.str() : j.dump(2) + "\n");
  return kOk;
}

struct PlotArgs {
  StripArgs strip;
  std::string widths = "1..4";
  std::string convention = "reference";
  double y_min = 1.0;
  double y_max = 3.0;
  int points = 101;
  std::string output;
};

int cmd_plot_data(const PlotArgs& a) {
  if (a.points < 2 || !(a.y_max > a.y_min)) throw CliError(kUsage, "need --points >= 2 and --y-max > --y-min");
  const sawstrip_lattice lattice = kLattices.at(a.strip.lattice);
  const Range w = parse_range(a.widths);
  std::string x = a.strip.x;
  std::string factor = "1";
  if (x.empty() && a.convention == "reference") {
    const Convention c = reference(lattice, false);
    x = c.x;
    factor = c.a_factor;
  }
  const auto series = build_widths(lattice, kModes.at(a.strip.mode), w, x, a.strip, true);
  const double f = std::stod(factor);
  Sink sink(a.output);
  sink.out() << "y";
  for (int t = w.lo; t <= w.hi; ++t) sink.out() << ",A_" << t;
  sink.out() << '\n';
  for (int i = 0; i < a.points; ++i) {
    const double y = a.y_min + (a.y_max - a.y_min) * i / (a.points - 1);
    std::ostringstream ys;
    ys.precision(17);
    ys << y;
    sink.out() << ys.str();
    for (const auto& s : series) {
      char buf[kBuf];
      check(sawstrip_series_eval(s.get(), SAWSTRIP_PART_A, ys.str().c_str(), 20, buf, sizeof buf));
      std::ostringstream v;
      v.precision(15);
      v << std::fixed << std::stod(buf) * f;
      sink.out() << ',' << v.str();
    }
    sink.out() << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sawstrip: transfer-matrix enumeration of adsorbing self-avoiding walks in strips"};
  app.require_subcommand(1);
  app.set_version_flag("--version", sawstrip_version());

  EnumerateArgs en;
  auto* sub_en = app.add_subcommand("enumerate", "build A_T(x, y) for one strip width");
  en.strip.add(sub_en);
  sub_en->add_option("-T,--width", en.width, "strip width T")->required();
  sub_en->add_option("-o,--output", en.output, "output path");
  sub_en->add_option("--format", en.format)->check(CLI::IsMember({"csv", "json"}));
  sub_en->add_option("--checkpoint", en.checkpoint, "checkpoint file, rewritten as the sweep advances");
  sub_en->add_option("--checkpoint-every", en.checkpoint_every, "sites between checkpoints");
  sub_en->add_flag("--resume", en.resume, "continue from --checkpoint if it exists");
  sub_en->add_flag("--with-beta", en.with_beta, "honeycomb: also build B (walks ending on the weighted side)");

  CrossArgs cr;
  auto* sub_cr = app.add_subcommand("cross", "crossings y_c(T) of A_T and A_{T+1}");
  cr.strip.add(sub_cr);
  sub_cr->add_option("--widths", cr.widths, "T range, e.g. 1..4 (builds up to T+1)");
  sub_cr->add_option("--inputs", cr.inputs, "series CSVs of consecutive widths instead of building");
  sub_cr->add_option("--first-width", cr.first_width, "width of the first --inputs file");
  sub_cr->add_option("--convention", cr.convention, "x and A normalisation when --x is not given")
      ->check(CLI::IsMember({"reference", "critical"}));
  sub_cr->add_option("-o,--output", cr.output);
  sub_cr->add_option("--format", cr.format)->check(CLI::IsMember({"csv", "json"}));

  ExtrapolateArgs ex;
  auto* sub_ex = app.add_subcommand("extrapolate", "accelerate a y_c(T) sequence");
  sub_ex->add_option("-i,--input", ex.input, "CSV with a y_c column, or one value per line")->required();
  sub_ex->add_option("--column", ex.column, "column to extrapolate");
  sub_ex->add_option("--first-index", ex.first_index, "T of the first value (default: from the T column, else 1)");
  sub_ex->add_option("-w,--w", ex.w, "Bulirsch-Stoer / Neville exponent");
  sub_ex->add_option("--rule", ex.rule, "consensus rule")
      ->check(CLI::IsMember({"bulirsch-stoer", "inverse-spread", "median"}));
  sub_ex->add_option("--dump-dir", ex.dump_dir, "write every algorithm's full table here");
  sub_ex->add_option("-o,--output", ex.output);
  sub_ex->add_option("--format", ex.format)->check(CLI::IsMember({"csv", "json"}));

  IdentityArgs id;
  id.strip.half_length = 100;
  id.strip.degree = 200;
  auto* sub_id = app.add_subcommand("verify-identity", "honeycomb patch identity and edge/site maps");
  id.strip.add(sub_id, false);
  sub_id->add_option("--max-width", id.max_width, "patches T = 0..N");
  sub_id->add_option("--max-length", id.max_length, "patches L = 0..N");
  sub_id->add_option("--grid", id.grid, "y points in (0, 3]");
  sub_id->add_option("--tolerance", id.tolerance);
  sub_id->add_option("--map-widths", id.map_widths, "strip widths for the edge/site map check");
  sub_id->add_option("-o,--output", id.output);
  sub_id->add_option("--format", id.format)->check(CLI::IsMember({"csv", "json"}));

  ReproduceArgs rp;
  auto* sub_rp = app.add_subcommand("reproduce", "compare against the published tables");
  rp.strip.add(sub_rp, false);
  sub_rp->add_option("table", rp.table, "table1 .. table6")
      ->required()
      ->check(CLI::IsMember({"table1", "table2", "table3", "table4", "table5", "table6"}));
  sub_rp->add_option("--cell", rp.cell, "table1 cells, e.g. M=100,L=100 (default M=100)");
  sub_rp->add_option("--widths", rp.widths, "T range for tables 2-6");
  sub_rp->add_option("--data-dir", rp.data, "published tables (default $SAWSTRIP_DATA_DIR or the source tree)");
  sub_rp->add_option("-o,--output", rp.output);
  sub_rp->add_option("--format", rp.format)->check(CLI::IsMember({"csv", "json"}));

  PlotArgs pl;
  auto* sub_pl = app.add_subcommand("plot-data", "A_T(x_c, y) on a y grid, one column per width");
  pl.strip.add(sub_pl);
  sub_pl->add_option("--widths", pl.widths);
  sub_pl->add_option("--convention", pl.convention)->check(CLI::IsMember({"reference", "critical"}));
  sub_pl->add_option("--y-min", pl.y_min);
  sub_pl->add_option("--y-max", pl.y_max);
  sub_pl->add_option("--points", pl.points);
  sub_pl->add_option("-o,--output", pl.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*sub_en) return cmd_enumerate(en);
    if (*sub_cr) return cmd_cross(cr);
    if (*sub_ex) return cmd_extrapolate(ex);
    if (*sub_id) return cmd_verify_identity(id);
    if (*sub_rp) return cmd_reproduce(rp);
    if (*sub_pl) return cmd_plot_data(pl);
  } catch (const CliError& e) {
    std::cerr << "sawstrip: " << e.what() << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "sawstrip: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}
