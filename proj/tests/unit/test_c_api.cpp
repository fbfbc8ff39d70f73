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

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "sawstrip.h"

namespace {

sawstrip_strip square(int width, int size) {
  sawstrip_strip s;
  sawstrip_strip_init(&s);
  s.lattice = SAWSTRIP_SQUARE;
  s.mode = SAWSTRIP_ALL_SITE;
  s.width = width;
  s.half_length = size;
  s.trunc_degree = size;
  return s;
}

std::string tmp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / (std::string("sawstrip_capi_") + name)).string();
}

}  // namespace

TEST_CASE("defaults and version") {
  sawstrip_strip s;
  sawstrip_strip_init(&s);
  CHECK(s.half_length == 250);
  CHECK(s.trunc_degree == 250);
  CHECK(s.x == nullptr);
  CHECK(std::string(sawstrip_version()) == "1.0.0");
}

TEST_CASE("errors carry a status and a message") {
  sawstrip_strip s = square(1, 10);
  s.half_length = 0;
  sawstrip_series* out = reinterpret_cast<sawstrip_series*>(0x1);
  CHECK(sawstrip_build(&s, nullptr, &out) == SAWSTRIP_ERR_INVALID_ARGUMENT);
  CHECK(out == nullptr);
  CHECK(std::strlen(sawstrip_last_error()) > 0);

  s = square(4, 10);
  sawstrip_engine_options o;
  sawstrip_engine_options_init(&o);
  o.max_states = 3;
  CHECK(sawstrip_build(&s, &o, &out) == SAWSTRIP_ERR_BUDGET);

  char small[4];
  CHECK(sawstrip_critical_x(SAWSTRIP_SQUARE, small, sizeof small) == SAWSTRIP_ERR_INVALID_ARGUMENT);
  CHECK(sawstrip_sweep_resume("/nonexistent/ckpt", nullptr, nullptr) == SAWSTRIP_ERR_INVALID_ARGUMENT);
  sawstrip_sweep* sw = nullptr;
  CHECK(sawstrip_sweep_resume("/nonexistent/ckpt", nullptr, &sw) == SAWSTRIP_ERR_IO);
}

TEST_CASE("build, cross and evaluate through the C interface") {
  char x[128];
  char factor[128];
  REQUIRE(sawstrip_reference_convention(SAWSTRIP_SQUARE, 0, x, sizeof x, factor, sizeof factor) == SAWSTRIP_OK);
  sawstrip_series* a[2] = {nullptr, nullptr};
  for (int t = 1; t <= 2; ++t) {
    sawstrip_strip s = square(t, 200);
    s.x = x;
    REQUIRE(sawstrip_build(&s, nullptr, &a[t - 1]) == SAWSTRIP_OK);
  }
  sawstrip_crossing_options co{nullptr, nullptr, nullptr, factor};
  sawstrip_crossings* rows = nullptr;
  REQUIRE(sawstrip_cross(a, 2, &co, &rows) == SAWSTRIP_OK);
  REQUIRE(sawstrip_crossings_count(rows) == 1);
  int T = 0;
  char y[64];
  char A[64];
  REQUIRE(sawstrip_crossings_row(rows, 0, 15, &T, y, sizeof y, A, sizeof A) == SAWSTRIP_OK);
  CHECK(T == 1);
  CHECK(sawstrip_agreeing_digits(y, "1.781782909906119") >= 9);
  CHECK(sawstrip_agreeing_digits(A, "2.748677355944862") >= 8);
  sawstrip_crossings_free(rows);

  char v[64];
  REQUIRE(sawstrip_series_eval(a[0], SAWSTRIP_PART_A, y, 15, v, sizeof v) == SAWSTRIP_OK);
  CHECK(std::strtod(v, nullptr) > 0);
  CHECK(sawstrip_series_has(a[0], SAWSTRIP_PART_B) == 0);
  CHECK(sawstrip_series_eval(a[0], SAWSTRIP_PART_B, "1", 5, v, sizeof v) == SAWSTRIP_ERR_INVALID_ARGUMENT);

  // mismatched widths
  sawstrip_series* wrong[2] = {a[1], a[0]};
  CHECK(sawstrip_cross(wrong, 2, nullptr, &rows) == SAWSTRIP_ERR_INVALID_ARGUMENT);

  const std::string path = tmp_path("series.csv");
  REQUIRE(sawstrip_series_write_csv(a[0], SAWSTRIP_PART_A, path.c_str()) == SAWSTRIP_OK);
  sawstrip_strip s = square(1, 200);
  sawstrip_series* back = nullptr;
  REQUIRE(sawstrip_series_read_csv(path.c_str(), &s, &back) == SAWSTRIP_OK);
  char c0[128];
  char c1[128];
  for (int k : {0, 1, 7}) {
    REQUIRE(sawstrip_series_coefficient(a[0], SAWSTRIP_PART_A, k, c0, sizeof c0) == SAWSTRIP_OK);
    REQUIRE(sawstrip_series_coefficient(back, SAWSTRIP_PART_A, k, c1, sizeof c1) == SAWSTRIP_OK);
    CHECK(std::string(c0) == std::string(c1));
  }
  std::remove(path.c_str());
  sawstrip_series_free(back);
  sawstrip_series_free(a[0]);
  sawstrip_series_free(a[1]);
}

TEST_CASE("checkpointed sweep matches a direct build") {
  const sawstrip_strip s = square(2, 40);
  sawstrip_series* direct = nullptr;
  REQUIRE(sawstrip_build(&s, nullptr, &direct) == SAWSTRIP_OK);

  sawstrip_sweep* sw = nullptr;
  REQUIRE(sawstrip_sweep_create(&s, nullptr, &sw) == SAWSTRIP_OK);
  size_t pos = 0;
  size_t total = 0;
  REQUIRE(sawstrip_sweep_run(sw, 50, &pos, &total) == SAWSTRIP_OK);
  CHECK(pos == 50);
  sawstrip_series* early = nullptr;
  CHECK(sawstrip_sweep_result(sw, &early) == SAWSTRIP_ERR_INVALID_ARGUMENT);
  const std::string path = tmp_path("sweep.ckpt");
  REQUIRE(sawstrip_sweep_save(sw, path.c_str()) == SAWSTRIP_OK);
  sawstrip_sweep_free(sw);

  REQUIRE(sawstrip_sweep_resume(path.c_str(), nullptr, &sw) == SAWSTRIP_OK);
  REQUIRE(sawstrip_sweep_run(sw, static_cast<size_t>(-1), &pos, &total) == SAWSTRIP_OK);
  CHECK(pos == total);
  sawstrip_series* resumed = nullptr;
  REQUIRE(sawstrip_sweep_result(sw, &resumed) == SAWSTRIP_OK);
  for (int k = 0; k <= 40; ++k) {
    char c0[128];
    char c1[128];
    REQUIRE(sawstrip_series_coefficient(direct, SAWSTRIP_PART_A, k, c0, sizeof c0) == SAWSTRIP_OK);
    REQUIRE(sawstrip_series_coefficient(resumed, SAWSTRIP_PART_A, k, c1, sizeof c1) == SAWSTRIP_OK);
    CHECK(std::string(c0) == std::string(c1));
  }
  std::remove(path.c_str());
  sawstrip_series_free(resumed);
  sawstrip_series_free(direct);
  sawstrip_sweep_free(sw);
}

TEST_CASE("extrapolation through the C interface") {
  const char* seq[] = {"3", "2.5", "2.3333333333333333333333333333333", "2.25", "2.2", "2.1666666666666666666666666666667"};
  sawstrip_extrapolation* ex = nullptr;
  REQUIRE(sawstrip_extrapolate(seq, 6, 1, nullptr, SAWSTRIP_CONSENSUS_BULIRSCH_STOER, &ex) == SAWSTRIP_OK);
  CHECK(sawstrip_extrapolation_count(ex) >= 2);
  char consensus[64];
  REQUIRE(sawstrip_extrapolation_summary(ex, 10, consensus, nullptr, nullptr, nullptr, sizeof consensus) ==
          SAWSTRIP_OK);
  CHECK(std::string(consensus) == "2.0000000000");
  const char* name = nullptr;
  char best[64];
  REQUIRE(sawstrip_extrapolation_row(ex, 0, 10, &name, best, sizeof best, nullptr, 0) == SAWSTRIP_OK);
  CHECK(std::string(name) == "bulirsch-stoer");
  sawstrip_extrapolation_free(ex);

  const char* bad[] = {"1", "x", "2"};
  CHECK(sawstrip_extrapolate(bad, 3, 1, nullptr, SAWSTRIP_CONSENSUS_MEDIAN, &ex) == SAWSTRIP_ERR_INVALID_ARGUMENT);
  CHECK(sawstrip_extrapolate(seq, 2, 1, nullptr, SAWSTRIP_CONSENSUS_MEDIAN, &ex) == SAWSTRIP_ERR_NUMERIC);
}

TEST_CASE("identity through the C interface") {
  sawstrip_patch* p = nullptr;
  REQUIRE(sawstrip_patch_build(2, 2, nullptr, &p) == SAWSTRIP_OK);
  char r[128];
  REQUIRE(sawstrip_patch_residual(p, "0.75", -1, r, sizeof r) == SAWSTRIP_OK);
  CHECK(std::strtod(r, nullptr) < 1e-25);
  REQUIRE(sawstrip_patch_residual(p, nullptr, -1, r, sizeof r) == SAWSTRIP_OK);
  CHECK(std::strtod(r, nullptr) < 1e-25);
  CHECK(sawstrip_patch_residual(p, "-1", -1, r, sizeof r) == SAWSTRIP_ERR_INVALID_ARGUMENT);
  sawstrip_patch_free(p);

  char da[128];
  char db[128];
  REQUIRE(sawstrip_edge_site_check(1, 30, 60, nullptr, -1, da, db, sizeof da) == SAWSTRIP_OK);
  CHECK(std::strtod(da, nullptr) < 1e-25);
  CHECK(std::strtod(db, nullptr) < 1e-25);
}
