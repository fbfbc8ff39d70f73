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

#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace sawstrip {

/// Analysis-tier real: 64 significant decimal digits. Used for root finding,
/// extrapolation and anything that consumes finished series.
using AnalysisReal = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<64>,
    boost::multiprecision::et_off>;

/// Working-tier real used for transfer-matrix accumulation: an unevaluated
/// sum hi + lo of two doubles with |lo| <= ulp(hi)/2 (about 31 digits).
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double h) : hi(h) {}  // NOLINT(implicit)
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  [[nodiscard]] constexpr bool is_zero() const { return hi == 0.0 && lo == 0.0; }
  [[nodiscard]] bool is_finite() const { return std::isfinite(hi) && std::isfinite(lo); }

  friend constexpr bool operator==(const DoubleDouble&, const DoubleDouble&) = default;
};

namespace dd_detail {

inline DoubleDouble quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace dd_detail

inline DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
  DoubleDouble s = dd_detail::two_sum(a.hi, b.hi);
  const DoubleDouble t = dd_detail::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = dd_detail::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(const DoubleDouble& a) { return {-a.hi, -a.lo}; }
inline DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) { return a + (-b); }

inline DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
  DoubleDouble p = dd_detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) {
  const double q1 = a.hi / b.hi;
  DoubleDouble r = a - b * DoubleDouble(q1);
  const double q2 = r.hi / b.hi;
  r = r - b * DoubleDouble(q2);
  const double q3 = r.hi / b.hi;
  return dd_detail::quick_two_sum(q1, q2) + DoubleDouble(q3);
}

inline DoubleDouble& operator+=(DoubleDouble& a, const DoubleDouble& b) { return a = a + b; }
inline DoubleDouble& operator-=(DoubleDouble& a, const DoubleDouble& b) { return a = a - b; }
inline DoubleDouble& operator*=(DoubleDouble& a, const DoubleDouble& b) { return a = a * b; }

inline bool operator<(const DoubleDouble& a, const DoubleDouble& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}

/// Exact widening: hi + lo is representable in 64 digits.
inline AnalysisReal to_analysis(const DoubleDouble& v) {
  return AnalysisReal(v.hi) + AnalysisReal(v.lo);
}

/// Rounds an analysis-tier value to the nearest double-double.
inline DoubleDouble to_working(const AnalysisReal& v) {
  const double hi = static_cast<double>(v);
  const double lo = static_cast<double>(AnalysisReal(v - hi));
  return dd_detail::quick_two_sum(hi, lo);
}

/// Parses a decimal literal ("0.37905227776", "1e-3") at analysis precision.
AnalysisReal parse_real(std::string_view text);

/// Fixed-point decimal rendering with `decimals` digits after the point.
std::string format_fixed(const AnalysisReal& v, int decimals);

/// Leading significant digits two decimal renderings share ("1.7781" and
/// "1.7779" share 3).
int agreeing_digits(std::string_view a, std::string_view b);

/// Full-precision scientific rendering (round-trips through parse_real).
std::string format_full(const AnalysisReal& v);
std::string format_full(const DoubleDouble& v);

}  // namespace sawstrip
