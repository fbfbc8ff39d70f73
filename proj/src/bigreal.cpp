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

#include "sawstrip/bigreal.hpp"

#include <sstream>
#include <limits>
#include <stdexcept>

namespace sawstrip {

int agreeing_digits(std::string_view a, std::string_view b) {
  auto digits = [](std::string_view s) {
    std::string d;
    for (char c : s) {
      if (c == 'e' || c == 'E') break;
      if (c >= '0' && c <= '9') d += c;
    }
    const auto nz = d.find_first_not_of('0');
    return nz == std::string::npos ? std::string() : d.substr(nz);
  };
  const std::string da = digits(a);
  const std::string db = digits(b);
  std::size_t n = 0;
  while (n < da.size() && n < db.size() && da[n] == db[n]) ++n;
  return static_cast<int>(n);
}

AnalysisReal parse_real(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\t')) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && (s[start] == ' ' || s[start] == '\t')) ++start;
  s = s.substr(start);
  if (s.empty()) throw std::invalid_argument("empty numeric literal");
  try {
    return AnalysisReal(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
}

std::string format_fixed(const AnalysisReal& v, int decimals) {
  std::ostringstream os;
  os.setf(std::ios::fixed, std::ios::floatfield);
  os.precision(decimals);
  os << v;
  return os.str();
}

std::string format_full(const AnalysisReal& v) {
  std::ostringstream os;
  os.setf(std::ios::scientific, std::ios::floatfield);
  os.precision(std::numeric_limits<AnalysisReal>::digits10);
  os << v;
  return os.str();
}

std::string format_full(const DoubleDouble& v) {
  // 40 significant digits recover the nearest double-double on re-parse.
  std::ostringstream os;
  os.setf(std::ios::scientific, std::ios::floatfield);
  os.precision(40);
  os << to_analysis(v);
  return os.str();
}

}  // namespace sawstrip
