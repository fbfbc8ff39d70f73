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

#include "sawstrip/poly.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

namespace sawstrip {

void axpy_shift(std::span<DoubleDouble> dst, std::span<const DoubleDouble> src,
                const DoubleDouble& scale, int shift) {
  const std::size_t n = dst.size();
  if (static_cast<std::size_t>(shift) >= n) return;
  const std::size_t count = n - static_cast<std::size_t>(shift);
  DoubleDouble* out = dst.data() + shift;
  const DoubleDouble* in = src.data();
  if (scale.hi == 1.0 && scale.lo == 0.0) {
    for (std::size_t k = 0; k < count; ++k) {
      if (in[k].hi != 0.0) out[k] += in[k];
    }
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      if (in[k].hi != 0.0) out[k] += scale * in[k];
    }
  }
}

ContactPolynomial::ContactPolynomial(int trunc_degree) {
  if (trunc_degree < 0) throw PolyError("truncation degree must be nonnegative");
  coeffs_.assign(static_cast<std::size_t>(trunc_degree) + 1, DoubleDouble{});
}

ContactPolynomial::ContactPolynomial(int trunc_degree, std::vector<DoubleDouble> coeffs)
    : ContactPolynomial(trunc_degree) {
  if (coeffs.size() > coeffs_.size()) {
    for (std::size_t k = coeffs_.size(); k < coeffs.size(); ++k) {
      if (!coeffs[k].is_zero()) throw PolyError("coefficient beyond truncation degree");
    }
    coeffs.resize(coeffs_.size());
  }
  std::copy(coeffs.begin(), coeffs.end(), coeffs_.begin());
}

int ContactPolynomial::degree() const {
  for (int k = trunc_degree(); k >= 0; --k) {
    if (!coeffs_[static_cast<std::size_t>(k)].is_zero()) return k;
  }
  return -1;
}

void ContactPolynomial::axpy_shift(const ContactPolynomial& src, const DoubleDouble& scale,
                                   int y_shift) {
  if (src.size() != size()) throw PolyError("truncation mismatch in axpy_shift");
  if (y_shift < 0) throw PolyError("negative y shift");
  if (!scale.is_finite()) throw PolyError("non-finite scale");
  sawstrip::axpy_shift(coeffs_, src.coeffs_, scale, y_shift);
}

AnalysisReal ContactPolynomial::eval(const AnalysisReal& y) const {
  AnalysisReal acc = 0;
  for (int k = degree(); k >= 0; --k) {
    acc = acc * y + to_analysis(coeffs_[static_cast<std::size_t>(k)]);
  }
  return acc;
}

ContactPolynomial sub(const ContactPolynomial& p, const ContactPolynomial& q) {
  if (p.size() != q.size()) throw PolyError("truncation mismatch in sub");
  ContactPolynomial r(p.trunc_degree());
  for (std::size_t k = 0; k < p.size(); ++k) r[k] = p[k] - q[k];
  return r;
}

ContactPolynomial compose_square(const ContactPolynomial& p, int trunc_degree) {
  const int m = trunc_degree < 0 ? p.trunc_degree() : trunc_degree;
  if (2 * p.degree() > m) throw PolyError("compose_square overflows truncation degree");
  ContactPolynomial r(m);
  for (int k = 0; k <= p.degree(); ++k) {
    r[static_cast<std::size_t>(2 * k)] = p[static_cast<std::size_t>(k)];
  }
  return r;
}

ContactPolynomial scale_div_y(const ContactPolynomial& p) {
  if (!p[0].is_zero()) throw PolyError("scale_div_y needs a zero constant term");
  ContactPolynomial r(p.trunc_degree());
  for (std::size_t k = 1; k < p.size(); ++k) r[k - 1] = p[k];
  return r;
}

AnalysisReal max_abs_diff(const ContactPolynomial& p, const ContactPolynomial& q) {
  const std::size_t n = std::max(p.size(), q.size());
  AnalysisReal worst = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const AnalysisReal a = k < p.size() ? to_analysis(p[k]) : AnalysisReal(0);
    const AnalysisReal b = k < q.size() ? to_analysis(q[k]) : AnalysisReal(0);
    worst = std::max<AnalysisReal>(worst, abs(a - b));
  }
  return worst;
}

void write_csv(std::ostream& out, const ContactPolynomial& p) {
  out << "k,coefficient\n";
  for (std::size_t k = 0; k < p.size(); ++k) out << k << ',' << format_full(p[k]) << '\n';
}

ContactPolynomial read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw PolyError("empty polynomial CSV");
  std::vector<DoubleDouble> coeffs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw PolyError("malformed CSV row: " + line);
    const auto k = std::stoul(line.substr(0, comma));
    if (k != coeffs.size()) throw PolyError("CSV indices must be consecutive from 0");
    coeffs.push_back(to_working(parse_real(line.substr(comma + 1))));
  }
  if (coeffs.empty()) throw PolyError("polynomial CSV has no rows");
  const int m = static_cast<int>(coeffs.size()) - 1;
  return ContactPolynomial(m, std::move(coeffs));
}

}  // namespace sawstrip
