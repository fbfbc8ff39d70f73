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

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "sawstrip/bigreal.hpp"

namespace sawstrip {

class PolyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// dst[k + shift] += scale * src[k] for every k with k + shift < dst.size().
/// Both spans must have the same length; entries past the end are dropped.
void axpy_shift(std::span<DoubleDouble> dst, std::span<const DoubleDouble> src,
                const DoubleDouble& scale, int shift);

/// Truncated polynomial in the contact fugacity y. Index k holds the weight
/// of configurations with k surface contacts, 0 <= k <= degree().
class ContactPolynomial {
 public:
  ContactPolynomial() = default;
  explicit ContactPolynomial(int trunc_degree);
  ContactPolynomial(int trunc_degree, std::vector<DoubleDouble> coeffs);

  [[nodiscard]] int trunc_degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] std::size_t size() const { return coeffs_.size(); }

  [[nodiscard]] const DoubleDouble& operator[](std::size_t k) const { return coeffs_[k]; }
  DoubleDouble& operator[](std::size_t k) { return coeffs_[k]; }

  [[nodiscard]] std::span<const DoubleDouble> coeffs() const { return coeffs_; }
  std::span<DoubleDouble> coeffs() { return coeffs_; }

  /// Highest index holding a nonzero coefficient, or -1 for the zero polynomial.
  [[nodiscard]] int degree() const;
  [[nodiscard]] bool is_zero() const { return degree() < 0; }

  /// *this[k + y_shift] += scale * src[k]; throws PolyError on truncation mismatch.
  void axpy_shift(const ContactPolynomial& src, const DoubleDouble& scale, int y_shift);

  /// Horner evaluation at analysis precision.
  [[nodiscard]] AnalysisReal eval(const AnalysisReal& y) const;

  friend bool operator==(const ContactPolynomial&, const ContactPolynomial&) = default;

 private:
  std::vector<DoubleDouble> coeffs_;
};

ContactPolynomial sub(const ContactPolynomial& p, const ContactPolynomial& q);

/// p(y) -> p(y^2), truncated to `trunc_degree` (defaults to p's own).
/// Throws if a nonzero term would land beyond the truncation.
ContactPolynomial compose_square(const ContactPolynomial& p, int trunc_degree = -1);

/// p(y) -> p(y) / y. Requires p[0] == 0.
ContactPolynomial scale_div_y(const ContactPolynomial& p);

/// Largest |p[k] - q[k]| over the common index range (analysis precision).
AnalysisReal max_abs_diff(const ContactPolynomial& p, const ContactPolynomial& q);

/// CSV with header "k,coefficient", one full-precision row per index.
void write_csv(std::ostream& out, const ContactPolynomial& p);
ContactPolynomial read_csv(std::istream& in);

}  // namespace sawstrip
