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

#include "sawstrip/transfer_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <bit>
#include <chrono>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <thread>

#include "engine.hpp"

namespace sawstrip {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

// Contact polynomials at fixed x. Each block starts with a header element
// holding the nonzero degree range [lo, hi) so sparse states stay cheap; the
// y^k coefficient follows at offset k + 1.
class ContactAlgebra {
 public:
  using Coef = DoubleDouble;

  // Below this the low word goes subnormal and products turn into noise that
  // y^k later amplifies; such terms are negligible wherever the series is usable.
  static constexpr double kFlushBelow = 1e-270;

  ContactAlgebra(int trunc_degree, DoubleDouble x)
      : width_(static_cast<std::size_t>(trunc_degree) + 1), x_(x) {}

  [[nodiscard]] std::size_t stride() const { return width_ + 1; }
  void set_unit(Coef* p) const {
    p[0] = DoubleDouble(0.0, 1.0);
    p[1] = DoubleDouble(1.0);
  }

  // Coefficients are nonnegative, so the cheaper same-sign sum is exact enough.
  static void add_to(DoubleDouble& d, const DoubleDouble& v) {
    DoubleDouble s = dd_detail::two_sum(d.hi, v.hi);
    s.lo += d.lo + v.lo;
    d = dd_detail::quick_two_sum(s.hi, s.lo);
  }

  void accumulate(Coef* dst, const Coef* src, int n_x, int n_y) const {
    const auto lo = static_cast<std::size_t>(src[0].hi);
    const auto hi = std::min(static_cast<std::size_t>(src[0].lo), width_ - static_cast<std::size_t>(n_y));
    if (lo >= hi) return;
    const Coef* in = src + 1;
    Coef* out = dst + 1 + n_y;
    if (n_x == 0) {
      for (std::size_t k = lo; k < hi; ++k) add_to(out[k], in[k]);
    } else {
      for (std::size_t k = lo; k < hi; ++k) {
        const DoubleDouble v = x_ * in[k];
        if (std::abs(v.hi) >= kFlushBelow) add_to(out[k], v);
      }
    }
    const auto d_lo = static_cast<double>(lo + static_cast<std::size_t>(n_y));
    const auto d_hi = static_cast<double>(hi + static_cast<std::size_t>(n_y));
    if (dst[0].lo <= dst[0].hi) {
      dst[0] = DoubleDouble(d_lo, d_hi);
    } else {
      dst[0] = DoubleDouble(std::min(dst[0].hi, d_lo), std::max(dst[0].lo, d_hi));
    }
  }

  [[nodiscard]] bool is_zero(const Coef* p) const { return p[0].lo <= p[0].hi; }

 private:
  std::size_t width_;
  DoubleDouble x_;
};

// Exact two-variable counts, x-degree <= n_max, y-degree <= n_max.
class CountAlgebra {
 public:
  using Coef = std::uint64_t;

  explicit CountAlgebra(int n_max) : n_(static_cast<std::size_t>(n_max) + 1) {}

  [[nodiscard]] std::size_t stride() const { return n_ * n_; }
  void set_unit(Coef* p) const { p[0] = 1; }

  void accumulate(Coef* dst, const Coef* src, int n_x, int n_y) const {
    const auto sx = static_cast<std::size_t>(n_x);
    const auto sy = static_cast<std::size_t>(n_y);
    for (std::size_t i = 0; i + sx < n_; ++i) {
      for (std::size_t j = 0; j + sy < n_; ++j) {
        const Coef v = src[i * n_ + j];
        if (v == 0) continue;
        Coef& d = dst[(i + sx) * n_ + j + sy];
        if (__builtin_add_overflow(d, v, &d)) {
          throw std::overflow_error("walk count exceeds 64-bit range");
        }
      }
    }
  }

  [[nodiscard]] bool is_zero(const Coef* p) const {
    for (std::size_t k = 0; k < n_ * n_; ++k) {
      if (p[k] != 0) return false;
    }
    return true;
  }

 private:
  std::size_t n_;
};

using ContactEngine = detail::Engine<ContactAlgebra>;

// Blocks carry a leading support header; see ContactAlgebra.
ContactPolynomial block_poly(const DoubleDouble* block, int trunc_degree) {
  return ContactPolynomial(
      trunc_degree,
      std::vector<DoubleDouble>(block + 1, block + 2 + static_cast<std::ptrdiff_t>(trunc_degree)));
}

ContactPolynomial to_poly(const std::vector<DoubleDouble>& v, int trunc_degree) {
  return block_poly(v.data(), trunc_degree);
}

// little-endian primitive IO
template <class T>
void put(std::ostream& out, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) {
    throw CheckpointError("truncated checkpoint");
  }
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

constexpr char kMagic[8] = {'S', 'A', 'W', 'T', 'M', 'C', 'K', '\0'};
constexpr std::uint32_t kCheckpointVersion = 2;

}  // namespace

StateMap::StateMap(std::vector<Signature::Bits> sigs, std::vector<DoubleDouble> data,
                   int trunc_degree)
    : sigs_(std::move(sigs)), data_(std::move(data)), trunc_degree_(trunc_degree) {}

ContactPolynomial StateMap::polynomial(std::size_t i) const {
  const auto w = static_cast<std::size_t>(trunc_degree_) + 2;
  return block_poly(data_.data() + i * w, trunc_degree_);
}

std::optional<ContactPolynomial> StateMap::find(Signature s) const {
  const auto it = std::lower_bound(sigs_.begin(), sigs_.end(), s.bits());
  if (it == sigs_.end() || *it != s.bits()) return std::nullopt;
  return polynomial(static_cast<std::size_t>(it - sigs_.begin()));
}

struct TransferMatrix::Impl {
  StripSpec spec;
  EngineOptions options;
  bool is_patch = false;
  ContactEngine engine;
  double seconds = 0.0;

  Impl(const StripSpec& s, EngineOptions o, SiteStream stream, bool patch)
      : spec(s),
        options(o),
        is_patch(patch),
        engine(std::move(stream), ContactAlgebra(s.trunc_degree, s.step_fugacity()),
               resolve_threads(o.threads)) {
    engine.set_check_signatures(o.check_signatures);
  }

  void step() {
    const auto t0 = std::chrono::steady_clock::now();
    engine.step();
    seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (options.max_states != 0 && engine.signatures().size() > options.max_states) {
      throw BudgetError("signature count " + std::to_string(engine.signatures().size()) +
                        " exceeds the budget of " + std::to_string(options.max_states));
    }
  }
};

TransferMatrix::TransferMatrix(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
TransferMatrix::TransferMatrix(TransferMatrix&&) noexcept = default;
TransferMatrix& TransferMatrix::operator=(TransferMatrix&&) noexcept = default;
TransferMatrix::~TransferMatrix() = default;

TransferMatrix::TransferMatrix(const StripSpec& spec, EngineOptions options)
    : impl_(std::make_unique<Impl>(spec, options, column_stream(spec, options.with_beta), false)) {}

TransferMatrix TransferMatrix::for_stream(SiteStream stream, const StripSpec& spec,
                                          EngineOptions options) {
  if (stream.max_slots > kMaxSlots) throw GeometryError("site stream too wide for the engine");
  return TransferMatrix(std::make_unique<Impl>(spec, options, std::move(stream), true));
}

bool TransferMatrix::done() const { return impl_->engine.done(); }
std::size_t TransferMatrix::position() const { return impl_->engine.position(); }
std::size_t TransferMatrix::total_moves() const { return impl_->engine.stream().moves.size(); }
const StripSpec& TransferMatrix::spec() const { return impl_->spec; }

void TransferMatrix::sweep_site() {
  if (done()) throw std::logic_error("sweep already finished");
  impl_->step();
}

void TransferMatrix::run(std::size_t max_moves) {
  for (std::size_t k = 0; k < max_moves && !done(); ++k) impl_->step();
}

StateMap TransferMatrix::states() const {
  return StateMap(impl_->engine.signatures(), impl_->engine.data(), impl_->spec.trunc_degree);
}

SeriesResult TransferMatrix::result() const {
  const ContactEngine& e = impl_->engine;
  const int m = impl_->spec.trunc_degree;
  SeriesResult r{impl_->spec, to_poly(e.result(Boundary::Alpha), m), std::nullopt, std::nullopt,
                 EngineStats{e.peak_states(), impl_->seconds}};
  if (impl_->options.with_beta || impl_->is_patch) r.B = to_poly(e.result(Boundary::Beta), m);
  if (impl_->is_patch) r.E = to_poly(e.result(Boundary::Epsilon), m);
  return r;
}

void TransferMatrix::save_checkpoint(std::ostream& out) const {
  if (impl_->is_patch) throw CheckpointError("checkpoints are only supported for strips");
  const StripSpec& s = impl_->spec;
  const ContactEngine& e = impl_->engine;
  out.write(kMagic, sizeof kMagic);
  put<std::uint32_t>(out, kCheckpointVersion);
  put<std::uint8_t>(out, static_cast<std::uint8_t>(s.lattice));
  put<std::uint8_t>(out, static_cast<std::uint8_t>(s.mode));
  put<std::uint8_t>(out, impl_->options.with_beta ? 1 : 0);
  put<std::uint8_t>(out, 0);
  put<std::int32_t>(out, s.width);
  put<std::int32_t>(out, s.half_length);
  put<std::int32_t>(out, s.trunc_degree);
  const DoubleDouble x = s.step_fugacity();
  put<double>(out, x.hi);
  put<double>(out, x.lo);
  put<std::uint64_t>(out, e.position());
  put<std::uint64_t>(out, e.peak_states());
  put<std::uint64_t>(out, e.signatures().size());
  for (auto bits : e.signatures()) put<std::uint64_t>(out, bits);
  for (const DoubleDouble& c : e.data()) {
    put<double>(out, c.hi);
    put<double>(out, c.lo);
  }
  for (int b = 0; b < 4; ++b) {
    for (const DoubleDouble& c : e.result(static_cast<Boundary>(b))) {
      put<double>(out, c.hi);
      put<double>(out, c.lo);
    }
  }
  if (!out) throw CheckpointError("failed to write checkpoint");
}

TransferMatrix TransferMatrix::load_checkpoint(std::istream& in, EngineOptions options) {
  char magic[sizeof kMagic];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof kMagic) != 0) {
    throw CheckpointError("not a sawstrip checkpoint");
  }
  if (get<std::uint32_t>(in) != kCheckpointVersion) {
    throw CheckpointError("unsupported checkpoint version");
  }
  StripSpec s;
  s.lattice = static_cast<LatticeKind>(get<std::uint8_t>(in));
  s.mode = static_cast<WeightingMode>(get<std::uint8_t>(in));
  options.with_beta = get<std::uint8_t>(in) != 0;
  (void)get<std::uint8_t>(in);
  s.width = get<std::int32_t>(in);
  s.half_length = get<std::int32_t>(in);
  s.trunc_degree = get<std::int32_t>(in);
  s.x.hi = get<double>(in);
  s.x.lo = get<double>(in);
  s.validate();
  TransferMatrix tm(s, options);
  const auto next = get<std::uint64_t>(in);
  const auto peak = get<std::uint64_t>(in);
  const auto n = get<std::uint64_t>(in);
  if (next > tm.total_moves()) throw CheckpointError("checkpoint position out of range");
  const auto w = static_cast<std::size_t>(s.trunc_degree) + 2;
  std::vector<Signature::Bits> sigs(n);
  for (auto& b : sigs) b = get<std::uint64_t>(in);
  if (!std::is_sorted(sigs.begin(), sigs.end())) throw CheckpointError("corrupt signature table");
  if (n > (std::uint64_t{1} << 40) / w) throw CheckpointError("corrupt state count");
  std::vector<DoubleDouble> data(n * w);
  for (auto& c : data) {
    c.hi = get<double>(in);
    c.lo = get<double>(in);
  }
  std::array<std::vector<DoubleDouble>, 4> results;
  for (auto& r : results) {
    r.resize(w);
    for (auto& c : r) {
      c.hi = get<double>(in);
      c.lo = get<double>(in);
    }
  }
  tm.impl_->engine.restore(next, std::move(sigs), std::move(data), std::move(results), peak);
  return tm;
}

CostEstimate estimate_cost(const StripSpec& spec) {
  const bool tri = spec.lattice == LatticeKind::Triangular;
  const double base = tri ? 31.0 : 8.0;
  const double growth = tri ? 5.35 : 2.7;
  CostEstimate c;
  c.peak_states = base * std::pow(growth, std::max(spec.width, 1) - 1);
  const double width = static_cast<double>(spec.trunc_degree + 2);
  c.bytes = 2.0 * c.peak_states * (width * sizeof(DoubleDouble) + sizeof(Signature::Bits));
  const double sites = (2.0 * spec.half_length + 1) * (spec.width + 1);
  c.seconds = 5e-9 * c.peak_states * sites * width;
  return c;
}

SeriesResult build_A(const StripSpec& spec, const EngineOptions& options) {
  TransferMatrix tm(spec, options);
  tm.run();
  return tm.result();
}

CountTable build_two_variable(const StripSpec& spec, int n_max, const EngineOptions& options) {
  if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
  detail::Engine<CountAlgebra> engine(column_stream(spec, options.with_beta), CountAlgebra(n_max),
                                      resolve_threads(options.threads));
  engine.set_check_signatures(options.check_signatures);
  while (!engine.done()) engine.step();
  CountTable table(n_max);
  const auto& r = engine.result(Boundary::Alpha);
  const auto n = static_cast<std::size_t>(n_max) + 1;
  for (int i = 0; i <= n_max; ++i) {
    for (int j = 0; j <= n_max; ++j) {
      table.at(i, j) = r[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)];
    }
  }
  return table;
}

}  // namespace sawstrip
