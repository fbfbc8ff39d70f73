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

// Site-by-site transfer-matrix sweep, generic over the coefficient algebra.
//
// An Algebra provides
//   using Coef;
//   std::size_t stride() const;                     // coefficients per signature
//   void accumulate(Coef* dst, const Coef* src, int n_x, int n_y) const;
//                                                   // dst += x^n_x y^n_y src
//   bool is_zero(const Coef* p) const;
//
// Each move consumes the cut slots of one site and emits its outgoing edges.
// Source signatures are kept sorted; every sweep first lists transitions,
// then groups them by target and sums each group in source order, so the
// result does not depend on how the groups are split across threads.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "sawstrip/lattice.hpp"
#include "sawstrip/signature.hpp"

namespace sawstrip::detail {

struct Transition {
  Signature::Bits target;
  std::uint32_t source;
  std::uint8_t n_x;
  std::uint8_t n_y;
};

struct Completion {
  std::uint32_t source;
  std::uint8_t n_x;
  std::uint8_t n_y;
  Boundary kind;
};

/// Enumerates the local continuations of `sig` across `move`.
/// `past_origin` tells whether the origin site has already been swept.
template <class EmitT, class EmitC>
void expand_site(Signature sig, std::uint32_t source, const SiteMove& move, bool past_origin,
                 EmitT&& emit_target, EmitC&& emit_completion) {
  const int first = move.first_slot;
  const int n_in = move.n_in;
  const int n_out = move.n_out;

  std::array<EdgeState, 4> in{};
  int occupied = 0;
  std::array<int, 2> occ_pos{};
  for (int k = 0; k < n_in; ++k) {
    in[static_cast<std::size_t>(k)] = sig.slot(first + k);
    if (in[static_cast<std::size_t>(k)] != EdgeState::Empty) {
      if (occupied == 2) return;  // three edges into one site
      occ_pos[static_cast<std::size_t>(occupied++)] = k;
    }
  }
  if (!move.exists) {
    if (occupied != 0) return;
  }

  const Signature::Bits run_mask =
      (n_in == 0) ? 0 : (((Signature::Bits{1} << (2 * n_in)) - 1) << (2 * first));

  // Replace the input run by `outputs`, moving the tail of the cut.
  auto splice = [&](Signature s, const std::array<EdgeState, 4>& outputs) {
    const Signature::Bits kind_bits = s.bits() & ~((Signature::Bits{1} << 60) - 1);
    const Signature::Bits slots = s.slot_bits();
    const Signature::Bits low = slots & ((Signature::Bits{1} << (2 * first)) - 1);
    Signature::Bits high = (slots & ~run_mask) >> (2 * (first + n_in));
    Signature::Bits mid = 0;
    for (int k = 0; k < n_out; ++k) {
      mid |= Signature::Bits{static_cast<std::uint8_t>(outputs[static_cast<std::size_t>(k)])}
             << (2 * k);
    }
    high <<= 2 * (first + n_out);
    return Signature(kind_bits | low | (mid << (2 * first)) | high);
  };

  const std::uint8_t site_y = move.site_weighted ? 1 : 0;
  auto edge_y = [&](int out) -> std::uint8_t {
    return static_cast<std::uint8_t>((move.out_weighted >> out) & 1u);
  };
  auto allowed = [&](int out) { return ((move.out_allowed >> out) & 1u) != 0; };

  const std::array<EdgeState, 4> none{};

  auto push = [&](Signature s, std::uint8_t n_y) {
    if (past_origin || move.origin) {
      if (s.slot_bits() == 0) return;  // nothing left of the walk
    }
    emit_target(Transition{s.bits(), source, 1, n_y});
  };

  // Walk endpoint through a half-edge of this site. Returns the boundary
  // class recorded for it, or None if no endpoint may be placed.
  auto endpoint_kinds = [&](Signature s, auto&& with_kind) {
    if (move.origin) {
      for (Boundary h : move.half_edges) {
        if (h == Boundary::Alpha) with_kind(h, true);
      }
      return;
    }
    if (s.end_kind() != Boundary::None) return;
    for (Boundary h : move.half_edges) {
      if (h != Boundary::None) with_kind(h, false);
    }
  };

  if (occupied == 0) {
    if (!move.origin) {
      // site left empty
      emit_target(Transition{splice(sig, none).bits(), source, 0, 0});
    }
    if (!move.exists) return;
    if (!move.origin) {
      for (int p = 0; p < n_out; ++p) {
        if (!allowed(p)) continue;
        for (int q = p + 1; q < n_out; ++q) {
          if (!allowed(q)) continue;
          std::array<EdgeState, 4> out{};
          out[static_cast<std::size_t>(p)] = EdgeState::LoopLower;
          out[static_cast<std::size_t>(q)] = EdgeState::LoopUpper;
          push(splice(sig, out), static_cast<std::uint8_t>(site_y + edge_y(p) + edge_y(q)));
        }
      }
    }
    endpoint_kinds(sig, [&](Boundary h, bool is_origin) {
      for (int p = 0; p < n_out; ++p) {
        if (!allowed(p)) continue;
        std::array<EdgeState, 4> out{};
        out[static_cast<std::size_t>(p)] = EdgeState::FreeEnd;
        Signature s = splice(sig, out);
        if (!is_origin) s.set_end_kind(h);
        push(s, static_cast<std::uint8_t>(site_y + edge_y(p)));
      }
    });
    return;
  }

  if (occupied == 1) {
    const int pos = first + occ_pos[0];
    const EdgeState s_in = in[static_cast<std::size_t>(occ_pos[0])];
    if (!move.origin) {
      for (int p = 0; p < n_out; ++p) {
        if (!allowed(p)) continue;
        std::array<EdgeState, 4> out{};
        out[static_cast<std::size_t>(p)] = s_in;
        push(splice(sig, out), static_cast<std::uint8_t>(site_y + edge_y(p)));
      }
    }
    endpoint_kinds(sig, [&](Boundary h, bool is_origin) {
      if (s_in == EdgeState::FreeEnd) {
        Signature rest = splice(sig, none);
        if (rest.slot_bits() != 0) return;
        const Boundary kind = is_origin ? sig.end_kind() : h;
        if (kind == Boundary::None) return;
        if (!is_origin && !past_origin) return;
        emit_completion(Completion{source, 1, site_y, kind});
        return;
      }
      Signature s = sig;
      s.set_slot(s.partner(pos), EdgeState::FreeEnd);
      s = splice(s, none);
      if (!is_origin) s.set_end_kind(h);
      push(s, site_y);
    });
    return;
  }

  // two strands meet at this site
  if (move.origin) return;
  const int pa = first + occ_pos[0];
  const int pb = first + occ_pos[1];
  const EdgeState a = in[static_cast<std::size_t>(occ_pos[0])];
  const EdgeState b = in[static_cast<std::size_t>(occ_pos[1])];
  Signature s = sig;
  using E = EdgeState;
  if (a == E::LoopLower && b == E::LoopUpper) {
    return;  // would close a loop
  } else if (a == E::LoopUpper && b == E::LoopLower) {
    // two arcs merge; their outer ends stay matched
  } else if (a == E::LoopLower && b == E::LoopLower) {
    s.set_slot(s.partner(pb), E::LoopLower);
  } else if (a == E::LoopUpper && b == E::LoopUpper) {
    s.set_slot(s.partner(pa), E::LoopUpper);
  } else if (a == E::FreeEnd && b == E::FreeEnd) {
    Signature rest = splice(sig, none);
    if (rest.slot_bits() != 0) return;
    if (sig.end_kind() == Boundary::None || !past_origin) return;
    emit_completion(Completion{source, 1, site_y, sig.end_kind()});
    return;
  } else if (a == E::FreeEnd) {
    s.set_slot(s.partner(pb), E::FreeEnd);
  } else {
    s.set_slot(s.partner(pa), E::FreeEnd);
  }
  push(splice(s, none), site_y);
}

/// Runs `body(begin, end)` over [0, n) split into `threads` contiguous chunks.
template <class Body>
void parallel_ranges(std::size_t n, int threads, Body&& body) {
  if (threads <= 1 || n < 64) {
    body(std::size_t{0}, n);
    return;
  }
  const auto t = static_cast<std::size_t>(threads);
  std::vector<std::jthread> pool;
  pool.reserve(t - 1);
  const std::size_t chunk = (n + t - 1) / t;
  for (std::size_t i = 1; i < t; ++i) {
    const std::size_t b = i * chunk;
    const std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&body, b, e] { body(b, e); });
  }
  body(0, std::min(n, chunk));
}

template <class Algebra>
class Engine {
 public:
  using Coef = typename Algebra::Coef;

  Engine(SiteStream stream, Algebra algebra, int threads)
      : stream_(std::move(stream)), alg_(std::move(algebra)), threads_(std::max(1, threads)) {
    const std::size_t w = alg_.stride();
    sigs_.push_back(0);
    data_.assign(w, Coef{});
    alg_.set_unit(data_.data());
    for (auto& r : results_) r.assign(w, Coef{});
  }

  [[nodiscard]] bool done() const { return next_ >= stream_.moves.size(); }
  [[nodiscard]] std::size_t position() const { return next_; }
  [[nodiscard]] const SiteStream& stream() const { return stream_; }
  [[nodiscard]] const Algebra& algebra() const { return alg_; }
  [[nodiscard]] std::size_t peak_states() const { return peak_; }
  [[nodiscard]] const std::vector<Signature::Bits>& signatures() const { return sigs_; }
  [[nodiscard]] const std::vector<Coef>& data() const { return data_; }
  [[nodiscard]] const std::vector<Coef>& result(Boundary b) const {
    return results_[static_cast<std::size_t>(b)];
  }
  void set_threads(int t) { threads_ = std::max(1, t); }
  void set_check_signatures(bool on) { check_ = on; }

  /// Restores a saved sweep position (checkpoint resume).
  void restore(std::size_t next, std::vector<Signature::Bits> sigs, std::vector<Coef> data,
               std::array<std::vector<Coef>, 4> results, std::size_t peak) {
    next_ = next;
    sigs_ = std::move(sigs);
    data_ = std::move(data);
    results_ = std::move(results);
    peak_ = peak;
  }

  void step() {
    const SiteMove& move = stream_.moves[next_];
    const bool past_origin = next_ > stream_.origin_index;
    const std::size_t w = alg_.stride();

    transitions_.clear();
    completions_.clear();
    for (std::size_t i = 0; i < sigs_.size(); ++i) {
      expand_site(
          Signature(sigs_[i]), static_cast<std::uint32_t>(i), move, past_origin,
          [this](const Transition& t) { transitions_.push_back(t); },
          [this](const Completion& c) { completions_.push_back(c); });
    }

    for (const Completion& c : completions_) {
      alg_.accumulate(results_[static_cast<std::size_t>(c.kind)].data(),
                      data_.data() + c.source * w, c.n_x, c.n_y);
    }

    std::stable_sort(transitions_.begin(), transitions_.end(),
                     [](const Transition& a, const Transition& b) { return a.target < b.target; });

    group_start_.clear();
    new_sigs_.clear();
    for (std::size_t k = 0; k < transitions_.size(); ++k) {
      if (k == 0 || transitions_[k].target != transitions_[k - 1].target) {
        group_start_.push_back(k);
        new_sigs_.push_back(transitions_[k].target);
      }
    }
    group_start_.push_back(transitions_.size());

    const std::size_t n_new = new_sigs_.size();
    new_data_.assign(n_new * w, Coef{});
    keep_.assign(n_new, 1);
    parallel_ranges(n_new, threads_, [&](std::size_t b, std::size_t e) {
      for (std::size_t g = b; g < e; ++g) {
        Coef* dst = new_data_.data() + g * w;
        for (std::size_t k = group_start_[g]; k < group_start_[g + 1]; ++k) {
          const Transition& t = transitions_[k];
          alg_.accumulate(dst, data_.data() + static_cast<std::size_t>(t.source) * w, t.n_x,
                          t.n_y);
        }
        keep_[g] = alg_.is_zero(dst) ? 0 : 1;
      }
    });

    // compact: drop signatures whose polynomial vanished under truncation
    std::size_t out = 0;
    for (std::size_t g = 0; g < n_new; ++g) {
      if (!keep_[g]) continue;
      if (out != g) {
        new_sigs_[out] = new_sigs_[g];
        std::copy_n(new_data_.begin() + static_cast<std::ptrdiff_t>(g * w), w,
                    new_data_.begin() + static_cast<std::ptrdiff_t>(out * w));
      }
      ++out;
    }
    new_sigs_.resize(out);
    new_data_.resize(out * w);

    if (check_) {
      for (auto bits : new_sigs_) {
        if (!Signature(bits).well_formed(stream_.max_slots)) {
          throw std::logic_error("malformed signature " +
                                 Signature(bits).to_string(stream_.max_slots));
        }
      }
    }

    sigs_.swap(new_sigs_);
    data_.swap(new_data_);
    peak_ = std::max(peak_, sigs_.size());
    ++next_;
  }

  void run(std::size_t max_moves) {
    for (std::size_t k = 0; k < max_moves && !done(); ++k) step();
  }

 private:
  SiteStream stream_;
  Algebra alg_;
  int threads_;
  bool check_ = false;
  std::size_t next_ = 0;
  std::size_t peak_ = 1;
  std::vector<Signature::Bits> sigs_;
  std::vector<Coef> data_;
  std::array<std::vector<Coef>, 4> results_;

  std::vector<Transition> transitions_;
  std::vector<Completion> completions_;
  std::vector<std::size_t> group_start_;
  std::vector<Signature::Bits> new_sigs_;
  std::vector<Coef> new_data_;
  std::vector<std::uint8_t> keep_;
};

}  // namespace sawstrip::detail
