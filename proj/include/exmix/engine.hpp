#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "exmix/rng.hpp"

namespace exmix {

// Continuous-time kernel for the particle processes. Every edge of the
// lattice carries a unit-rate clock realised lazily from the counter-based
// stream, so the rings an edge produces are identical no matter which
// process, member or coupled family reads them. Only edges where some member
// holds a differing pair are tracked; rings on edges outside that set are
// no-ops and are skipped by jumping the edge cursor forward, which preserves
// ring indices (and therefore coins).

enum class WindowMode {
  kFinite,    // hard lattice [lo, hi], edges lo..hi-1, nothing outside
  kWindowed,  // window cut out of an infinite state; breaching it flags the run
  kGrowable,  // infinite state with constant tails; window extends exactly
};

inline int particle_rank(std::int8_t v) {
  // Priority moving left: 1 over 2 over 0.
  return v == 1 ? 2 : (v == 2 ? 1 : 0);
}

class WindowEngine {
 public:
  WindowEngine(const EventStream& stream, WindowMode mode, std::int64_t lo, std::int64_t hi,
               std::int8_t left_fill = 1, std::int8_t right_fill = 0)
      : stream_(stream), mode_(mode), lo_(lo), hi_(hi), left_fill_(left_fill),
        right_fill_(right_fill) {
    if (hi_ <= lo_) throw std::invalid_argument("WindowEngine: window must hold >= 2 sites");
    cursors_.resize(static_cast<std::size_t>(hi_ - lo_));
    active_.assign(static_cast<std::size_t>(hi_ - lo_), 0);
  }

  int add_member(std::vector<std::int8_t> vals) {
    if (static_cast<std::int64_t>(vals.size()) != hi_ - lo_ + 1)
      throw std::invalid_argument("WindowEngine: member size must match window");
    members_.push_back(Member{std::move(vals), std::numeric_limits<std::int64_t>::min() / 2,
                              std::numeric_limits<std::int64_t>::max() / 2});
    return static_cast<int>(members_.size()) - 1;
  }

  // Limit the edges a member reacts to (inclusive edge range). Used by the
  // finite-to-infinite coupling, where the embedded finite process only sees
  // its own interior edges.
  void restrict_member(int idx, std::int64_t lo_edge, std::int64_t hi_edge) {
    members_[static_cast<std::size_t>(idx)].support_lo = lo_edge;
    members_[static_cast<std::size_t>(idx)].support_hi = hi_edge;
  }

  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  double now() const { return now_; }
  bool boundary_breached() const { return breached_; }
  std::size_t member_count() const { return members_.size(); }
  std::int64_t min_changed_site() const { return min_changed_; }
  std::int64_t max_changed_site() const { return max_changed_; }

  std::int8_t value(int member, std::int64_t site) const {
    const auto& m = members_[static_cast<std::size_t>(member)];
    if (site < lo_) return left_fill_;
    if (site > hi_) return right_fill_;
    return m.vals[static_cast<std::size_t>(site - lo_)];
  }

  const std::vector<std::int8_t>& values(int member) const {
    return members_[static_cast<std::size_t>(member)].vals;
  }

  // Must be called once after all members are added and before run_until.
  void prime() {
    if (primed_) return;
    primed_ = true;
    for (std::int64_t e = lo_; e < hi_; ++e)
      if (family_active(e)) activate(e, 0.0);
  }

  struct NoHook {
    void operator()(double, std::int64_t, bool) const {}
  };

  // Applies every ring on a family-active edge with time <= t_end, in time
  // order (ties broken by edge). The hook runs after each applied ring.
  template <class Hook>
  void run_until(double t_end, Hook&& hook) {
    prime();
    while (!heap_.empty()) {
      HeapItem top = heap_.front();
      if (top.t > t_end) break;
      std::pop_heap(heap_.begin(), heap_.end(), later);
      heap_.pop_back();
      std::size_t ci = static_cast<std::size_t>(top.edge - lo_);
      if (!active_[ci]) continue;
      if (top.t != cursors_[ci].next_time) continue;  // stale entry
      bool heads = stream_.coin_heads(top.edge, cursors_[ci].next_idx);
      now_ = top.t;
      // Advance the cursor before applying: applying may grow the window,
      // which shifts the cursor array.
      cursors_[ci].advance(stream_, top.edge);
      heap_.push_back({cursors_[ci].next_time, top.edge});
      std::push_heap(heap_.begin(), heap_.end(), later);
      apply_ring(top.edge, heads);
      refresh_activity(top.edge, top.t);
      hook(top.t, top.edge, heads);
    }
    now_ = t_end;
  }

  void run_until(double t_end) { run_until(t_end, NoHook{}); }

 private:
  struct Member {
    std::vector<std::int8_t> vals;
    std::int64_t support_lo, support_hi;
  };

  struct HeapItem {
    double t;
    std::int64_t edge;
  };

  static bool later(const HeapItem& a, const HeapItem& b) {
    if (a.t != b.t) return a.t > b.t;
    return a.edge > b.edge;
  }

  bool member_differs(const Member& m, std::int64_t e) const {
    if (e < m.support_lo || e > m.support_hi) return false;
    return m.vals[static_cast<std::size_t>(e - lo_)] !=
           m.vals[static_cast<std::size_t>(e - lo_ + 1)];
  }

  bool family_active(std::int64_t e) const {
    for (const auto& m : members_)
      if (member_differs(m, e)) return true;
    return false;
  }

  void activate(std::int64_t e, double t) {
    std::size_t ci = static_cast<std::size_t>(e - lo_);
    active_[ci] = 1;
    cursors_[ci].advance_past(stream_, e, t);
    heap_.push_back({cursors_[ci].next_time, e});
    std::push_heap(heap_.begin(), heap_.end(), later);
  }

  void apply_ring(std::int64_t e, bool heads) {
    bool changed = false;
    for (auto& m : members_) {
      if (e < m.support_lo || e > m.support_hi) continue;
      auto& a = m.vals[static_cast<std::size_t>(e - lo_)];
      auto& b = m.vals[static_cast<std::size_t>(e - lo_ + 1)];
      if (a == b) continue;
      int ra = particle_rank(a), rb = particle_rank(b);
      if (heads ? (ra < rb) : (ra > rb)) {
        std::swap(a, b);
        changed = true;
      }
    }
    if (changed) {
      min_changed_ = std::min(min_changed_, e);
      max_changed_ = std::max(max_changed_, e + 1);
      if (mode_ == WindowMode::kGrowable) {
        if (e <= lo_ + 1) grow(true);
        if (e + 1 >= hi_ - 1) grow(false);
      } else if (mode_ == WindowMode::kWindowed) {
        if (e <= lo_ || e + 1 >= hi_) breached_ = true;
      }
    }
  }

  void refresh_activity(std::int64_t e, double t) {
    for (std::int64_t j = std::max(e - 1, lo_); j <= std::min(e + 1, hi_ - 1); ++j) {
      std::size_t ci = static_cast<std::size_t>(j - lo_);
      bool now_active = family_active(j);
      if (now_active && !active_[ci]) {
        activate(j, t);
      } else if (!now_active) {
        active_[ci] = 0;  // stale heap entries are discarded lazily
      }
    }
  }

  void grow(bool left) {
    const std::int64_t pad = 64;
    if (left) {
      for (auto& m : members_)
        m.vals.insert(m.vals.begin(), static_cast<std::size_t>(pad), left_fill_);
      cursors_.insert(cursors_.begin(), static_cast<std::size_t>(pad), RingCursor{});
      active_.insert(active_.begin(), static_cast<std::size_t>(pad), 0);
      lo_ -= pad;
      // Only the seam edge can be active; everything deeper is fill-fill.
      std::int64_t seam = lo_ + pad - 1;
      if (family_active(seam) && !active_[static_cast<std::size_t>(seam - lo_)])
        activate(seam, now_);
    } else {
      for (auto& m : members_)
        m.vals.insert(m.vals.end(), static_cast<std::size_t>(pad), right_fill_);
      cursors_.insert(cursors_.end(), static_cast<std::size_t>(pad), RingCursor{});
      active_.insert(active_.end(), static_cast<std::size_t>(pad), 0);
      hi_ += pad;
      std::int64_t seam = hi_ - pad;
      if (family_active(seam) && !active_[static_cast<std::size_t>(seam - lo_)])
        activate(seam, now_);
    }
  }

  EventStream stream_;
  WindowMode mode_;
  std::int64_t lo_, hi_;
  std::int8_t left_fill_, right_fill_;
  std::vector<Member> members_;
  std::vector<RingCursor> cursors_;  // cursors_[e - lo_] drives edge e
  std::vector<std::uint8_t> active_;
  std::vector<HeapItem> heap_;
  double now_ = 0.0;
  bool primed_ = false;
  bool breached_ = false;
  std::int64_t min_changed_ = std::numeric_limits<std::int64_t>::max();
  std::int64_t max_changed_ = std::numeric_limits<std::int64_t>::min();
};

}  // namespace exmix
