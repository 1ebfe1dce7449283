#pragma once

#include <cmath>
#include <cstdint>

namespace exmix {

// Counter-based randomness: every draw is a pure function of
// (seed, stream tag, key, counter). There is no mutable generator state, so
// any consumer can regenerate the same per-edge clock and coin sequences in
// any order. That is exactly what the canonical couplings need: one set of
// clocks and one set of coins shared by every process, independent of how
// many processes read them or in which order.

constexpr std::uint64_t kMixGamma = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

inline std::uint64_t hash_u64(std::uint64_t h, std::uint64_t v) {
  return mix64((h + kMixGamma) ^ mix64(v + kMixGamma));
}

// Zigzag encoding so negative lattice coordinates hash cleanly.
inline std::uint64_t zigzag(std::int64_t v) {
  return (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63);
}

// Uniform in the open interval (0,1); safe to feed into std::log.
inline double u64_to_unit(std::uint64_t x) {
  return (static_cast<double>(x >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

enum StreamTag : std::uint64_t {
  kTagClock = 1,    // per-edge exponential clock increments
  kTagCoin = 2,     // per-ring biased coins
  kTagStepEdge = 3, // discrete chain: edge choice per step
  kTagStepCoin = 4, // discrete chain: coin per step
  kTagStepU = 5,    // discrete chain: Metropolis uniform per step
  kTagSite = 6,     // i.i.d. site initialisation
  kTagReplica = 7,  // replica seed derivation
  kTagDraw = 8,     // generic sampler draws
};

// Deterministic source of events for one process family. Same seed and p
// give identical per-edge ring times and coins no matter which edges are
// queried or in what order, so restricting to a sub-range of edges yields
// exactly the sub-sequence of events on those edges.
class EventStream {
 public:
  EventStream(std::uint64_t seed, double p) : seed_(seed), p_(p) {}

  std::uint64_t seed() const { return seed_; }
  double p() const { return p_; }

  double uniform(std::uint64_t tag, std::uint64_t key, std::uint64_t counter) const {
    return u64_to_unit(hash_u64(hash_u64(hash_u64(seed_, tag), key), counter));
  }

  // Waiting time between ring (idx-1) and ring idx of the unit-rate clock on
  // `edge`; ring times are the partial sums.
  double ring_gap(std::int64_t edge, std::uint64_t idx) const {
    return -std::log(uniform(kTagClock, zigzag(edge), idx));
  }

  bool coin_heads(std::int64_t edge, std::uint64_t idx) const {
    return uniform(kTagCoin, zigzag(edge), idx) < p_;
  }

  // Discrete-time driving: uniform edge in [lo, lo+n_edges) plus a coin.
  std::int64_t step_edge(std::uint64_t step, std::int64_t lo, std::int64_t n_edges) const {
    double u = uniform(kTagStepEdge, step, 0);
    auto k = static_cast<std::int64_t>(u * static_cast<double>(n_edges));
    if (k >= n_edges) k = n_edges - 1;
    return lo + k;
  }

  bool step_heads(std::uint64_t step) const { return uniform(kTagStepCoin, step, 0) < p_; }

  double step_u(std::uint64_t step) const { return uniform(kTagStepU, step, 0); }

  // i.i.d. site randomness for initial conditions, independent of the clocks.
  double site_u(std::int64_t site, std::uint64_t salt) const {
    return uniform(kTagSite, zigzag(site), salt);
  }

 private:
  std::uint64_t seed_;
  double p_;
};

// Forward-only cursor into one edge's ring sequence.
struct RingCursor {
  std::uint64_t next_idx = 0;
  double next_time = 0.0;
  bool primed = false;

  void prime(const EventStream& s, std::int64_t edge) {
    if (!primed) {
      next_time = s.ring_gap(edge, 0);
      next_idx = 0;
      primed = true;
    }
  }
  void advance(const EventStream& s, std::int64_t edge) {
    ++next_idx;
    next_time += s.ring_gap(edge, next_idx);
  }
  // First ring strictly after time t.
  void advance_past(const EventStream& s, std::int64_t edge, double t) {
    prime(s, edge);
    while (next_time <= t) advance(s, edge);
  }
};

// Replica fan-out: derived seeds are decorrelated and extendable (adding
// replicas never changes existing ones).
inline std::uint64_t replica_seed(std::uint64_t master, std::uint64_t replica_index) {
  return hash_u64(hash_u64(master, kTagReplica), replica_index);
}

// Small deterministic sampler handle for measures / shuffles in tests.
class DrawSource {
 public:
  explicit DrawSource(std::uint64_t seed) : seed_(seed) {}
  double next_unit() { return u64_to_unit(hash_u64(hash_u64(seed_, kTagDraw), counter_++)); }
  std::uint64_t next_u64() { return hash_u64(hash_u64(seed_, kTagDraw), counter_++); }
  // Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(next_unit() * static_cast<double>(n)) % n;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace exmix
