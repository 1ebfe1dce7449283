#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "exmix/configs.hpp"
#include "exmix/engine.hpp"
#include "exmix/rng.hpp"

namespace exmix {

// One update of the driving noise: a clock ring on an edge plus a biased
// coin, heads with probability p.
struct Event {
  double time = 0.0;  // continuous time, or step index for discrete chains
  Edge edge{};
  bool heads = false;
};

enum class ProcessTag { kCaDiscrete, kCaContinuous, kMetropolis, kExFinite, kExZ, kEx2Z };

struct ProcessKind {
  ProcessTag tag;
  int n = 0;
  int k = 0;
  double p = 0.5;

  void validate() const;
};

// ---------------------------------------------------------------------------
// Single-event applications (pure).

// Cards: heads sorts the pair ascending by label, tails descending.
Permutation apply_sort_event(const Permutation& pi, std::int64_t edge, bool heads);
// 0/1 words: heads yields (1,0) on differing pairs, tails (0,1); equal pairs
// are untouched.
FiniteConfig apply_sort_event(const FiniteConfig& x, std::int64_t edge, bool heads);
ZConfig apply_sort_event(const ZConfig& a, std::int64_t edge, bool heads);
// {0,1,2}: heads puts the higher-priority symbol left (1 over 2 over 0),
// tails the opposite; throws if the edge leaves the window.
SecondClassConfig apply_sort_event(const SecondClassConfig& d, std::int64_t edge, bool heads);

// Metropolis: a decreasing pair always swaps; an increasing pair swaps iff
// u < theta with theta = (1-p)/p. Requires p >= 1/2.
Permutation apply_metropolis_step(const Permutation& pi, std::int64_t edge, double u, double p);

// ---------------------------------------------------------------------------
// Edges able to change the state (differing pairs).

std::vector<Edge> active_edges(const Permutation& pi);  // all N-1 edges
std::vector<Edge> active_edges(const FiniteConfig& x);
std::vector<Edge> active_edges(const ZConfig& a);
std::vector<Edge> active_edges(const SecondClassConfig& d);  // window interior only

// ---------------------------------------------------------------------------
// Discrete-time runs: each step picks a uniform edge and a coin.

Permutation run_discrete(const Permutation& start, std::uint64_t steps, const EventStream& s);
FiniteConfig run_discrete(const FiniteConfig& start, std::uint64_t steps, const EventStream& s);
Permutation run_metropolis(const Permutation& start, std::uint64_t steps, const EventStream& s);

// ---------------------------------------------------------------------------
// Continuous-time runs. Hooks see the applied updates (rings on differing
// pairs) in nondecreasing time order; rings on equal pairs leave the state
// unchanged and are elided.

using EventHook = std::function<void(const Event&)>;

Permutation run_continuous(const Permutation& start, double horizon, const EventStream& s,
                           const EventHook& hook = nullptr);
FiniteConfig run_continuous(const FiniteConfig& start, double horizon, const EventStream& s,
                            const EventHook& hook = nullptr);
// Exact on all of Z: the window of materialised sites grows on demand, the
// constant tails of states in A supply the values outside.
ZConfig run_continuous(const ZConfig& start, double horizon, const EventStream& s,
                       const EventHook& hook = nullptr);

// Windowed second-class runs cannot extend their i.i.d. tails, so an update
// reaching the window edge invalidates the run instead of silently truncating.
struct WindowedRunResult {
  SecondClassConfig state;
  bool valid = true;
  std::int64_t min_changed = 0;
  std::int64_t max_changed = 0;
};
WindowedRunResult run_continuous(const SecondClassConfig& start, double horizon,
                                 const EventStream& s, const EventHook& hook = nullptr);

// ---------------------------------------------------------------------------
// Helpers shared by coupling and observables.

std::vector<std::int8_t> zconfig_window_values(const ZConfig& a, std::int64_t lo, std::int64_t hi);
ZConfig zconfig_from_engine(const WindowEngine& eng, int member);

// All rings on edges [lo_edge, hi_edge] up to t_end, merged in time order.
std::vector<Event> merged_rings(const EventStream& s, std::int64_t lo_edge, std::int64_t hi_edge,
                                double t_end);

}  // namespace exmix
