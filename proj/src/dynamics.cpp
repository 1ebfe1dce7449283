#include "exmix/dynamics.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace exmix {

void ProcessKind::validate() const {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("ProcessKind: p must be in [0,1]");
  switch (tag) {
    case ProcessTag::kMetropolis:
      if (p < 0.5) throw std::invalid_argument("ProcessKind: Metropolis needs p >= 1/2");
      [[fallthrough]];
    case ProcessTag::kCaDiscrete:
    case ProcessTag::kCaContinuous:
      if (n < 2) throw std::invalid_argument("ProcessKind: need N >= 2");
      break;
    case ProcessTag::kExFinite:
      if (n < 2 || k < 1 || k >= n) throw std::invalid_argument("ProcessKind: need 1 <= k < N");
      break;
    case ProcessTag::kExZ:
    case ProcessTag::kEx2Z:
      break;
  }
}

// ---------------------------------------------------------------------------
// Single events

Permutation apply_sort_event(const Permutation& pi, std::int64_t edge, bool heads) {
  if (edge < 1 || edge >= pi.size())
    throw std::invalid_argument("apply_sort_event: edge outside 1..N-1");
  Permutation out = pi;
  auto& e = out.mutable_entries();
  auto i = static_cast<std::size_t>(edge - 1);
  bool ascending = e[i] < e[i + 1];
  if (heads != ascending) std::swap(e[i], e[i + 1]);
  return out;
}

FiniteConfig apply_sort_event(const FiniteConfig& x, std::int64_t edge, bool heads) {
  if (edge < 1 || edge >= x.size())
    throw std::invalid_argument("apply_sort_event: edge outside 1..N-1");
  FiniteConfig out = x;
  auto& b = out.mutable_bits();
  auto i = static_cast<std::size_t>(edge - 1);
  if (b[i] == b[i + 1]) return out;
  b[i] = heads ? 1 : 0;
  b[i + 1] = heads ? 0 : 1;
  return out;
}

ZConfig apply_sort_event(const ZConfig& a, std::int64_t edge, bool heads) {
  std::uint8_t vi = a.value_at(edge), vj = a.value_at(edge + 1);
  if (vi == vj) return a;
  std::uint8_t ti = heads ? 1 : 0, tj = heads ? 0 : 1;
  auto sites = a.discrepancies();
  auto set_value = [&sites](std::int64_t site, std::uint8_t v) {
    bool want_disc = v != ZConfig::ground_value(site);
    auto it = std::lower_bound(sites.begin(), sites.end(), site);
    bool have_disc = it != sites.end() && *it == site;
    if (want_disc && !have_disc) sites.insert(it, site);
    if (!want_disc && have_disc) sites.erase(it);
  };
  set_value(edge, ti);
  set_value(edge + 1, tj);
  return ZConfig::from_discrepancies(std::move(sites));
}

SecondClassConfig apply_sort_event(const SecondClassConfig& d, std::int64_t edge, bool heads) {
  if (edge < d.lo() || edge >= d.hi())
    throw std::invalid_argument("apply_sort_event: edge outside window");
  SecondClassConfig out = d;
  auto& v = out.mutable_values();
  auto i = static_cast<std::size_t>(edge - d.lo());
  if (v[i] == v[i + 1]) return out;
  int ri = particle_rank(static_cast<std::int8_t>(v[i]));
  int rj = particle_rank(static_cast<std::int8_t>(v[i + 1]));
  if (heads ? (ri < rj) : (ri > rj)) {
    std::swap(v[i], v[i + 1]);
    if (d.tagged_site() == edge)
      out.set_tagged_site(edge + 1);
    else if (d.tagged_site() == edge + 1)
      out.set_tagged_site(edge);
  }
  return out;
}

Permutation apply_metropolis_step(const Permutation& pi, std::int64_t edge, double u, double p) {
  if (p < 0.5) throw std::invalid_argument("apply_metropolis_step: needs p >= 1/2");
  if (edge < 1 || edge >= pi.size())
    throw std::invalid_argument("apply_metropolis_step: edge outside 1..N-1");
  double theta = (1.0 - p) / p;
  Permutation out = pi;
  auto& e = out.mutable_entries();
  auto i = static_cast<std::size_t>(edge - 1);
  if (e[i] > e[i + 1]) {
    std::swap(e[i], e[i + 1]);
  } else if (u < theta) {
    std::swap(e[i], e[i + 1]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Active edges

std::vector<Edge> active_edges(const Permutation& pi) {
  std::vector<Edge> out;
  for (std::int64_t e = 1; e < pi.size(); ++e) out.push_back({e});
  return out;
}

std::vector<Edge> active_edges(const FiniteConfig& x) {
  std::vector<Edge> out;
  for (std::int64_t e = 1; e < x.size(); ++e)
    if (x.at(static_cast<int>(e)) != x.at(static_cast<int>(e + 1))) out.push_back({e});
  return out;
}

std::vector<Edge> active_edges(const ZConfig& a) {
  // Differing pairs only occur near discrepancies or at the ground interface.
  std::vector<Edge> out;
  std::int64_t lo = std::min<std::int64_t>(a.hull_lo() - 1, -1);
  std::int64_t hi = std::max<std::int64_t>(a.hull_hi(), -1);
  for (std::int64_t e = lo; e <= hi; ++e)
    if (a.value_at(e) != a.value_at(e + 1)) out.push_back({e});
  return out;
}

std::vector<Edge> active_edges(const SecondClassConfig& d) {
  std::vector<Edge> out;
  for (std::int64_t e = d.lo(); e < d.hi(); ++e)
    if (d.value_at(e) != d.value_at(e + 1)) out.push_back({e});
  return out;
}

// ---------------------------------------------------------------------------
// Discrete runs

Permutation run_discrete(const Permutation& start, std::uint64_t steps, const EventStream& s) {
  Permutation cur = start;
  auto& e = cur.mutable_entries();
  std::int64_t n_edges = cur.size() - 1;
  for (std::uint64_t t = 0; t < steps; ++t) {
    std::int64_t edge = s.step_edge(t, 1, n_edges);
    bool heads = s.step_heads(t);
    auto i = static_cast<std::size_t>(edge - 1);
    bool ascending = e[i] < e[i + 1];
    if (heads != ascending) std::swap(e[i], e[i + 1]);
  }
  return cur;
}

FiniteConfig run_discrete(const FiniteConfig& start, std::uint64_t steps, const EventStream& s) {
  FiniteConfig cur = start;
  auto& b = cur.mutable_bits();
  std::int64_t n_edges = cur.size() - 1;
  for (std::uint64_t t = 0; t < steps; ++t) {
    std::int64_t edge = s.step_edge(t, 1, n_edges);
    bool heads = s.step_heads(t);
    auto i = static_cast<std::size_t>(edge - 1);
    if (b[i] == b[i + 1]) continue;
    b[i] = heads ? 1 : 0;
    b[i + 1] = heads ? 0 : 1;
  }
  return cur;
}

Permutation run_metropolis(const Permutation& start, std::uint64_t steps, const EventStream& s) {
  if (s.p() < 0.5) throw std::invalid_argument("run_metropolis: needs p >= 1/2");
  Permutation cur = start;
  auto& e = cur.mutable_entries();
  std::int64_t n_edges = cur.size() - 1;
  double theta = (1.0 - s.p()) / s.p();
  for (std::uint64_t t = 0; t < steps; ++t) {
    std::int64_t edge = s.step_edge(t, 1, n_edges);
    auto i = static_cast<std::size_t>(edge - 1);
    if (e[i] > e[i + 1] || s.step_u(t) < theta) std::swap(e[i], e[i + 1]);
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Continuous runs

std::vector<Event> merged_rings(const EventStream& s, std::int64_t lo_edge, std::int64_t hi_edge,
                                double t_end) {
  std::vector<Event> out;
  for (std::int64_t e = lo_edge; e <= hi_edge; ++e) {
    RingCursor c;
    c.prime(s, e);
    std::uint64_t idx = 0;
    while (c.next_time <= t_end) {
      out.push_back({c.next_time, Edge{e}, s.coin_heads(e, idx)});
      c.advance(s, e);
      ++idx;
    }
  }
  std::sort(out.begin(), out.end(), [](const Event& a, const Event& b) {
    if (a.time != b.time) return a.time < b.time;
    return a.edge.i < b.edge.i;
  });
  return out;
}

Permutation run_continuous(const Permutation& start, double horizon, const EventStream& s,
                           const EventHook& hook) {
  Permutation cur = start;
  auto& e = cur.mutable_entries();
  for (const Event& ev : merged_rings(s, 1, cur.size() - 1, horizon)) {
    auto i = static_cast<std::size_t>(ev.edge.i - 1);
    bool ascending = e[i] < e[i + 1];
    if (ev.heads != ascending) std::swap(e[i], e[i + 1]);
    if (hook) hook(ev);
  }
  return cur;
}

FiniteConfig run_continuous(const FiniteConfig& start, double horizon, const EventStream& s,
                            const EventHook& hook) {
  std::vector<std::int8_t> vals(start.bits().begin(), start.bits().end());
  WindowEngine eng(s, WindowMode::kFinite, 1, start.size());
  eng.add_member(std::move(vals));
  eng.run_until(horizon, [&](double t, std::int64_t edge, bool heads) {
    if (hook) hook(Event{t, Edge{edge}, heads});
  });
  std::vector<std::uint8_t> bits(eng.values(0).begin(), eng.values(0).end());
  return FiniteConfig(std::move(bits), start.k());
}

std::vector<std::int8_t> zconfig_window_values(const ZConfig& a, std::int64_t lo, std::int64_t hi) {
  std::vector<std::int8_t> vals;
  vals.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t i = lo; i <= hi; ++i) vals.push_back(static_cast<std::int8_t>(a.value_at(i)));
  return vals;
}

ZConfig zconfig_from_engine(const WindowEngine& eng, int member) {
  std::vector<std::uint8_t> vals(eng.values(member).begin(), eng.values(member).end());
  return ZConfig::from_window(eng.lo(), vals);
}

ZConfig run_continuous(const ZConfig& start, double horizon, const EventStream& s,
                       const EventHook& hook) {
  std::int64_t lo = std::min<std::int64_t>(start.hull_lo(), -1) - 2;
  std::int64_t hi = std::max<std::int64_t>(start.hull_hi(), 0) + 2;
  WindowEngine eng(s, WindowMode::kGrowable, lo, hi);
  eng.add_member(zconfig_window_values(start, lo, hi));
  eng.run_until(horizon, [&](double t, std::int64_t edge, bool heads) {
    if (hook) hook(Event{t, Edge{edge}, heads});
  });
  return zconfig_from_engine(eng, 0);
}

WindowedRunResult run_continuous(const SecondClassConfig& start, double horizon,
                                 const EventStream& s, const EventHook& hook) {
  std::int8_t lf = start.left_boundary() == TailFill::kAllOnes ? 1 : 0;
  std::int8_t rf = start.right_boundary() == TailFill::kAllOnes ? 1 : 0;
  WindowEngine eng(s, WindowMode::kWindowed, start.lo(), start.hi(), lf, rf);
  eng.add_member(std::vector<std::int8_t>(start.values().begin(), start.values().end()));
  std::int64_t tag = start.tagged_site() ? *start.tagged_site() : start.lo() - 1;
  std::int8_t tag_class = start.tagged_site() ? static_cast<std::int8_t>(start.value_at(tag)) : 0;
  eng.run_until(horizon, [&](double t, std::int64_t edge, bool heads) {
    if (tag == edge || tag == edge + 1) {
      // Classes are immutable, so the tagged particle moved iff its site no
      // longer holds its class (a swap always brings over a different value).
      if (eng.value(0, tag) != tag_class) tag = (tag == edge) ? edge + 1 : edge;
    }
    if (hook) hook(Event{t, Edge{edge}, heads});
  });
  std::vector<std::uint8_t> vals(eng.values(0).begin(), eng.values(0).end());
  WindowedRunResult r{SecondClassConfig(start.lo(), std::move(vals), start.left_boundary(),
                                        start.right_boundary(), std::nullopt),
                      !eng.boundary_breached(), eng.min_changed_site(), eng.max_changed_site()};
  if (start.tagged_site()) r.state.set_tagged_site(tag);
  return r;
}

}  // namespace exmix
