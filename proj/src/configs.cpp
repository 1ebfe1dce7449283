#include "exmix/configs.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace exmix {

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("Permutation: N >= 1 required");
  std::vector<char> seen(entries_.size() + 1, 0);
  for (int v : entries_) {
    if (v < 1 || v > static_cast<int>(entries_.size()) || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("Permutation: entries must be a bijection on 1..N");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> e(static_cast<std::size_t>(n));
  std::iota(e.begin(), e.end(), 1);
  return Permutation(std::move(e));
}

Permutation Permutation::reversed(int n) {
  std::vector<int> e(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = n - i;
  return Permutation(std::move(e));
}

std::string Permutation::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(entries_[i]);
  }
  return s;
}

Permutation Permutation::parse(const std::string& text) {
  std::vector<int> e;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) e.push_back(std::stoi(tok));
  return Permutation(std::move(e));
}

// ---------------------------------------------------------------------------
// FiniteConfig

FiniteConfig::FiniteConfig(std::vector<std::uint8_t> bits, int k) : bits_(std::move(bits)), k_(k) {
  int n = static_cast<int>(bits_.size());
  if (k_ < 1 || k_ >= n) throw std::invalid_argument("FiniteConfig: need 1 <= k < N");
  int ones = 0;
  for (auto b : bits_) {
    if (b > 1) throw std::invalid_argument("FiniteConfig: bits must be 0/1");
    ones += b;
  }
  if (ones != k_) throw std::invalid_argument("FiniteConfig: bit sum must equal k");
}

FiniteConfig FiniteConfig::from_bits(std::vector<std::uint8_t> bits) {
  int ones = 0;
  for (auto b : bits) ones += b;
  return FiniteConfig(std::move(bits), ones);
}

std::string FiniteConfig::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s += static_cast<char>('0' + b);
  return s;
}

FiniteConfig FiniteConfig::parse(const std::string& text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("FiniteConfig: expected 0/1 string");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return from_bits(std::move(bits));
}

// ---------------------------------------------------------------------------
// ZConfig

ZConfig ZConfig::from_discrepancies(std::vector<std::int64_t> sites) {
  std::sort(sites.begin(), sites.end());
  for (std::size_t i = 1; i < sites.size(); ++i)
    if (sites[i] == sites[i - 1]) throw std::invalid_argument("ZConfig: duplicate discrepancy");
  std::size_t neg = 0;
  for (auto s : sites)
    if (s < 0) ++neg;
  if (neg * 2 != sites.size())
    throw std::invalid_argument("ZConfig: hole/particle discrepancy counts must balance");
  ZConfig z;
  z.discrepancies_ = std::move(sites);
  return z;
}

ZConfig ZConfig::from_window(std::int64_t lo, const std::vector<std::uint8_t>& values) {
  std::vector<std::int64_t> sites;
  for (std::size_t j = 0; j < values.size(); ++j) {
    std::int64_t site = lo + static_cast<std::int64_t>(j);
    if (values[j] != ground_value(site)) sites.push_back(site);
  }
  return from_discrepancies(std::move(sites));
}

std::uint8_t ZConfig::value_at(std::int64_t site) const {
  bool disc = std::binary_search(discrepancies_.begin(), discrepancies_.end(), site);
  return disc ? static_cast<std::uint8_t>(1 - ground_value(site)) : ground_value(site);
}

std::int64_t ZConfig::hull_lo() const { return discrepancies_.empty() ? 0 : discrepancies_.front(); }
std::int64_t ZConfig::hull_hi() const { return discrepancies_.empty() ? -1 : discrepancies_.back(); }

std::string ZConfig::to_string() const {
  std::string s = "sites:{";
  for (std::size_t i = 0; i < discrepancies_.size(); ++i) {
    if (i) s += ',';
    s += '(';
    s += std::to_string(discrepancies_[i]);
    s += ',';
    s += std::to_string(static_cast<int>(1 - ground_value(discrepancies_[i])));
    s += ')';
  }
  s += '}';
  return s;
}

ZConfig ZConfig::parse(const std::string& text) {
  const std::string prefix = "sites:{";
  if (text.rfind(prefix, 0) != 0 || text.back() != '}')
    throw std::invalid_argument("ZConfig: expected sites:{...}");
  std::string body = text.substr(prefix.size(), text.size() - prefix.size() - 1);
  std::vector<std::int64_t> sites;
  std::size_t pos = 0;
  while (pos < body.size()) {
    if (body[pos] != '(') throw std::invalid_argument("ZConfig: malformed pair");
    std::size_t close = body.find(')', pos);
    if (close == std::string::npos) throw std::invalid_argument("ZConfig: malformed pair");
    std::string pair = body.substr(pos + 1, close - pos - 1);
    std::size_t comma = pair.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("ZConfig: malformed pair");
    std::int64_t site = std::stoll(pair.substr(0, comma));
    int value = std::stoi(pair.substr(comma + 1));
    if (value != 1 - ground_value(site))
      throw std::invalid_argument("ZConfig: value inconsistent with discrepancy side");
    sites.push_back(site);
    pos = close + 1;
    if (pos < body.size() && body[pos] == ',') ++pos;
  }
  return from_discrepancies(std::move(sites));
}

// ---------------------------------------------------------------------------
// SecondClassConfig

SecondClassConfig::SecondClassConfig(std::int64_t lo, std::vector<std::uint8_t> values,
                                     TailFill left, TailFill right,
                                     std::optional<std::int64_t> tagged_site)
    : lo_(lo), values_(std::move(values)), left_(left), right_(right), tagged_(tagged_site) {
  if (values_.empty()) throw std::invalid_argument("SecondClassConfig: window must be nonempty");
  for (auto v : values_)
    if (v > 2) throw std::invalid_argument("SecondClassConfig: values must be in {0,1,2}");
  if (tagged_) set_tagged_site(tagged_);
}

std::uint8_t SecondClassConfig::value_at(std::int64_t site) const {
  if (site < lo_) return left_ == TailFill::kAllOnes ? 1 : 0;
  if (site > hi()) return right_ == TailFill::kAllOnes ? 1 : 0;
  return values_[static_cast<std::size_t>(site - lo_)];
}

void SecondClassConfig::set_tagged_site(std::optional<std::int64_t> s) {
  if (s) {
    if (*s < lo_ || *s > hi()) throw std::invalid_argument("tagged site outside window");
    auto v = values_[static_cast<std::size_t>(*s - lo_)];
    if (v != 1 && v != 2) throw std::invalid_argument("tagged site must hold a particle");
  }
  tagged_ = s;
}

// ---------------------------------------------------------------------------
// Canonical states

ZConfig ground_state_z() { return ZConfig(); }

ZConfig interface_state(int n) {
  if (n < 1) throw std::invalid_argument("interface_state: N >= 1 required");
  std::vector<std::int64_t> sites;
  for (int i = -n; i < n; ++i) sites.push_back(i);
  return ZConfig::from_discrepancies(std::move(sites));
}

FiniteConfig g_finite(int n, int k) {
  if (k < 1 || k >= n) throw std::invalid_argument("g_finite: need 1 <= k < N");
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < k; ++i) bits[static_cast<std::size_t>(i)] = 1;
  return FiniteConfig(std::move(bits), k);
}

FiniteConfig m_finite(int n, int k) {
  if (k < 1 || k >= n) throw std::invalid_argument("m_finite: need 1 <= k < N");
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 0);
  for (int i = n - k; i < n; ++i) bits[static_cast<std::size_t>(i)] = 1;
  return FiniteConfig(std::move(bits), k);
}

// ---------------------------------------------------------------------------
// Height functions

FiniteConfig height_projection(const Permutation& pi, int k) {
  int n = pi.size();
  if (k < 1 || k >= n) throw std::invalid_argument("height_projection: need 1 <= k < N");
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i)
    bits[static_cast<std::size_t>(i - 1)] = pi.at(i) <= k ? 1 : 0;
  return FiniteConfig(std::move(bits), k);
}

Permutation reconstruct_permutation(const std::vector<FiniteConfig>& configs) {
  if (configs.empty()) throw std::invalid_argument("reconstruct_permutation: empty family");
  int n = configs.front().size();
  if (static_cast<int>(configs.size()) != n - 1)
    throw std::invalid_argument("reconstruct_permutation: need configs for k = 1..N-1");
  for (int k = 1; k < n; ++k) {
    const auto& c = configs[static_cast<std::size_t>(k - 1)];
    if (c.size() != n || c.k() != k)
      throw std::invalid_argument("reconstruct_permutation: config " + std::to_string(k) +
                                  " has wrong size or particle count");
  }
  // Sitewise monotonicity in k is exactly consistency of the level sets.
  for (int k = 1; k + 1 < n; ++k) {
    const auto& a = configs[static_cast<std::size_t>(k - 1)];
    const auto& b = configs[static_cast<std::size_t>(k)];
    for (int i = 1; i <= n; ++i)
      if (a.at(i) > b.at(i))
        throw std::invalid_argument("reconstruct_permutation: inconsistent family at k=" +
                                    std::to_string(k));
  }
  std::vector<int> entries(static_cast<std::size_t>(n), n);
  for (int i = 1; i <= n; ++i) {
    for (int k = 1; k < n; ++k) {
      if (configs[static_cast<std::size_t>(k - 1)].at(i)) {
        entries[static_cast<std::size_t>(i - 1)] = k;
        break;
      }
    }
  }
  return Permutation(std::move(entries));
}

// ---------------------------------------------------------------------------
// Partial orders

bool dominates(const FiniteConfig& a, const FiniteConfig& b) {
  if (a.size() != b.size() || a.k() != b.k())
    throw std::invalid_argument("dominates: configurations must share N and k");
  int acc_a = 0, acc_b = 0;
  for (int i = 1; i <= a.size(); ++i) {
    acc_a += a.at(i);
    acc_b += b.at(i);
    if (acc_a < acc_b) return false;
  }
  return true;
}

bool dominates(const ZConfig& a, const ZConfig& b) {
  // Cumulative hole counts agree with G_Z outside the joint hull, so the
  // prefix inequality only needs checking across it.
  std::int64_t lo = std::min(a.hull_lo(), b.hull_lo());
  std::int64_t hi = std::max(a.hull_hi(), b.hull_hi());
  std::int64_t holes_a = 0, holes_b = 0;
  for (std::int64_t r = lo; r <= hi; ++r) {
    holes_a += 1 - a.value_at(r);
    holes_b += 1 - b.value_at(r);
    if (holes_a > holes_b) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Hat embedding

ZConfig embed_hat(const FiniteConfig& x, int k) {
  if (x.k() != k) throw std::invalid_argument("embed_hat: k mismatch");
  int n = x.size();
  std::vector<std::int64_t> sites;
  for (std::int64_t i = -k; i <= n - k - 1; ++i) {
    std::uint8_t v = x.at(static_cast<int>(i + k + 1));
    if (v != ZConfig::ground_value(i)) sites.push_back(i);
  }
  return ZConfig::from_discrepancies(std::move(sites));
}

// ---------------------------------------------------------------------------
// Extremes on A

std::int64_t leftmost_hole(const ZConfig& a) {
  // The leftmost zero is either a hole discrepancy or the first nonnegative
  // site that is not a particle discrepancy.
  for (auto s : a.discrepancies())
    if (s < 0) return s;
  std::int64_t i = 0;
  while (a.value_at(i) == 1) ++i;
  return i;
}

std::int64_t rightmost_particle(const ZConfig& a) {
  const auto& d = a.discrepancies();
  for (auto it = d.rbegin(); it != d.rend(); ++it)
    if (*it >= 0) return *it;
  std::int64_t i = -1;
  while (a.value_at(i) == 0) --i;
  return i;
}

// ---------------------------------------------------------------------------
// Second-class projections

SecondClassConfig project_second_class(const SecondClassConfig& delta,
                                       SecondClassProjection mode) {
  std::vector<std::uint8_t> out(delta.values().size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    std::uint8_t v = delta.values()[j];
    out[j] = mode == SecondClassProjection::kTwoToOne ? (v > 0 ? 1 : 0) : (v == 1 ? 1 : 0);
  }
  // A frozen second-class tail projects to all-ones under 2->1 and to
  // all-zeros under 2->0 only when the tail holds no first-class particles;
  // the TailFill conventions already encode that, so they carry through.
  return SecondClassConfig(delta.lo(), std::move(out), delta.left_boundary(),
                           delta.right_boundary(), std::nullopt);
}

ZConfig to_zconfig(const SecondClassConfig& projected) {
  for (auto v : projected.values())
    if (v > 1) throw std::invalid_argument("to_zconfig: configuration still holds 2s");
  if (projected.left_boundary() != TailFill::kAllOnes)
    throw std::invalid_argument("to_zconfig: left tail must be all ones");
  if (projected.right_boundary() == TailFill::kAllOnes)
    throw std::invalid_argument("to_zconfig: right tail must hold no particles");
  return ZConfig::from_window(projected.lo(), projected.values());
}

// ---------------------------------------------------------------------------
// Zero-erased view

std::int64_t tagged_site(const SecondClassConfig& delta) {
  if (delta.tagged_site()) return *delta.tagged_site();
  bool sup_finite = delta.right_boundary() != TailFill::kAllOnes;
  if (sup_finite) {
    for (std::int64_t s = delta.hi(); s >= delta.lo(); --s)
      if (delta.value_at(s) == 1) return s;
  }
  for (std::int64_t s = std::min<std::int64_t>(-1, delta.hi()); s >= delta.lo(); --s)
    if (delta.value_at(s) == 1) return s;
  throw std::runtime_error("tagged_site: no admissible first-class particle");
}

ZeroErasedView zero_erased_view(const SecondClassConfig& delta) {
  std::int64_t tag = tagged_site(delta);
  ZeroErasedView view;
  view.tagged_offset = -1;
  for (std::int64_t s = delta.lo(); s <= delta.hi(); ++s) {
    std::uint8_t v = delta.value_at(s);
    if (v == 0) continue;
    if (s == tag) view.tagged_offset = static_cast<std::int64_t>(view.word.size());
    view.word.push_back(v == 1 ? 1 : 0);
  }
  if (view.word.empty()) throw std::runtime_error("zero_erased_view: no particles in window");
  if (view.tagged_offset < 0) throw std::runtime_error("zero_erased_view: tagged particle not found");
  return view;
}

}  // namespace exmix
