#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace exmix {

// An edge is the adjacent pair (i, i+1). Finite processes on [1, N] use
// 1 <= i <= N-1; windowed processes use lo <= i < hi.
struct Edge {
  std::int64_t i = 0;
};

// ---------------------------------------------------------------------------
// Deck arrangement: position i (0-based internally) holds card entries[i],
// labels 1..N forming a bijection.
class Permutation {
 public:
  explicit Permutation(std::vector<int> entries);
  static Permutation identity(int n);
  static Permutation reversed(int n);

  int size() const { return static_cast<int>(entries_.size()); }
  int at(int pos) const { return entries_[static_cast<std::size_t>(pos - 1)]; }  // 1-based
  const std::vector<int>& entries() const { return entries_; }
  std::vector<int>& mutable_entries() { return entries_; }

  bool operator==(const Permutation& o) const = default;

  std::string to_string() const;  // comma-separated labels
  static Permutation parse(const std::string& text);

 private:
  std::vector<int> entries_;
};

// ---------------------------------------------------------------------------
// Element of X_{N,k}: a 0/1 word of length N holding exactly k ones.
class FiniteConfig {
 public:
  FiniteConfig(std::vector<std::uint8_t> bits, int k);
  static FiniteConfig from_bits(std::vector<std::uint8_t> bits);

  int size() const { return static_cast<int>(bits_.size()); }
  int k() const { return k_; }
  std::uint8_t at(int pos) const { return bits_[static_cast<std::size_t>(pos - 1)]; }  // 1-based
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::vector<std::uint8_t>& mutable_bits() { return bits_; }

  bool operator==(const FiniteConfig& o) const = default;

  std::string to_string() const;  // plain 0/1 string
  static FiniteConfig parse(const std::string& text);

 private:
  std::vector<std::uint8_t> bits_;
  int k_;
};

// ---------------------------------------------------------------------------
// Element of the set A: a 0/1 configuration on Z differing from the ground
// state G_Z (1 on i<0, 0 on i>=0) in finitely many sites, with equally many
// hole discrepancies left of 0 and particle discrepancies at >= 0. Stored as
// the sorted set of discrepancy sites; the value at a discrepancy is implied
// by its side (0 at negative sites, 1 at nonnegative sites).
class ZConfig {
 public:
  ZConfig() = default;  // G_Z itself
  static ZConfig from_discrepancies(std::vector<std::int64_t> sites);
  // Values on [lo, lo+values.size()) with G_Z outside; validates membership in A.
  static ZConfig from_window(std::int64_t lo, const std::vector<std::uint8_t>& values);

  static std::uint8_t ground_value(std::int64_t site) { return site < 0 ? 1 : 0; }
  std::uint8_t value_at(std::int64_t site) const;
  bool is_ground() const { return discrepancies_.empty(); }
  const std::vector<std::int64_t>& discrepancies() const { return discrepancies_; }

  // Smallest window [lo, hi] containing all discrepancies; [0, -1] for G_Z.
  std::int64_t hull_lo() const;
  std::int64_t hull_hi() const;

  bool operator==(const ZConfig& o) const = default;

  std::string to_string() const;  // "sites:{(site,value),...}"
  static ZConfig parse(const std::string& text);

 private:
  std::vector<std::int64_t> discrepancies_;  // sorted
};

// ---------------------------------------------------------------------------
// Declared content of the unstored half-infinite tails of a windowed state.
enum class TailFill : std::uint8_t {
  kAllOnes,      // first-class particles everywhere beyond the window
  kAllZeros,     // empty beyond the window
  kFrozenSample, // an i.i.d. tail that was cut at the window; carries no
                 // first-class particles beyond the window by construction
};

// {0,1,2} configuration on a bounded integer window for the second-class
// process; 1 = first class, 2 = second class, 0 = empty.
class SecondClassConfig {
 public:
  SecondClassConfig(std::int64_t lo, std::vector<std::uint8_t> values, TailFill left,
                    TailFill right, std::optional<std::int64_t> tagged_site = std::nullopt);

  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return lo_ + static_cast<std::int64_t>(values_.size()) - 1; }
  std::uint8_t value_at(std::int64_t site) const;
  const std::vector<std::uint8_t>& values() const { return values_; }
  std::vector<std::uint8_t>& mutable_values() { return values_; }
  TailFill left_boundary() const { return left_; }
  TailFill right_boundary() const { return right_; }
  std::optional<std::int64_t> tagged_site() const { return tagged_; }
  void set_tagged_site(std::optional<std::int64_t> s);

  bool operator==(const SecondClassConfig& o) const = default;

 private:
  std::int64_t lo_;
  std::vector<std::uint8_t> values_;
  TailFill left_, right_;
  std::optional<std::int64_t> tagged_;
};

// ---------------------------------------------------------------------------
// Canonical states.

ZConfig ground_state_z();                 // G_Z
ZConfig interface_state(int n);           // I_N: 0 on [-N,-1], 1 on [0,N-1]
FiniteConfig g_finite(int n, int k);      // maximal in X_{N,k}: k ones leftmost
FiniteConfig m_finite(int n, int k);      // minimal in X_{N,k}: k ones rightmost

enum class CanonicalKind { kGroundZ, kInterfaceN, kGFinite, kMFinite, kIdentityPerm, kReversedPerm };

// ---------------------------------------------------------------------------
// Projections and orders.

// Height function h_k: bit i is 1 iff pi_i <= k.
FiniteConfig height_projection(const Permutation& pi, int k);

// Inverse of the full family (h_1 .. h_{N-1}); throws on an inconsistent family.
Permutation reconstruct_permutation(const std::vector<FiniteConfig>& configs);

// Partial orders, both reduced to one prefix-count test:
// finite (same N and k): sum_{i<=r} a_i >= sum_{i<=r} b_i for all r;
// on Z: sum_{i<=r} (1-a_i) <= sum_{i<=r} (1-b_i) for all r.
bool dominates(const FiniteConfig& a, const FiniteConfig& b);
bool dominates(const ZConfig& a, const ZConfig& b);

// The hat embedding of X_{N,k} into A.
ZConfig embed_hat(const FiniteConfig& x, int k);

// L(a) = min{i : a_i = 0} and R(a) = max{i : a_i = 1}; both exist on A.
std::int64_t leftmost_hole(const ZConfig& a);
std::int64_t rightmost_particle(const ZConfig& a);

enum class SecondClassProjection { kTwoToOne, kTwoToZero };

// Sitewise relabeling; window and boundary conventions are carried through.
SecondClassConfig project_second_class(const SecondClassConfig& delta, SecondClassProjection mode);

// A projected (0/1-valued) windowed config whose tails are compatible with
// G_Z and balanced can be converted into a ZConfig; throws otherwise.
ZConfig to_zconfig(const SecondClassConfig& projected);

// The zero-erased view: holes removed, 2 -> 0 and 1 -> 1, indexed so the
// tagged particle sits at `tagged_offset` in `word` (its particle index is 0).
struct ZeroErasedView {
  std::vector<std::uint8_t> word;
  std::int64_t tagged_offset = 0;

  std::uint8_t at_index(std::int64_t particle_index) const {
    return word[static_cast<std::size_t>(particle_index + tagged_offset)];
  }
  std::int64_t min_index() const { return -tagged_offset; }
  std::int64_t max_index() const {
    return static_cast<std::int64_t>(word.size()) - 1 - tagged_offset;
  }
};

// Site of the tagged particle per the u_0(0) rule: the rightmost first-class
// particle if the right tail carries none beyond the window, otherwise the
// rightmost first-class particle strictly left of 0. Throws if neither exists.
std::int64_t tagged_site(const SecondClassConfig& delta);

ZeroErasedView zero_erased_view(const SecondClassConfig& delta);

}  // namespace exmix
