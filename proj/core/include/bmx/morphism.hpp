#pragma once

// Linear maps between matroids: restrictions, homomorphisms, isomorphism and
// canonical forms under GL(n,2).

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "bmx/gf2.hpp"
#include "bmx/matroid.hpp"

namespace bmx {

/// An injective linear map carrying a pattern onto part of a host.
struct Embedding {
  LinearMap map;
  /// Images of the pattern's points, sorted.
  std::vector<Word> image;
};

/// Witness that `pattern` is a restriction of `host`, if one exists. Requires
/// dim(host) >= dim(pattern).
std::optional<Embedding> find_embedding(const Matroid& host, const Matroid& pattern);
bool contains(const Matroid& host, const Matroid& pattern);

/// Some linear map sending every pattern point to a host point.
std::optional<LinearMap> find_homomorphism(const Matroid& pattern, const Matroid& host);
bool homomorphic(const Matroid& pattern, const Matroid& host);

bool isomorphic(const Matroid& a, const Matroid& b);

/// Largest ambient dimension accepted by canonical_key().
inline constexpr int kMaxCanonDim = 8;

/// Orbit representative of a matroid under GL(dim,2): the characteristic
/// string, read from index 1 upward, that is lexicographically greatest over
/// all ordered bases.
struct CanonicalKey {
  int dim = 0;
  Matroid::Bits bits;

  Matroid matroid() const { return Matroid::from_bits(dim, bits); }
  /// Compact text form (`bm:<n>:<hex>`).
  std::string to_string() const;

  friend bool operator==(const CanonicalKey& a, const CanonicalKey& b) {
    return a.dim == b.dim && a.bits == b.bits;
  }
  /// Orders by dimension, then by compact text.
  friend std::strong_ordering operator<=>(const CanonicalKey& a, const CanonicalKey& b);
};

/// Throws CapacityError above kMaxCanonDim. Results are memoized in a
/// process-wide table.
CanonicalKey canonical_key(const Matroid& m);

/// Memo table for canonical keys: concurrent lookups, exclusive inserts.
class CanonicalKeyCache {
 public:
  std::optional<CanonicalKey> find(const std::string& compact) const;
  void insert(const std::string& compact, const CanonicalKey& key);
  std::size_t size() const;

  static CanonicalKeyCache& global();

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, CanonicalKey> table_;
};

/// Canonical key without consulting the memo table.
CanonicalKey compute_canonical_key(const Matroid& m);

inline constexpr int kMaxCountHostDim = 6;
inline constexpr int kMaxCountPatternRank = 4;

/// Number of distinct point sets of `host` that are images of `pattern` under
/// injective linear maps. Throws CapacityError beyond the bounds above.
std::uint64_t count_restrictions(const Matroid& host, const Matroid& pattern);

}  // namespace bmx
