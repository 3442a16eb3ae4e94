#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "bmx/gf2.hpp"
#include "bmx/graph.hpp"

namespace bmx {

/// A simple binary matroid with a chosen embedding: a set of nonzero vectors
/// of F_2^dim. Points are stored as a characteristic bitset over indices
/// 0..2^dim-1 (index 0 is never set). Immutable once built.
class Matroid {
 public:
  using Bits = boost::dynamic_bitset<std::uint64_t>;

  /// Empty matroid of the given ambient dimension.
  explicit Matroid(int dim = 0);

  /// Throws UsageError for the zero vector or vectors outside F_2^dim.
  /// Duplicates collapse.
  static Matroid from_points(int dim, std::span<const Word> points);
  /// `bits` must have exactly 2^dim entries with bit 0 clear.
  static Matroid from_bits(int dim, Bits bits);

  int dim() const { return dim_; }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  int rank() const;

  bool has(Word v) const { return v < bits_.size() && bits_.test(v); }
  /// Points in increasing index order.
  std::vector<Word> points() const;
  const Bits& bits() const { return bits_; }

  friend bool operator==(const Matroid& a, const Matroid& b) {
    return a.dim_ == b.dim_ && a.bits_ == b.bits_;
  }

 private:
  int dim_ = 0;
  Bits bits_;
};

/// PG(t-1,2): every nonzero vector of F_2^t.
Matroid pg(int t);
/// AG(t-1,2): vectors of F_2^t whose coordinate t is 1.
Matroid ag(int t);
/// BB(n-1,2,t): F_2^n minus span(e_1..e_{n-t}).
Matroid bb(int n, int t);
/// I_t: the standard basis of F_2^t.
Matroid free_matroid(int t);
/// C_m: e_1..e_{m-1} and their sum, in F_2^{m-1}.
Matroid circuit(int m);

struct LiftSpec {
  Matroid inner;
  int n = 0;
  int t = 0;
};

/// N^{n,t}: BB(n-1,2,t) with a copy of N placed in its empty flat
/// F = span(e_1..e_{n-t}) (N's coordinates are zero-padded into F).
/// Throws UsageError unless 0 <= t <= n and dim(N) <= n - t.
Matroid lift(const LiftSpec& spec);
inline Matroid lift(const Matroid& inner, int n, int t) { return lift(LiftSpec{inner, n, t}); }

/// M(G): the columns e_u + e_v of the vertex-edge incidence matrix.
Matroid graphic(const SimpleGraph& g);

/// Same ambient dimension, points minus `removed`. Throws UsageError if
/// `removed` is not a subset of the points.
Matroid delete_points(const Matroid& m, std::span<const Word> removed);

/// Points of m lying in the subspace w. Throws UsageError on dimension mismatch.
Matroid intersect_flat(const Matroid& m, const Subspace& w);

/// Re-expresses m in a reduced basis of its span, giving dim == rank.
Matroid recoordinatize(const Matroid& m);

/// Largest ambient dimension accepted by chi().
inline constexpr int kMaxChiDim = 12;

/// Critical number: least codimension of a subspace disjoint from the points.
/// 0 for the empty matroid. Throws CapacityError above kMaxChiDim.
int chi(const Matroid& m);

/// Dimension of the largest subspace of F_2^dim meeting m only in 0; chi is
/// dim minus this.
int max_disjoint_subspace_dim(const Matroid& m);

}  // namespace bmx
