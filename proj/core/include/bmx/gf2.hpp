#pragma once

// Bit-level linear algebra over GF(2).
//
// A vector of F_2^n is an n-bit mask: coordinate i (1-based) is bit i-1, so
// coordinate 1 is the least significant bit. The integer value of the mask
// doubles as the point index used by characteristic bitsets elsewhere.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace bmx {

using Word = std::uint32_t;

/// Largest ambient dimension any object in the library may declare.
inline constexpr int kMaxDim = 24;

inline constexpr Word low_mask(int n) {
  return n >= 32 ? ~Word{0} : (Word{1} << n) - 1;
}

inline int parity(Word v) { return __builtin_parity(v); }

class Gf2Vector {
 public:
  constexpr Gf2Vector() = default;
  /// Throws UsageError if `ambient` is outside [0, kMaxDim] or `bits` has
  /// set bits at positions >= ambient.
  Gf2Vector(Word bits, int ambient);

  /// The standard basis vector e_i of F_2^ambient (1-based i).
  static Gf2Vector unit(int i, int ambient);

  Word bits() const { return bits_; }
  int ambient() const { return ambient_; }
  bool is_zero() const { return bits_ == 0; }
  bool coordinate(int i) const { return (bits_ >> (i - 1)) & 1U; }

  /// Sum in F_2^n; throws UsageError on ambient mismatch.
  Gf2Vector operator+(const Gf2Vector& other) const;
  /// Standard bilinear form; throws UsageError on ambient mismatch.
  int dot(const Gf2Vector& other) const;

  friend bool operator==(const Gf2Vector&, const Gf2Vector&) = default;

 private:
  Word bits_ = 0;
  int ambient_ = 0;
};

/// GF(2) rank of a vector family. Throws UsageError on mixed ambients.
int rank_of_set(std::span<const Gf2Vector> vectors);
int rank_of_bits(std::span<const Word> vectors);

/// A subspace of F_2^n held by its reduced row-echelon basis.
///
/// The pivot of a basis vector is its lowest set coordinate; no other basis
/// vector has that coordinate set, and the basis is sorted by pivot. The
/// reduced form is unique, so two Subspace values are equal iff they denote
/// the same subspace. Every Subspace also carries a basis of its annihilator
/// (the parity functionals a with a.w = 0 for all w in the subspace).
class Subspace {
 public:
  /// The zero subspace of F_2^ambient.
  explicit Subspace(int ambient = 0);

  /// Span of raw masks; throws UsageError if any mask exceeds the ambient.
  static Subspace span_of(int ambient, std::span<const Word> vectors);

  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int codim() const { return ambient_ - dim(); }

  const std::vector<Word>& basis() const { return basis_; }
  /// Reduced basis of the annihilator; length codim().
  const std::vector<Word>& parity_checks() const { return checks_; }

  bool contains(Word v) const;
  bool contains(const Gf2Vector& v) const;

  /// All 2^dim elements (including 0), element j being the combination of
  /// basis vectors selected by the bits of j.
  std::vector<Word> elements() const;

  /// The subspace of functionals vanishing on this one.
  Subspace annihilator() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  friend class SubspaceEnumerator;
  friend class CodimSubspaceEnumerator;
  Subspace(int ambient, std::vector<Word> reduced_basis);

  int ambient_ = 0;
  std::vector<Word> basis_;
  std::vector<Word> checks_;
};

/// Span of `vectors` as a Subspace. Throws UsageError on mixed ambients; an
/// empty list yields the zero subspace of F_2^0.
Subspace reduce(std::span<const Gf2Vector> vectors);

/// Number of k-dimensional subspaces of F_2^n. Throws CapacityError if the
/// value does not fit in 64 bits.
std::uint64_t gaussian_binomial(int n, int k);

/// Single-pass stream of all k-dimensional subspaces of F_2^n, each exactly
/// once. Order: pivot-column sets in lexicographic order, then the free
/// entries of the reduced basis lexicographically (earlier rows, lower
/// columns most significant).
class SubspaceEnumerator {
 public:
  SubspaceEnumerator(int n, int k);

  std::optional<Subspace> next();

  /// Raw reduced basis of the next subspace without building a Subspace.
  bool next_basis(std::vector<Word>& out);

 private:
  void load_pivots();
  bool advance_pivots();
  void build(std::vector<Word>& out) const;

  int n_;
  int k_;
  bool done_ = false;
  bool fresh_ = true;
  std::vector<int> pivots_;
  // (row, column) of every free entry in significance order.
  std::vector<std::pair<int, int>> slots_;
  std::vector<std::uint8_t> counter_;
};

/// Single-pass stream of all subspaces of F_2^n of codimension c, produced by
/// enumerating their c-dimensional annihilators; each yielded Subspace's
/// parity_checks() is that annihilator's reduced basis.
class CodimSubspaceEnumerator {
 public:
  CodimSubspaceEnumerator(int n, int c);

  std::optional<Subspace> next();

  /// Parity functionals of the next subspace, skipping the kernel build.
  bool next_checks(std::vector<Word>& out) { return dual_.next_basis(out); }

 private:
  int n_;
  SubspaceEnumerator dual_;
};

inline SubspaceEnumerator enumerate_subspaces(int n, int k) {
  return SubspaceEnumerator(n, k);
}
inline CodimSubspaceEnumerator enumerate_codim_subspaces(int n, int c) {
  return CodimSubspaceEnumerator(n, c);
}

/// Linear map F_2^domain -> F_2^codomain given by the images of e_1..e_k.
class LinearMap {
 public:
  LinearMap() = default;
  /// Throws UsageError if dims are out of range, `images` does not have
  /// `domain_dim` entries, or an image leaves F_2^codomain_dim.
  LinearMap(int domain_dim, int codomain_dim, std::vector<Word> images);

  static LinearMap identity(int n);

  int domain_dim() const { return domain_dim_; }
  int codomain_dim() const { return codomain_dim_; }
  const std::vector<Word>& images() const { return images_; }

  Word apply_bits(Word v) const {
    Word out = 0;
    for (int i = 0; v != 0; ++i, v >>= 1) {
      if (v & 1U) out ^= images_[i];
    }
    return out;
  }

  bool is_injective() const;

 private:
  int domain_dim_ = 0;
  int codomain_dim_ = 0;
  std::vector<Word> images_;
};

/// Throws UsageError if v does not live in the map's domain.
Gf2Vector apply_map(const LinearMap& map, const Gf2Vector& v);

/// Incremental echelon basis keyed on highest set bits; used by searches that
/// need O(rank) independence tests without building a Subspace.
class EchelonBasis {
 public:
  /// Reduces v against the basis; returns 0 iff v lies in the span.
  Word reduce(Word v) const {
    for (Word row : rows_) {
      if (v & top_bit(row)) v ^= row;
    }
    return v;
  }
  bool in_span(Word v) const { return reduce(v) == 0; }
  /// Adds v if independent; returns whether it was added.
  bool insert(Word v);
  /// Removes the most recently inserted row still present (LIFO).
  void pop() {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(positions_.back()));
    positions_.pop_back();
  }
  int size() const { return static_cast<int>(rows_.size()); }
  /// OR of the leading bits of all rows.
  Word pivot_mask() const;

  static Word top_bit(Word v) { return Word{1} << (31 - __builtin_clz(v)); }

 private:
  // Rows sorted by strictly decreasing leading bit.
  std::vector<Word> rows_;
  std::vector<std::size_t> positions_;
};

}  // namespace bmx
