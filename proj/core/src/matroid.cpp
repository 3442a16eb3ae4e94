#include "bmx/matroid.hpp"

#include <bit>
#include <string>

#include "bmx/errors.hpp"

namespace bmx {

namespace {

void check_dim(int dim) {
  if (dim < 0 || dim > kMaxDim) {
    throw UsageError("matroid dimension " + std::to_string(dim) + " outside [0, " +
                     std::to_string(kMaxDim) + "]");
  }
}

std::size_t index_count(int dim) { return std::size_t{1} << dim; }

}  // namespace

Matroid::Matroid(int dim) : dim_(dim) {
  check_dim(dim);
  bits_.resize(index_count(dim));
}

Matroid Matroid::from_points(int dim, std::span<const Word> points) {
  Matroid m(dim);
  for (Word v : points) {
    if (v == 0) throw UsageError("the zero vector cannot be a matroid element");
    if ((v & ~low_mask(dim)) != 0) {
      throw UsageError("point lies outside F_2^" + std::to_string(dim));
    }
    m.bits_.set(v);
  }
  return m;
}

Matroid Matroid::from_bits(int dim, Bits bits) {
  check_dim(dim);
  if (bits.size() != index_count(dim)) throw UsageError("characteristic bitset has wrong length");
  if (bits.test(0)) throw UsageError("the zero vector cannot be a matroid element");
  Matroid m(dim);
  m.bits_ = std::move(bits);
  return m;
}

int Matroid::rank() const {
  EchelonBasis basis;
  for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i)) {
    basis.insert(static_cast<Word>(i));
    if (basis.size() == dim_) break;
  }
  return basis.size();
}

std::vector<Word> Matroid::points() const {
  std::vector<Word> out;
  out.reserve(size());
  for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i)) {
    out.push_back(static_cast<Word>(i));
  }
  return out;
}

Matroid pg(int t) {
  if (t < 1) throw UsageError("pg: rank must be at least 1");
  Matroid::Bits bits(index_count(t));
  bits.set();
  bits.reset(0);
  return Matroid::from_bits(t, std::move(bits));
}

Matroid ag(int t) {
  if (t < 1) throw UsageError("ag: rank must be at least 1");
  check_dim(t);
  Matroid::Bits bits(index_count(t));
  const Word top = Word{1} << (t - 1);
  for (Word v = top; v < index_count(t); ++v) bits.set(v);
  return Matroid::from_bits(t, std::move(bits));
}

Matroid bb(int n, int t) {
  if (t < 1 || t > n) throw UsageError("bb: order must satisfy 1 <= t <= n");
  check_dim(n);
  Matroid::Bits bits(index_count(n));
  const Word flat = low_mask(n - t);
  for (Word v = 1; v < index_count(n); ++v) {
    if ((v & ~flat) != 0) bits.set(v);
  }
  return Matroid::from_bits(n, std::move(bits));
}

Matroid free_matroid(int t) {
  if (t < 1) throw UsageError("free: size must be at least 1");
  std::vector<Word> pts;
  for (int i = 0; i < t; ++i) pts.push_back(Word{1} << i);
  return Matroid::from_points(t, pts);
}

Matroid circuit(int m) {
  if (m < 3) throw UsageError("circuit: size must be at least 3");
  const int d = m - 1;
  std::vector<Word> pts;
  for (int i = 0; i < d; ++i) pts.push_back(Word{1} << i);
  pts.push_back(low_mask(d));
  return Matroid::from_points(d, pts);
}

Matroid lift(const LiftSpec& spec) {
  const int n = spec.n;
  const int t = spec.t;
  if (t < 0 || t > n) throw UsageError("lift: need 0 <= t <= n");
  check_dim(n);
  if (spec.inner.dim() > n - t) throw UsageError("lift: dim(N) must be at most n - t");
  Matroid::Bits bits(index_count(n));
  const Word flat = low_mask(n - t);
  for (Word v = 1; v < index_count(n); ++v) {
    if ((v & ~flat) != 0) bits.set(v);
  }
  for (Word p : spec.inner.points()) bits.set(p);
  return Matroid::from_bits(n, std::move(bits));
}

Matroid graphic(const SimpleGraph& g) {
  std::vector<Word> pts;
  for (auto [u, v] : g.edges()) pts.push_back((Word{1} << u) | (Word{1} << v));
  return Matroid::from_points(g.vertex_count(), pts);
}

Matroid delete_points(const Matroid& m, std::span<const Word> removed) {
  Matroid::Bits bits = m.bits();
  for (Word v : removed) {
    if (!m.has(v)) throw UsageError("delete: point " + std::to_string(v) + " is not an element");
    bits.reset(v);
  }
  return Matroid::from_bits(m.dim(), std::move(bits));
}

Matroid intersect_flat(const Matroid& m, const Subspace& w) {
  if (w.ambient() != m.dim()) throw UsageError("intersect_flat: ambient dimension mismatch");
  Matroid::Bits bits(index_count(m.dim()));
  for (Word p : m.points()) {
    if (w.contains(p)) bits.set(p);
  }
  return Matroid::from_bits(m.dim(), std::move(bits));
}

Matroid recoordinatize(const Matroid& m) {
  const auto pts = m.points();
  const Subspace span = Subspace::span_of(m.dim(), pts);
  // In a reduced basis the coefficient of row i is the point's bit at pivot i.
  std::vector<int> pivots;
  for (Word row : span.basis()) pivots.push_back(std::countr_zero(row));
  std::vector<Word> coords;
  coords.reserve(pts.size());
  for (Word p : pts) {
    Word c = 0;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      if ((p >> pivots[i]) & 1U) c |= Word{1} << i;
    }
    coords.push_back(c);
  }
  return Matroid::from_points(span.dim(), coords);
}

namespace {

// Branch and bound for the largest subspace W with W \ {0} inside a set C.
// Bases are built greedily (each new vector is the least element of its
// coset, larger than the previous one), so every subspace is reached once.
class DisjointSubspaceSearch {
 public:
  explicit DisjointSubspaceSearch(int n) : n_(n) {}

  int run(const Matroid::Bits& complement) {
    best_ = 0;
    EchelonBasis w;
    dfs(w, complement, 0);
    return best_;
  }

 private:
  void dfs(EchelonBasis& w, const Matroid::Bits& cand, Word last) {
    const int d = w.size();
    if (d > best_) best_ = d;
    if (d == n_) return;
    // Every element of the final subspace outside W lies in cand.
    const std::size_t count = cand.count();
    const std::size_t span = std::size_t{1} << d;
    int extra = 0;
    while (span * ((std::size_t{2} << extra) - 1) <= count) ++extra;
    if (d + extra <= best_) return;

    const Word pivots = w.pivot_mask();
    for (auto y = cand.find_next(last); y != Matroid::Bits::npos; y = cand.find_next(y)) {
      if ((static_cast<Word>(y) & pivots) != 0) continue;
      Matroid::Bits next(cand.size());
      for (auto z = cand.find_first(); z != Matroid::Bits::npos; z = cand.find_next(z)) {
        if (cand.test(z ^ y)) next.set(z);
      }
      w.insert(static_cast<Word>(y));
      dfs(w, next, static_cast<Word>(y));
      w.pop();
      if (best_ == n_) return;
    }
  }

  int n_;
  int best_ = 0;
};

}  // namespace

int max_disjoint_subspace_dim(const Matroid& m) {
  if (m.dim() > kMaxChiDim) {
    throw CapacityError("chi: dimension " + std::to_string(m.dim()) + " exceeds " +
                        std::to_string(kMaxChiDim));
  }
  Matroid::Bits complement = ~m.bits();
  complement.reset(0);
  return DisjointSubspaceSearch(m.dim()).run(complement);
}

int chi(const Matroid& m) {
  if (m.dim() > kMaxChiDim) {
    throw CapacityError("chi: dimension " + std::to_string(m.dim()) + " exceeds " +
                        std::to_string(kMaxChiDim));
  }
  if (m.empty()) return 0;
  return m.dim() - max_disjoint_subspace_dim(m);
}

}  // namespace bmx
