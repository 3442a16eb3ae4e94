#include <gtest/gtest.h>

#include <random>
#include <set>

#include "bmx/errors.hpp"
#include "bmx/gf2.hpp"
#include "oracles.hpp"

namespace bmx {
namespace {

// All distinct k-dimensional subspaces of F_2^n as sorted element lists,
// found by spanning every k-set of nonzero vectors.
void span_sets(int n, int k, Word next, std::vector<Word>& chosen,
               std::set<std::vector<Word>>& out) {
  if (static_cast<int>(chosen.size()) == k) {
    if (oracle::rank(chosen) != k) return;
    std::vector<Word> elems;
    for (Word sel = 0; sel < (Word{1} << k); ++sel) elems.push_back(oracle::apply(chosen, sel));
    std::sort(elems.begin(), elems.end());
    out.insert(elems);
    return;
  }
  for (Word v = next; v < (Word{1} << n); ++v) {
    chosen.push_back(v);
    span_sets(n, k, v + 1, chosen, out);
    chosen.pop_back();
  }
}

std::set<std::vector<Word>> brute_subspaces(int n, int k) {
  std::set<std::vector<Word>> out;
  std::vector<Word> chosen;
  span_sets(n, k, 1, chosen, out);
  return out;
}

TEST(Gf2Vector, ValidatesAmbient) {
  EXPECT_THROW(Gf2Vector(0b100, 2), UsageError);
  EXPECT_THROW(Gf2Vector(0, 25), UsageError);
  EXPECT_THROW(Gf2Vector(0, -1), UsageError);
  EXPECT_NO_THROW(Gf2Vector(0b11, 2));
}

TEST(Gf2Vector, ArithmeticAndDot) {
  const Gf2Vector a(0b101, 3), b(0b110, 3);
  EXPECT_EQ((a + b).bits(), 0b011U);
  EXPECT_EQ(a.dot(b), 1);
  EXPECT_EQ(a.dot(a), 0);
  EXPECT_THROW(a + Gf2Vector(1, 4), UsageError);
  EXPECT_THROW(a.dot(Gf2Vector(1, 4)), UsageError);
  EXPECT_TRUE(Gf2Vector::unit(2, 3).coordinate(2));
  EXPECT_THROW(Gf2Vector::unit(4, 3), UsageError);
}

TEST(Rank, MatchesOracleOnRandomFamilies) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    std::vector<Word> vs(rng() % 12);
    for (auto& v : vs) v = static_cast<Word>(rng()) & low_mask(n);
    EXPECT_EQ(rank_of_bits(vs), oracle::rank(vs));
  }
}

TEST(Rank, MixedAmbientsRejected) {
  const std::vector<Gf2Vector> vs = {Gf2Vector(1, 2), Gf2Vector(1, 3)};
  EXPECT_THROW(rank_of_set(vs), UsageError);
}

TEST(Subspace, ReducedFormIsUnique) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    std::vector<Word> vs(1 + rng() % 5);
    for (auto& v : vs) v = static_cast<Word>(rng()) & low_mask(n);
    const Subspace a = Subspace::span_of(n, vs);
    // Same span from a shuffled, redundant generating set.
    std::vector<Word> other = vs;
    other.push_back(vs[0] ^ vs.back());
    std::shuffle(other.begin(), other.end(), rng);
    EXPECT_EQ(a, Subspace::span_of(n, other));
    EXPECT_EQ(a.dim(), oracle::rank(vs));
    for (Word c : a.parity_checks()) {
      for (Word b : a.basis()) EXPECT_EQ(parity(b & c), 0);
    }
    EXPECT_EQ(a.dim() + static_cast<int>(a.parity_checks().size()), n);
    for (Word e : a.elements()) EXPECT_TRUE(a.contains(e));
    EXPECT_EQ(a.annihilator().annihilator(), a);
  }
}

TEST(Subspace, ReduceSpansGf2Vectors) {
  const std::vector<Gf2Vector> vs = {Gf2Vector(0b011, 3), Gf2Vector(0b110, 3),
                                     Gf2Vector(0b101, 3)};
  EXPECT_EQ(reduce(vs).dim(), 2);
  EXPECT_THROW(Subspace::span_of(2, std::vector<Word>{0b100}), UsageError);
}

TEST(GaussianBinomial, KnownValues) {
  EXPECT_EQ(gaussian_binomial(4, 2), 35U);
  EXPECT_EQ(gaussian_binomial(3, 1), 7U);
  EXPECT_EQ(gaussian_binomial(5, 0), 1U);
  EXPECT_EQ(gaussian_binomial(5, 5), 1U);
  EXPECT_EQ(gaussian_binomial(3, 4), 0U);
}

TEST(GaussianBinomial, MatchesBruteForceCounts) {
  for (int n = 0; n <= 5; ++n) {
    for (int k = 0; k <= n; ++k) {
      EXPECT_EQ(gaussian_binomial(n, k), brute_subspaces(n, k).size()) << n << " " << k;
    }
  }
}

TEST(GaussianBinomial, OverflowIsCapacityError) {
  EXPECT_THROW(gaussian_binomial(24, 12), CapacityError);
}

TEST(SubspaceEnumerator, YieldsEverySubspaceOnce) {
  for (int n = 0; n <= 5; ++n) {
    for (int k = 0; k <= n; ++k) {
      std::set<std::vector<Word>> seen;
      auto e = enumerate_subspaces(n, k);
      std::size_t count = 0;
      while (auto s = e.next()) {
        ++count;
        EXPECT_EQ(s->dim(), k);
        auto elems = s->elements();
        std::sort(elems.begin(), elems.end());
        seen.insert(elems);
      }
      EXPECT_EQ(count, seen.size());
      EXPECT_EQ(seen, brute_subspaces(n, k)) << n << " " << k;
    }
  }
}

TEST(SubspaceEnumerator, SixDimensionalCountsMatchGaussianBinomial) {
  for (int k = 0; k <= 6; ++k) {
    auto e = enumerate_subspaces(6, k);
    std::uint64_t count = 0;
    std::vector<Word> basis;
    while (e.next_basis(basis)) ++count;
    EXPECT_EQ(count, gaussian_binomial(6, k));
  }
}

TEST(CodimSubspaceEnumerator, KernelsOfAnnihilators) {
  for (int n = 1; n <= 5; ++n) {
    for (int c = 0; c <= n; ++c) {
      std::set<std::vector<Word>> seen;
      auto e = enumerate_codim_subspaces(n, c);
      while (auto w = e.next()) {
        EXPECT_EQ(w->codim(), c);
        EXPECT_EQ(static_cast<int>(w->parity_checks().size()), c);
        for (Word a : w->parity_checks()) {
          for (Word v : w->elements()) EXPECT_EQ(parity(a & v), 0);
        }
        auto elems = w->elements();
        std::sort(elems.begin(), elems.end());
        seen.insert(elems);
      }
      EXPECT_EQ(seen, brute_subspaces(n, n - c));
    }
  }
}

TEST(LinearMap, ValidationAndApplication) {
  EXPECT_THROW(LinearMap(2, 2, {1}), UsageError);
  EXPECT_THROW(LinearMap(1, 2, {0b100}), UsageError);
  const LinearMap f(2, 3, {0b011, 0b110});
  EXPECT_EQ(f.apply_bits(0b11), 0b101U);
  EXPECT_TRUE(f.is_injective());
  EXPECT_FALSE(LinearMap(2, 3, {0b011, 0b011}).is_injective());
  EXPECT_EQ(apply_map(f, Gf2Vector(0b01, 2)).bits(), 0b011U);
  EXPECT_THROW(apply_map(f, Gf2Vector(0b01, 3)), UsageError);
  EXPECT_TRUE(LinearMap::identity(4).is_injective());
}

TEST(EchelonBasis, PopUndoesInsertInStackOrder) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    EchelonBasis b;
    std::vector<Word> inserted;
    for (int step = 0; step < 6; ++step) {
      const Word v = static_cast<Word>(rng()) & low_mask(8);
      if (b.insert(v)) inserted.push_back(v);
      EXPECT_EQ(b.size(), oracle::rank(inserted));
    }
    while (!inserted.empty()) {
      b.pop();
      inserted.pop_back();
      for (Word x = 0; x < 256; ++x) {
        std::vector<Word> with = inserted;
        with.push_back(x);
        EXPECT_EQ(b.in_span(x), oracle::rank(with) == oracle::rank(inserted));
      }
    }
  }
}

}  // namespace
}  // namespace bmx
