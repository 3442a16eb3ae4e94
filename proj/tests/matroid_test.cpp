#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "bmx/errors.hpp"
#include "bmx/graph.hpp"
#include "bmx/matroid.hpp"
#include "bmx/morphism.hpp"
#include "oracles.hpp"

namespace bmx {
namespace {

int components(const SimpleGraph& g) {
  std::vector<int> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int count = g.vertex_count();
  for (auto [u, v] : g.edges()) {
    const int a = find(u), b = find(v);
    if (a != b) {
      parent[a] = b;
      --count;
    }
  }
  return count;
}

SimpleGraph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  SimpleGraph g(n);
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u) {
      if (coin(rng)) g.add_edge(u, v);
    }
  }
  return g;
}

TEST(Matroid, PointStorage) {
  const Matroid m = Matroid::from_points(3, std::vector<Word>{1, 6, 6});
  EXPECT_EQ(m.size(), 2U);
  EXPECT_TRUE(m.has(6));
  EXPECT_FALSE(m.has(0));
  EXPECT_FALSE(m.has(100));
  EXPECT_EQ(m.points(), (std::vector<Word>{1, 6}));
  EXPECT_EQ(m.rank(), 2);
  EXPECT_THROW(Matroid::from_points(3, std::vector<Word>{0}), UsageError);
  EXPECT_THROW(Matroid::from_points(3, std::vector<Word>{8}), UsageError);
  EXPECT_THROW(Matroid(25), UsageError);
  EXPECT_TRUE(Matroid(0).empty());
}

TEST(Constructions, Sizes) {
  for (int t = 1; t <= 8; ++t) {
    EXPECT_EQ(pg(t).size(), (std::size_t{1} << t) - 1);
    EXPECT_EQ(pg(t).rank(), t);
    EXPECT_EQ(ag(t).size(), std::size_t{1} << (t - 1));
    EXPECT_EQ(ag(t).rank(), t);
    EXPECT_EQ(free_matroid(t).size(), static_cast<std::size_t>(t));
    EXPECT_EQ(free_matroid(t).rank(), t);
  }
  for (int n = 1; n <= 7; ++n) {
    for (int t = 1; t <= n; ++t) {
      EXPECT_EQ(bb(n, t).size(), (std::size_t{1} << n) - (std::size_t{1} << (n - t)));
    }
  }
  for (int m = 3; m <= 8; ++m) {
    const Matroid c = circuit(m);
    EXPECT_EQ(c.size(), static_cast<std::size_t>(m));
    EXPECT_EQ(c.rank(), m - 1);
    // Every proper subset is independent.
    const auto pts = c.points();
    for (std::size_t skip = 0; skip < pts.size(); ++skip) {
      std::vector<Word> rest;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i != skip) rest.push_back(pts[i]);
      }
      EXPECT_EQ(oracle::rank(rest), m - 1);
    }
  }
}

TEST(Constructions, Preconditions) {
  EXPECT_THROW(pg(0), UsageError);
  EXPECT_THROW(ag(0), UsageError);
  EXPECT_THROW(bb(3, 0), UsageError);
  EXPECT_THROW(bb(3, 4), UsageError);
  EXPECT_THROW(free_matroid(0), UsageError);
  EXPECT_THROW(circuit(2), UsageError);
  EXPECT_THROW(lift(pg(2), 3, 2), UsageError);
  EXPECT_THROW(lift(pg(1), 3, 4), UsageError);
}

TEST(Constructions, BoseBurtonDegenerateCases) {
  EXPECT_EQ(bb(4, 4), pg(4));
  EXPECT_TRUE(isomorphic(bb(4, 1), ag(4)));
}

TEST(Constructions, LiftOfPointIsFano) {
  const Matroid m = lift(free_matroid(1), 3, 2);
  EXPECT_EQ(m.size(), 7U);
  EXPECT_EQ(m, pg(3));
  // Lift keeps the Bose-Burton part and adds the inner points in the flat.
  const Matroid l = lift(circuit(3), 5, 2);
  EXPECT_EQ(l.size(), bb(5, 2).size() + 3);
  for (Word p : bb(5, 2).points()) EXPECT_TRUE(l.has(p));
}

TEST(Graphic, RankIsVerticesMinusComponents) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 9);
    const SimpleGraph g = random_graph(n, 0.4, rng);
    const Matroid m = graphic(g);
    EXPECT_EQ(m.size(), static_cast<std::size_t>(g.edge_count()));
    EXPECT_EQ(m.rank(), n - components(g));
  }
}

TEST(Graphic, CompleteGraphsAndTriangle) {
  EXPECT_TRUE(isomorphic(recoordinatize(graphic(SimpleGraph::complete(3))), circuit(3)));
  EXPECT_TRUE(isomorphic(recoordinatize(graphic(SimpleGraph::complete(4))),
                         recoordinatize(graphic(SimpleGraph::complete(4)))));
  EXPECT_EQ(graphic(SimpleGraph::complete(4)).rank(), 3);
}

TEST(Chi, KnownValues) {
  EXPECT_EQ(chi(Matroid(3)), 0);
  EXPECT_EQ(chi(free_matroid(4)), 1);
  for (int t = 1; t <= 6; ++t) {
    EXPECT_EQ(chi(ag(t)), 1);
    EXPECT_EQ(chi(pg(t)), t);
  }
  for (int n = 2; n <= 6; ++n) {
    for (int t = 1; t <= n; ++t) EXPECT_EQ(chi(bb(n, t)), t);
  }
  EXPECT_EQ(chi(circuit(3)), 2);
  EXPECT_EQ(chi(circuit(4)), 1);
  EXPECT_EQ(chi(circuit(5)), 2);
  EXPECT_EQ(chi(graphic(SimpleGraph::complete(4))), 2);
  EXPECT_THROW(chi(Matroid(13)), CapacityError);
}

TEST(Chi, MatchesOracleExhaustivelyAtDimThree) {
  for (std::uint64_t s = 0; s < 128; ++s) {
    const Matroid m = oracle::from_mask(3, s << 1);
    EXPECT_EQ(chi(m), oracle::chi(m)) << s;
  }
}

TEST(Chi, MatchesOracleOnRandomMatroids) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 2);
    const Matroid m = oracle::random_matroid(n, 0.3 + 0.5 * (trial % 5) / 4.0, rng);
    EXPECT_EQ(chi(m), oracle::chi(m));
  }
}

TEST(Chi, InvariantUnderCoordinateChange) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const Matroid m = oracle::random_matroid(6, 0.5, rng);
    const auto g = oracle::random_invertible(6, rng);
    EXPECT_EQ(chi(m), chi(oracle::transform(m, g)));
  }
}

TEST(DeleteAndIntersect, Basics) {
  const Matroid f = pg(3);
  const Matroid d = delete_points(f, std::vector<Word>{7});
  EXPECT_EQ(d.size(), 6U);
  EXPECT_FALSE(d.has(7));
  EXPECT_THROW(delete_points(d, std::vector<Word>{7}), UsageError);
  const Subspace w = Subspace::span_of(3, std::vector<Word>{1, 2});
  const Matroid slice = intersect_flat(f, w);
  EXPECT_EQ(slice.points(), (std::vector<Word>{1, 2, 3}));
  EXPECT_THROW(intersect_flat(f, Subspace::span_of(4, std::vector<Word>{1})), UsageError);
}

TEST(Recoordinatize, FullRankIsomorphicCopy) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const Matroid m = oracle::random_matroid(n, 0.2, rng);
    const Matroid r = recoordinatize(m);
    EXPECT_EQ(r.dim(), m.rank());
    EXPECT_EQ(r.rank(), r.dim());
    EXPECT_EQ(r.size(), m.size());
    EXPECT_EQ(chi(r), chi(m));
    EXPECT_TRUE(contains(m, r));
  }
}

TEST(Recoordinatize, SpanIsPreservedUpToIsomorphism) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const Matroid m = oracle::random_matroid(4, 0.25, rng);
    const Matroid r = recoordinatize(m);
    const Matroid padded = Matroid::from_points(4, r.points());
    EXPECT_TRUE(oracle::isomorphic(padded, m));
  }
}

TEST(MaxDisjointSubspace, ComplementOfHyperplane) {
  EXPECT_EQ(max_disjoint_subspace_dim(ag(5)), 4);
  EXPECT_EQ(max_disjoint_subspace_dim(pg(4)), 0);
  EXPECT_EQ(max_disjoint_subspace_dim(Matroid(4)), 4);
  for (int n = 2; n <= 6; ++n) {
    for (int t = 1; t <= n; ++t) EXPECT_EQ(max_disjoint_subspace_dim(bb(n, t)), n - t);
  }
}

}  // namespace
}  // namespace bmx
