#include <gtest/gtest.h>

#include <fstream>
#include <numeric>
#include <sstream>

#include "bmx/errors.hpp"
#include "bmx/graph.hpp"
#include "bmx/graphs.hpp"
#include "bmx/matroid.hpp"
#include "bmx/verify.hpp"
#include "oracles.hpp"

namespace bmx {
namespace {

std::string data_file(const std::string& name) {
  std::ifstream in(std::string(BMX_TEST_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Lines of "<graph6> u-v u-v ..." (an optional leading name is skipped when
// the line has a non-edge second token).
struct Expected {
  std::string g6;
  std::vector<SimpleGraph::Edge> edges;
};

std::vector<Expected> edge_table(const std::string& text, bool named) {
  std::vector<Expected> out;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream tokens(line);
    Expected e;
    std::string name;
    if (named) tokens >> name;
    if (!(tokens >> e.g6)) continue;
    std::string tok;
    while (tokens >> tok) {
      const auto dash = tok.find('-');
      e.edges.emplace_back(std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1)));
    }
    std::sort(e.edges.begin(), e.edges.end());
    out.push_back(std::move(e));
  }
  return out;
}

bool properly_coloured(const SimpleGraph& g, const std::vector<int>& c) {
  for (auto [u, v] : g.edges()) {
    if (c[u] == c[v]) return false;
  }
  return true;
}

// Least k admitting a proper k-colouring, by trying every assignment.
int brute_chromatic(const SimpleGraph& g) {
  const int n = g.vertex_count();
  if (n == 0) return 0;
  for (int k = 1;; ++k) {
    std::vector<int> c(n, 0);
    while (true) {
      if (properly_coloured(g, c)) return k;
      int i = 0;
      while (i < n && ++c[i] == k) c[i++] = 0;
      if (i == n) break;
    }
  }
}

// Maximum cut and, over maximum cuts, the fewest uncut edges.
std::pair<int, int> brute_cut(const SimpleGraph& g) {
  const int n = g.vertex_count();
  int best = -1, nu = 0;
  for (std::uint32_t side = 0; side < (1U << n); ++side) {
    int cut = 0;
    for (auto [u, v] : g.edges()) cut += ((side >> u) ^ (side >> v)) & 1U;
    if (cut > best) best = cut, nu = g.edge_count() - cut;
  }
  return {best, nu};
}

TEST(Graph6, NamedGraphs) {
  for (const auto& e : edge_table(data_file("named.g6"), true)) {
    const SimpleGraph g = parse_graph6(e.g6);
    EXPECT_EQ(g.edges(), e.edges) << e.g6;
    EXPECT_EQ(to_graph6(g), e.g6);
  }
  EXPECT_EQ(parse_graph6("C~"), SimpleGraph::complete(4));
  EXPECT_EQ(parse_graph6("E}lw").edge_count(), 12);
  EXPECT_EQ(parse_graph6("D??").edge_count(), 0);
  EXPECT_EQ(parse_graph6(">>graph6<<C~"), SimpleGraph::complete(4));
  // "Bw" is the complete graph on three vertices under the standard encoding.
  EXPECT_EQ(parse_graph6("Bw"), SimpleGraph::complete(3));
  EXPECT_EQ(parse_graph6("Bg").edge_count(), 2);
}

TEST(Graph6, PinnedCorpus) {
  const auto table = edge_table(data_file("connected6.edges"), false);
  ASSERT_EQ(table.size(), 112U);
  for (const auto& e : table) {
    const SimpleGraph g = parse_graph6(e.g6);
    EXPECT_EQ(g.vertex_count(), 6);
    EXPECT_EQ(g.edges(), e.edges) << e.g6;
    EXPECT_EQ(to_graph6(g), e.g6);
  }
  EXPECT_EQ(parse_graphs(data_file("connected6.g6")).size(), 112U);
}

TEST(Graph6, Errors) {
  EXPECT_THROW(parse_graph6(""), ParseError);
  try {
    parse_graph6("C~ x");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 2U);
  }
  EXPECT_THROW(parse_graph6("C"), ParseError);
  EXPECT_THROW(parse_graph6("Q?????????????????????????????????"), CapacityError);
}

TEST(EdgeList, ParsesAndRejectsLoops) {
  const SimpleGraph g = parse_edge_list("# triangle\n0 1\n1 2\n\n0 2\n");
  EXPECT_EQ(g, SimpleGraph::complete(3));
  EXPECT_THROW(parse_edge_list("0 0\n"), UsageError);
  EXPECT_THROW(parse_edge_list("0 1\n1 0\n"), UsageError);
  EXPECT_THROW(parse_edge_list("0 x\n"), ParseError);
  EXPECT_EQ(parse_graphs("0 1\n1 2\n").size(), 1U);
}

TEST(Chromatic, KnownValues) {
  EXPECT_EQ(chromatic_number(SimpleGraph::complete(4)), 4);
  EXPECT_EQ(chromatic_number(SimpleGraph::octahedron()), 3);
  EXPECT_EQ(chromatic_number(SimpleGraph::petersen()), 3);
  EXPECT_EQ(chromatic_number(SimpleGraph(5)), 1);
  EXPECT_EQ(chromatic_number(SimpleGraph(0)), 0);
  EXPECT_EQ(brute_chromatic(SimpleGraph::petersen()), 3);
}

TEST(Chromatic, MatchesBruteForceOnCorpus) {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& g : connected_graphs(n)) {
      EXPECT_EQ(chromatic_number(g), brute_chromatic(g)) << to_graph6(g);
      const auto c = optimal_colouring(g);
      EXPECT_TRUE(properly_coloured(g, c));
      EXPECT_EQ(*std::max_element(c.begin(), c.end()) + 1, chromatic_number(g));
    }
  }
}

bool brute_isomorphic(const SimpleGraph& a, const SimpleGraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  std::vector<int> perm(a.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (auto [u, v] : a.edges()) ok = ok && b.adjacent(perm[u], perm[v]);
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

TEST(ConnectedGraphs, MatchesPinnedCorpus) {
  const auto pinned = parse_graphs(data_file("connected6.g6"));
  const auto generated = connected_graphs(6);
  ASSERT_EQ(generated.size(), pinned.size());
  // Each generated graph matches exactly one pinned graph up to relabelling.
  std::vector<bool> used(pinned.size(), false);
  for (const auto& g : generated) {
    EXPECT_TRUE(g.connected());
    int hits = 0;
    for (std::size_t i = 0; i < pinned.size(); ++i) {
      if (brute_isomorphic(g, pinned[i])) {
        ++hits;
        used[i] = true;
      }
    }
    EXPECT_EQ(hits, 1) << to_graph6(g);
  }
  EXPECT_TRUE(std::all_of(used.begin(), used.end(), [](bool b) { return b; }));
  EXPECT_THROW(connected_graphs(7), CapacityError);
}

TEST(Graphic, AcyclicIffIndependent) {
  for (int n = 1; n <= 5; ++n) {
    for (const auto& g : connected_graphs(n)) {
      const auto edges = g.edges();
      for (std::uint32_t s = 0; s < (1U << edges.size()); ++s) {
        std::vector<SimpleGraph::Edge> sub;
        std::vector<Word> pts;
        for (std::size_t e = 0; e < edges.size(); ++e) {
          if ((s >> e) & 1U) {
            sub.push_back(edges[e]);
            pts.push_back((Word{1} << edges[e].first) | (Word{1} << edges[e].second));
          }
        }
        EXPECT_EQ(is_forest(n, sub), oracle::rank(pts) == static_cast<int>(pts.size()));
      }
    }
  }
}

TEST(ForestDrop, SpecExamples) {
  const auto k3 = min_forest_drop(SimpleGraph::complete(3), 2);
  ASSERT_TRUE(k3);
  EXPECT_EQ(k3->forest.size(), 1U);
  const auto k6 = min_forest_drop(SimpleGraph::complete(6), 4);
  ASSERT_TRUE(k6);
  EXPECT_EQ(k6->forest.size(), 2U);
  EXPECT_EQ(k6->t, 2);
  // A maximum cut of K_{2,2,2} has 8 edges, so at least 4 edges must go;
  // some 4-edge complement of a maximum cut is acyclic.
  const auto o6 = min_forest_drop(SimpleGraph::octahedron(), 2);
  ASSERT_TRUE(o6);
  EXPECT_EQ(brute_cut(SimpleGraph::octahedron()).first, 8);
  EXPECT_EQ(o6->forest.size(), 4U);
}

TEST(ForestDrop, CertificatesVerifyIndependently) {
  for (int n = 2; n <= 6; ++n) {
    for (const auto& g : connected_graphs(n)) {
      const int c = chromatic_number(g);
      for (int target = 1; target < c; ++target) {
        const auto cert = min_forest_drop(g, target);
        if (!cert) continue;
        EXPECT_TRUE(is_forest(n, cert->forest));
        const SimpleGraph h = g.without_edges(cert->forest);
        EXPECT_LE(brute_chromatic(h), target);
        EXPECT_EQ(cert->chromatic_after, chromatic_number(h));
        EXPECT_TRUE(std::is_sorted(cert->forest.begin(), cert->forest.end()));
      }
    }
  }
}

TEST(ForestDrop, MinimalityOnSmallGraphs) {
  // No smaller edge set of any kind works for K4 -> 2: each colour class of
  // a 2-colouring holds two vertices, so two edges must go.
  const auto cert = min_forest_drop(SimpleGraph::complete(4), 2);
  ASSERT_TRUE(cert);
  EXPECT_EQ(cert->forest.size(), 2U);
  // Removing only forests from K5 cannot reach 1 colour.
  EXPECT_FALSE(min_forest_drop(SimpleGraph::complete(5), 1).has_value());
}

TEST(ThresholdExponent, Values) {
  EXPECT_EQ(threshold_exponent(SimpleGraph::complete(3)), 1);
  EXPECT_EQ(threshold_exponent(SimpleGraph::complete(4)), 1);
  EXPECT_EQ(threshold_exponent(SimpleGraph::complete(5)), 2);
  EXPECT_EQ(threshold_exponent(SimpleGraph::complete(2)), 0);
  EXPECT_THROW(threshold_exponent(SimpleGraph(3)), UsageError);
}

TEST(Cubic, KnownAndBruteForce) {
  const CubicRemark k4 = cubic_remark_data(SimpleGraph::complete(4));
  EXPECT_EQ(k4.max_cut, 4);
  EXPECT_EQ(k4.nu, 2);
  EXPECT_EQ(k4.ell, 1);
  for (const auto& g : {SimpleGraph::complete(4), SimpleGraph::prism(), SimpleGraph::petersen()}) {
    const CubicRemark r = cubic_remark_data(g);
    const auto [cut, nu] = brute_cut(g);
    EXPECT_EQ(r.max_cut, cut);
    EXPECT_EQ(r.nu, nu);
    EXPECT_EQ(r.ell, (1LL << (r.nu - 1)) - 1);
  }
}

TEST(Cubic, Preconditions) {
  // K_{3,3} is cubic and bipartite.
  SimpleGraph k33(6);
  for (int a = 0; a < 3; ++a) {
    for (int b = 3; b < 6; ++b) k33.add_edge(a, b);
  }
  EXPECT_THROW(cubic_remark_data(k33), UsageError);
  EXPECT_THROW(cubic_remark_data(SimpleGraph::complete(5)), UsageError);
}

TEST(ChiLogFormula, ConnectedGraphsUpToSix) {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& g : connected_graphs(n)) {
      const int c = brute_chromatic(g);
      int log = 0;
      while ((1 << log) < c) ++log;
      EXPECT_EQ(chi(graphic(g)), log) << to_graph6(g);
    }
  }
}

}  // namespace
}  // namespace bmx
