#pragma once

// Graph-side quantities: graph6 / edge-list ingestion, exact chromatic
// number, forest removal certificates and cubic max-cut data.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bmx/graph.hpp"

namespace bmx {

/// Decodes one graph6 string (an optional ">>graph6<<" header is accepted).
/// Throws ParseError with the byte offset of the first bad character, or
/// CapacityError for more than kMaxGraphVertices vertices.
SimpleGraph parse_graph6(std::string_view text);
std::string to_graph6(const SimpleGraph& g);

/// `u v` per line, 0-indexed; blank lines and `#` comments are skipped. The
/// vertex count is one more than the largest endpoint.
SimpleGraph parse_edge_list(std::string_view text);

/// Graphs in a file body: one graph6 string per line, or a single edge list
/// when the first data line holds two integers.
std::vector<SimpleGraph> parse_graphs(std::string_view text);

int chromatic_number(const SimpleGraph& g);
int clique_number(const SimpleGraph& g);
/// A proper colouring with chromatic_number(g) colours (colour per vertex).
std::vector<int> optimal_colouring(const SimpleGraph& g);

bool is_forest(int vertices, const std::vector<SimpleGraph::Edge>& edges);

struct ForestCertificate {
  std::vector<SimpleGraph::Edge> forest;
  int chromatic_after = 0;
  int target = 0;
  /// Largest t with 2^t <= target.
  int t = 0;
};

/// Smallest acyclic edge set F with chromatic_number(G - F) <= target; among
/// equal sizes the lexicographically least under sorted-pair order.
std::optional<ForestCertificate> min_forest_drop(const SimpleGraph& g, int target);

/// The exponent t with 2^t < chi(G) <= 2^{t+1}; requires chi(G) >= 2.
int threshold_exponent(const SimpleGraph& g);

struct CubicRemark {
  int max_cut = 0;
  /// Size of the matching complementary to a maximum cut (minimised over
  /// all maximum cuts).
  int nu = 0;
  /// 2^{nu-1} - 1.
  long long ell = 0;
};

/// Throws UsageError unless g is cubic and not bipartite.
CubicRemark cubic_remark_data(const SimpleGraph& g);

}  // namespace bmx
