#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bmx {

inline constexpr int kMaxGraphVertices = 16;

/// Simple undirected graph on vertices 0..n-1 (n <= 16) as adjacency masks.
class SimpleGraph {
 public:
  using Edge = std::pair<int, int>;

  explicit SimpleGraph(int vertices = 0);
  /// Throws UsageError on loops, parallel edges or out-of-range endpoints.
  SimpleGraph(int vertices, const std::vector<Edge>& edges);

  static SimpleGraph complete(int n);
  /// K_{2,2,2}.
  static SimpleGraph octahedron();
  static SimpleGraph petersen();
  /// Two triangles joined by a perfect matching.
  static SimpleGraph prism();

  void add_edge(int u, int v);
  bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1U; }

  int vertex_count() const { return n_; }
  int edge_count() const;
  int degree(int v) const { return __builtin_popcount(adj_[v]); }
  std::uint16_t neighbours(int v) const { return adj_[v]; }
  /// Edges (u, v) with u < v, sorted.
  std::vector<Edge> edges() const;

  bool connected() const;
  bool bipartite() const;

  /// Copy without the listed edges (edges not present are ignored).
  SimpleGraph without_edges(const std::vector<Edge>& removed) const;

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

 private:
  int n_ = 0;
  std::vector<std::uint16_t> adj_;
};

}  // namespace bmx
