#include "bmx/graph.hpp"

#include <algorithm>
#include <string>

#include "bmx/errors.hpp"

namespace bmx {

SimpleGraph::SimpleGraph(int vertices) : n_(vertices) {
  if (vertices < 0 || vertices > kMaxGraphVertices) {
    throw UsageError("graph vertex count " + std::to_string(vertices) + " outside [0, " +
                     std::to_string(kMaxGraphVertices) + "]");
  }
  adj_.assign(vertices, 0);
}

SimpleGraph::SimpleGraph(int vertices, const std::vector<Edge>& edges) : SimpleGraph(vertices) {
  for (auto [u, v] : edges) add_edge(u, v);
}

void SimpleGraph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw UsageError("edge endpoint out of range");
  if (u == v) throw UsageError("loops are not allowed in a simple graph");
  if (adjacent(u, v)) throw UsageError("parallel edges are not allowed in a simple graph");
  adj_[u] |= static_cast<std::uint16_t>(1U << v);
  adj_[v] |= static_cast<std::uint16_t>(1U << u);
}

SimpleGraph SimpleGraph::complete(int n) {
  SimpleGraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

SimpleGraph SimpleGraph::octahedron() {
  SimpleGraph g = complete(6);
  return g.without_edges({{0, 1}, {2, 3}, {4, 5}});
}

SimpleGraph SimpleGraph::petersen() {
  SimpleGraph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(i + 5, (i + 2) % 5 + 5);
  }
  return g;
}

SimpleGraph SimpleGraph::prism() {
  return SimpleGraph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}});
}

int SimpleGraph::edge_count() const {
  int twice = 0;
  for (auto a : adj_) twice += __builtin_popcount(a);
  return twice / 2;
}

std::vector<SimpleGraph::Edge> SimpleGraph::edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      if (adjacent(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

bool SimpleGraph::connected() const {
  if (n_ == 0) return true;
  std::uint32_t seen = 1, frontier = 1;
  while (frontier != 0) {
    std::uint32_t next = 0;
    for (int v = 0; v < n_; ++v) {
      if ((frontier >> v) & 1U) next |= adj_[v];
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (1U << n_) - 1;
}

bool SimpleGraph::bipartite() const {
  std::vector<int> side(n_, -1);
  for (int s = 0; s < n_; ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n_; ++v) {
        if (!adjacent(u, v)) continue;
        if (side[v] == -1) {
          side[v] = 1 - side[u];
          stack.push_back(v);
        } else if (side[v] == side[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

SimpleGraph SimpleGraph::without_edges(const std::vector<Edge>& removed) const {
  SimpleGraph g = *this;
  for (auto [u, v] : removed) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) continue;
    g.adj_[u] &= static_cast<std::uint16_t>(~(1U << v));
    g.adj_[v] &= static_cast<std::uint16_t>(~(1U << u));
  }
  return g;
}

}  // namespace bmx
