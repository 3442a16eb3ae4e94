#include "bmx/graphs.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>
#include <sstream>

#include "bmx/errors.hpp"

namespace bmx {

namespace {

constexpr std::string_view kGraph6Header = ">>graph6<<";

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

SimpleGraph parse_graph6(std::string_view text) {
  std::size_t pos = 0;
  if (text.substr(0, kGraph6Header.size()) == kGraph6Header) pos = kGraph6Header.size();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (pos >= text.size()) throw ParseError("graph6: missing vertex count", pos);

  auto byte_at = [&](std::size_t i) {
    const int c = static_cast<unsigned char>(text[i]);
    if (c < 63 || c > 126) throw ParseError("graph6: byte outside 63..126", i);
    return c - 63;
  };

  int n = byte_at(pos);
  ++pos;
  if (n == 63) {
    // 18-bit form; anything this large is over the vertex cap anyway.
    if (text.size() < pos + 3) throw ParseError("graph6: truncated vertex count", text.size());
    n = (byte_at(pos) << 12) | (byte_at(pos + 1) << 6) | byte_at(pos + 2);
    pos += 3;
  }
  if (n > kMaxGraphVertices) {
    throw CapacityError("graph6: " + std::to_string(n) + " vertices exceeds the cap of " +
                        std::to_string(kMaxGraphVertices));
  }

  const std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
  const std::size_t need = (pairs + 5) / 6;
  if (text.size() - pos < need) throw ParseError("graph6: truncated adjacency data", text.size());
  if (text.size() - pos > need) throw ParseError("graph6: trailing bytes", pos + need);

  SimpleGraph g(n);
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      const int chunk = byte_at(pos + k / 6);
      if ((chunk >> (5 - k % 6)) & 1) g.add_edge(i, j);
    }
  }
  for (std::size_t b = 0; b < need; ++b) byte_at(pos + b);
  return g;
}

std::string to_graph6(const SimpleGraph& g) {
  const int n = g.vertex_count();
  std::string out(1, static_cast<char>(63 + n));
  int acc = 0, filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>(63 + (acc << (6 - filled))));
  return out;
}

SimpleGraph parse_edge_list(std::string_view text) {
  std::vector<SimpleGraph::Edge> edges;
  int max_vertex = -1;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!trim(line).empty()) {
      std::istringstream in{std::string(line)};
      int u = -1, v = -1;
      std::string extra;
      if (!(in >> u >> v) || (in >> extra) || u < 0 || v < 0) {
        throw ParseError("edge list: expected two non-negative integers", line_start);
      }
      edges.emplace_back(std::min(u, v), std::max(u, v));
      max_vertex = std::max({max_vertex, u, v});
    }
    line_start = line_end + 1;
  }
  if (max_vertex + 1 > kMaxGraphVertices) {
    throw CapacityError("edge list exceeds the vertex cap of " + std::to_string(kMaxGraphVertices));
  }
  return SimpleGraph(max_vertex + 1, edges);
}

std::vector<SimpleGraph> parse_graphs(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    std::string_view body = line.substr(0, line.find('#'));
    if (!trim(body).empty()) lines.emplace_back(start, trim(body));
    start = end + 1;
  }
  if (lines.empty()) return {};
  if (lines.front().second.find_first_of(" \t") != std::string_view::npos) {
    return {parse_edge_list(text)};
  }
  std::vector<SimpleGraph> out;
  for (auto [offset, line] : lines) {
    try {
      out.push_back(parse_graph6(line));
    } catch (const ParseError& e) {
      throw ParseError(e.message(), offset + e.offset());
    }
  }
  return out;
}

namespace {

using Mask = std::uint32_t;

int max_clique(const SimpleGraph& g, Mask cand, int size, int best) {
  if (cand == 0) return std::max(size, best);
  if (size + std::popcount(cand) <= best) return best;
  while (cand != 0) {
    if (size + std::popcount(cand) <= best) break;
    const int v = std::countr_zero(cand);
    cand &= cand - 1;
    best = max_clique(g, cand & g.neighbours(v), size + 1, best);
  }
  return best;
}

std::vector<int> greedy_colouring(const SimpleGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g.degree(a) > g.degree(b); });
  std::vector<int> colour(n, -1);
  for (int v : order) {
    Mask used = 0;
    for (int u = 0; u < n; ++u) {
      if (g.adjacent(u, v) && colour[u] >= 0) used |= Mask{1} << colour[u];
    }
    colour[v] = std::countr_one(used);
  }
  return colour;
}

// DSATUR backtracking: can g be coloured with k colours?
class Colourer {
 public:
  Colourer(const SimpleGraph& g, int k) : g_(g), k_(k), colour_(g.vertex_count(), -1) {}

  bool run() { return dfs(0, 0); }
  const std::vector<int>& colouring() const { return colour_; }

 private:
  Mask neighbour_colours(int v) const {
    Mask used = 0;
    for (int u = 0; u < g_.vertex_count(); ++u) {
      if (g_.adjacent(u, v) && colour_[u] >= 0) used |= Mask{1} << colour_[u];
    }
    return used;
  }

  bool dfs(int coloured, int used_colours) {
    const int n = g_.vertex_count();
    if (coloured == n) return true;
    int pick = -1, best_sat = -1, best_deg = -1;
    Mask pick_used = 0;
    for (int v = 0; v < n; ++v) {
      if (colour_[v] >= 0) continue;
      const Mask used = neighbour_colours(v);
      const int sat = std::popcount(used);
      if (sat > best_sat || (sat == best_sat && g_.degree(v) > best_deg)) {
        pick = v;
        best_sat = sat;
        best_deg = g_.degree(v);
        pick_used = used;
      }
    }
    // Colours beyond the first unused one are interchangeable.
    const int limit = std::min(k_, used_colours + 1);
    for (int c = 0; c < limit; ++c) {
      if ((pick_used >> c) & 1U) continue;
      colour_[pick] = c;
      if (dfs(coloured + 1, std::max(used_colours, c + 1))) return true;
      colour_[pick] = -1;
    }
    return false;
  }

  const SimpleGraph& g_;
  int k_;
  std::vector<int> colour_;
};

}  // namespace

int clique_number(const SimpleGraph& g) {
  const Mask all = g.vertex_count() == 0 ? 0 : (Mask{1} << g.vertex_count()) - 1;
  return max_clique(g, all, 0, 0);
}

std::vector<int> optimal_colouring(const SimpleGraph& g) {
  const int n = g.vertex_count();
  if (n == 0) return {};
  std::vector<int> greedy = greedy_colouring(g);
  const int upper = *std::max_element(greedy.begin(), greedy.end()) + 1;
  for (int k = clique_number(g); k < upper; ++k) {
    Colourer c(g, k);
    if (c.run()) return c.colouring();
  }
  return greedy;
}

int chromatic_number(const SimpleGraph& g) {
  const auto colouring = optimal_colouring(g);
  if (colouring.empty()) return 0;
  return *std::max_element(colouring.begin(), colouring.end()) + 1;
}

bool is_forest(int vertices, const std::vector<SimpleGraph::Edge>& edges) {
  std::vector<int> parent(vertices);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [u, v] : edges) {
    const int a = find(u), b = find(v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

std::optional<ForestCertificate> min_forest_drop(const SimpleGraph& g, int target) {
  const auto all = g.edges();
  const int m = static_cast<int>(all.size());
  const int n = g.vertex_count();
  ForestCertificate cert;
  cert.target = target;
  cert.t = 0;
  while (target > 0 && (2 << cert.t) <= target) ++cert.t;

  // A forest has at most n - 1 edges.
  const int max_size = std::min(m, std::max(n - 1, 0));
  std::vector<int> idx;
  for (int size = 0; size <= max_size; ++size) {
    idx.resize(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::vector<SimpleGraph::Edge> forest;
      for (int i : idx) forest.push_back(all[i]);
      if (is_forest(n, forest)) {
        const int after = chromatic_number(g.without_edges(forest));
        if (after <= target) {
          cert.forest = std::move(forest);
          cert.chromatic_after = after;
          return cert;
        }
      }
      int i = size - 1;
      while (i >= 0 && idx[i] == m - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

int threshold_exponent(const SimpleGraph& g) {
  const int c = chromatic_number(g);
  if (c < 2) throw UsageError("threshold exponent needs a graph with chromatic number >= 2");
  int t = 0;
  while ((2 << t) < c) ++t;
  return t;
}

CubicRemark cubic_remark_data(const SimpleGraph& g) {
  const int n = g.vertex_count();
  for (int v = 0; v < n; ++v) {
    if (g.degree(v) != 3) throw UsageError("cubic remark: graph is not cubic");
  }
  if (n == 0 || g.bipartite()) throw UsageError("cubic remark: graph is bipartite");

  const auto edges = g.edges();
  CubicRemark out;
  out.nu = static_cast<int>(edges.size());
  // Vertex n-1 stays on side 0; every bipartition appears once.
  const Mask limit = Mask{1} << (n - 1);
  for (Mask side = 0; side < limit; ++side) {
    int cut = 0;
    for (auto [u, v] : edges) cut += ((side >> u) ^ (side >> v)) & 1U;
    const int uncut = static_cast<int>(edges.size()) - cut;
    if (cut > out.max_cut) {
      out.max_cut = cut;
      out.nu = uncut;
    } else if (cut == out.max_cut) {
      out.nu = std::min(out.nu, uncut);
    }
  }
  out.ell = (1LL << (out.nu - 1)) - 1;
  return out;
}

}  // namespace bmx
