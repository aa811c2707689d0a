#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "permenergy/errors.hpp"

namespace permenergy {

inline constexpr int kMaxVertices = 64;
inline constexpr int kDefaultCycleCap = 14;

/// Simple undirected graph on vertices 0..n-1 with one adjacency bitrow per
/// vertex.  Bit v of row(u) is set iff {u,v} is an edge.  Rows fit a machine
/// word, which caps n at 64 and keeps subset masking O(1).
class Graph {
 public:
  Graph() = default;

  explicit Graph(int n) : n_(n) {
    if (n < 0 || n > kMaxVertices)
      throw CapError("graph: vertex count " + std::to_string(n) + " outside 0.." +
                     std::to_string(kMaxVertices));
    adj_.assign(static_cast<size_t>(n), 0);
  }

  int vertex_count() const { return n_; }

  uint64_t row(int u) const { return adj_[static_cast<size_t>(u)]; }

  bool has_edge(int u, int v) const {
    return u != v && ((adj_[static_cast<size_t>(u)] >> v) & 1u) != 0;
  }

  int degree(int u) const { return std::popcount(adj_[static_cast<size_t>(u)]); }

  int edge_count() const {
    int total = 0;
    for (uint64_t r : adj_) total += std::popcount(r);
    return total / 2;
  }

  void add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw ParseError("graph: loop at vertex " + std::to_string(u + 1));
    adj_[static_cast<size_t>(u)] |= uint64_t{1} << v;
    adj_[static_cast<size_t>(v)] |= uint64_t{1} << u;
  }

  /// All edges as (u,v) with u < v, lexicographically sorted.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<size_t>(edge_count()));
    for (int u = 0; u < n_; ++u) {
      uint64_t above = u + 1 < 64 ? (adj_[static_cast<size_t>(u)] >> (u + 1)) << (u + 1) : 0;
      for (uint64_t bits = above; bits; bits &= bits - 1)
        out.emplace_back(u, std::countr_zero(bits));
    }
    return out;
  }

  /// Bitmask of the full vertex set.
  uint64_t full_mask() const {
    return n_ == 64 ? ~uint64_t{0} : (uint64_t{1} << n_) - 1;
  }

  bool operator==(const Graph&) const = default;

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= n_)
      throw ParseError("graph: vertex " + std::to_string(v + 1) + " out of range 1.." +
                       std::to_string(n_));
  }

  int n_ = 0;
  std::vector<uint64_t> adj_;
};

// ---------------------------------------------------------------------------
// graph6 (McKay's format): 6-bit groups offset by 63, upper triangle
// column-major.
// ---------------------------------------------------------------------------

namespace detail {

inline int g6_value(std::string_view text, size_t pos) {
  unsigned char c = static_cast<unsigned char>(text[pos]);
  if (c < 63 || c > 126)
    throw ParseError("graph6: character out of range at position " + std::to_string(pos));
  return c - 63;
}

}  // namespace detail

inline Graph parse_graph6(std::string_view text, int cap = kMaxVertices) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) throw ParseError("graph6: empty line");

  size_t pos = 0;
  long long n = 0;
  if (text[0] != '~') {
    n = detail::g6_value(text, 0);
    pos = 1;
  } else if (text.size() >= 2 && text[1] == '~') {
    if (text.size() < 8) throw ParseError("graph6: truncated header");
    for (size_t i = 2; i < 8; ++i) n = (n << 6) | detail::g6_value(text, i);
    pos = 8;
  } else {
    if (text.size() < 4) throw ParseError("graph6: truncated header");
    for (size_t i = 1; i < 4; ++i) n = (n << 6) | detail::g6_value(text, i);
    pos = 4;
  }
  if (n > cap || n > kMaxVertices)
    throw CapError("graph6: n = " + std::to_string(n) + " exceeds cap " +
                   std::to_string(std::min<long long>(cap, kMaxVertices)));

  Graph g(static_cast<int>(n));
  size_t bits_needed = static_cast<size_t>(n) * static_cast<size_t>(n - 1) / 2;
  size_t chars_needed = (bits_needed + 5) / 6;
  size_t have = text.size() - pos;
  if (have < chars_needed) throw ParseError("graph6: truncated bit stream");
  if (have > chars_needed) throw ParseError("graph6: trailing characters");

  size_t bit = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++bit) {
      int group = detail::g6_value(text, pos + bit / 6);
      if ((group >> (5 - bit % 6)) & 1) g.add_edge(i, j);
    }
  }
  for (size_t b = bits_needed; b < chars_needed * 6; ++b) {
    int group = detail::g6_value(text, pos + b / 6);
    if ((group >> (5 - b % 6)) & 1) throw ParseError("graph6: nonzero padding bits");
  }
  return g;
}

inline std::string to_graph6(const Graph& g) {
  int n = g.vertex_count();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else {
    out.push_back('~');
    out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
    out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
    out.push_back(static_cast<char>((n & 63) + 63));
  }
  int acc = 0, nbits = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        nbits = 0;
      }
    }
  }
  if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
  return out;
}

// ---------------------------------------------------------------------------
// Edge-list format: first line "n m", then m lines "u v" with 1-based vertices.
// ---------------------------------------------------------------------------

inline Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ParseError("edge list: missing \"n m\" header");
  long long n = 0, m = 0;
  {
    std::istringstream hdr(line);
    std::string rest;
    if (!(hdr >> n >> m) || (hdr >> rest) || n < 0 || m < 0)
      throw ParseError("edge list: malformed header \"" + line + "\"");
  }
  if (n > kMaxVertices) throw CapError("edge list: n = " + std::to_string(n) + " exceeds cap 64");

  Graph g(static_cast<int>(n));
  long long seen = 0;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream es(line);
    long long u = 0, v = 0;
    std::string rest;
    if (!(es >> u >> v) || (es >> rest))
      throw ParseError("edge list: malformed edge on line " + std::to_string(lineno));
    if (u == v) throw ParseError("edge list: loop " + std::to_string(u) + " " + std::to_string(v));
    if (u < 1 || u > n || v < 1 || v > n)
      throw ParseError("edge list: vertex out of range on line " + std::to_string(lineno));
    if (g.has_edge(static_cast<int>(u - 1), static_cast<int>(v - 1)))
      throw ParseError("edge list: duplicate edge " + std::to_string(std::min(u, v)) + " " +
                       std::to_string(std::max(u, v)));
    g.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1));
    ++seen;
  }
  if (seen != m)
    throw ParseError("edge list: header says " + std::to_string(m) + " edges, found " +
                     std::to_string(seen));
  return g;
}

// ---------------------------------------------------------------------------
// Standard families.  Labeling is canonical: star center = vertex 0, paths and
// cycles use consecutive labels.
// ---------------------------------------------------------------------------

inline Graph make_empty(int n) { return Graph(n); }

inline Graph make_complete(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

/// K_{1,m} on m+1 vertices, center first.
inline Graph make_star(int leaves) {
  if (leaves < 0) throw std::invalid_argument("star: need m >= 0");
  Graph g(leaves + 1);
  for (int v = 1; v <= leaves; ++v) g.add_edge(0, v);
  return g;
}

inline Graph make_path(int n) {
  if (n < 1) throw std::invalid_argument("path: need n >= 1");
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

inline Graph make_cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle: need n >= 3");
  Graph g = make_path(n);
  g.add_edge(n - 1, 0);
  return g;
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
  int na = a.vertex_count(), nb = b.vertex_count();
  if (na + nb > kMaxVertices)
    throw CapError("disjoint_union: combined vertex count exceeds " + std::to_string(kMaxVertices));
  Graph g(na + nb);
  for (const auto& [u, v] : a.edges()) g.add_edge(u, v);
  for (const auto& [u, v] : b.edges()) g.add_edge(u + na, v + na);
  return g;
}

// ---------------------------------------------------------------------------
// Structural metrics.
// ---------------------------------------------------------------------------

struct GraphMetrics {
  int m = 0;
  int t = 0;  // triangle count
  int max_degree = 0;
  std::vector<int> component_sizes;  // descending
  bool is_connected = false;
  bool is_bipartite = true;
  std::optional<std::vector<int>> bipartition;  // 0/1 color per vertex when bipartite
};

inline GraphMetrics compute_metrics(const Graph& g) {
  int n = g.vertex_count();
  GraphMetrics out;
  out.m = g.edge_count();
  for (int u = 0; u < n; ++u) out.max_degree = std::max(out.max_degree, g.degree(u));

  long long wedge = 0;
  for (const auto& [u, v] : g.edges()) wedge += std::popcount(g.row(u) & g.row(v));
  out.t = static_cast<int>(wedge / 3);

  std::vector<int> color(static_cast<size_t>(n), -1);
  for (int s = 0; s < n; ++s) {
    if (color[static_cast<size_t>(s)] != -1) continue;
    int size = 0;
    std::vector<int> queue{s};
    color[static_cast<size_t>(s)] = 0;
    while (!queue.empty()) {
      int u = queue.back();
      queue.pop_back();
      ++size;
      for (uint64_t bits = g.row(u); bits; bits &= bits - 1) {
        int v = std::countr_zero(bits);
        if (color[static_cast<size_t>(v)] == -1) {
          color[static_cast<size_t>(v)] = color[static_cast<size_t>(u)] ^ 1;
          queue.push_back(v);
        } else if (color[static_cast<size_t>(v)] == color[static_cast<size_t>(u)]) {
          out.is_bipartite = false;
        }
      }
    }
    out.component_sizes.push_back(size);
  }
  std::sort(out.component_sizes.rbegin(), out.component_sizes.rend());
  out.is_connected = out.component_sizes.size() <= 1;
  if (out.is_bipartite) out.bipartition = color;
  return out;
}

/// Every simple cycle exactly once, up to rotation and reflection.  Each comes
/// back as its vertex sequence starting at the cycle's smallest label, second
/// vertex smaller than the last (fixes the direction).
inline std::vector<std::vector<int>> enumerate_simple_cycles(const Graph& g,
                                                             int cap = kDefaultCycleCap) {
  int n = g.vertex_count();
  if (n > cap)
    throw CapError("cycle enumeration: n = " + std::to_string(n) + " exceeds cap " +
                   std::to_string(cap));
  std::vector<std::vector<int>> cycles;
  std::vector<int> path;
  uint64_t visited = 0;

  auto dfs = [&](auto&& self, int v, int s) -> void {
    for (uint64_t bits = g.row(v); bits; bits &= bits - 1) {
      int w = std::countr_zero(bits);
      if (w == s && path.size() >= 3 && path[1] < path.back()) cycles.push_back(path);
      if (w > s && !((visited >> w) & 1)) {
        visited |= uint64_t{1} << w;
        path.push_back(w);
        self(self, w, s);
        path.pop_back();
        visited &= ~(uint64_t{1} << w);
      }
    }
  };

  for (int s = 0; s < n; ++s) {
    path.assign(1, s);
    visited = uint64_t{1} << s;
    dfs(dfs, s, s);
  }
  return cycles;
}

/// True iff g is K_{1,m} plus isolated vertices for some m >= 0 (m = 0 is the
/// empty graph).  Decided structurally: all edges share a common endpoint.
inline bool is_star_plus_isolated(const Graph& g) {
  auto es = g.edges();
  if (es.empty()) return true;
  uint64_t candidates = (uint64_t{1} << es[0].first) | (uint64_t{1} << es[0].second);
  for (const auto& [u, v] : es) {
    candidates &= (uint64_t{1} << u) | (uint64_t{1} << v);
    if (candidates == 0) return false;
  }
  return true;
}

}  // namespace permenergy
