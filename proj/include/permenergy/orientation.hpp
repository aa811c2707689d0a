#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permenergy/graph.hpp"
#include "permenergy/int_poly.hpp"

namespace permenergy {

inline constexpr int kDefaultOrientationEdgeCap = 20;

/// A direction for every edge of a graph.  Edges are indexed in the canonical
/// (u,v), u < v lexicographic order; forward(e) means u -> v.
class Orientation {
 public:
  Orientation(Graph g, std::vector<bool> forward)
      : graph_(std::move(g)), edges_(graph_.edges()), forward_(std::move(forward)) {
    if (forward_.size() != edges_.size())
      throw std::invalid_argument("orientation: exactly one direction bit per edge");
  }

  const Graph& graph() const { return graph_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool forward(size_t e) const { return forward_[e]; }

  /// '1' = canonical direction u -> v, edge order as edges().
  std::string to_bitstring() const {
    std::string out(forward_.size(), '0');
    for (size_t e = 0; e < forward_.size(); ++e)
      if (forward_[e]) out[e] = '1';
    return out;
  }

 private:
  Graph graph_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<bool> forward_;
};

/// Skew adjacency matrix: S[u][v] = +1 if u -> v is an arc, -1 if v -> u, 0
/// otherwise.
struct SkewMatrix {
  int n = 0;
  std::vector<int8_t> s;  // row-major

  int at(int u, int v) const { return s[static_cast<size_t>(u) * n + v]; }
};

inline SkewMatrix skew_matrix(const Orientation& o) {
  int n = o.graph().vertex_count();
  SkewMatrix out{n, std::vector<int8_t>(static_cast<size_t>(n) * static_cast<size_t>(n), 0)};
  const auto& es = o.edges();
  for (size_t e = 0; e < es.size(); ++e) {
    auto [u, v] = es[e];
    int su = o.forward(e) ? 1 : -1;
    out.s[static_cast<size_t>(u) * n + v] = static_cast<int8_t>(su);
    out.s[static_cast<size_t>(v) * n + u] = static_cast<int8_t>(-su);
  }
  return out;
}

namespace detail {

struct CycleConstraint {
  std::vector<std::pair<size_t, bool>> arcs;  // (edge index, traversal follows canonical u->v)
};

inline std::vector<CycleConstraint> cycle_constraints(
    const Graph& g, const std::vector<std::vector<int>>& cycles) {
  std::map<std::pair<int, int>, size_t> index;
  auto es = g.edges();
  for (size_t e = 0; e < es.size(); ++e) index[es[e]] = e;
  std::vector<CycleConstraint> out;
  out.reserve(cycles.size());
  for (const auto& cyc : cycles) {
    CycleConstraint cc;
    for (size_t i = 0; i < cyc.size(); ++i) {
      int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
      bool along = a < b;
      cc.arcs.emplace_back(index.at({std::min(a, b), std::max(a, b)}), along);
    }
    out.push_back(std::move(cc));
  }
  return out;
}

}  // namespace detail

/// True iff every simple cycle has an odd number of co-directed edges in both
/// traversal directions.  For even cycles the parity is traversal-independent;
/// an odd cycle can never satisfy both directions, so any graph with an odd
/// cycle fails.
inline bool is_odd_orientation(const Orientation& o, int cycle_cap = kDefaultCycleCap) {
  auto cycles = enumerate_simple_cycles(o.graph(), cycle_cap);
  auto constraints = detail::cycle_constraints(o.graph(), cycles);
  for (const auto& cc : constraints) {
    int along = 0;
    for (const auto& [e, follows] : cc.arcs)
      if (o.forward(e) == follows) ++along;
    int len = static_cast<int>(cc.arcs.size());
    if (along % 2 == 0 || (len - along) % 2 == 0) return false;
  }
  return true;
}

/// Backtracking search over the 2^m orientations of a bipartite graph for one
/// in which every cycle is oddly oriented.  Edges are assigned in canonical
/// order, canonical direction first, and a cycle is checked the moment its
/// last edge gets a direction.  Returns the first full assignment found.
inline std::optional<Orientation> find_odd_orientation(const Graph& g,
                                                       int edge_cap = kDefaultOrientationEdgeCap,
                                                       int cycle_cap = kDefaultCycleCap) {
  if (!compute_metrics(g).is_bipartite)
    throw std::invalid_argument("find_odd_orientation: graph must be bipartite");
  const int m = g.edge_count();
  if (m > edge_cap)
    throw CapError("find_odd_orientation: m = " + std::to_string(m) + " exceeds cap " +
                   std::to_string(edge_cap));

  auto cycles = enumerate_simple_cycles(g, cycle_cap);
  auto constraints = detail::cycle_constraints(g, cycles);

  // Per-edge list of (cycle, follows) memberships.
  std::vector<std::vector<std::pair<size_t, bool>>> touching(static_cast<size_t>(m));
  std::vector<int> remaining(constraints.size(), 0);
  std::vector<int> along(constraints.size(), 0);
  for (size_t ci = 0; ci < constraints.size(); ++ci) {
    remaining[ci] = static_cast<int>(constraints[ci].arcs.size());
    for (const auto& [e, follows] : constraints[ci].arcs) touching[e].emplace_back(ci, follows);
  }

  std::vector<bool> forward(static_cast<size_t>(m), false);
  auto search = [&](auto&& self, int e) -> bool {
    if (e == m) return true;
    for (bool dir : {true, false}) {
      forward[static_cast<size_t>(e)] = dir;
      bool feasible = true;
      for (const auto& [ci, follows] : touching[static_cast<size_t>(e)]) {
        if (dir == follows) ++along[ci];
        if (--remaining[ci] == 0 && along[ci] % 2 == 0) feasible = false;
      }
      if (feasible && self(self, e + 1)) return true;
      for (const auto& [ci, follows] : touching[static_cast<size_t>(e)]) {
        if (dir == follows) --along[ci];
        ++remaining[ci];
      }
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  return Orientation(g, std::move(forward));
}

/// Exact integer characteristic polynomial det(xI - A) of an integer matrix
/// via Faddeev-LeVerrier; every trace division by k is exact.
inline IntPolynomial char_poly(const std::vector<BigInt>& a, int n) {
  if (n == 0) return IntPolynomial({BigInt(1)});
  std::vector<BigInt> coeffs(static_cast<size_t>(n) + 1, 0);
  coeffs[0] = 1;
  std::vector<BigInt> mk(a);  // M_1 = A
  std::vector<BigInt> scratch(a.size());
  for (int k = 1;; ++k) {
    BigInt tr = 0;
    for (int i = 0; i < n; ++i) tr += mk[static_cast<size_t>(i) * n + i];
    BigInt ck = -tr;
    if (ck % k != 0) throw std::logic_error("char_poly: non-exact trace division");
    ck /= k;
    coeffs[static_cast<size_t>(k)] = ck;
    if (k == n) break;
    // M_{k+1} = A (M_k + c_k I)
    for (int i = 0; i < n; ++i) mk[static_cast<size_t>(i) * n + i] += ck;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        BigInt sum = 0;
        for (int l = 0; l < n; ++l)
          sum += a[static_cast<size_t>(i) * n + l] * mk[static_cast<size_t>(l) * n + j];
        scratch[static_cast<size_t>(i) * n + j] = std::move(sum);
      }
    }
    mk.swap(scratch);
  }
  return IntPolynomial(std::move(coeffs));
}

inline IntPolynomial skew_char_poly(const SkewMatrix& s) {
  std::vector<BigInt> a(s.s.size());
  for (size_t i = 0; i < s.s.size(); ++i) a[i] = s.s[i];
  return char_poly(a, s.n);
}

inline IntPolynomial adjacency_char_poly(const Graph& g) {
  int n = g.vertex_count();
  std::vector<BigInt> a(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
  for (int u = 0; u < n; ++u)
    for (uint64_t bits = g.row(u); bits; bits &= bits - 1)
      a[static_cast<size_t>(u) * n + std::countr_zero(bits)] = 1;
  return char_poly(a, n);
}

/// sqrt(2mn).  The bound on E_per is only a theorem when the graph admits an
/// orientation with every cycle oddly oriented; callers record that flag.
inline double mcclelland_bound(const Graph& g) {
  return std::sqrt(2.0 * g.edge_count() * g.vertex_count());
}

}  // namespace permenergy
