#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "permenergy/bounds.hpp"
#include "permenergy/orientation.hpp"
#include "permenergy/spectral.hpp"
#include "test_support.hpp"

using namespace permenergy;
using test_support::random_graph;

TEST_CASE("skew matrix follows the arc convention") {
  // P_3 oriented 1 -> 2 -> 3
  Orientation o(make_path(3), {true, true});
  SkewMatrix s = skew_matrix(o);
  REQUIRE(s.at(0, 1) == 1);
  REQUIRE(s.at(1, 0) == -1);
  REQUIRE(s.at(1, 2) == 1);
  REQUIRE(s.at(2, 1) == -1);
  REQUIRE(s.at(0, 2) == 0);
  REQUIRE(s.at(0, 0) == 0);

  SkewMatrix zero = skew_matrix(Orientation(make_empty(3), {}));
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) REQUIRE(zero.at(u, v) == 0);

  // reversing every arc negates the matrix
  Orientation rev(make_path(3), {false, false});
  SkewMatrix sr = skew_matrix(rev);
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) REQUIRE(sr.at(u, v) == -s.at(u, v));

  REQUIRE_THROWS_AS(Orientation(make_path(3), {true}), std::invalid_argument);
}

TEST_CASE("odd-orientation predicate") {
  // any orientation of a tree is vacuously odd
  REQUIRE(is_odd_orientation(Orientation(make_path(5), {true, false, true, false})));

  // C_4 edges in canonical order: (0,1), (0,3), (1,2), (2,3)
  // all arcs cyclic 0->1->2->3->0 means (0,3) is traversed against its
  // canonical direction: forward bits {1,0,1,1} -> 4 co-directed arcs, even
  REQUIRE_FALSE(is_odd_orientation(Orientation(make_cycle(4), {true, false, true, true})));
  // one arc reversed -> 3 co-directed arcs
  REQUIRE(is_odd_orientation(Orientation(make_cycle(4), {true, true, true, true})));

  // odd cycles can never pass (parity differs between the two traversals)
  REQUIRE_FALSE(is_odd_orientation(Orientation(make_cycle(3), {true, true, true})));
  REQUIRE_FALSE(is_odd_orientation(Orientation(make_cycle(3), {true, false, true})));
}

TEST_CASE("odd-orientation search") {
  // trees: vacuous, the all-canonical orientation comes out first
  auto tree = find_odd_orientation(make_path(6));
  REQUIRE(tree.has_value());
  REQUIRE(tree->to_bitstring() == "11111");

  for (int n : {4, 6}) {
    auto found = find_odd_orientation(make_cycle(n));
    REQUIRE(found.has_value());
    REQUIRE(is_odd_orientation(*found));
  }

  REQUIRE_THROWS_AS(find_odd_orientation(make_cycle(5)), std::invalid_argument);
  // K_{4,6} is bipartite with 24 edges, over the search cap
  Graph k46(10);
  for (int u = 0; u < 4; ++u)
    for (int v = 4; v < 10; ++v) k46.add_edge(u, v);
  REQUIRE_THROWS_AS(find_odd_orientation(k46), CapError);
}

TEST_CASE("exact characteristic polynomial via Faddeev-LeVerrier") {
  // zero matrix -> x^n
  REQUIRE(skew_char_poly(skew_matrix(Orientation(make_empty(4), {}))) ==
          IntPolynomial::monomial(4));

  // P_3, both orientations of each edge, always x^3 + 2x
  for (int bits = 0; bits < 4; ++bits) {
    Orientation o(make_path(3), {(bits & 1) != 0, (bits & 2) != 0});
    REQUIRE(skew_char_poly(skew_matrix(o)) == perm_poly_ryser(make_path(3)));
  }

  // oddly oriented C_4 -> x^4 + 4x^2 + 4
  auto oc4 = find_odd_orientation(make_cycle(4));
  REQUIRE(skew_char_poly(skew_matrix(*oc4)) == perm_poly_ryser(make_cycle(4)));

  // against the signed permutation-sum oracle on random orientations
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    Graph g = random_graph(n, rng);
    std::vector<bool> dirs;
    for (int e = 0; e < g.edge_count(); ++e) dirs.push_back((rng() & 1) != 0);
    SkewMatrix s = skew_matrix(Orientation(g, dirs));
    std::vector<BigInt> entries(s.s.size());
    for (size_t i = 0; i < s.s.size(); ++i) entries[i] = s.s[i];
    REQUIRE(skew_char_poly(s) == test_support::brute_force_char_poly(entries, n));
  }
}

TEST_CASE("adjacency characteristic polynomial matches the signed oracle") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + static_cast<int>(rng() % 5);
    Graph g = random_graph(n, rng);
    std::vector<BigInt> a(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
    for (auto [u, v] : g.edges()) {
      a[static_cast<size_t>(u) * n + v] = 1;
      a[static_cast<size_t>(v) * n + u] = 1;
    }
    REQUIRE(adjacency_char_poly(g) == test_support::brute_force_char_poly(a, n));
  }
}

TEST_CASE("determinantal model: skew char poly equals perm poly when a valid orientation exists") {
  std::mt19937_64 rng(79);
  int verified = 0;
  while (verified < 25) {
    int n = 4 + static_cast<int>(rng() % 7);
    Graph g = random_graph(n, rng, 0.3);
    if (!compute_metrics(g).is_bipartite || g.edge_count() > kDefaultOrientationEdgeCap) continue;
    auto orientation = find_odd_orientation(g);
    if (!orientation) continue;
    REQUIRE(is_odd_orientation(*orientation));
    REQUIRE(skew_char_poly(skew_matrix(*orientation)) == perm_poly_ryser(g));
    ++verified;
  }
}

TEST_CASE("skew eigenstructure: imaginary pairs with modulus square sum 2m") {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = random_graph(6, rng, 0.4);
    if (!compute_metrics(g).is_bipartite) continue;
    auto orientation = find_odd_orientation(g);
    if (!orientation) continue;
    RootMultiset rm = perm_roots(skew_char_poly(skew_matrix(*orientation)));
    double sq = 0;
    for (auto mu : rm.roots) {
      REQUIRE(std::abs(mu.real()) <= 1e-8);  // purely imaginary spectrum
      sq += std::norm(mu);
    }
    REQUIRE_THAT(sq, Catch::Matchers::WithinAbs(2.0 * g.edge_count(), 1e-6));
  }
}

TEST_CASE("McClelland-type bound values and the K_3 guard") {
  REQUIRE_THAT(mcclelland_bound(make_path(3)), Catch::Matchers::WithinAbs(std::sqrt(12.0), 1e-12));
  REQUIRE(permanental_energy(make_path(3)) <= mcclelland_bound(make_path(3)));

  REQUIRE_THAT(mcclelland_bound(make_complete(2)), Catch::Matchers::WithinAbs(2.0, 1e-12));
  REQUIRE_THAT(permanental_energy(make_complete(2)),
               Catch::Matchers::WithinAbs(mcclelland_bound(make_complete(2)), 1e-9));

  REQUIRE_THAT(mcclelland_bound(make_cycle(4)),
               Catch::Matchers::WithinAbs(4.0 * std::sqrt(2.0), 1e-12));
  REQUIRE_THAT(permanental_energy(make_cycle(4)),
               Catch::Matchers::WithinAbs(mcclelland_bound(make_cycle(4)), 1e-9));

  // the hypothesis matters: K_3 admits no odd orientation and beats sqrt(2mn)
  REQUIRE(permanental_energy(make_complete(3)) > std::sqrt(18.0));
}

TEST_CASE("bipartite graphs without 4k-cycles: pi(G,x) = i^-n chi(G, ix)") {
  // realized on integer coefficients: odd c_k vanish and
  // c_{2j} = (-1)^j a_{2j} where a are the characteristic coefficients
  auto check_identity = [](const Graph& g) {
    for (const auto& cyc : enumerate_simple_cycles(g)) REQUIRE(cyc.size() % 4 != 0);
    IntPolynomial pi = perm_poly_ryser(g);
    IntPolynomial chi = adjacency_char_poly(g);
    int n = g.vertex_count();
    for (int k = 0; k <= n; ++k) {
      if (k % 2 == 1) {
        REQUIRE(pi.coeff(k) == 0);
        REQUIRE(chi.coeff(k) == 0);
      } else {
        BigInt expect = (k / 2 % 2 == 0) ? chi.coeff(k) : -chi.coeff(k);
        REQUIRE(pi.coeff(k) == expect);
      }
    }
  };
  check_identity(make_path(7));
  check_identity(make_cycle(6));
  check_identity(make_cycle(10));
  Graph c6_pendant = make_cycle(6);
  c6_pendant = disjoint_union(c6_pendant, make_empty(1));
  c6_pendant.add_edge(0, 6);
  check_identity(c6_pendant);
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 30; ++trial) check_identity(test_support::random_forest(8, rng));
}
