#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "permenergy/graph.hpp"
#include "test_support.hpp"

using namespace permenergy;
using test_support::from_mask;
using test_support::random_graph;

TEST_CASE("graph6 decodes the documented examples") {
  Graph k2 = parse_graph6("A_");
  REQUIRE(k2.vertex_count() == 2);
  REQUIRE(k2.edge_count() == 1);
  REQUIRE(k2.has_edge(0, 1));

  Graph k4 = parse_graph6("C~");
  REQUIRE(k4.vertex_count() == 4);
  REQUIRE(k4.edge_count() == 6);

  Graph empty5 = parse_graph6("D??");
  REQUIRE(empty5.vertex_count() == 5);
  REQUIRE(empty5.edge_count() == 0);
}

TEST_CASE("graph6 round-trips") {
  std::mt19937_64 rng(2024);
  for (int n = 0; n <= 12; ++n) {
    for (int trial = 0; trial < 50; ++trial) {
      Graph g = random_graph(n, rng);
      REQUIRE(parse_graph6(to_graph6(g)) == g);
    }
  }
  // long header form, n > 62
  Graph big(63);
  big.add_edge(0, 62);
  std::string enc = to_graph6(big);
  REQUIRE(enc[0] == '~');
  REQUIRE(parse_graph6(enc) == big);
}

TEST_CASE("graph6 rejects malformed input, each with its own diagnostic") {
  REQUIRE_THROWS_AS(parse_graph6(""), ParseError);
  REQUIRE_THROWS_AS(parse_graph6("B"), ParseError);            // truncated bit stream
  REQUIRE_THROWS_AS(parse_graph6("Bww"), ParseError);          // trailing characters
  REQUIRE_THROWS_AS(parse_graph6("B\x1f"), ParseError);        // character below offset
  REQUIRE_THROWS_AS(parse_graph6("~?"), ParseError);           // truncated header
  REQUIRE_THROWS_AS(parse_graph6("AO"), ParseError);           // nonzero padding
  REQUIRE_THROWS_AS(parse_graph6("~?@@"), CapError);           // n = 65 over cap
  REQUIRE_THROWS_AS(parse_graph6("Bw", 2), CapError);          // explicit cap
  REQUIRE_THROWS_MATCHES(parse_graph6("B"), ParseError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("truncated")));
}

TEST_CASE("edge list parses the documented examples") {
  Graph k3 = parse_edge_list("3 3\n1 2\n2 3\n1 3\n");
  REQUIRE(k3 == make_complete(3));

  Graph star = parse_edge_list("4 3\n1 2\n1 3\n1 4\n");
  REQUIRE(star == make_star(3));

  REQUIRE_THROWS_AS(parse_edge_list("2 1\n1 1\n"), ParseError);       // loop
  REQUIRE_THROWS_AS(parse_edge_list("3 2\n1 2\n2 1\n"), ParseError);  // duplicate
  REQUIRE_THROWS_AS(parse_edge_list("3 1\n1 4\n"), ParseError);       // out of range
  REQUIRE_THROWS_AS(parse_edge_list("3 2\n1 2\n"), ParseError);       // count mismatch
  REQUIRE_THROWS_AS(parse_edge_list("nonsense\n"), ParseError);
  REQUIRE_THROWS_AS(parse_edge_list("65 0\n"), CapError);
}

TEST_CASE("family constructors build the canonical labelings") {
  Graph star4 = make_star(4);
  REQUIRE(star4.vertex_count() == 5);
  REQUIRE(star4.degree(0) == 4);
  for (int v = 1; v < 5; ++v) REQUIRE(star4.degree(v) == 1);

  Graph c5 = make_cycle(5);
  for (int v = 0; v < 5; ++v) REQUIRE(c5.degree(v) == 2);

  Graph padded = disjoint_union(make_star(3), make_empty(2));
  REQUIRE(padded.vertex_count() == 6);
  REQUIRE(padded.edge_count() == 3);

  REQUIRE_THROWS_AS(make_cycle(2), std::invalid_argument);
  REQUIRE_THROWS_AS(make_star(-1), std::invalid_argument);
  REQUIRE_THROWS_AS(make_path(0), std::invalid_argument);
}

TEST_CASE("metrics: edges, triangles, degrees, components, bipartition") {
  GraphMetrics k4 = compute_metrics(make_complete(4));
  REQUIRE(k4.m == 6);
  REQUIRE(k4.t == 4);
  REQUIRE(k4.max_degree == 3);
  REQUIRE(k4.is_connected);
  REQUIRE_FALSE(k4.is_bipartite);

  GraphMetrics c5 = compute_metrics(make_cycle(5));
  REQUIRE(c5.m == 5);
  REQUIRE(c5.t == 0);
  REQUIRE_FALSE(c5.is_bipartite);

  GraphMetrics c6 = compute_metrics(make_cycle(6));
  REQUIRE(c6.is_bipartite);
  REQUIRE(c6.bipartition.has_value());

  GraphMetrics padded = compute_metrics(disjoint_union(make_star(3), make_empty(2)));
  REQUIRE(padded.m == 3);
  REQUIRE(padded.component_sizes == std::vector<int>{4, 1, 1});
  REQUIRE_FALSE(padded.is_connected);
}

TEST_CASE("handshake: degree sum equals 2m") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = random_graph(8, rng);
    int degsum = 0;
    for (int v = 0; v < 8; ++v) degsum += g.degree(v);
    REQUIRE(degsum == 2 * g.edge_count());
  }
}

TEST_CASE("cycle enumeration finds each simple cycle exactly once") {
  REQUIRE(enumerate_simple_cycles(make_path(6)).empty());

  auto c6 = enumerate_simple_cycles(make_cycle(6));
  REQUIRE(c6.size() == 1);
  REQUIRE(c6[0].size() == 6);

  auto k4 = enumerate_simple_cycles(make_complete(4));
  REQUIRE(k4.size() == 7);
  int len3 = 0, len4 = 0;
  for (const auto& cyc : k4) (cyc.size() == 3 ? len3 : len4)++;
  REQUIRE(len3 == 4);
  REQUIRE(len4 == 3);

  REQUIRE_THROWS_AS(enumerate_simple_cycles(Graph(15)), CapError);
}

TEST_CASE("cycle enumeration matches the subset brute-force count") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = random_graph(7, rng, 0.4);
    auto cycles = enumerate_simple_cycles(g);
    REQUIRE(static_cast<long>(cycles.size()) == test_support::brute_force_cycle_count(g));
    // no duplicates up to rotation/reflection: canonical starts are unique
    std::set<std::vector<int>> distinct(cycles.begin(), cycles.end());
    REQUIRE(distinct.size() == cycles.size());
  }
}

TEST_CASE("acyclic iff m = n - #components") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    Graph g = random_graph(8, rng, 0.2);
    GraphMetrics mm = compute_metrics(g);
    bool forest = mm.m == 8 - static_cast<int>(mm.component_sizes.size());
    REQUIRE(enumerate_simple_cycles(g).empty() == forest);
  }
}

TEST_CASE("star-plus-isolated detection is structural") {
  REQUIRE(is_star_plus_isolated(disjoint_union(make_star(5), make_empty(2))));
  REQUIRE_FALSE(is_star_plus_isolated(make_path(4)));
  REQUIRE(is_star_plus_isolated(make_empty(6)));
  REQUIRE(is_star_plus_isolated(make_star(1)));   // single edge
  REQUIRE_FALSE(is_star_plus_isolated(make_cycle(3)));

  // positive answer implies every pair of edges intersects
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    Graph g = random_graph(6, rng, 0.3);
    if (!is_star_plus_isolated(g)) continue;
    auto es = g.edges();
    for (size_t a = 0; a < es.size(); ++a)
      for (size_t b = a + 1; b < es.size(); ++b) {
        bool meet = es[a].first == es[b].first || es[a].first == es[b].second ||
                    es[a].second == es[b].first || es[a].second == es[b].second;
        REQUIRE(meet);
      }
  }
}

TEST_CASE("graph6 corpus of all labeled graphs is distinct and parseable") {
  auto corpus = test_support::all_labeled_graph6(4);
  REQUIRE(corpus.size() == 64);
  std::set<std::string> distinct(corpus.begin(), corpus.end());
  REQUIRE(distinct.size() == 64);
  for (const auto& line : corpus) REQUIRE(parse_graph6(line).vertex_count() == 4);
}
