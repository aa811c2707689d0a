// Acceptance suite: the project's exit gate.  Each TEST_CASE is one
// criterion; a listener prints one [PASS]/[FAIL] line per criterion with its
// wall time.  Tolerances are pinned in the assertions, nothing is deferred.

#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "permenergy/bounds.hpp"
#include "permenergy/closed_forms.hpp"
#include "permenergy/orientation.hpp"
#include "permenergy/scan.hpp"
#include "permenergy/spectral.hpp"
#include "test_support.hpp"

using namespace permenergy;
using Clock = std::chrono::steady_clock;
using test_support::from_mask;
using test_support::multiset_close;
using test_support::random_graph;

namespace {

class CriterionLinePrinter : public Catch::EventListenerBase {
 public:
  using EventListenerBase::EventListenerBase;

  void testCaseStarting(const Catch::TestCaseInfo&) override { start_ = Clock::now(); }

  void testCaseEnded(const Catch::TestCaseStats& stats) override {
    double secs = std::chrono::duration<double>(Clock::now() - start_).count();
    std::printf("[%s] %s (%.1fs)\n", stats.totals.assertions.allOk() ? "PASS" : "FAIL",
                stats.testInfo->name.c_str(), secs);
    std::fflush(stdout);
  }

 private:
  Clock::time_point start_;
};

double elapsed_s(Clock::time_point from) {
  return std::chrono::duration<double>(Clock::now() - from).count();
}

}  // namespace

CATCH_REGISTER_LISTENER(CriterionLinePrinter)

TEST_CASE("criterion 01: K_3 polynomial, roots, and energy") {
  auto t0 = Clock::now();
  Graph k3 = make_complete(3);
  IntPolynomial p = perm_poly_ryser(k3);
  REQUIRE(p == IntPolynomial({BigInt(1), BigInt(0), BigInt(3), BigInt(-2)}));
  REQUIRE(perm_poly_minors(k3) == p);

  RootMultiset rm = perm_roots(p);
  REQUIRE(multiset_close(rm.roots,
                         {{0.5961, 0.0}, {-0.2980, 1.8073}, {-0.2980, -1.8073}}, 1e-4));

  double e = permanental_energy(k3);
  REQUIRE_THAT(e, Catch::Matchers::WithinAbs(4.2596, 5e-4));
  REQUIRE(e > std::sqrt(18.0));
  REQUIRE(elapsed_s(t0) < 1.0);
}

TEST_CASE("criterion 02: star equality E_per(K_{1,m} + kK_1) = 2 sqrt(m)") {
  auto t0 = Clock::now();
  for (int m = 1; m <= 12; ++m) {
    for (int k = 0; k <= 3; ++k) {
      Graph g = disjoint_union(make_star(m), make_empty(k));
      double e = permanental_energy(g);
      REQUIRE_THAT(e, Catch::Matchers::WithinAbs(2.0 * std::sqrt(double(m)), 1e-9));
      LowerCheck lc = check_lower(g);
      REQUIRE(lc.tight);
      REQUIRE(lc.numeric_structural_agree);
    }
  }
  REQUIRE(elapsed_s(t0) < 5.0);
}

TEST_CASE("criterion 03: full theorem suite over all 2^15 labeled 6-vertex graphs") {
  auto t0 = Clock::now();
  const uint64_t total = uint64_t{1} << 15;
  std::atomic<uint64_t> failures{0};
  parallel_for(total, 4, [&](size_t mask) {
    BoundsReport rep = full_report(from_mask(6, static_cast<uint64_t>(mask)));
    for (const char* verdict : {"lower_bound", "upper_n_rho", "upper_stanley", "upper_n_delta",
                                "root_disk", "mu_sum", "mu_square_sum", "l1_l2"})
      if (!rep.verdicts.at(verdict)) ++failures;
    if (!rep.all_pass()) ++failures;
  });
  REQUIRE(failures == 0);
  REQUIRE(elapsed_s(t0) < 600.0);
}

TEST_CASE("criterion 04: dual-engine exactness (n = 6 corpus, random n in {8,10}, n <= 5 oracle)") {
  const uint64_t total = uint64_t{1} << 15;
  std::atomic<uint64_t> mismatches{0};
  parallel_for(total, 4, [&](size_t mask) {
    Graph g = from_mask(6, static_cast<uint64_t>(mask));
    if (!(perm_poly_ryser(g) == perm_poly_minors(g))) ++mismatches;
  });
  REQUIRE(mismatches == 0);

  std::mt19937_64 rng(20240814);
  for (int n : {8, 10}) {
    std::vector<Graph> graphs;
    for (int trial = 0; trial < 500; ++trial) graphs.push_back(random_graph(n, rng));
    std::atomic<uint64_t> bad{0};
    parallel_for(graphs.size(), 4, [&](size_t i) {
      if (!(perm_poly_ryser(graphs[i]) == perm_poly_minors(graphs[i]))) ++bad;
    });
    REQUIRE(bad == 0);
  }

  for (int n = 0; n <= 5; ++n) {
    const uint64_t corpus = uint64_t{1} << (n * (n - 1) / 2);
    for (uint64_t mask = 0; mask < corpus; ++mask) {
      Graph g = from_mask(n, mask);
      IntPolynomial oracle = test_support::brute_force_perm_poly(g);
      REQUIRE(perm_poly_ryser(g) == oracle);
      REQUIRE(perm_poly_minors(g) == oracle);
    }
  }
}

TEST_CASE("criterion 05: cycle closed forms (even energies, odd sinh roots)") {
  auto t0 = Clock::now();
  for (int n = 4; n <= 14; n += 2)
    REQUIRE(std::abs(permanental_energy(make_cycle(n)) - 4.0 / std::sin(kPi / n)) <= 1e-8);

  const double a = odd_cycle_log_constant();
  for (int n = 3; n <= 13; n += 2) {
    RootMultiset generic = perm_roots(perm_poly_ryser(make_cycle(n)));
    std::vector<std::complex<double>> analytic;
    for (int k = 0; k < n; ++k) {
      double u = a / n, theta = 2.0 * kPi * k / n;
      analytic.emplace_back(2.0 * std::sinh(u) * std::cos(theta),
                            2.0 * std::cosh(u) * std::sin(theta));
    }
    REQUIRE(multiset_close(generic.roots, analytic, 1e-8));
  }
  REQUIRE(elapsed_s(t0) < 30.0);
}

TEST_CASE("criterion 06: odd-cycle asymptotic ratio against 4/pi") {
  auto t0 = Clock::now();
  const double limit = 4.0 / kPi;
  REQUIRE(std::abs(odd_cycle_energy_ratio(10001) - limit) <= 3e-4);
  double prev = std::abs(odd_cycle_energy_ratio(101) - limit);
  for (int n : {301, 1001, 3001, 10001}) {
    double gap = std::abs(odd_cycle_energy_ratio(n) - limit);
    REQUIRE(gap < prev);
    prev = gap;
  }
  REQUIRE(elapsed_s(t0) < 5.0);
}

TEST_CASE("criterion 07: forest identity and tree extremals") {
  // 200 random forests with n <= 10
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 9);
    Graph f = test_support::random_forest(n, rng);
    REQUIRE(std::abs(permanental_energy(f) - adjacency_energy(f)) <= 1e-8 * n);
  }

  // all labeled trees with n <= 8
  for (int n = 1; n <= 8; ++n) {
    auto trees = test_support::all_labeled_trees(n);
    std::atomic<uint64_t> bad{0};
    parallel_for(trees.size(), 4, [&](size_t i) {
      if (std::abs(permanental_energy(trees[i]) - adjacency_energy(trees[i])) > 1e-8 * n) ++bad;
    });
    REQUIRE(bad == 0);
  }

  // tree scan: star is the unique minimum, path the unique maximum
  std::vector<std::string> corpus;
  for (const Graph& t : test_support::all_labeled_trees(7)) corpus.push_back(to_graph6(t));
  ScanConfig cfg;
  cfg.workers = 4;
  cfg.trees_only = true;
  ScanResult r = scan_graph6_lines(corpus, cfg);
  REQUIRE(r.trees.checked);
  REQUIRE(r.trees.min_is_star);
  REQUIRE(r.trees.max_is_path);
  REQUIRE(r.trees.min_matches_2sqrt);
  REQUIRE_THAT(r.max_entry->e_per,
               Catch::Matchers::WithinAbs(permanental_energy(make_path(7)), 1e-9));
}

TEST_CASE("criterion 08: skew determinantal model and the sqrt(2mn) bound") {
  // all labeled trees n <= 8
  for (int n = 2; n <= 8; ++n) {
    auto trees = test_support::all_labeled_trees(n);
    std::atomic<uint64_t> bad{0};
    parallel_for(trees.size(), 4, [&](size_t i) {
      auto orientation = find_odd_orientation(trees[i]);
      if (!orientation) {
        ++bad;
        return;
      }
      if (!(skew_char_poly(skew_matrix(*orientation)) == perm_poly_ryser(trees[i]))) ++bad;
      if (permanental_energy(trees[i]) > mcclelland_bound(trees[i]) + 1e-8) ++bad;
    });
    REQUIRE(bad == 0);
  }

  // even cycles
  for (int n : {4, 6, 8, 10}) {
    Graph c = make_cycle(n);
    auto orientation = find_odd_orientation(c);
    REQUIRE(orientation.has_value());
    REQUIRE(skew_char_poly(skew_matrix(*orientation)) == perm_poly_ryser(c));
    REQUIRE(permanental_energy(c) <= mcclelland_bound(c) + 1e-8);
  }

  // equality cases and the non-bipartite guard
  REQUIRE_THAT(permanental_energy(make_cycle(4)),
               Catch::Matchers::WithinAbs(mcclelland_bound(make_cycle(4)), 1e-8));
  REQUIRE_THAT(permanental_energy(make_complete(2)),
               Catch::Matchers::WithinAbs(mcclelland_bound(make_complete(2)), 1e-8));
  REQUIRE(permanental_energy(make_complete(3)) > std::sqrt(18.0));
}

TEST_CASE("criterion 09: complete graphs, derangements, dominance") {
  for (int n = 1; n <= 10; ++n) {
    REQUIRE(permanent(make_complete(n)) == derangement_count(n));
    REQUIRE(permanental_energy(make_complete(n)) >= kn_energy_lower_bound(n) - 1e-6);
  }

  const double kn6 = permanental_energy(make_complete(6));
  const double threshold = std::pow(static_cast<double>(derangement_count(6)), 1.0 / 6.0);
  const uint64_t total = uint64_t{1} << 15;
  std::atomic<uint64_t> violations{0};
  parallel_for(total, 4, [&](size_t mask) {
    Graph g = from_mask(6, static_cast<uint64_t>(mask));
    if (adjacency_spectrum(g).rho <= threshold &&
        permanental_energy(g) > kn6 + 1e-8)
      ++violations;
  });
  REQUIRE(violations == 0);
}

TEST_CASE("criterion 10: extremal scan at n in {4,5,6} with worker determinism") {
  namespace fs = std::filesystem;
  for (int n : {4, 5, 6}) {
    ScanConfig cfg;
    cfg.workers = 4;
    ScanResult r = scan_graph6_lines(test_support::all_labeled_graph6(n), cfg);
    REQUIRE(r.verdict_failures == 0);
    // K_n is the unique maximizer
    REQUIRE(r.max_entry->graph6 == to_graph6(make_complete(n)));
    REQUIRE(r.max_count == 1);
    REQUIRE(r.max_all_complete);
    // the best non-complete graph is the clique minus one edge
    REQUIRE(r.max_noncomplete_entry->m == n * (n - 1) / 2 - 1);
    REQUIRE(r.max_noncomplete_entry->e_per < r.max_entry->e_per);
  }

  // determinism: byte-identical CSV across 1-worker and 4-worker runs (n = 5)
  auto corpus = test_support::all_labeled_graph6(5);
  fs::path base = fs::temp_directory_path() / "permenergy_acceptance_scan";
  fs::remove_all(base);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  ScanConfig one, four;
  one.workers = 1;
  one.out_dir = (base / "w1").string();
  four.workers = 4;
  four.out_dir = (base / "w4").string();
  scan_graph6_lines(corpus, one);
  scan_graph6_lines(corpus, four);
  REQUIRE(slurp(base / "w1" / "reports.csv") == slurp(base / "w4" / "reports.csv"));
  REQUIRE(!slurp(base / "w1" / "reports.csv").empty());
  fs::remove_all(base);
}
