#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "permenergy/bounds.hpp"
#include "permenergy/graph.hpp"

namespace permenergy {

/// Run fn(i) for i in [0, count) across a worker pool.  Exceptions are
/// rethrown on the caller thread; when several workers fail, the one with the
/// lowest index wins, so error reporting does not depend on scheduling.
template <typename Fn>
void parallel_for(size_t count, int workers, Fn&& fn) {
  if (workers <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::mutex err_mu;
  size_t err_index = count;
  std::exception_ptr err;
  auto body = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::scoped_lock lock(err_mu);
        if (i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

inline uint64_t fnv1a64(std::string_view s, uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct ScanEntry {
  std::string graph6;
  double e_per = 0.0;
  int m = 0;
};

struct TreeScanChecks {
  bool checked = false;
  bool min_is_star = false;        // every minimizer is a star
  bool max_is_path = false;        // every maximizer is a path
  bool min_matches_2sqrt = false;  // min energy == 2 sqrt(n-1)
};

struct ScanResult {
  int n = 0;
  size_t corpus_size = 0;
  size_t verdict_failures = 0;
  std::string corpus_hash;
  std::optional<ScanEntry> max_entry, min_entry, min_connected_entry, max_noncomplete_entry;
  size_t max_count = 0;           // graphs attaining the maximum (within tie_tol)
  bool max_all_complete = false;  // every maximum-attaining graph is complete
  std::map<int, ScanEntry> per_m_frontier;  // m -> max-energy graph with m edges
  // Dense-regime observation: at m = C(n,2)-k, is the frontier winner the
  // clique minus a k-matching?  Recorded, never enforced.
  std::map<int, bool> clique_minus_matching;  // k in {1,2}
  TreeScanChecks trees;
};

struct ScanConfig {
  int workers = 1;
  std::string out_dir;  // empty: in-memory only
  bool trees_only = false;
  bool resume = false;
  ReportOptions report{};
  std::string tool_version = "0";
  size_t block_size = 2048;
  double tie_tol = 1e-9;
};

inline nlohmann::json scan_result_to_json(const ScanResult& r) {
  auto entry_json = [](const std::optional<ScanEntry>& e) -> nlohmann::json {
    if (!e) return nullptr;
    return nlohmann::json{{"graph6", e->graph6}, {"e_per", e->e_per}, {"m", e->m}};
  };
  nlohmann::json frontier = nlohmann::json::array();
  for (const auto& [m, e] : r.per_m_frontier)
    frontier.push_back({{"m", m}, {"graph6", e.graph6}, {"e_per", e.e_per}});
  nlohmann::json j{{"n", r.n},
                   {"corpus_size", r.corpus_size},
                   {"corpus_fnv1a64", r.corpus_hash},
                   {"verdict_failures", r.verdict_failures},
                   {"max_entry", entry_json(r.max_entry)},
                   {"min_entry", entry_json(r.min_entry)},
                   {"min_connected_entry", entry_json(r.min_connected_entry)},
                   {"max_noncomplete_entry", entry_json(r.max_noncomplete_entry)},
                   {"max_count", r.max_count},
                   {"max_all_complete", r.max_all_complete},
                   {"per_m_frontier", frontier}};
  nlohmann::json cmm = nlohmann::json::object();
  for (const auto& [k, v] : r.clique_minus_matching) cmm[std::to_string(k)] = v;
  j["clique_minus_matching"] = cmm;
  if (r.trees.checked)
    j["trees"] = {{"min_is_star", r.trees.min_is_star},
                  {"max_is_path", r.trees.max_is_path},
                  {"min_matches_2sqrt", r.trees.min_matches_2sqrt}};
  return j;
}

namespace detail {

struct ScanFold {
  ScanResult result;
  double tie_tol = 1e-9;
  // tie groups at the running extremes
  size_t min_count = 0;
  bool min_all_star = true;
  bool max_all_path = true;

  void add(const BoundsReport& r) {
    if (result.corpus_size == 0) {
      result.n = r.n;
    } else if (result.n != r.n) {
      throw ParseError("scan: corpus mixes vertex counts " + std::to_string(result.n) + " and " +
                       std::to_string(r.n));
    }
    ++result.corpus_size;
    if (!r.all_pass()) ++result.verdict_failures;

    ScanEntry e{r.graph_id, r.e_per, r.m};
    auto better_max = [](const ScanEntry& cand, const ScanEntry& cur) {
      return cand.e_per > cur.e_per || (cand.e_per == cur.e_per && cand.graph6 < cur.graph6);
    };
    auto better_min = [](const ScanEntry& cand, const ScanEntry& cur) {
      return cand.e_per < cur.e_per || (cand.e_per == cur.e_per && cand.graph6 < cur.graph6);
    };

    const bool is_complete = r.m == r.n * (r.n - 1) / 2;
    const bool is_path = r.is_connected && r.m == r.n - 1 && r.max_degree <= 2;

    if (!result.max_entry) {
      result.max_entry = e;
      result.max_count = 1;
      result.max_all_complete = is_complete;
      max_all_path = is_path;
    } else if (r.e_per > result.max_entry->e_per + tie_tol) {
      result.max_entry = e;
      result.max_count = 1;
      result.max_all_complete = is_complete;
      max_all_path = is_path;
    } else {
      if (r.e_per >= result.max_entry->e_per - tie_tol) {
        ++result.max_count;
        result.max_all_complete = result.max_all_complete && is_complete;
        max_all_path = max_all_path && is_path;
      }
      if (better_max(e, *result.max_entry)) result.max_entry = e;
    }

    if (!result.min_entry) {
      result.min_entry = e;
      min_count = 1;
      min_all_star = r.is_star_plus_isolated;
    } else if (r.e_per < result.min_entry->e_per - tie_tol) {
      result.min_entry = e;
      min_count = 1;
      min_all_star = r.is_star_plus_isolated;
    } else {
      if (r.e_per <= result.min_entry->e_per + tie_tol) {
        ++min_count;
        min_all_star = min_all_star && r.is_star_plus_isolated;
      }
      if (better_min(e, *result.min_entry)) result.min_entry = e;
    }

    if (r.is_connected &&
        (!result.min_connected_entry || better_min(e, *result.min_connected_entry)))
      result.min_connected_entry = e;
    if (!is_complete &&
        (!result.max_noncomplete_entry || better_max(e, *result.max_noncomplete_entry)))
      result.max_noncomplete_entry = e;

    auto it = result.per_m_frontier.find(r.m);
    if (it == result.per_m_frontier.end())
      result.per_m_frontier.emplace(r.m, e);
    else if (better_max(e, it->second))
      it->second = e;
  }
};

inline Graph complement_graph(const Graph& g) {
  int n = g.vertex_count();
  Graph c(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v)) c.add_edge(u, v);
  return c;
}

}  // namespace detail

/// Scan a graph6 corpus: full_report per line (worker pool, deterministic
/// fold in input order), extremal summary, optional persistence to out_dir as
/// manifest.json + reports.jsonl + reports.csv + summary.json.  A scan with a
/// matching manifest can resume from its jsonl; the final outputs are
/// byte-identical to an uninterrupted run, whatever the worker count.
inline ScanResult scan_graph6_lines(const std::vector<std::string>& lines, const ScanConfig& cfg) {
  namespace fs = std::filesystem;

  uint64_t hash = 1469598103934665603ull;
  for (const auto& line : lines) {
    hash = fnv1a64(line, hash);
    hash = fnv1a64("\n", hash);
  }
  char hash_hex[19];
  std::snprintf(hash_hex, sizeof hash_hex, "0x%016llx", static_cast<unsigned long long>(hash));

  nlohmann::json config_echo{{"trees_only", cfg.trees_only},
                             {"ryser_cap", cfg.report.ryser_cap},
                             {"orientation_edge_cap", cfg.report.orientation_edge_cap},
                             {"cycle_cap", cfg.report.cycle_cap}};

  fs::path out_dir(cfg.out_dir);
  fs::path jsonl_path, manifest_path;
  size_t done = 0;
  detail::ScanFold fold;
  fold.tie_tol = cfg.tie_tol;
  fold.result.corpus_hash = hash_hex;

  const bool persist = !cfg.out_dir.empty();
  if (persist) {
    fs::create_directories(out_dir);
    jsonl_path = out_dir / "reports.jsonl";
    manifest_path = out_dir / "manifest.json";

    if (cfg.resume && fs::exists(manifest_path)) {
      std::ifstream mf(manifest_path);
      nlohmann::json manifest = nlohmann::json::parse(mf, nullptr, false);
      if (manifest.is_discarded() || manifest.value("corpus_fnv1a64", "") != hash_hex ||
          manifest.value("line_count", size_t{0}) != lines.size() ||
          manifest.value("config", nlohmann::json()) != config_echo)
        throw ParseError("scan resume: manifest does not match this corpus/configuration");
      // Replay complete jsonl lines into the fold; drop a torn trailing line.
      std::vector<std::string> complete;
      if (fs::exists(jsonl_path)) {
        std::ifstream in(jsonl_path);
        std::string line;
        while (std::getline(in, line) && complete.size() < lines.size()) {
          if (line.empty()) continue;
          nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
          if (j.is_discarded()) break;
          complete.push_back(line);
        }
      }
      std::ofstream rewrite(jsonl_path, std::ios::trunc);
      for (const auto& line : complete) rewrite << line << '\n';
      rewrite.close();
      for (const auto& line : complete) fold.add(report_from_json(nlohmann::json::parse(line)));
      done = complete.size();
    } else {
      std::ofstream(jsonl_path, std::ios::trunc);
    }

    nlohmann::json manifest{{"format", 1},
                            {"tool_version", cfg.tool_version},
                            {"corpus_fnv1a64", hash_hex},
                            {"line_count", lines.size()},
                            {"config", config_echo}};
    std::ofstream mf(manifest_path, std::ios::trunc);
    mf << manifest.dump(2) << '\n';
  }

  std::ofstream jsonl;
  if (persist) jsonl.open(jsonl_path, std::ios::app);

  std::vector<BoundsReport> block;
  for (size_t base = done; base < lines.size(); base += cfg.block_size) {
    size_t count = std::min(cfg.block_size, lines.size() - base);
    block.assign(count, BoundsReport{});
    parallel_for(count, cfg.workers, [&](size_t i) {
      Graph g;
      try {
        g = parse_graph6(lines[base + i]);
      } catch (const std::exception& ex) {
        throw ParseError("scan: line " + std::to_string(base + i + 1) + ": " + ex.what());
      }
      if (cfg.trees_only) {
        GraphMetrics mm = compute_metrics(g);
        if (!(mm.is_connected && mm.m == g.vertex_count() - 1))
          throw ParseError("scan: line " + std::to_string(base + i + 1) +
                           ": trees-only corpus contains a non-tree");
      }
      block[i] = full_report(g, cfg.report);
    });
    for (size_t i = 0; i < count; ++i) {
      fold.add(block[i]);
      if (persist) jsonl << report_to_json(block[i]).dump() << '\n';
    }
    if (persist) jsonl.flush();
  }
  if (persist) jsonl.close();

  ScanResult result = std::move(fold.result);

  // Dense-regime observation flags.
  for (int k = 1; k <= 2; ++k) {
    int target = result.n * (result.n - 1) / 2 - k;
    if (target < 0) continue;
    auto it = result.per_m_frontier.find(target);
    if (it == result.per_m_frontier.end()) continue;
    Graph comp = detail::complement_graph(parse_graph6(it->second.graph6));
    result.clique_minus_matching[k] =
        comp.edge_count() == k && compute_metrics(comp).max_degree == 1;
  }

  if (cfg.trees_only && result.corpus_size > 0) {
    result.trees.checked = true;
    result.trees.min_is_star = fold.min_all_star;
    result.trees.max_is_path = fold.max_all_path;
    double expect = 2.0 * std::sqrt(static_cast<double>(result.n - 1));
    result.trees.min_matches_2sqrt =
        result.min_entry && std::abs(result.min_entry->e_per - expect) <= 1e-9;
  }

  if (persist) {
    // CSV and summary regenerate from the jsonl so a resumed scan still ends
    // with byte-identical outputs.
    std::ifstream in(jsonl_path);
    std::ofstream csv(out_dir / "reports.csv", std::ios::trunc);
    csv << report_csv_header() << '\n';
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      csv << report_csv_row(report_from_json(nlohmann::json::parse(line))) << '\n';
    }
    std::ofstream summary(out_dir / "summary.json", std::ios::trunc);
    summary << scan_result_to_json(result).dump(2) << '\n';
  }

  return result;
}

}  // namespace permenergy
