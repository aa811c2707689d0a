// permenergy: permanental polynomials, permanental energy, and bound checks
// for simple graphs.
//
// Subcommands:
//   poly    exact coefficients of per(xI - A(G))
//   energy  E_per(G), adjacency energy, spectral radius
//   check   evaluate every bound/identity and report verdicts
//   orient  search for an orientation with every cycle oddly oriented
//   family  closed-form vs generic-engine table for a graph family
//   scan    batch theorem scan over a graph6 stream with persistence
//
// Exit codes: 0 ok, 1 verdict/computation failure, 2 input error, 3 cap
// exceeded.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "permenergy/bounds.hpp"
#include "permenergy/closed_forms.hpp"
#include "permenergy/graph.hpp"
#include "permenergy/orientation.hpp"
#include "permenergy/permanent.hpp"
#include "permenergy/scan.hpp"
#include "permenergy/spectral.hpp"

#ifndef PERMENERGY_VERSION
#define PERMENERGY_VERSION "0.0.0"
#endif

namespace {

using namespace permenergy;

std::string read_stream(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> nonempty_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

/// graph6 lines never contain interior whitespace; an edge list always does.
Graph load_graph(const std::string& path, const std::string& format, int ncap) {
  std::string text = read_stream(path);
  auto lines = nonempty_lines(text);
  if (lines.empty()) throw ParseError("empty input");
  std::string fmt = format;
  if (fmt == "auto")
    fmt = lines[0].find_first_of(" \t") != std::string::npos ? "edgelist" : "graph6";
  if (fmt == "graph6") return parse_graph6(lines[0], ncap);
  Graph g = parse_edge_list(text);
  if (g.vertex_count() > ncap)
    throw CapError("edge list: n = " + std::to_string(g.vertex_count()) + " exceeds cap " +
                   std::to_string(ncap));
  return g;
}

struct CommonOpts {
  std::string input = "-";
  std::string format = "auto";
  int ncap = kDefaultRyserCap;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("input", opts.input, "input file, or - for stdin")->capture_default_str();
  cmd->add_option("--format", opts.format, "input format")
      ->check(CLI::IsMember({"auto", "graph6", "edgelist"}))
      ->capture_default_str();
  cmd->add_option("--ncap", opts.ncap, "vertex cap for the permanental engine")
      ->envname("PERMENERGY_NCAP")
      ->capture_default_str();
}

int cmd_poly(const CommonOpts& opts, const std::string& engine, bool xcheck) {
  Graph g = load_graph(opts.input, opts.format, opts.ncap);
  IntPolynomial p = engine == "minors" ? perm_poly_minors(g, opts.ncap)
                                       : perm_poly_ryser(g, opts.ncap);
  if (xcheck) {
    IntPolynomial other = engine == "minors" ? perm_poly_ryser(g, opts.ncap)
                                             : perm_poly_minors(g, opts.ncap);
    if (!(p == other)) {
      std::cerr << "permenergy: engine cross-check FAILED for " << to_graph6(g) << "\n";
      return 1;
    }
  }
  std::cout << poly_to_json(p).dump() << "\n";
  return 0;
}

int cmd_energy(const CommonOpts& opts, bool with_roots) {
  Graph g = load_graph(opts.input, opts.format, opts.ncap);
  IntPolynomial p = perm_poly_ryser(g, opts.ncap);
  RootMultiset rm = perm_roots(p);
  if (!rm.converged || rm.max_residual() > residual_threshold(p))
    throw std::runtime_error("root finding did not converge");
  nlohmann::json j = roots_to_json(rm);
  j["graph6"] = to_graph6(g);
  j["n"] = g.vertex_count();
  j["m"] = g.edge_count();
  j["e_per"] = j["energy"];
  j["e_adj"] = adjacency_energy(g);
  j["rho"] = g.vertex_count() > 0 ? adjacency_spectrum(g).rho : 0.0;
  if (!with_roots) {
    j.erase("roots");
    j.erase("zero_multiplicity");
    j.erase("max_residual");
    j.erase("energy");
  }
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_check(const CommonOpts& opts) {
  Graph g = load_graph(opts.input, opts.format, opts.ncap);
  ReportOptions ropt;
  ropt.ryser_cap = opts.ncap;
  BoundsReport rep = full_report(g, ropt);
  std::cout << report_to_json(rep).dump(2) << "\n";
  return rep.all_pass() ? 0 : 1;
}

int cmd_orient(const CommonOpts& opts) {
  Graph g = load_graph(opts.input, opts.format, opts.ncap);
  auto orientation = find_odd_orientation(g);
  nlohmann::json j;
  j["found"] = orientation.has_value();
  if (orientation) {
    IntPolynomial skew = skew_char_poly(skew_matrix(*orientation));
    IntPolynomial perm = perm_poly_ryser(g, opts.ncap);
    nlohmann::json coeffs = nlohmann::json::array();
    for (const BigInt& c : skew.coeffs()) coeffs.push_back(c.str());
    j["orientation"] = orientation->to_bitstring();
    j["skew_poly"] = coeffs;
    j["matches_perm_poly"] = (skew == perm);
  } else {
    j["orientation"] = "";
    j["skew_poly"] = nullptr;
    j["matches_perm_poly"] = nullptr;
  }
  std::cout << j.dump() << "\n";
  if (orientation && !j["matches_perm_poly"].get<bool>()) return 1;
  return 0;
}

int cmd_family(const std::string& kind, int from, int to, int ncap, bool plot_data) {
  if (from > to) throw ParseError("family: empty range");
  std::cout << (plot_data ? "n,energy" : "n,family,energy,closed_form_energy,abs_diff") << "\n";
  for (int n = from; n <= to; ++n) {
    Graph g;
    double closed = 0.0;
    if (kind == "cycle") {
      if (n < 3) throw ParseError("family cycle: need n >= 3");
      g = make_cycle(n);
      closed = n % 2 == 0 ? even_cycle_energy(n) : n * odd_cycle_energy_ratio(n);
    } else if (kind == "star") {
      if (n < 2) throw ParseError("family star: need n >= 2");
      g = make_star(n - 1);
      closed = 2.0 * std::sqrt(static_cast<double>(n - 1));
    } else if (kind == "complete") {
      if (n < 1) throw ParseError("family complete: need n >= 1");
      g = make_complete(n);
      closed = kn_energy_lower_bound(n);  // lower bound; abs_diff is the slack
    } else {  // path
      if (n < 1) throw ParseError("family path: need n >= 1");
      g = make_path(n);
      for (int k = 1; k <= n; ++k) closed += std::abs(2.0 * std::cos(k * kPi / (n + 1)));
    }
    double energy = permanental_energy(g, ncap);
    if (plot_data)
      std::cout << n << "," << fmt_double(energy) << "\n";
    else
      std::cout << n << "," << kind << "," << fmt_double(energy) << "," << fmt_double(closed)
                << "," << fmt_double(std::abs(energy - closed)) << "\n";
  }
  return 0;
}

int cmd_scan(const CommonOpts& opts, ScanConfig cfg, bool plot_data) {
  cfg.tool_version = PERMENERGY_VERSION;
  cfg.report.ryser_cap = opts.ncap;
  auto lines = nonempty_lines(read_stream(opts.input));
  if (lines.empty()) throw ParseError("scan: empty corpus");
  ScanResult result = scan_graph6_lines(lines, cfg);
  if (plot_data) {
    std::cout << "m,max_e_per\n";
    for (const auto& [m, e] : result.per_m_frontier)
      std::cout << m << "," << fmt_double(e.e_per) << "\n";
  } else {
    std::cout << scan_result_to_json(result).dump(2) << "\n";
  }
  return result.verdict_failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"permanental polynomials, roots, and energy bounds for simple graphs"};
  app.set_version_flag("--version", std::string("permenergy ") + PERMENERGY_VERSION);
  app.require_subcommand(1);

  CommonOpts poly_opts, energy_opts, check_opts, orient_opts, scan_opts;

  auto* poly = app.add_subcommand("poly", "permanental polynomial coefficients (JSON)");
  add_common(poly, poly_opts);
  std::string engine = "ryser";
  poly->add_option("--engine", engine, "coefficient engine")
      ->check(CLI::IsMember({"ryser", "minors"}))
      ->capture_default_str();
  bool xcheck = false;
  poly->add_flag("--xcheck", xcheck, "run both engines and fail on mismatch");

  auto* energy = app.add_subcommand("energy", "permanental + adjacency energy (JSON)");
  add_common(energy, energy_opts);
  bool with_roots = false;
  energy->add_flag("--roots", with_roots, "include the root multiset");

  auto* check = app.add_subcommand("check", "bound/identity report (JSON)");
  add_common(check, check_opts);

  auto* orient = app.add_subcommand("orient", "odd-orientation search (JSON)");
  add_common(orient, orient_opts);

  auto* family = app.add_subcommand("family", "family table (CSV)");
  std::string kind = "cycle";
  int from = 3, to = 12, family_ncap = kDefaultRyserCap;
  bool family_plot = false;
  family->add_option("--kind", kind, "graph family")
      ->check(CLI::IsMember({"cycle", "star", "complete", "path"}))
      ->capture_default_str();
  family->add_option("--from", from, "first n")->capture_default_str();
  family->add_option("--to", to, "last n")->capture_default_str();
  family->add_option("--ncap", family_ncap, "vertex cap for the permanental engine")
      ->envname("PERMENERGY_NCAP")
      ->capture_default_str();
  family->add_flag("--emit-plot-data", family_plot, "dump x,y columns only");

  auto* scan = app.add_subcommand("scan", "batch scan over graph6 lines");
  add_common(scan, scan_opts);
  ScanConfig scan_cfg;
  bool scan_plot = false;
  scan->add_option("--workers", scan_cfg.workers, "worker threads")->capture_default_str();
  scan->add_option("--out", scan_cfg.out_dir, "results directory (jsonl/csv/manifest/summary)");
  scan->add_flag("--trees-only", scan_cfg.trees_only,
                 "require a tree corpus and verify star/path extremality");
  scan->add_flag("--resume", scan_cfg.resume, "resume an interrupted scan from its manifest");
  scan->add_flag("--emit-plot-data", scan_plot, "dump m,max_e_per columns only");

  CLI11_PARSE(app, argc, argv);

  try {
    if (poly->parsed()) return cmd_poly(poly_opts, engine, xcheck);
    if (energy->parsed()) return cmd_energy(energy_opts, with_roots);
    if (check->parsed()) return cmd_check(check_opts);
    if (orient->parsed()) return cmd_orient(orient_opts);
    if (family->parsed()) return cmd_family(kind, from, to, family_ncap, family_plot);
    if (scan->parsed()) return cmd_scan(scan_opts, scan_cfg, scan_plot);
  } catch (const CapError& ex) {
    std::cerr << "permenergy: " << ex.what() << "\n";
    return 3;
  } catch (const ParseError& ex) {
    std::cerr << "permenergy: " << ex.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "permenergy: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "permenergy: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
