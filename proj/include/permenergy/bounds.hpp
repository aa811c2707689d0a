#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "permenergy/closed_forms.hpp"
#include "permenergy/graph.hpp"
#include "permenergy/orientation.hpp"
#include "permenergy/permanent.hpp"
#include "permenergy/spectral.hpp"

namespace permenergy {

/// Fixed-format float rendering, 12 significant digits; shared by every CSV
/// writer so output is byte-stable.
inline std::string fmt_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct ReportOptions {
  int ryser_cap = kDefaultRyserCap;
  int minors_cap = kDefaultMinorsCap;
  int orientation_edge_cap = kDefaultOrientationEdgeCap;
  int cycle_cap = kDefaultCycleCap;
  RootFindOptions roots{};
  double hold_tol = 1e-8;        // bound slack accepted as "holds"
  double tight_tol = 1e-6;       // numeric equality flag for the lower bound
  double mu_sum_tol = 1e-8;      // |sum mu| <= tol * n
  double mu_square_tol = 1e-6;   // |sum mu^2 + 2m| <= tol * max(1, m)
  double l1l2_tol = 1e-6;        // (sum|mu|)^2 >= 2 sum|mu|^2 - tol
  double forest_tol = 1e-8;      // forest identity, per-root, * n
};

struct LowerCheck {
  double bound = 0.0;
  bool holds = false;
  bool tight = false;  // structural star test; must agree with the numeric flag
  bool numeric_structural_agree = false;
};

struct BoundCheck {
  double bound = 0.0;
  bool holds = false;
};

struct DeltaCheck {
  double bound = 0.0;           // n * max degree
  double complete_bound = 0.0;  // n(n-1)
  bool holds = false;
};

struct KnDominanceCheck {
  bool applies = false;  // rho(G) <= D_n^{1/n}
  bool holds = false;    // vacuously true when it does not apply
  double rho_threshold = 0.0;
  double kn_energy = 0.0;
};

/// Everything the theorem suite knows about one graph.
struct BoundsReport {
  std::string graph_id;  // graph6
  int n = 0, m = 0, t = 0;
  int max_degree = 0;
  bool is_connected = false;
  bool is_bipartite = false;
  bool is_forest = false;
  bool is_star_plus_isolated = false;
  double e_per = 0.0, e_adj = 0.0, rho = 0.0;
  double lower_2sqrtm = 0.0;
  double upper_nrho = 0.0;
  double upper_stanley = 0.0;
  std::optional<double> upper_ndelta;  // defined for n >= 2
  double upper_nn1 = 0.0;
  double mcclelland = 0.0;
  bool odd_orientation_searched = false;
  bool odd_orientation_found = false;
  std::string odd_orientation;
  bool lower_tight = false;  // authoritative: the structural star test
  int zero_multiplicity = 0;
  double max_residual = 0.0;
  std::map<std::string, bool> verdicts;

  bool all_pass() const {
    for (const auto& [name, ok] : verdicts)
      if (!ok) return false;
    return true;
  }
};

namespace detail {

/// E_per(K_n) memo shared across reports; scan workers hit this from many
/// threads.
inline double complete_graph_energy(int n, int ryser_cap, const RootFindOptions& opt) {
  static std::mutex mu;
  static std::map<int, double> cache;
  {
    std::scoped_lock lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  double value = permanental_energy(make_complete(n), ryser_cap, opt);
  std::scoped_lock lock(mu);
  cache.emplace(n, value);
  return value;
}

inline double stanley_rho_bound(int m) { return (std::sqrt(8.0 * m + 1.0) - 1.0) / 2.0; }

}  // namespace detail

inline BoundsReport full_report(const Graph& g, const ReportOptions& opt = {}) {
  BoundsReport r;
  r.graph_id = to_graph6(g);
  r.n = g.vertex_count();

  GraphMetrics metrics = compute_metrics(g);
  r.m = metrics.m;
  r.t = metrics.t;
  r.max_degree = metrics.max_degree;
  r.is_connected = metrics.is_connected;
  r.is_bipartite = metrics.is_bipartite;
  r.is_forest = (metrics.m == r.n - static_cast<int>(metrics.component_sizes.size()));
  r.is_star_plus_isolated = is_star_plus_isolated(g);

  IntPolynomial poly = perm_poly_ryser(g, opt.ryser_cap);
  RootMultiset roots = perm_roots(poly, opt.roots);
  r.zero_multiplicity = roots.zero_multiplicity;
  r.max_residual = roots.max_residual();
  r.verdicts["residuals"] =
      roots.converged && r.max_residual <= residual_threshold(poly, opt.roots);

  double sum_mod = 0.0, sum_mod2 = 0.0, max_mod = 0.0;
  std::complex<double> sum = 0.0, sum_sq = 0.0;
  for (const auto& mu : roots.roots) {
    double a = std::abs(mu);
    sum_mod += a;
    sum_mod2 += a * a;
    max_mod = std::max(max_mod, a);
    sum += mu;
    sum_sq += mu * mu;
  }
  r.e_per = sum_mod;

  if (r.n > 0) {
    Spectrum spec = adjacency_spectrum(g);
    r.rho = spec.rho;
    for (double lam : spec.eigenvalues) r.e_adj += std::abs(lam);

    if (r.is_forest) {
      std::vector<double> mu_mod(roots.roots.size()), lam_mod(spec.eigenvalues.size());
      for (size_t i = 0; i < roots.roots.size(); ++i) mu_mod[i] = std::abs(roots.roots[i]);
      for (size_t i = 0; i < spec.eigenvalues.size(); ++i)
        lam_mod[i] = std::abs(spec.eigenvalues[i]);
      std::sort(mu_mod.begin(), mu_mod.end());
      std::sort(lam_mod.begin(), lam_mod.end());
      bool ok = mu_mod.size() == lam_mod.size();
      for (size_t i = 0; ok && i < mu_mod.size(); ++i)
        ok = std::abs(mu_mod[i] - lam_mod[i]) <= opt.forest_tol * r.n;
      r.verdicts["forest_identity"] = ok;
    }
  }

  // Lower bound 2 sqrt(m) and its equality characterization.
  r.lower_2sqrtm = 2.0 * std::sqrt(static_cast<double>(r.m));
  bool tight_numeric = std::abs(r.e_per - r.lower_2sqrtm) <= opt.tight_tol;
  r.lower_tight = r.is_star_plus_isolated;
  r.verdicts["lower_bound"] = r.e_per >= r.lower_2sqrtm - opt.hold_tol;
  r.verdicts["tightness_consistent"] = (tight_numeric == r.is_star_plus_isolated);

  // Upper bounds through the spectral radius.
  r.upper_nrho = r.n * r.rho;
  r.verdicts["upper_n_rho"] = r.e_per <= r.upper_nrho + opt.hold_tol;
  r.upper_stanley = r.n * detail::stanley_rho_bound(r.m);
  r.verdicts["upper_stanley"] = r.e_per <= r.upper_stanley + opt.hold_tol;
  r.upper_nn1 = static_cast<double>(r.n) * (r.n - 1);
  if (r.n >= 2) {
    r.upper_ndelta = static_cast<double>(r.n) * r.max_degree;
    r.verdicts["upper_n_delta"] = r.e_per <= *r.upper_ndelta + opt.hold_tol;
  }

  // Root geometry.
  r.verdicts["root_disk"] = max_mod <= r.rho + opt.hold_tol;
  r.verdicts["mu_sum"] = std::abs(sum) <= opt.mu_sum_tol * std::max(1, r.n);
  r.verdicts["mu_square_sum"] =
      std::abs(sum_sq + std::complex<double>(2.0 * r.m, 0.0)) <=
      opt.mu_square_tol * std::max(1, r.m);
  r.verdicts["l1_l2"] = sum_mod * sum_mod >= 2.0 * sum_mod2 - opt.l1l2_tol;

  // K_n dominance for small spectral radius.
  if (r.n <= opt.ryser_cap) {
    double dn_root = std::pow(static_cast<double>(derangement_count(r.n)),
                              r.n > 0 ? 1.0 / r.n : 1.0);
    bool applies = r.rho <= dn_root + 1e-12;
    if (applies) {
      double kn = detail::complete_graph_energy(r.n, opt.ryser_cap, opt.roots);
      r.verdicts["kn_dominance"] = r.e_per <= kn + opt.hold_tol;
    } else {
      r.verdicts["kn_dominance"] = true;
    }
  }

  // McClelland-type bound; a theorem only under the odd-orientation
  // hypothesis, so the verdict exists only when the hypothesis was verified.
  r.mcclelland = mcclelland_bound(g);
  if (r.is_bipartite && r.m <= opt.orientation_edge_cap && r.n <= opt.cycle_cap) {
    r.odd_orientation_searched = true;
    auto orient = find_odd_orientation(g, opt.orientation_edge_cap, opt.cycle_cap);
    if (orient) {
      r.odd_orientation_found = true;
      r.odd_orientation = orient->to_bitstring();
      r.verdicts["mcclelland"] = r.e_per <= r.mcclelland + opt.hold_tol;
    }
  }

  return r;
}

// ---------------------------------------------------------------------------
// Standalone checkers (each recomputes what it needs).
// ---------------------------------------------------------------------------

inline LowerCheck check_lower(const Graph& g, const ReportOptions& opt = {}) {
  LowerCheck out;
  out.bound = 2.0 * std::sqrt(static_cast<double>(g.edge_count()));
  double e = permanental_energy(g, opt.ryser_cap, opt.roots);
  out.holds = e >= out.bound - opt.hold_tol;
  bool numeric = std::abs(e - out.bound) <= opt.tight_tol;
  out.tight = is_star_plus_isolated(g);
  out.numeric_structural_agree = (numeric == out.tight);
  return out;
}

inline BoundCheck check_upper_rho(const Graph& g, const ReportOptions& opt = {}) {
  BoundCheck out;
  double rho = g.vertex_count() > 0 ? adjacency_spectrum(g).rho : 0.0;
  out.bound = g.vertex_count() * rho;
  out.holds = permanental_energy(g, opt.ryser_cap, opt.roots) <= out.bound + opt.hold_tol;
  return out;
}

inline BoundCheck check_upper_stanley(const Graph& g, const ReportOptions& opt = {}) {
  BoundCheck out;
  out.bound = g.vertex_count() * detail::stanley_rho_bound(g.edge_count());
  out.holds = permanental_energy(g, opt.ryser_cap, opt.roots) <= out.bound + opt.hold_tol;
  return out;
}

inline DeltaCheck check_upper_delta(const Graph& g, const ReportOptions& opt = {}) {
  if (g.vertex_count() < 2)
    throw std::invalid_argument("check_upper_delta: need n >= 2");
  DeltaCheck out;
  out.bound = static_cast<double>(g.vertex_count()) * compute_metrics(g).max_degree;
  out.complete_bound = static_cast<double>(g.vertex_count()) * (g.vertex_count() - 1);
  out.holds = permanental_energy(g, opt.ryser_cap, opt.roots) <= out.bound + opt.hold_tol;
  return out;
}

inline KnDominanceCheck check_kn_dominance(const Graph& g, const ReportOptions& opt = {}) {
  KnDominanceCheck out;
  int n = g.vertex_count();
  out.rho_threshold =
      std::pow(static_cast<double>(derangement_count(n)), n > 0 ? 1.0 / n : 1.0);
  double rho = n > 0 ? adjacency_spectrum(g).rho : 0.0;
  out.applies = rho <= out.rho_threshold + 1e-12;
  out.kn_energy = detail::complete_graph_energy(n, opt.ryser_cap, opt.roots);
  out.holds = !out.applies ||
              permanental_energy(g, opt.ryser_cap, opt.roots) <= out.kn_energy + opt.hold_tol;
  return out;
}

// ---------------------------------------------------------------------------
// Serialization.
// ---------------------------------------------------------------------------

inline nlohmann::json report_to_json(const BoundsReport& r) {
  nlohmann::json j{
      {"graph6", r.graph_id},
      {"n", r.n},
      {"m", r.m},
      {"t", r.t},
      {"max_degree", r.max_degree},
      {"is_connected", r.is_connected},
      {"is_bipartite", r.is_bipartite},
      {"is_forest", r.is_forest},
      {"is_star_plus_isolated", r.is_star_plus_isolated},
      {"e_per", r.e_per},
      {"e_adj", r.e_adj},
      {"rho", r.rho},
      {"lower_2sqrtm", r.lower_2sqrtm},
      {"upper_nrho", r.upper_nrho},
      {"upper_stanley", r.upper_stanley},
      {"upper_nn1", r.upper_nn1},
      {"mcclelland", r.mcclelland},
      {"odd_orientation_searched", r.odd_orientation_searched},
      {"odd_orientation_found", r.odd_orientation_found},
      {"odd_orientation", r.odd_orientation},
      {"lower_tight", r.lower_tight},
      {"zero_multiplicity", r.zero_multiplicity},
      {"max_residual", r.max_residual},
      {"all_pass", r.all_pass()},
  };
  if (r.upper_ndelta)
    j["upper_ndelta"] = *r.upper_ndelta;
  else
    j["upper_ndelta"] = nullptr;
  j["verdicts"] = r.verdicts;
  return j;
}

inline BoundsReport report_from_json(const nlohmann::json& j) {
  BoundsReport r;
  r.graph_id = j.at("graph6").get<std::string>();
  r.n = j.at("n").get<int>();
  r.m = j.at("m").get<int>();
  r.t = j.at("t").get<int>();
  r.max_degree = j.at("max_degree").get<int>();
  r.is_connected = j.at("is_connected").get<bool>();
  r.is_bipartite = j.at("is_bipartite").get<bool>();
  r.is_forest = j.at("is_forest").get<bool>();
  r.is_star_plus_isolated = j.at("is_star_plus_isolated").get<bool>();
  r.e_per = j.at("e_per").get<double>();
  r.e_adj = j.at("e_adj").get<double>();
  r.rho = j.at("rho").get<double>();
  r.lower_2sqrtm = j.at("lower_2sqrtm").get<double>();
  r.upper_nrho = j.at("upper_nrho").get<double>();
  r.upper_stanley = j.at("upper_stanley").get<double>();
  if (!j.at("upper_ndelta").is_null()) r.upper_ndelta = j.at("upper_ndelta").get<double>();
  r.upper_nn1 = j.at("upper_nn1").get<double>();
  r.mcclelland = j.at("mcclelland").get<double>();
  r.odd_orientation_searched = j.at("odd_orientation_searched").get<bool>();
  r.odd_orientation_found = j.at("odd_orientation_found").get<bool>();
  r.odd_orientation = j.at("odd_orientation").get<std::string>();
  r.lower_tight = j.at("lower_tight").get<bool>();
  r.zero_multiplicity = j.at("zero_multiplicity").get<int>();
  r.max_residual = j.at("max_residual").get<double>();
  for (const auto& [k, v] : j.at("verdicts").items()) r.verdicts[k] = v.get<bool>();
  return r;
}

inline std::string report_csv_header() {
  return "graph6,n,m,t,e_per,e_adj,rho,lower_2sqrtm,upper_nrho,upper_stanley,"
         "upper_ndelta,mcclelland,odd_orientation_found,is_star_plus_isolated,"
         "lower_tight,is_connected,is_bipartite,is_forest,all_pass";
}

inline std::string report_csv_row(const BoundsReport& r) {
  std::string row;
  row += r.graph_id;
  row += ',' + std::to_string(r.n) + ',' + std::to_string(r.m) + ',' + std::to_string(r.t);
  row += ',' + fmt_double(r.e_per) + ',' + fmt_double(r.e_adj) + ',' + fmt_double(r.rho);
  row += ',' + fmt_double(r.lower_2sqrtm) + ',' + fmt_double(r.upper_nrho) + ',' +
         fmt_double(r.upper_stanley);
  row += ',';
  if (r.upper_ndelta) row += fmt_double(*r.upper_ndelta);
  row += ',' + fmt_double(r.mcclelland);
  row += r.odd_orientation_found ? ",1" : ",0";
  row += r.is_star_plus_isolated ? ",1" : ",0";
  row += r.lower_tight ? ",1" : ",0";
  row += r.is_connected ? ",1" : ",0";
  row += r.is_bipartite ? ",1" : ",0";
  row += r.is_forest ? ",1" : ",0";
  row += r.all_pass() ? ",1" : ",0";
  return row;
}

}  // namespace permenergy
