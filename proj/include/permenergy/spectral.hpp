#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <json.hpp>

#include "permenergy/graph.hpp"
#include "permenergy/int_poly.hpp"
#include "permenergy/permanent.hpp"

namespace permenergy {

struct Spectrum {
  std::vector<double> eigenvalues;  // descending
  double rho = 0.0;                 // max |eigenvalue|
};

namespace detail {

/// Cyclic Jacobi on a symmetric matrix (row-major, destroyed).  Plenty at
/// n <= 64; eigenvalues land well below the 1e-10 target tolerance.
inline std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n) {
  auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
  double fro2 = 0.0;
  for (double v : a) fro2 += v * v;
  const double stop = fro2 * 1e-30;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off2 = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off2 += at(i, j) * at(i, j);
    if (off2 <= stop) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = at(p, q);
        if (apq == 0.0) continue;
        double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        double app = at(p, p), aqq = at(q, q);
        at(p, p) = app - t * apq;
        at(q, q) = aqq + t * apq;
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          double aip = at(i, p), aiq = at(i, q);
          at(i, p) = c * aip - s * aiq;
          at(p, i) = at(i, p);
          at(i, q) = s * aip + c * aiq;
          at(q, i) = at(i, q);
        }
      }
    }
  }
  std::vector<double> eig(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) eig[static_cast<size_t>(i)] = at(i, i);
  std::sort(eig.rbegin(), eig.rend());
  return eig;
}

}  // namespace detail

inline Spectrum adjacency_spectrum(const Graph& g) {
  int n = g.vertex_count();
  if (n == 0) throw std::invalid_argument("adjacency_spectrum: empty graph");
  std::vector<double> a(static_cast<size_t>(n) * static_cast<size_t>(n), 0.0);
  for (int u = 0; u < n; ++u)
    for (uint64_t bits = g.row(u); bits; bits &= bits - 1)
      a[static_cast<size_t>(u) * n + std::countr_zero(bits)] = 1.0;
  Spectrum out;
  out.eigenvalues = detail::jacobi_eigenvalues(std::move(a), n);
  out.rho = std::max(std::abs(out.eigenvalues.front()), std::abs(out.eigenvalues.back()));
  return out;
}

/// E(G) = sum of |adjacency eigenvalues|; 0 for the empty graph.
inline double adjacency_energy(const Graph& g) {
  if (g.vertex_count() == 0) return 0.0;
  double sum = 0.0;
  for (double lam : adjacency_spectrum(g).eigenvalues) sum += std::abs(lam);
  return sum;
}

// ---------------------------------------------------------------------------
// Complex roots of pi(G,x).
// ---------------------------------------------------------------------------

struct RootFindOptions {
  int max_iterations = 500;
  double step_tolerance = 1e-13;     // convergence: max step < tol * scale
  double residual_tolerance = 1e-8;  // acceptance: |p(root)| <= tol * max(1, max|c_k|)
  double pairing_tolerance = 1e-9;   // conjugate pairing / real snapping
};

struct RootMultiset {
  std::vector<std::complex<double>> roots;  // all degree() roots, sorted by (re, im)
  std::vector<double> residuals;            // |p(root)| per root
  int zero_multiplicity = 0;                // exact zero roots stripped before iteration
  bool converged = true;

  double max_residual() const {
    double m = 0.0;
    for (double r : residuals) m = std::max(m, r);
    return m;
  }
};

namespace detail {

inline void horner2(const std::vector<double>& c, std::complex<double> z,
                    std::complex<double>& p, std::complex<double>& dp) {
  p = 0.0;
  dp = 0.0;
  for (double ck : c) {
    dp = dp * z + p;
    p = p * z + ck;
  }
}

/// Aberth-Ehrlich simultaneous iteration for a monic real polynomial with
/// nonzero constant term (coefficients descending).  Initial points sit on a
/// circle of radius 1 + max_k |c_k|^{1/k}, rotated off the real axis.
inline std::vector<std::complex<double>> aberth_roots(const std::vector<double>& c,
                                                      const RootFindOptions& opt, bool* converged) {
  const int deg = static_cast<int>(c.size()) - 1;
  std::vector<std::complex<double>> z(static_cast<size_t>(deg));
  if (deg == 0) {
    *converged = true;
    return z;
  }
  if (deg == 1) {
    z[0] = -c[1] / c[0];
    *converged = true;
    return z;
  }
  if (deg == 2) {
    double b = c[1] / c[0], c0 = c[2] / c[0];
    double disc = b * b - 4.0 * c0;
    if (disc >= 0.0) {
      double sq = std::sqrt(disc);
      double r1 = (b >= 0.0) ? (-b - sq) / 2.0 : (-b + sq) / 2.0;
      double r2 = (r1 != 0.0) ? c0 / r1 : -b - r1;
      z[0] = r1;
      z[1] = r2;
    } else {
      double re = -b / 2.0, im = std::sqrt(-disc) / 2.0;
      z[0] = {re, im};
      z[1] = {re, -im};
    }
    *converged = true;
    return z;
  }

  double radius = 1.0;
  for (int k = 1; k <= deg; ++k)
    if (c[static_cast<size_t>(k)] != 0.0)
      radius = std::max(radius, std::pow(std::abs(c[static_cast<size_t>(k)]), 1.0 / k));
  radius += 1.0;
  const double two_pi = 6.283185307179586476925286766559;
  for (int k = 0; k < deg; ++k)
    z[static_cast<size_t>(k)] = std::polar(radius, two_pi * k / deg + 0.4);

  *converged = false;
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    double max_step = 0.0, max_abs = 1.0;
    for (int i = 0; i < deg; ++i) {
      std::complex<double> p, dp;
      horner2(c, z[static_cast<size_t>(i)], p, dp);
      if (std::abs(p) == 0.0) continue;
      if (dp == std::complex<double>(0.0, 0.0)) {
        // stationary point of p; nudge deterministically and retry next pass
        z[static_cast<size_t>(i)] += std::complex<double>(1e-8, 1e-8) *
                                     (1.0 + std::abs(z[static_cast<size_t>(i)]));
        max_step = std::max(max_step, 1.0);
        continue;
      }
      std::complex<double> newton = p / dp;
      std::complex<double> repel = 0.0;
      for (int j = 0; j < deg; ++j) {
        if (j == i) continue;
        std::complex<double> diff = z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
        if (std::norm(diff) == 0.0)
          diff = {1e-12 * (1.0 + std::abs(z[static_cast<size_t>(i)])), 1e-12};
        repel += 1.0 / diff;
      }
      std::complex<double> denom = 1.0 - newton * repel;
      std::complex<double> step = (std::abs(denom) < 1e-290) ? newton : newton / denom;
      z[static_cast<size_t>(i)] -= step;
      max_step = std::max(max_step, std::abs(step));
      max_abs = std::max(max_abs, std::abs(z[static_cast<size_t>(i)]));
    }
    if (max_step < opt.step_tolerance * max_abs) {
      *converged = true;
      break;
    }
  }
  return z;
}

/// Enforce conjugate closure on the root set of a real polynomial: snap
/// near-real roots onto the axis and average conjugate pairs.
inline void symmetrize_conjugates(std::vector<std::complex<double>>& roots, double tol) {
  std::vector<size_t> pos, neg;
  for (size_t i = 0; i < roots.size(); ++i) {
    double band = tol * (1.0 + std::abs(roots[i]));
    if (std::abs(roots[i].imag()) <= band) {
      roots[i] = {roots[i].real(), 0.0};
    } else if (roots[i].imag() > 0) {
      pos.push_back(i);
    } else {
      neg.push_back(i);
    }
  }
  std::vector<bool> used(neg.size(), false);
  for (size_t ip : pos) {
    size_t best = neg.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < neg.size(); ++k) {
      if (used[k]) continue;
      double d = std::abs(std::conj(roots[neg[k]]) - roots[ip]);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    if (best == neg.size()) continue;
    used[best] = true;
    std::complex<double> mean = (roots[ip] + std::conj(roots[neg[best]])) / 2.0;
    roots[ip] = mean;
    roots[neg[best]] = std::conj(mean);
  }
  for (auto& r : roots) r = {r.real() + 0.0, r.imag() + 0.0};  // normalize -0
}

inline bool complex_less(const std::complex<double>& a, const std::complex<double>& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace detail

/// All complex roots of a monic integer polynomial.  Exact zero roots are
/// stripped first; the rest is split into square-free factors with exact
/// integer arithmetic (so repeated roots come out with their exact
/// multiplicity as separate entries) and each factor goes through
/// Aberth-Ehrlich.
inline RootMultiset perm_roots(const IntPolynomial& p, const RootFindOptions& opt = {}) {
  if (p.is_zero()) throw std::invalid_argument("perm_roots: zero polynomial");
  if (!p.is_monic()) throw std::invalid_argument("perm_roots: monic polynomial required");
  const int n = p.degree();

  int zeros = 0;
  while (zeros < n && p.coeff(n - zeros) == 0) ++zeros;

  RootMultiset out;
  out.zero_multiplicity = zeros;
  out.roots.assign(static_cast<size_t>(zeros), {0.0, 0.0});

  std::vector<BigInt> qc(p.coeffs().begin(), p.coeffs().end() - zeros);
  IntPolynomial q(std::move(qc));
  if (q.degree() > 0) {
    int found = 0;
    for (const auto& [factor, mult] : squarefree_decomposition(q)) {
      bool ok = true;
      auto roots = detail::aberth_roots(factor.double_coeffs(), opt, &ok);
      if (!ok) out.converged = false;
      detail::symmetrize_conjugates(roots, opt.pairing_tolerance);
      for (const auto& r : roots)
        for (int rep = 0; rep < mult; ++rep) out.roots.push_back(r);
      found += mult * factor.degree();
    }
    if (found != q.degree())
      throw std::logic_error("perm_roots: square-free decomposition lost degree");
  }

  std::sort(out.roots.begin(), out.roots.end(), detail::complex_less);
  out.residuals.reserve(out.roots.size());
  for (const auto& r : out.roots) out.residuals.push_back(std::abs(p.eval(r)));
  return out;
}

/// Residual acceptance threshold for a root set of p.
inline double residual_threshold(const IntPolynomial& p, const RootFindOptions& opt = {}) {
  double max_c = 0.0;
  for (const BigInt& c : p.coeffs())
    max_c = std::max(max_c, std::abs(static_cast<double>(c)));
  return opt.residual_tolerance * std::max(1.0, max_c);
}

/// E_per(G) = sum of root moduli of pi(G,x).
inline double permanental_energy(const Graph& g, int ryser_cap = kDefaultRyserCap,
                                 const RootFindOptions& opt = {}) {
  IntPolynomial p = perm_poly_ryser(g, ryser_cap);
  RootMultiset rm = perm_roots(p, opt);
  if (!rm.converged || rm.max_residual() > residual_threshold(p, opt))
    throw std::runtime_error("permanental_energy: root finding did not converge");
  double sum = 0.0;
  for (const auto& r : rm.roots) sum += std::abs(r);
  return sum;
}

/// {"zero_multiplicity":, "roots": [[re, im], ...], "energy":, "max_residual":}
inline nlohmann::json roots_to_json(const RootMultiset& rm) {
  nlohmann::json roots = nlohmann::json::array();
  double energy = 0.0;
  for (const auto& r : rm.roots) {
    roots.push_back({r.real(), r.imag()});
    energy += std::abs(r);
  }
  return nlohmann::json{{"zero_multiplicity", rm.zero_multiplicity},
                        {"roots", roots},
                        {"energy", energy},
                        {"max_residual", rm.max_residual()}};
}

}  // namespace permenergy
