#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "permenergy/int_poly.hpp"
#include "permenergy/permanent.hpp"
#include "permenergy/spectral.hpp"

namespace permenergy {

inline constexpr double kPi = 3.141592653589793238462643383279;

/// log(1 + sqrt 2), the constant behind the odd-cycle root parametrization.
inline double odd_cycle_log_constant() { return std::log(1.0 + std::sqrt(2.0)); }

/// pi(K_{1,m} plus isolated vertices, x) = x^n + m x^(n-2), exactly.
inline IntPolynomial star_poly(int m, int n) {
  if (m < 1 || n < m + 1) throw std::invalid_argument("star_poly: need n >= m+1 >= 2");
  std::vector<BigInt> c(static_cast<size_t>(n) + 1, 0);
  c[0] = 1;
  c[2] = m;
  return IntPolynomial(std::move(c));
}

/// E_per(C_n) = 4 / sin(pi/n) for even n >= 4.
inline double even_cycle_energy(int n) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("even_cycle_energy: need even n >= 4");
  return 4.0 / std::sin(kPi / n);
}

/// Roots of pi(C_n,x) for even n: -2i sin((2t-1) pi / n), t = 1..n.
inline std::vector<std::complex<double>> even_cycle_roots(int n) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("even_cycle_roots: need even n >= 4");
  std::vector<std::complex<double>> roots;
  roots.reserve(static_cast<size_t>(n));
  for (int t = 1; t <= n; ++t) roots.emplace_back(0.0, -2.0 * std::sin((2 * t - 1) * kPi / n));
  std::sort(roots.begin(), roots.end(), detail::complex_less);
  return roots;
}

/// Roots of pi(C_n,x) for odd n: 2 sinh((a + 2 pi i k)/n), k = 0..n-1, with
/// a = log(1 + sqrt 2).  Analytic, so valid far beyond the generic engine cap.
inline RootMultiset odd_cycle_roots(int n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("odd_cycle_roots: need odd n >= 3");
  const double u = odd_cycle_log_constant() / n;
  const double sh = std::sinh(u), ch = std::cosh(u);
  RootMultiset out;
  out.roots.reserve(static_cast<size_t>(n));
  // k and n-k are conjugates; build both from one evaluation so the pair
  // shares a bit-identical real part.
  for (int k = 0; 2 * k <= n; ++k) {
    double theta = 2.0 * kPi * k / n;
    double re = 2.0 * sh * std::cos(theta), im = 2.0 * ch * std::sin(theta);
    out.roots.emplace_back(re, k == 0 ? 0.0 : im);
    if (k > 0) out.roots.emplace_back(re, -im);
  }
  std::sort(out.roots.begin(), out.roots.end(), detail::complex_less);
  out.residuals.assign(out.roots.size(), 0.0);
  return out;
}

namespace detail {

inline std::complex<double> pow_int(std::complex<double> base, int e) {
  std::complex<double> acc = 1.0;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

}  // namespace detail

/// Point evaluation of pi(C_n,x) through lambda_+/- = (x +- sqrt(x^2+4))/2 as
/// lambda_+^n + lambda_-^n + 2(-1)^n.  The sum is symmetric in the two
/// branches, so the principal square root is fine.
inline std::complex<double> cycle_poly_lambda_check(int n, std::complex<double> x) {
  if (n < 3) throw std::invalid_argument("cycle_poly_lambda_check: need n >= 3");
  std::complex<double> s = std::sqrt(x * x + 4.0);
  std::complex<double> lp = (x + s) / 2.0, lm = (x - s) / 2.0;
  double tail = (n % 2 == 0) ? 2.0 : -2.0;
  return detail::pow_int(lp, n) + detail::pow_int(lm, n) + tail;
}

/// n * D_n^{1/n}, the AM-GM lower bound on E_per(K_n).
inline double kn_energy_lower_bound(int n) {
  if (n < 1) throw std::invalid_argument("kn_energy_lower_bound: need n >= 1");
  double d = static_cast<double>(derangement_count(n));
  if (!std::isfinite(d))
    throw std::overflow_error("kn_energy_lower_bound: D_n exceeds double range");
  return n * std::pow(d, 1.0 / n);
}

/// E_per(C_n)/n for odd n, summed from the analytic root moduli
/// 2 sqrt(sinh^2(a/n) + sin^2(2 pi k/n)); no root-finding, so n can be large.
inline double odd_cycle_energy_ratio(int n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("odd_cycle_energy_ratio: need odd n >= 3");
  const double u = odd_cycle_log_constant() / n;
  const double sh2 = std::sinh(u) * std::sinh(u);
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    double s = std::sin(2.0 * kPi * k / n);
    sum += 2.0 * std::sqrt(sh2 + s * s);
  }
  return sum / n;
}

}  // namespace permenergy
