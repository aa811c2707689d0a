#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "permenergy/graph.hpp"
#include "permenergy/int_poly.hpp"

namespace permenergy {

inline constexpr int kDefaultMinorsCap = 18;
inline constexpr int kDefaultRyserCap = 22;
inline constexpr int kPermanentSubsetCap = 30;

// A signed 128-bit accumulator is safe while 4^n * (n-1)^n stays below 2^127;
// that holds through n = 20.  Larger sizes fall back to arbitrary precision.
inline constexpr int kInt128Limit = 20;

namespace detail {

/// Ryser's inclusion-exclusion for a 0/1 matrix given as k bitrows over
/// columns 0..k-1, with Gray-code subset order so each step updates the row
/// sums in O(k).
template <typename Int>
Int permanent_ryser(const std::vector<uint64_t>& rows, int k) {
  if (k == 0) return Int(1);
  std::vector<int> colsum(static_cast<size_t>(k), 0);
  Int total(0);
  uint64_t chosen = 0;
  int chosen_count = 0;
  const uint64_t end = uint64_t{1} << k;
  for (uint64_t t = 1; t < end; ++t) {
    int j = std::countr_zero(t);
    uint64_t bit = uint64_t{1} << j;
    chosen ^= bit;
    int delta = (chosen & bit) ? 1 : -1;
    chosen_count += delta;
    for (int i = 0; i < k; ++i)
      if ((rows[static_cast<size_t>(i)] >> j) & 1) colsum[static_cast<size_t>(i)] += delta;

    Int prod(1);
    bool dead = false;
    for (int i = 0; i < k; ++i) {
      int s = colsum[static_cast<size_t>(i)];
      if (s == 0) {
        dead = true;
        break;
      }
      prod *= s;
    }
    if (dead) continue;
    if ((k - chosen_count) & 1)
      total -= prod;
    else
      total += prod;
  }
  return total;
}

/// Ryser applied to xI - A(G): every row sum over a column subset S is a
/// degree <= 1 polynomial in x, so each subset contributes
/// (prod of constants outside S) * prod_{i in S} (x - |N(i) & S|).
/// Returns the coefficients of per(xI - A) by descending power.
template <typename Int>
std::vector<BigInt> perm_poly_ryser_impl(const Graph& g) {
  const int n = g.vertex_count();
  const uint64_t full = g.full_mask();
  std::vector<Int> acc(static_cast<size_t>(n) + 1, Int(0));  // acc[e]: coeff of x^e
  std::vector<Int> q(static_cast<size_t>(n) + 1, Int(0));    // scratch, ascending
  std::vector<int> nbr(static_cast<size_t>(n), 0);           // |N(i) & S|
  uint64_t subset = 0;
  int subset_size = 0;
  const uint64_t end = uint64_t{1} << n;
  for (uint64_t t = 1; t < end; ++t) {
    int j = std::countr_zero(t);
    uint64_t bit = uint64_t{1} << j;
    subset ^= bit;
    int delta = (subset & bit) ? 1 : -1;
    subset_size += delta;
    for (uint64_t aj = g.row(j); aj; aj &= aj - 1)
      nbr[static_cast<size_t>(std::countr_zero(aj))] += delta;

    // Rows outside S contribute the constant -|N(i) & S| each.
    Int cpart(1);
    bool dead = false;
    for (uint64_t outside = full & ~subset; outside; outside &= outside - 1) {
      int i = std::countr_zero(outside);
      int d = nbr[static_cast<size_t>(i)];
      if (d == 0) {
        dead = true;
        break;
      }
      cpart *= -d;
    }
    if (dead) continue;

    // Rows inside S contribute (x - |N(i) & S|) each.
    q[0] = cpart;
    int deg = 0;
    for (uint64_t inside = subset; inside; inside &= inside - 1) {
      int i = std::countr_zero(inside);
      int d = nbr[static_cast<size_t>(i)];
      q[static_cast<size_t>(deg + 1)] = q[static_cast<size_t>(deg)];
      for (int e = deg; e >= 1; --e)
        q[static_cast<size_t>(e)] = q[static_cast<size_t>(e - 1)] - d * q[static_cast<size_t>(e)];
      q[0] *= -d;
      ++deg;
    }

    if (subset_size & 1)
      for (int e = 0; e <= deg; ++e) acc[static_cast<size_t>(e)] -= q[static_cast<size_t>(e)];
    else
      for (int e = 0; e <= deg; ++e) acc[static_cast<size_t>(e)] += q[static_cast<size_t>(e)];
  }

  std::vector<BigInt> coeffs(static_cast<size_t>(n) + 1);
  const bool negate = n & 1;  // global (-1)^n
  for (int k = 0; k <= n; ++k) {
    BigInt v(acc[static_cast<size_t>(n - k)]);
    coeffs[static_cast<size_t>(k)] = negate ? -v : v;
  }
  return coeffs;
}

}  // namespace detail

/// Exact permanent of the principal submatrix A(G)[S,S], S given as a vertex
/// bitmask.  per of the empty matrix is 1.
inline BigInt permanent(const Graph& g, uint64_t subset) {
  int k = std::popcount(subset);
  if (k > kPermanentSubsetCap)
    throw CapError("permanent: subset size " + std::to_string(k) + " exceeds cap " +
                   std::to_string(kPermanentSubsetCap));
  std::vector<int> pos;
  pos.reserve(static_cast<size_t>(k));
  for (uint64_t b = subset; b; b &= b - 1) pos.push_back(std::countr_zero(b));
  std::vector<uint64_t> rows(static_cast<size_t>(k), 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (g.has_edge(pos[static_cast<size_t>(i)], pos[static_cast<size_t>(j)]))
        rows[static_cast<size_t>(i)] |= uint64_t{1} << j;
  if (k <= kInt128Limit) return BigInt(detail::permanent_ryser<__int128>(rows, k));
  return detail::permanent_ryser<BigInt>(rows, k);
}

inline BigInt permanent(const Graph& g) { return permanent(g, g.full_mask()); }

/// pi(G,x) from the principal-minor expansion: c_i = (-1)^i sum over |S| = i
/// of per(A[S,S]).  Kept as the independent cross-check for the Ryser route.
inline IntPolynomial perm_poly_minors(const Graph& g, int cap = kDefaultMinorsCap) {
  int n = g.vertex_count();
  if (n > cap || n > kPermanentSubsetCap)
    throw CapError("perm_poly_minors: n = " + std::to_string(n) + " exceeds cap " +
                   std::to_string(std::min(cap, kPermanentSubsetCap)));
  std::vector<BigInt> sums(static_cast<size_t>(n) + 1, 0);
  const uint64_t end = uint64_t{1} << n;
  for (uint64_t mask = 0; mask != end; ++mask)
    sums[static_cast<size_t>(std::popcount(mask))] += permanent(g, mask);
  std::vector<BigInt> coeffs(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k)
    coeffs[static_cast<size_t>(k)] = (k & 1) ? -sums[static_cast<size_t>(k)] : sums[static_cast<size_t>(k)];
  return IntPolynomial(std::move(coeffs));
}

/// pi(G,x) by Ryser's formula on the polynomial-entry matrix xI - A(G),
/// O(2^n n^2) coefficient operations.  This is the default engine.
inline IntPolynomial perm_poly_ryser(const Graph& g, int cap = kDefaultRyserCap) {
  int n = g.vertex_count();
  if (n > cap || n > kPermanentSubsetCap)
    throw CapError("perm_poly_ryser: n = " + std::to_string(n) + " exceeds cap " +
                   std::to_string(std::min(cap, kPermanentSubsetCap)));
  if (n == 0) return IntPolynomial({BigInt(1)});
  std::vector<BigInt> coeffs = n <= kInt128Limit ? detail::perm_poly_ryser_impl<__int128>(g)
                                                 : detail::perm_poly_ryser_impl<BigInt>(g);
  return IntPolynomial(std::move(coeffs));
}

/// Number of derangements of [n]: D_0 = 1, D_1 = 0,
/// D_n = (n-1)(D_{n-1} + D_{n-2}).
inline BigInt derangement_count(int n) {
  if (n < 0) throw std::invalid_argument("derangement_count: n >= 0 required");
  if (n == 0) return 1;
  if (n == 1) return 0;
  BigInt prev2 = 1, prev1 = 0;
  for (int i = 2; i <= n; ++i) {
    BigInt cur = (i - 1) * (prev1 + prev2);
    prev2 = std::move(prev1);
    prev1 = std::move(cur);
  }
  return prev1;
}

}  // namespace permenergy
