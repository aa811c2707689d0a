#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "permenergy/errors.hpp"

namespace permenergy {

using BigInt = boost::multiprecision::cpp_int;

/// Integer polynomial with coefficients stored by descending power:
/// coeffs()[k] multiplies x^(degree-k).  The zero polynomial has an empty
/// coefficient vector and degree -1.
class IntPolynomial {
 public:
  IntPolynomial() = default;

  explicit IntPolynomial(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) {
    size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead > 0) c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
  }

  static IntPolynomial constant(BigInt v) {
    if (v == 0) return IntPolynomial();
    return IntPolynomial({std::move(v)});
  }

  /// x^d
  static IntPolynomial monomial(int d) {
    std::vector<BigInt> c(static_cast<size_t>(d) + 1, 0);
    c[0] = 1;
    return IntPolynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.front() == 1; }

  const std::vector<BigInt>& coeffs() const { return c_; }

  /// c_k, the coefficient of x^(degree-k).
  const BigInt& coeff(int k) const { return c_[static_cast<size_t>(k)]; }

  /// Horner evaluation in complex double arithmetic.  This is the precision
  /// boundary: exact integer coefficients are rounded to double here.
  std::complex<double> eval(std::complex<double> x) const {
    std::complex<double> acc = 0.0;
    for (const BigInt& c : c_) acc = acc * x + static_cast<double>(c);
    return acc;
  }

  /// Coefficients as doubles; throws std::overflow_error if any coefficient
  /// exceeds the double range.
  std::vector<double> double_coeffs() const {
    std::vector<double> out;
    out.reserve(c_.size());
    for (const BigInt& c : c_) {
      double d = static_cast<double>(c);
      if (!std::isfinite(d))
        throw std::overflow_error("polynomial coefficient exceeds double range");
      out.push_back(d);
    }
    return out;
  }

  IntPolynomial derivative() const {
    if (degree() <= 0) return IntPolynomial();
    int n = degree();
    std::vector<BigInt> d(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) d[static_cast<size_t>(k)] = c_[static_cast<size_t>(k)] * (n - k);
    return IntPolynomial(std::move(d));
  }

  IntPolynomial operator-() const {
    std::vector<BigInt> d(c_);
    for (BigInt& x : d) x = -x;
    return IntPolynomial(std::move(d));
  }

  IntPolynomial operator+(const IntPolynomial& o) const {
    size_t na = c_.size(), nb = o.c_.size(), n = std::max(na, nb);
    std::vector<BigInt> d(n, 0);
    for (size_t i = 0; i < na; ++i) d[n - na + i] += c_[i];
    for (size_t i = 0; i < nb; ++i) d[n - nb + i] += o.c_[i];
    return IntPolynomial(std::move(d));
  }

  IntPolynomial operator-(const IntPolynomial& o) const { return *this + (-o); }

  IntPolynomial operator*(const IntPolynomial& o) const {
    if (is_zero() || o.is_zero()) return IntPolynomial();
    std::vector<BigInt> d(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i)
      for (size_t j = 0; j < o.c_.size(); ++j) d[i + j] += c_[i] * o.c_[j];
    return IntPolynomial(std::move(d));
  }

  IntPolynomial operator*(const BigInt& s) const {
    if (s == 0) return IntPolynomial();
    std::vector<BigInt> d(c_);
    for (BigInt& x : d) x *= s;
    return IntPolynomial(std::move(d));
  }

  /// Exact quotient; throws std::logic_error if d does not divide *this.
  IntPolynomial divide_exact(const IntPolynomial& d) const {
    if (d.is_zero()) throw std::logic_error("polynomial division by zero");
    if (is_zero()) return IntPolynomial();
    if (degree() < d.degree()) throw std::logic_error("polynomial division is not exact");
    std::vector<BigInt> rem(c_);
    const auto& dc = d.c_;
    std::vector<BigInt> q(static_cast<size_t>(degree() - d.degree()) + 1, 0);
    for (size_t k = 0; k < q.size(); ++k) {
      if (rem[k] % dc.front() != 0) throw std::logic_error("polynomial division is not exact");
      BigInt qk = rem[k] / dc.front();
      q[k] = qk;
      if (qk != 0)
        for (size_t j = 0; j < dc.size(); ++j) rem[k + j] -= qk * dc[j];
    }
    for (const BigInt& r : rem)
      if (r != 0) throw std::logic_error("polynomial division is not exact");
    return IntPolynomial(std::move(q));
  }

  /// gcd of all coefficients (positive); 0 for the zero polynomial.
  BigInt content() const {
    BigInt g = 0;
    for (const BigInt& c : c_) {
      g = boost::multiprecision::gcd(g, c);
      if (g == 1) break;
    }
    return g;
  }

  /// Content-free version with positive leading coefficient.
  IntPolynomial primitive_part() const {
    if (is_zero()) return IntPolynomial();
    BigInt g = content();
    if (c_.front() < 0) g = -g;
    std::vector<BigInt> d(c_);
    for (BigInt& x : d) x /= g;
    return IntPolynomial(std::move(d));
  }

  bool operator==(const IntPolynomial&) const = default;

 private:
  std::vector<BigInt> c_;
};

namespace detail {

/// One-sided pseudo-remainder chain step: returns lc(b)^k * a mod b for some
/// k >= 0, which is all a primitive gcd chain needs.
inline IntPolynomial pseudo_rem(IntPolynomial a, const IntPolynomial& b) {
  const BigInt lb = b.coeffs().front();
  const int db = b.degree();
  while (!a.is_zero() && a.degree() >= db) {
    const auto& ac = a.coeffs();
    const auto& bc = b.coeffs();
    const BigInt la = ac.front();
    const int da = a.degree();
    std::vector<BigInt> next(static_cast<size_t>(da), 0);
    for (int k = 0; k < da; ++k) {
      next[static_cast<size_t>(k)] = lb * ac[static_cast<size_t>(k + 1)];
      if (k + 1 <= db) next[static_cast<size_t>(k)] -= la * bc[static_cast<size_t>(k + 1)];
    }
    a = IntPolynomial(std::move(next));
  }
  return a;
}

}  // namespace detail

/// Primitive polynomial gcd (positive leading coefficient).
inline IntPolynomial poly_gcd(IntPolynomial a, IntPolynomial b) {
  if (a.is_zero()) return b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  a = a.primitive_part();
  b = b.primitive_part();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPolynomial r = detail::pseudo_rem(a, b);
    a = std::move(b);
    b = r.is_zero() ? IntPolynomial() : r.primitive_part();
  }
  return a.primitive_part();
}

/// Yun's square-free decomposition: p = content * prod f_i^i with the f_i
/// square-free, pairwise coprime, primitive with positive leading coefficient.
/// Returns the (f_i, i) pairs with deg f_i > 0; the content is dropped.
inline std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(IntPolynomial p) {
  if (p.is_zero()) throw std::invalid_argument("squarefree_decomposition: zero polynomial");
  p = p.primitive_part();
  std::vector<std::pair<IntPolynomial, int>> out;
  if (p.degree() <= 0) return out;

  IntPolynomial dp = p.derivative();
  IntPolynomial g = poly_gcd(p, dp);
  if (g.degree() == 0) {
    out.emplace_back(std::move(p), 1);
    return out;
  }
  IntPolynomial w = p.divide_exact(g);
  IntPolynomial y = dp.divide_exact(g);
  for (int i = 1; w.degree() > 0; ++i) {
    IntPolynomial z = y - w.derivative();
    IntPolynomial fi = poly_gcd(w, z);
    if (fi.degree() > 0) out.emplace_back(fi, i);
    w = w.divide_exact(fi);
    y = z.is_zero() ? IntPolynomial() : z.divide_exact(fi);
  }
  return out;
}

/// {"n": degree, "coeffs": ["1", "0", ...]} — decimal strings keep arbitrary
/// precision bit-exact.
inline nlohmann::json poly_to_json(const IntPolynomial& p) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const BigInt& c : p.coeffs()) coeffs.push_back(c.str());
  return nlohmann::json{{"n", p.degree()}, {"coeffs", coeffs}};
}

inline IntPolynomial poly_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("coeffs") || !j["coeffs"].is_array())
    throw ParseError("polynomial JSON: expected {\"n\": int, \"coeffs\": [strings]}");
  std::vector<BigInt> coeffs;
  for (const auto& c : j["coeffs"]) {
    if (!c.is_string()) throw ParseError("polynomial JSON: coefficients must be decimal strings");
    try {
      coeffs.emplace_back(c.get<std::string>());
    } catch (const std::exception&) {
      throw ParseError("polynomial JSON: bad integer literal \"" + c.get<std::string>() + "\"");
    }
  }
  IntPolynomial p(std::move(coeffs));
  if (p.degree() != j["n"].get<int>())
    throw ParseError("polynomial JSON: degree does not match coefficient count");
  return p;
}

}  // namespace permenergy
