#pragma once

#include <utility>
#include <vector>

#include "sp4/ring/laurent.hpp"

// Dense univariate polynomials over Q, coefficient i <-> x^i. Only the
// operations needed by the rational-function and cyclotomic layers.
namespace sp4::poly {

using Poly = std::vector<Rational>;

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

inline Poly sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

/// Quotient and remainder; `b` must be nonzero.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  trim(a);
  const int db = degree(b);
  if (degree(a) < db) return {{}, a};
  Poly q(static_cast<std::size_t>(degree(a) - db + 1), Rational(0));
  const Rational& lead = b.back();
  while (!a.empty() && degree(a) >= db) {
    const int shift = degree(a) - db;
    Rational f = a.back() / lead;
    q[static_cast<std::size_t>(shift)] = f;
    for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(i + shift)] -= f * b[static_cast<std::size_t>(i)];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline Poly monic(Poly p) {
  trim(p);
  if (p.empty()) return p;
  Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

inline Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = monic(std::move(r));
  }
  return monic(std::move(a));
}

/// Returns (g, s) with s*a == g (mod m), g = gcd(a, m) monic.
inline std::pair<Poly, Poly> inverse_mod(Poly a, const Poly& m) {
  Poly r0 = m, r1 = std::move(a);
  trim(r1);
  Poly s0{}, s1{Rational(1)};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    Poly s = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.empty()) return {{}, {}};
  Rational lead = r0.back();
  for (auto& c : r0) c /= lead;
  for (auto& c : s0) c /= lead;
  return {r0, s0};
}

/// Laurent polynomial -> (ordinary polynomial, valuation).
inline std::pair<Poly, int> from_laurent(const LaurentPoly& p) {
  return {Poly(p.coeffs().begin(), p.coeffs().end()), p.low()};
}

inline LaurentPoly to_laurent(const Poly& p, int valuation) {
  LaurentPoly r;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0) r += LaurentPoly::monomial(valuation + static_cast<int>(i), p[i]);
  return r;
}

}  // namespace sp4::poly
