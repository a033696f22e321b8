#pragma once

#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sp4/ring/laurent.hpp"
#include "sp4/ring/poly.hpp"
#include "sp4/ring/ratfunc.hpp"

namespace sp4 {

namespace detail {

inline const poly::Poly& cyclotomic_locked(int n, std::map<int, poly::Poly>& cache) {
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  // x^n - 1 divided by Phi_d for every proper divisor d
  poly::Poly p(static_cast<std::size_t>(n + 1), Rational(0));
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = poly::divmod(p, cyclotomic_locked(d, cache)).first;
  return cache.emplace(n, std::move(p)).first->second;
}

}  // namespace detail

/// The N-th cyclotomic polynomial, integer coefficients, low degree first.
inline const poly::Poly& cyclotomic_polynomial(int n) {
  static std::mutex mu;
  static std::map<int, poly::Poly> cache;
  if (n < 1) throw InvalidInput("cyclotomic order must be positive");
  std::lock_guard<std::mutex> lock(mu);
  return detail::cyclotomic_locked(n, cache);
}

/// Element of Q(zeta_N) written as a polynomial in q = zeta_N of degree below
/// phi(N), i.e. a residue modulo the N-th cyclotomic polynomial.
class CycNumber {
 public:
  explicit CycNumber(int order = 1) : order_(order) {
    if (order < 1) throw InvalidInput("cyclotomic order must be positive");
  }
  CycNumber(int order, const Rational& c) : CycNumber(order) {
    if (c != 0) value_.push_back(c);
  }
  CycNumber(int order, poly::Poly value) : CycNumber(order) {
    value_ = std::move(value);
    reduce();
  }

  /// q^e for the primitive root q = zeta_N.
  static CycNumber q_power(int order, long e) {
    long r = e % order;
    if (r < 0) r += order;
    poly::Poly p(static_cast<std::size_t>(r + 1), Rational(0));
    p[static_cast<std::size_t>(r)] = 1;
    return CycNumber(order, p);
  }

  int order() const { return order_; }
  const poly::Poly& coefficients() const { return value_; }
  bool is_zero() const { return value_.empty(); }
  bool is_rational() const { return value_.size() <= 1; }
  Rational rational_value() const { return value_.empty() ? Rational(0) : value_[0]; }

  CycNumber operator-() const {
    CycNumber r = *this;
    for (auto& c : r.value_) c = -c;
    return r;
  }

  friend CycNumber operator+(const CycNumber& a, const CycNumber& b) {
    check(a, b);
    CycNumber r(a.order_);
    r.value_ = a.value_;
    if (r.value_.size() < b.value_.size()) r.value_.resize(b.value_.size(), Rational(0));
    for (std::size_t i = 0; i < b.value_.size(); ++i) r.value_[i] += b.value_[i];
    poly::trim(r.value_);
    return r;
  }
  friend CycNumber operator-(const CycNumber& a, const CycNumber& b) { return a + (-b); }
  friend CycNumber operator*(const CycNumber& a, const CycNumber& b) {
    check(a, b);
    return CycNumber(a.order_, poly::mul(a.value_, b.value_));
  }
  friend CycNumber operator*(const CycNumber& a, const Rational& s) {
    CycNumber r = a;
    for (auto& c : r.value_) c *= s;
    poly::trim(r.value_);
    return r;
  }
  CycNumber& operator+=(const CycNumber& o) { return *this = *this + o; }
  CycNumber& operator-=(const CycNumber& o) { return *this = *this - o; }
  CycNumber& operator*=(const CycNumber& o) { return *this = *this * o; }

  CycNumber inverse() const {
    if (is_zero()) throw DenominatorVanishes("inverse of zero cyclotomic number");
    auto [g, s] = poly::inverse_mod(value_, cyclotomic_polynomial(order_));
    if (g.size() != 1) throw DenominatorVanishes("non-invertible cyclotomic residue");
    return CycNumber(order_, s);
  }
  friend CycNumber operator/(const CycNumber& a, const CycNumber& b) { return a * b.inverse(); }

  CycNumber pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    CycNumber r(order_, Rational(1)), b = *this;
    while (n) {
      if (n & 1) r *= b;
      n >>= 1;
      if (n) b *= b;
    }
    return r;
  }

  /// Complex conjugation, q -> q^-1.
  CycNumber conj() const {
    CycNumber r(order_);
    for (std::size_t i = 0; i < value_.size(); ++i)
      if (value_[i] != 0) r += q_power(order_, -static_cast<long>(i)) * value_[i];
    return r;
  }

  friend bool operator==(const CycNumber& a, const CycNumber& b) {
    check(a, b);
    return a.value_ == b.value_;
  }
  friend bool operator!=(const CycNumber& a, const CycNumber& b) { return !(a == b); }

  std::string str() const {
    if (value_.empty()) return "0";
    return poly::to_laurent(value_, 0).str();
  }
  friend std::ostream& operator<<(std::ostream& os, const CycNumber& c) {
    return os << c.str() << " [N=" << c.order_ << "]";
  }

 private:
  static void check(const CycNumber& a, const CycNumber& b) {
    if (a.order_ != b.order_)
      throw OrderMismatch("cyclotomic orders " + std::to_string(a.order_) + " and " + std::to_string(b.order_));
  }

  void reduce() {
    poly::trim(value_);
    const auto& phi = cyclotomic_polynomial(order_);
    if (poly::degree(value_) >= poly::degree(phi)) value_ = poly::divmod(value_, phi).second;
  }

  int order_;
  poly::Poly value_;
};

/// Image of p under q -> primitive N-th root of unity.
inline CycNumber specialize(const LaurentPoly& p, int order) {
  poly::Poly folded(static_cast<std::size_t>(order), Rational(0));
  for (const auto& [e, c] : p.terms()) {
    long r = e % order;
    if (r < 0) r += order;
    folded[static_cast<std::size_t>(r)] += c;
  }
  return CycNumber(order, folded);
}

inline CycNumber specialize(const RationalFunction& f, int order) {
  CycNumber d = specialize(f.den(), order);
  if (d.is_zero())
    throw DenominatorVanishes("denominator " + f.den().str() + " vanishes at a primitive " +
                              std::to_string(order) + "-th root of unity");
  return specialize(f.num(), order) * d.inverse();
}

}  // namespace sp4
