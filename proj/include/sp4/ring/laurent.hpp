#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <climits>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sp4/error.hpp"

namespace sp4 {

using Rational = mpq_class;
using BigInt = mpz_class;

/// n/d in lowest terms (mpq_class does not reduce on construction).
inline Rational make_rational(const BigInt& n, const BigInt& d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

namespace detail {

inline int checked_add(int a, int b) {
  int r;
  if (__builtin_add_overflow(a, b, &r))
    throw ExponentOverflow("Laurent exponent overflow");
  return r;
}

inline int checked_mul(int a, int b) {
  int r;
  if (__builtin_mul_overflow(a, b, &r))
    throw ExponentOverflow("Laurent exponent overflow");
  return r;
}

}  // namespace detail

/// Laurent polynomial in one variable q with exact rational coefficients.
///
/// Stored densely: coefficient of q^(low_ + i) is coeffs_[i]. The invariant is
/// that a nonzero polynomial has nonzero first and last coefficients, and the
/// zero polynomial has no coefficients at all.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) {
      coeffs_.emplace_back(c);
    }
  }
  LaurentPoly(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) {
      coeffs_.push_back(c);
    }
  }

  /// c * q^e
  static LaurentPoly monomial(int e, const Rational& c = 1) {
    LaurentPoly p;
    if (c != 0) {
      p.low_ = e;
      p.coeffs_.push_back(c);
    }
    return p;
  }

  static LaurentPoly q() { return monomial(1); }

  /// Build from (exponent, coefficient) pairs; repeated exponents add up.
  static LaurentPoly from_terms(const std::vector<std::pair<int, Rational>>& terms) {
    LaurentPoly p;
    for (const auto& [e, c] : terms) p += monomial(e, c);
    return p;
  }

  bool is_zero() const { return coeffs_.empty(); }
  int low() const { return low_; }
  int high() const { return detail::checked_add(low_, static_cast<int>(coeffs_.size()) - 1); }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  Rational coeff(int e) const {
    if (is_zero() || e < low_ || e > high()) return 0;
    return coeffs_[e - low_];
  }

  /// Nonzero terms in increasing exponent order.
  std::vector<std::pair<int, Rational>> terms() const {
    std::vector<std::pair<int, Rational>> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) out.emplace_back(low_ + static_cast<int>(i), coeffs_[i]);
    return out;
  }

  bool is_constant() const { return is_zero() || (coeffs_.size() == 1 && low_ == 0); }
  bool is_monomial() const { return coeffs_.size() == 1; }

  /// Value at q = 1.
  Rational at_one() const {
    Rational s = 0;
    for (const auto& c : coeffs_) s += c;
    return s;
  }

  /// Multiply by q^k.
  LaurentPoly shifted(int k) const {
    LaurentPoly r = *this;
    if (!r.is_zero()) {
      r.low_ = detail::checked_add(r.low_, k);
      (void)r.high();
    }
    return r;
  }

  /// Substitution q -> q^-1.
  LaurentPoly bar() const {
    LaurentPoly r;
    if (is_zero()) return r;
    r.low_ = -high();
    r.coeffs_.assign(coeffs_.rbegin(), coeffs_.rend());
    return r;
  }

  /// Substitution q -> q^m for m != 0.
  LaurentPoly substitute_power(int m) const {
    LaurentPoly r;
    for (const auto& [e, c] : terms()) r += monomial(detail::checked_mul(e, m), c);
    return r;
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    const int lo = std::min(low_, o.low_);
    const int hi = std::max(high(), o.high());
    std::vector<Rational> c(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[low_ - lo + i] = coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[o.low_ - lo + i] += o.coeffs_[i];
    low_ = lo;
    coeffs_ = std::move(c);
    trim();
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this += -o; }

  LaurentPoly& operator*=(const Rational& s) {
    if (s == 0) {
      coeffs_.clear();
      low_ = 0;
      return *this;
    }
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.low_ = detail::checked_add(a.low_, b.low_);
    r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    (void)r.high();
    r.trim();
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const Rational& s) { return a *= s; }
  friend LaurentPoly operator*(const Rational& s, LaurentPoly a) { return a *= s; }
  friend LaurentPoly operator*(LaurentPoly a, long s) { return a *= Rational(s); }
  friend LaurentPoly operator*(long s, LaurentPoly a) { return a *= Rational(s); }

  LaurentPoly pow(unsigned n) const {
    LaurentPoly result = 1, base = *this;
    while (n) {
      if (n & 1U) result *= base;
      n >>= 1U;
      if (n) base *= base;
    }
    return result;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.coeffs_ == b.coeffs_ && (a.is_zero() || a.low_ == b.low_);
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  /// Total order used only for deterministic containers.
  friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.low_ != b.low_) return a.low_ < b.low_;
    if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      if (a.coeffs_[i] != b.coeffs_[i]) return a.coeffs_[i] < b.coeffs_[i];
    return false;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      const int e = low_ + static_cast<int>(coeffs_.rend() - it) - 1;
      const Rational& c = *it;
      if (c == 0) continue;
      Rational mag = abs(c);
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (e == 0) {
        os << mag;
        continue;
      }
      if (mag != 1) os << mag << "*";
      os << "q";
      if (e != 1) os << "^" << (e < 0 ? "(" : "") << e << (e < 0 ? ")" : "");
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.str(); }

 private:
  void trim() {
    std::size_t b = 0;
    while (b < coeffs_.size() && coeffs_[b] == 0) ++b;
    if (b == coeffs_.size()) {
      coeffs_.clear();
      low_ = 0;
      return;
    }
    std::size_t e = coeffs_.size();
    while (coeffs_[e - 1] == 0) --e;
    if (b > 0 || e < coeffs_.size()) {
      coeffs_ = std::vector<Rational>(coeffs_.begin() + static_cast<long>(b), coeffs_.begin() + static_cast<long>(e));
      low_ += static_cast<int>(b);
    }
  }

  int low_ = 0;
  std::vector<Rational> coeffs_;
};

/// Quantum integer [n] = (q^n - q^-n) / (q - q^-1).
inline LaurentPoly qint(int n) {
  if (n < 0) return -qint(-n);
  LaurentPoly r;
  for (int e = n - 1; e >= 1 - n; e -= 2) r += LaurentPoly::monomial(e);
  return r;
}

}  // namespace sp4
