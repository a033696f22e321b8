#pragma once

#include <ostream>
#include <string>
#include <utility>

#include "sp4/ring/laurent.hpp"
#include "sp4/ring/poly.hpp"

namespace sp4 {

/// Quotient of Laurent polynomials, kept in canonical form:
///   * numerator and denominator share no polynomial factor,
///   * the denominator is an ordinary polynomial with constant term 1.
/// Equality is therefore structural.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(long c) : num_(c), den_(1) {}                    // NOLINT
  RationalFunction(const Rational& c) : num_(c), den_(1) {}         // NOLINT
  RationalFunction(LaurentPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT

  RationalFunction(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DenominatorVanishes("rational function with zero denominator");
    canonicalize();
  }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_laurent() const { return den_ == LaurentPoly(1); }

  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }

  // Sums and products only take gcds against denominators, which stay small.
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
      LaurentPoly n = a.num_ + b.num_;
      LaurentPoly d = a.den_;
      cancel(n, d, d);
      return RationalFunction(std::move(n), std::move(d), Raw{});
    }
    if (a.is_laurent()) return RationalFunction(a.num_ * b.den_ + b.num_, b.den_, Raw{});
    if (b.is_laurent()) return RationalFunction(a.num_ + b.num_ * a.den_, a.den_, Raw{});
    const LaurentPoly g = common(a.den_, b.den_);
    if (g == LaurentPoly(1)) return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, Raw{});
    const LaurentPoly ab = exact_div(a.den_, g), bb = exact_div(b.den_, g);
    LaurentPoly n = a.num_ * bb + b.num_ * ab;
    LaurentPoly d = ab * b.den_;
    cancel(n, d, g);
    return RationalFunction(std::move(n), std::move(d), Raw{});
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_laurent() && b.is_laurent()) return RationalFunction(a.num_ * b.num_);
    LaurentPoly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
    cancel(an, bd, bd);
    cancel(bn, ad, ad);
    return RationalFunction(an * bn, ad * bd, Raw{});
  }
  friend RationalFunction operator*(const RationalFunction& a, const LaurentPoly& p) {
    if (a.is_laurent()) return RationalFunction(a.num_ * p);
    if (p.is_zero()) return {};
    LaurentPoly n = p, d = a.den_;
    cancel(n, d, d);
    return RationalFunction(a.num_ * n, std::move(d), Raw{});
  }

  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw DenominatorVanishes("division by zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }

  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

  RationalFunction pow(int n) const {
    if (n < 0) return RationalFunction(1) / pow(-n);
    RationalFunction r = 1, b = *this;
    while (n) {
      if (n & 1) r *= b;
      n >>= 1;
      if (n) b *= b;
    }
    return r;
  }

  /// q -> q^-1
  RationalFunction bar() const { return RationalFunction(num_.bar(), den_.bar()); }

  /// Value at q = 1; throws if the denominator vanishes there.
  Rational at_one() const {
    Rational d = den_.at_one();
    if (d == 0) throw DenominatorVanishes("denominator vanishes at q = 1");
    return num_.at_one() / d;
  }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  std::string str() const {
    if (is_laurent()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, const RationalFunction& r) { return os << r.str(); }

 private:
  struct Raw {};
  // Already canonical by construction.
  RationalFunction(LaurentPoly num, LaurentPoly den, Raw) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.is_zero()) den_ = 1;
  }

  /// Monic-at-zero gcd of a Laurent polynomial and a denominator.
  static LaurentPoly common(const LaurentPoly& x, const LaurentPoly& den) {
    if (x.is_zero()) return den;
    poly::Poly g = poly::gcd(poly::from_laurent(x).first, poly::from_laurent(den).first);
    const Rational c = g.front();
    for (auto& v : g) v /= c;
    return poly::to_laurent(g, 0);
  }

  static LaurentPoly exact_div(const LaurentPoly& x, const LaurentPoly& g) {
    auto [p, v] = poly::from_laurent(x);
    return poly::to_laurent(poly::divmod(std::move(p), poly::from_laurent(g).first).first, v);
  }

  /// Removes from n and d their common factor, which divides `within`.
  static void cancel(LaurentPoly& n, LaurentPoly& d, const LaurentPoly& within) {
    if (n.is_zero() || within == LaurentPoly(1)) return;
    const LaurentPoly h = common(n, within);
    if (h == LaurentPoly(1)) return;
    n = exact_div(n, h);
    d = exact_div(d, h);
  }

  void canonicalize() {
    if (num_.is_zero()) {
      den_ = 1;
      return;
    }
    auto [n, nv] = poly::from_laurent(num_);
    auto [d, dv] = poly::from_laurent(den_);
    if (d.size() > 1) {
      poly::Poly g = poly::gcd(n, d);
      if (g.size() > 1) {
        n = poly::divmod(n, g).first;
        d = poly::divmod(d, g).first;
      }
    }
    Rational c = d.front();
    for (auto& x : d) x /= c;
    for (auto& x : n) x /= c;
    num_ = poly::to_laurent(n, nv - dv);
    den_ = poly::to_laurent(d, 0);
  }

  LaurentPoly num_;
  LaurentPoly den_;
};

}  // namespace sp4
