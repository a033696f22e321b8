#pragma once

#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "sp4/ring/cyclotomic.hpp"
#include "sp4/ring/ratfunc.hpp"
#include "sp4/web/web.hpp"

namespace sp4 {

inline bool is_zero_scalar(const RationalFunction& x) { return x.is_zero(); }
inline bool is_zero_scalar(const CycNumber& x) { return x.is_zero(); }
inline bool is_zero_scalar(const LaurentPoly& x) { return x.is_zero(); }

/// Formal linear combination of webs. Diagrams are stored in canonical form
/// and keyed by their canonical code, so equal diagrams always merge and
/// iteration order is deterministic.
template <class Scalar>
class BasicWebSum {
 public:
  struct Term {
    Scalar coef;
    Web web;
  };
  using Map = std::map<std::vector<int>, Term>;

  BasicWebSum() = default;
  explicit BasicWebSum(const Web& w, Scalar c = Scalar(1)) { add(std::move(c), w); }

  void add(Scalar c, const Web& w) {
    if (is_zero_scalar(c)) return;
    auto code = canonical_code(w);
    auto it = terms_.find(code);
    if (it == terms_.end()) {
      terms_.emplace(std::move(code), Term{std::move(c), canonical_form(w)});
      return;
    }
    it->second.coef += c;
    if (is_zero_scalar(it->second.coef)) terms_.erase(it);
  }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  const Map& terms() const { return terms_; }

  /// Coefficient of the empty diagram.
  Scalar scalar() const {
    auto it = terms_.find(canonical_code(Web{}));
    return it == terms_.end() ? Scalar(0) : it->second.coef;
  }

  /// True when every term is the empty diagram or the sum is zero.
  bool is_scalar() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->second.web.empty()); }

  BasicWebSum& operator+=(const BasicWebSum& o) {
    for (const auto& [code, t] : o.terms_) add(t.coef, t.web);
    return *this;
  }
  BasicWebSum& operator-=(const BasicWebSum& o) {
    for (const auto& [code, t] : o.terms_) add(-t.coef, t.web);
    return *this;
  }
  friend BasicWebSum operator+(BasicWebSum a, const BasicWebSum& b) { return a += b; }
  friend BasicWebSum operator-(BasicWebSum a, const BasicWebSum& b) { return a -= b; }

  friend BasicWebSum operator*(const Scalar& s, const BasicWebSum& a) {
    BasicWebSum r;
    if (is_zero_scalar(s)) return r;
    for (const auto& [code, t] : a.terms_) r.terms_.emplace(code, Term{s * t.coef, t.web});
    return r;
  }

  friend bool operator==(const BasicWebSum& a, const BasicWebSum& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (auto i = a.terms_.begin(), j = b.terms_.begin(); i != a.terms_.end(); ++i, ++j)
      if (i->first != j->first || i->second.coef != j->second.coef) return false;
    return true;
  }

  /// Terms as "coef * [V vertices, B boundary]", for diagnostics.
  friend std::ostream& operator<<(std::ostream& os, const BasicWebSum& a) {
    if (a.terms_.empty()) return os << "0";
    bool first = true;
    for (const auto& [code, t] : a.terms_) {
      os << (first ? "" : " + ") << "(" << t.coef << ") * [" << t.web.vertex_count() << "v " << t.web.boundary_size()
         << "b]";
      first = false;
    }
    return os;
  }

  /// Applies f to every diagram and collects the results with coefficients.
  template <class F>
  BasicWebSum map_webs(F&& f) const {
    BasicWebSum r;
    for (const auto& [code, t] : terms_) {
      BasicWebSum part = f(t.web);
      for (const auto& [c2, u] : part.terms_) r.add(t.coef * u.coef, u.web);
    }
    return r;
  }

 private:
  Map terms_;
};

using WebSum = BasicWebSum<RationalFunction>;

/// Image of a sum under q -> primitive N-th root of unity.
inline BasicWebSum<CycNumber> specialize(const WebSum& s, int order) {
  BasicWebSum<CycNumber> r;
  for (const auto& [code, t] : s) {
    CycNumber c = specialize(t.coef, order);
    if (!c.is_zero()) r.add(c, t.web);
  }
  return r;
}

}  // namespace sp4
