#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "sp4/cat/character.hpp"

namespace sp4::cat {

using CycMatrix = std::vector<std::vector<CycNumber>>;

inline CycMatrix mat_mul(const CycMatrix& x, const CycMatrix& y) {
  const std::size_t n = x.size(), m = y.front().size(), inner = y.size();
  const int order = x.front().front().order();
  CycMatrix r(n, std::vector<CycNumber>(m, CycNumber(order)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      CycNumber s(order);
      for (std::size_t t = 0; t < inner; ++t) s += x[i][t] * y[t][j];
      r[i][j] = s;
    }
  return r;
}

inline CycMatrix conj_transpose(const CycMatrix& x) {
  CycMatrix r(x.front().size(), std::vector<CycNumber>(x.size(), CycNumber(x.front().front().order())));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x[i].size(); ++j) r[j][i] = x[i][j].conj();
  return r;
}

/// Unnormalized S entry: sum over the Weyl group of sign(w) q^{2<w(l+rho), m+rho>}.
inline LaurentPoly s_tilde(const Weight& l, const Weight& m) {
  const Vec x = add(ortho(l), kRho), y = add(ortho(m), kRho);
  LaurentPoly s;
  for (const auto& g : weyl_group()) s += LaurentPoly::monomial(2 * dot(g.apply(x), y), g.sign());
  return s;
}

/// Twist exponent <lambda, lambda + 2 rho>.
inline int twist_exponent(const Weight& w) {
  const Vec x = ortho(w);
  return dot(x, add(x, scale(2, kRho)));
}

/// Modular data of Sp(4)_k at the primitive root q of order 4k + 12.
///
/// S is kept unnormalized: S~ = D S with D^2 = sum of |S~_{0 l}|^2, the
/// global dimension times |S~_00|^2. T is the diagonal of twists. The omega
/// weights are the quantum dimensions d_l = S~_{0 l} / S~_00; the Kirby color
/// is omega = D^-1 S~_00 sum_l d_l l.
struct ModularData {
  LevelData level;
  CycMatrix s_tilde;
  std::vector<CycNumber> t;
  CycNumber d_squared;
  std::vector<CycNumber> omega_weights;

  int size() const { return static_cast<int>(level.simples.size()); }
  int order() const { return level.q_order; }

  int index(const Weight& w) const {
    for (int i = 0; i < size(); ++i)
      if (level.simples[i] == w) return i;
    throw NotSimpleAtLevel(w.str() + " is not simple at level " + std::to_string(level.k));
  }

  /// S_{l m} / S_{00}, free of the square root in the normalization.
  CycNumber normalized_s(const Weight& l, const Weight& m) const {
    return s_tilde[index(l)][index(m)] / s_tilde[0][0];
  }

  CycMatrix t_matrix() const {
    CycMatrix r(size(), std::vector<CycNumber>(size(), CycNumber(order())));
    for (int i = 0; i < size(); ++i) r[i][i] = t[i];
    return r;
  }

  /// S S^dagger = 1, checked as S~ S~^dagger = D^2 1.
  bool unitary() const {
    const CycMatrix p = mat_mul(s_tilde, conj_transpose(s_tilde));
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j)
        if (p[i][j] != (i == j ? d_squared : CycNumber(order()))) return false;
    return true;
  }

  bool symmetric() const {
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < i; ++j)
        if (s_tilde[i][j] != s_tilde[j][i]) return false;
    return true;
  }

  /// The permutation C with S^2 = C (charge conjugation), if S^2 is one.
  std::optional<std::vector<int>> s_squared_permutation() const {
    const CycMatrix p = mat_mul(s_tilde, s_tilde);
    std::vector<int> perm(size(), -1);
    const CycNumber zero(order());
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j) {
        if (p[i][j] == zero) continue;
        if (p[i][j] != d_squared || perm[i] >= 0) return std::nullopt;
        perm[i] = j;
      }
    for (int x : perm)
      if (x < 0) return std::nullopt;
    return perm;
  }

  /// c with (S~ T)^3 = c S~^2, when such a scalar exists. Then
  /// (S T)^3 = p S^2 with p = c / D, and |p| = 1 exactly when c c* = D^2.
  std::optional<CycNumber> st_cubed_scalar() const {
    const CycMatrix st = mat_mul(s_tilde, t_matrix());
    const CycMatrix lhs = mat_mul(mat_mul(st, st), st);
    const CycMatrix s2 = mat_mul(s_tilde, s_tilde);
    std::optional<CycNumber> c;
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j) {
        if (s2[i][j].is_zero()) {
          if (!lhs[i][j].is_zero()) return std::nullopt;
          continue;
        }
        const CycNumber r = lhs[i][j] / s2[i][j];
        if (c && *c != r) return std::nullopt;
        c = r;
      }
    return c;
  }

  bool st_relation_holds() const {
    auto c = st_cubed_scalar();
    return c && *c * c->conj() == d_squared;
  }

  /// N_{l m}^n from the Verlinde formula; throws unless it is an integer.
  long verlinde(const Weight& l, const Weight& m, const Weight& n) const {
    const int i = index(l), j = index(m), r = index(n);
    CycNumber sum(order());
    for (int s = 0; s < size(); ++s)
      sum += s_tilde[i][s] * s_tilde[j][s] * s_tilde[r][s].conj() / s_tilde[0][s];
    sum = sum / d_squared;
    if (!sum.is_rational() || sum.rational_value().get_den() != 1)
      throw NonIntegerResult("Verlinde number " + sum.str() + " is not an integer");
    return sum.rational_value().get_num().get_si();
  }
};

namespace detail {

inline ModularData build_modular_data(int k) {
  ModularData md;
  md.level = LevelData::at(k);
  const int n = md.size(), order = md.order();
  md.s_tilde.assign(n, std::vector<CycNumber>(n, CycNumber(order)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) md.s_tilde[i][j] = specialize(s_tilde(md.level.simples[i], md.level.simples[j]), order);
  md.d_squared = CycNumber(order);
  for (int j = 0; j < n; ++j) md.d_squared += md.s_tilde[0][j] * md.s_tilde[0][j].conj();
  for (const Weight& w : md.level.simples) {
    md.t.push_back(CycNumber::q_power(order, twist_exponent(w)));
    md.omega_weights.push_back(qdim_at(w, order));
  }
  return md;
}

}  // namespace detail

/// Modular data at level k >= 1, built once per level.
inline const ModularData& modular_data(int k) {
  if (k < 1) throw InvalidInput("modular data needs level k >= 1");
  static std::mutex m;
  static std::map<int, std::unique_ptr<ModularData>> cache;
  std::lock_guard<std::mutex> g(m);
  auto& slot = cache[k];
  if (!slot) slot = std::make_unique<ModularData>(detail::build_modular_data(k));
  return *slot;
}

}  // namespace sp4::cat
