#pragma once

#include <array>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "sp4/cat/modular.hpp"

namespace sp4::tqft {

using cat::CycMatrix;

/// Homology class of a curve on the torus: (1,0) is the meridian (bounding a
/// disk in the solid torus), (0,1) the longitude.
using Slope = std::array<long, 2>;

/// Torus mapping classes as words in 's' (S-move), 't' (twist along the
/// meridian) and their inverses 'S', 'T'.
using MappingWord = std::string;

inline void check_word(const MappingWord& w) {
  for (char c : w)
    if (c != 's' && c != 't' && c != 'S' && c != 'T') throw InvalidInput(std::string("unknown torus generator '") + c + "'");
}

/// The inverse word: reversed, with each letter inverted.
inline MappingWord inverse_word(const MappingWord& w) {
  MappingWord r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(*it == 's' ? 'S' : *it == 'S' ? 's' : *it == 't' ? 'T' : 't');
  return r;
}

/// Action on homology: s(m) = l, s(l) = -m; t(m) = m, t(l) = l + m.
inline Slope act(const MappingWord& w, Slope x) {
  check_word(w);
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const long a = x[0], b = x[1];
    switch (*it) {
      case 's': x = {-b, a}; break;
      case 'S': x = {b, -a}; break;
      case 't': x = {a + b, b}; break;
      case 'T': x = {a - b, b}; break;
    }
  }
  return x;
}

inline CycMatrix identity_matrix(int n, int order) {
  CycMatrix r(n, std::vector<CycNumber>(n, CycNumber(order)));
  for (int i = 0; i < n; ++i) r[i][i] = CycNumber(order, Rational(1));
  return r;
}

inline CycMatrix diagonal(const std::vector<CycNumber>& d) {
  CycMatrix r(d.size(), std::vector<CycNumber>(d.size(), CycNumber(d.front().order())));
  for (std::size_t i = 0; i < d.size(); ++i) r[i][i] = d[i];
  return r;
}

/// The projective action of the torus mapping class group on V_k(T^2) in the
/// basis of simples (labels of the solid-torus core).
///
/// rho(s) is the unnormalized S~ = D S and rho(t) = diag(theta); conjugation
/// is insensitive to both scalars. The genuine twist differs from rho(t) by
/// the framing phase exp(2 pi i phase_turns) with phase_turns = -c/24, where
/// c = 10k/(k+3) is the central charge; it is tracked here, not applied.
struct TorusRep {
  int k = 1;
  int order = 16;
  CycMatrix s;
  CycMatrix s_inv;
  CycMatrix t;
  CycMatrix t_inv;
  Rational central_charge;
  Rational phase_turns;

  int size() const { return static_cast<int>(s.size()); }

  CycMatrix rho(const MappingWord& w) const {
    check_word(w);
    CycMatrix r = identity_matrix(size(), order);
    for (char c : w) {
      switch (c) {
        case 's': r = cat::mat_mul(r, s); break;
        case 'S': r = cat::mat_mul(r, s_inv); break;
        case 't': r = cat::mat_mul(r, t); break;
        case 'T': r = cat::mat_mul(r, t_inv); break;
      }
    }
    return r;
  }

  /// (S~ T)^3 = c S~^2 with c^2 = D^2 q^{10k}: the modular relation together
  /// with the central charge, since (ST)^3 = exp(2 pi i c/8) S^2.
  bool central_charge_consistent() const {
    const auto& md = cat::modular_data(k);
    auto c = md.st_cubed_scalar();
    return c && (*c) * (*c) == md.d_squared * CycNumber::q_power(order, 10L * k);
  }
};

inline TorusRep torus_rep(int k) {
  const auto& md = cat::modular_data(k);
  TorusRep r;
  r.k = k;
  r.order = md.order();
  r.s = md.s_tilde;
  r.s_inv = cat::conj_transpose(md.s_tilde);
  for (auto& row : r.s_inv)
    for (auto& x : row) x = x / md.d_squared;
  r.t = diagonal(md.t);
  std::vector<CycNumber> inv;
  for (const auto& x : md.t) inv.push_back(x.conj());
  r.t_inv = diagonal(inv);
  r.central_charge = make_rational(BigInt(10 * k), BigInt(k + 3));
  r.phase_turns = -r.central_charge / 24;
  return r;
}

/// Curve operator of the (1,0)-coloured meridian: diagonal with the
/// character values S~_{(1,0) l} / S~_{0 l}.
inline CycMatrix curve_meridian(int k) {
  const auto& md = cat::modular_data(k);
  std::vector<CycNumber> d;
  for (int l = 0; l < md.size(); ++l) d.push_back(md.s_tilde[md.index({1, 0})][l] / md.s_tilde[0][l]);
  return diagonal(d);
}

/// Curve operator of the (1,0)-coloured longitude, computed directly as
/// fusion with (1,0): column l holds the multiplicities N_{(1,0) l}^m.
inline CycMatrix curve_longitude(int k) {
  const auto& md = cat::modular_data(k);
  CycMatrix r(md.size(), std::vector<CycNumber>(md.size(), CycNumber(md.order())));
  for (int l = 0; l < md.size(); ++l)
    for (const auto& [w, c] : cat::fusion({1, 0}, md.level.simples[l], k))
      r[md.index(w)][l] = CycNumber(md.order(), Rational(c));
  return r;
}

/// A word w with w(meridian) = +-x, by the Euclidean algorithm.
inline MappingWord slope_word(Slope x) {
  if (std::gcd(x[0], x[1]) != 1) throw InvalidInput("slope must be primitive");
  MappingWord reduce;  // reduce(x) = +-meridian; letters apply right to left
  while (x[1] != 0) {
    long n = x[0] / x[1];  // t^-n brings |x0| below |x1|
    const char letter = n > 0 ? 'T' : 't';
    for (long i = 0; i < std::labs(n); ++i) reduce.insert(reduce.begin(), letter);
    x = {x[0] - n * x[1], x[1]};
    reduce.insert(reduce.begin(), 'S');
    x = {x[1], -x[0]};
  }
  return inverse_word(reduce);
}

/// Curve operator for any primitive slope; the meridian and longitude
/// (up to orientation) use the direct formulas above.
inline CycMatrix curve_operator(const Slope& x, int k) {
  if ((x[0] == 1 || x[0] == -1) && x[1] == 0) return curve_meridian(k);
  if (x[0] == 0 && (x[1] == 1 || x[1] == -1)) return curve_longitude(k);
  const TorusRep r = torus_rep(k);
  const MappingWord w = slope_word(x);
  return cat::mat_mul(cat::mat_mul(r.rho(w), curve_meridian(k)), r.rho(inverse_word(w)));
}

/// V_h C(gamma) V_h^-1 == C(h(gamma)).
inline bool conjugation_identity(const MappingWord& h, const Slope& gamma, int k) {
  const TorusRep r = torus_rep(k);
  const CycMatrix lhs = cat::mat_mul(cat::mat_mul(r.rho(h), curve_operator(gamma, k)), r.rho(inverse_word(h)));
  return lhs == curve_operator(act(h, gamma), k);
}

}  // namespace sp4::tqft
