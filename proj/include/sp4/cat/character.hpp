#pragma once

#include <algorithm>
#include <map>
#include <optional>

#include "sp4/cat/weight.hpp"
#include "sp4/ring/cyclotomic.hpp"
#include "sp4/ring/ratfunc.hpp"

namespace sp4::cat {

// ---------------------------------------------------------------------------
// Quantum dimensions

/// Quantum Weyl dimension: product over positive roots of
/// [<lambda + rho, alpha>] / [<rho, alpha>].
inline RationalFunction qdim(const Weight& w) {
  check_weight(w);
  const Vec x = add(ortho(w), kRho);
  LaurentPoly num(1), den(1);
  for (const Vec& r : kPositiveRoots) {
    num *= qint(dot(x, r));
    den *= qint(dot(kRho, r));
  }
  return RationalFunction(num, den);
}

/// The same product evaluated factor by factor at a primitive N-th root of
/// unity; throws when a denominator factor vanishes there.
inline CycNumber qdim_at(const Weight& w, int order) {
  check_weight(w);
  const Vec x = add(ortho(w), kRho);
  CycNumber num(order, Rational(1)), den(order, Rational(1));
  for (const Vec& r : kPositiveRoots) {
    num = num * specialize(qint(dot(x, r)), order);
    den = den * specialize(qint(dot(kRho, r)), order);
  }
  if (den.is_zero())
    throw DenominatorVanishes("quantum dimension denominator vanishes at order " + std::to_string(order));
  return num / den;
}

/// Sign of a closed strand of this weight in the diagrammatic convention:
/// each single strand contributes -1, double strands +1.
inline int diagram_sign(const Weight& w) { return w.a % 2 ? -1 : 1; }

// ---------------------------------------------------------------------------
// Weight multiplicities (Freudenthal)

/// Multiplicity of every weight of the irreducible module, in orthogonal
/// coordinates.
inline std::map<Vec, int> weight_multiplicities(const Weight& w) {
  check_weight(w);
  const Vec lambda = ortho(w);
  const Vec lr = add(lambda, kRho);
  std::vector<std::pair<int, Vec>> dom;  // (depth, weight)
  for (int x0 = 0; x0 <= lambda[0]; ++x0)
    for (int x1 = 0; x1 <= x0; ++x1) {
      const Weight f = fundamental({x0, x1});
      if (!dominates(w, f)) continue;
      const int depth = (w.a - f.a) + (w.b - f.b) + (w.a - f.a + 2 * (w.b - f.b)) / 2;
      dom.push_back({depth, {x0, x1}});
    }
  std::sort(dom.begin(), dom.end());
  std::map<Vec, int> m_dom;
  auto mult = [&](const Vec& v) {
    auto it = m_dom.find(dominant(v));
    return it == m_dom.end() ? 0 : it->second;
  };
  for (const auto& [depth, mu] : dom) {
    if (mu == lambda) {
      m_dom[mu] = 1;
      continue;
    }
    long s = 0;
    for (const Vec& r : kPositiveRoots)
      for (int j = 1;; ++j) {
        const Vec v = add(mu, scale(j, r));
        const int mv = mult(v);
        if (mv == 0) break;
        s += static_cast<long>(mv) * dot(v, r);
      }
    const Vec mr = add(mu, kRho);
    const long d = dot(lr, lr) - dot(mr, mr);
    if (d <= 0 || (2 * s) % d != 0) throw NonIntegerResult("Freudenthal recursion left the lattice");
    m_dom[mu] = static_cast<int>(2 * s / d);
  }
  std::map<Vec, int> out;
  for (const auto& [mu, m] : m_dom) {
    if (m == 0) continue;
    for (const auto& g : weyl_group()) out[g.apply(mu)] = m;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fusion

namespace detail {

/// Folds x (a shifted weight) into the open dominant chamber, or into the
/// open level-k alcove when `level` is set. Returns the sign of the folding
/// element, or 0 when x lies on a wall.
inline int fold(Vec& x, std::optional<int> level) {
  const int bound = level ? *level + 3 : 0;
  int sign = 1;
  for (;;) {
    if (x[1] < 0) {
      x[1] = -x[1];
    } else if (x[0] < 0) {
      x[0] = -x[0];
    } else if (x[0] < x[1]) {
      std::swap(x[0], x[1]);
    } else if (level && x[0] > bound) {
      x[0] = 2 * bound - x[0];
    } else {
      break;
    }
    sign = -sign;
  }
  if (x[1] == 0 || x[0] == x[1] || (level && x[0] == bound)) return 0;
  return sign;
}

}  // namespace detail

/// Tensor product multiplicities. Without a level: the classical
/// decomposition by Brauer-Klimyk (shift by rho, fold by the Weyl group with
/// signs). At level k: the same with the affine Weyl group at shifted level
/// k + 3 (Kac-Walton); both factors must be simple at level k.
inline std::map<Weight, int> fusion(const Weight& l, const Weight& m, std::optional<int> level = std::nullopt) {
  check_weight(l);
  check_weight(m);
  if (level) {
    if (*level < 0) throw InvalidInput("level must be nonnegative");
    for (const Weight& w : {l, m})
      if (!is_simple_at(w, *level))
        throw NotSimpleAtLevel(w.str() + " is not simple at level " + std::to_string(*level));
  }
  std::map<Weight, int> acc;
  const Vec base = add(ortho(l), kRho);
  for (const auto& [nu, mult] : weight_multiplicities(m)) {
    Vec x = add(base, nu);
    const int s = detail::fold(x, level);
    if (s != 0) acc[fundamental(sub(x, kRho))] += s * mult;
  }
  std::map<Weight, int> out;
  for (const auto& [w, c] : acc) {
    if (c < 0) throw NonIntegerResult("negative fusion multiplicity at " + w.str());
    if (c > 0) out[w] = c;
  }
  return out;
}

/// Clasp weights in the factorization of the identity on a single strands and
/// b double strands: the decomposition of V^{(x)a} (x) W^{(x)b}, at level k
/// when given.
inline std::map<Weight, int> identity_tangle_decomposition(int a, int b, std::optional<int> level = std::nullopt) {
  if (a < 0 || b < 0) throw InvalidInput("strand counts must be nonnegative");
  std::map<Weight, int> cur{{{0, 0}, 1}};
  auto step = [&](const Weight& f) {
    std::map<Weight, int> next;
    for (const auto& [w, c] : cur)
      for (const auto& [v, d] : fusion(w, f, level)) next[v] += c * d;
    cur = std::move(next);
  };
  for (int i = 0; i < a; ++i) step({1, 0});
  for (int i = 0; i < b; ++i) step({0, 1});
  return cur;
}

}  // namespace sp4::cat
