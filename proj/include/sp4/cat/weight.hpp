#pragma once

#include <array>
#include <cstdlib>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "sp4/error.hpp"

namespace sp4::cat {

// Normalization. Weights are written (a, b) = a w1 + b w2 in fundamental
// coordinates (a single strands, b double strands). Computations use
// orthogonal coordinates x = (a + b, b), where w1 = e1, w2 = e1 + e2 and the
// inner product is the Euclidean one, so short roots +-e1 +-e2 have squared
// length 2 and long roots +-2e_i squared length 4. Then rho = (2, 1), the
// web parameter q has order N = 4k + 12 at level k, and the twist of lambda is
// q^<lambda, lambda + 2 rho>.

/// Dominant weight (a, b) of sp(4).
struct Weight {
  int a = 0;
  int b = 0;

  /// Graded lexicographic: by a + b, then by decreasing a.
  friend bool operator<(const Weight& x, const Weight& y) {
    if (x.a + x.b != y.a + y.b) return x.a + x.b < y.a + y.b;
    return x.a > y.a;
  }
  friend bool operator==(const Weight& x, const Weight& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const Weight& x, const Weight& y) { return !(x == y); }

  std::string str() const { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }
  friend std::ostream& operator<<(std::ostream& os, const Weight& w) { return os << w.str(); }
};

/// Point of the weight lattice in orthogonal coordinates.
using Vec = std::array<int, 2>;

inline constexpr Vec kRho{2, 1};

/// Positive roots: two short, two long.
inline constexpr std::array<Vec, 4> kPositiveRoots{{{1, -1}, {1, 1}, {2, 0}, {0, 2}}};

inline int dot(const Vec& x, const Vec& y) { return x[0] * y[0] + x[1] * y[1]; }
inline Vec add(const Vec& x, const Vec& y) { return {x[0] + y[0], x[1] + y[1]}; }
inline Vec sub(const Vec& x, const Vec& y) { return {x[0] - y[0], x[1] - y[1]}; }
inline Vec scale(int s, const Vec& x) { return {s * x[0], s * x[1]}; }

inline Vec ortho(const Weight& w) { return {w.a + w.b, w.b}; }

/// Inverse of ortho; only for lattice points with x1 >= x2 >= 0.
inline Weight fundamental(const Vec& x) { return {x[0] - x[1], x[1]}; }

inline void check_weight(const Weight& w) {
  if (w.a < 0 || w.b < 0) throw InvalidInput("weight " + w.str() + " has a negative component");
}

/// Weyl group element: signed permutation of the two coordinates.
struct WeylElement {
  bool swap = false;
  int s0 = 1;
  int s1 = 1;

  Vec apply(const Vec& x) const {
    Vec y = swap ? Vec{x[1], x[0]} : x;
    return {s0 * y[0], s1 * y[1]};
  }
  int sign() const { return (swap ? -1 : 1) * s0 * s1; }
};

/// All eight elements.
inline const std::vector<WeylElement>& weyl_group() {
  static const std::vector<WeylElement> g = [] {
    std::vector<WeylElement> out;
    for (bool sw : {false, true})
      for (int s0 : {1, -1})
        for (int s1 : {1, -1}) out.push_back({sw, s0, s1});
    return out;
  }();
  return g;
}

/// Dominant representative of the orbit of x.
inline Vec dominant(const Vec& x) {
  int u = std::abs(x[0]), v = std::abs(x[1]);
  if (u < v) std::swap(u, v);
  return {u, v};
}

/// Simple objects at level k: all (a, b) with a + b <= k, in graded
/// lexicographic order.
inline std::vector<Weight> simples(int k) {
  if (k < 0) throw InvalidInput("level must be nonnegative");
  std::vector<Weight> out;
  for (int d = 0; d <= k; ++d)
    for (int a = d; a >= 0; --a) out.push_back({a, d - a});
  return out;
}

inline bool is_simple_at(const Weight& w, int k) { return w.a >= 0 && w.b >= 0 && w.a + w.b <= k; }

/// True when y lies below x in the order generated by
/// (a, b) -> (a - 2, b + 1) and (a, b) -> (a + 2, b - 2), i.e.
/// x - y = m (2, -1) + n (-2, 2) with m, n nonnegative integers.
inline bool dominates(const Weight& x, const Weight& y) {
  const int da = x.a - y.a, db = x.b - y.b;
  const int m = da + db;
  const int twice_n = da + 2 * db;
  return m >= 0 && twice_n >= 0 && twice_n % 2 == 0;
}

/// Level data: q has order N = 4k + 12.
struct LevelData {
  int k = 0;
  int q_order = 12;
  std::vector<Weight> simples;

  static LevelData at(int k) { return {k, 4 * k + 12, cat::simples(k)}; }
};

}  // namespace sp4::cat
