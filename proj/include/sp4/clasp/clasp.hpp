#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sp4/clasp/cache.hpp"
#include "sp4/web/crossing.hpp"
#include "sp4/web/reduce.hpp"

namespace sp4::clasp {

/// Clasp label (a, b): a single strands, b double strands. Only (n,0) and
/// (0,n) have expansions.
struct ClaspLabel {
  int a = 0;
  int b = 0;
  bool expandable() const { return a == 0 || b == 0; }
};

// ---------------------------------------------------------------------------
// Layers on n single strands (positions are 0-based, left to right)

namespace layers {

inline Web place(int n, int i, int width, const Web& gadget) {
  return tensor(tensor(webs::identity(i), gadget), webs::identity(n - i - width));
}

/// n -> n-2: strands i, i+1 capped off.
inline Web cap_at(int n, int i) { return place(n, i, 2, webs::matching({EdgeType::single, EdgeType::single}, {{0, 1}}, 2)); }

/// n-2 -> n: a cup becomes strands i, i+1.
inline Web cup_at(int n, int i) { return place(n - 2, i, 0, webs::matching({EdgeType::single, EdgeType::single}, {{0, 1}}, 0)); }

/// n singles -> strands i, i+1 merged into a double.
inline Web merge_at(int n, int i) {
  return place(n, i, 2, webs::vertex({EdgeType::single, EdgeType::single, EdgeType::twin}, 2));
}

/// strand i a double, split into two singles.
inline Web split_at(int n, int i) {
  return tensor(tensor(webs::identity(i), webs::vertex({EdgeType::twin, EdgeType::single, EdgeType::single}, 1)),
                webs::identity(n - i - 2));
}

/// 2i -> 0, nested caps.
inline Web rainbow_cap(int i) {
  std::vector<std::pair<int, int>> pairs;
  for (int j = 0; j < i; ++j) pairs.emplace_back(j, 2 * i - 1 - j);
  return webs::matching(std::vector<EdgeType>(2 * i, EdgeType::single), pairs, 2 * i);
}

/// 0 -> 2i, nested cups.
inline Web rainbow_cup(int i) {
  std::vector<std::pair<int, int>> pairs;
  for (int j = 0; j < i; ++j) pairs.emplace_back(j, 2 * i - 1 - j);
  return webs::matching(std::vector<EdgeType>(2 * i, EdgeType::single), pairs, 0);
}

}  // namespace layers

/// A web consisting of one opaque clasp box on n strands of the given type.
inline Web clasp_box(int n, EdgeType type = EdgeType::single) {
  Assembler a;
  std::vector<int> inner, outer;
  for (int i = 0; i < 2 * n; ++i) {
    inner.push_back(a.add_port(type));
    outer.push_back(a.add_port(type));
    a.link(inner.back(), outer.back());
  }
  a.add_vertex(Vertex{VertexKind::clasp, {}, n, type}, inner);
  a.set_boundary(outer, n);
  return a.build();
}

namespace detail {

inline RationalFunction coefficient(const WebSum& s, const std::vector<int>& code) {
  auto it = s.terms().find(code);
  return it == s.terms().end() ? RationalFunction() : it->second.coef;
}

/// Solves rows [a_1 .. a_m | b] (a x = b) exactly; nothing if the system is
/// inconsistent or underdetermined.
inline std::optional<std::vector<RationalFunction>> solve(std::vector<std::vector<RationalFunction>> rows, int m) {
  int r = 0;
  std::vector<int> pivot_col;
  for (int c = 0; c < m; ++c) {
    int p = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (!rows[i][c].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) return std::nullopt;
    std::swap(rows[r], rows[p]);
    const RationalFunction inv = RationalFunction(1) / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const RationalFunction f = rows[i][c];
      for (int j = 0; j <= m; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < static_cast<int>(rows.size()); ++i)
    if (!rows[i][m].is_zero()) return std::nullopt;
  std::vector<RationalFunction> x(m);
  for (int i = 0; i < r; ++i) x[pivot_col[i]] = rows[i][m];
  return x;
}

/// One step of the recursion: P_n = Q + x QEQ + y QUQ with Q = P_{n-1} (x) 1,
/// E the cap-cup and U the merge-split on the last two strands. The
/// coefficients are fixed by requiring that the cap and the merge on the last
/// two strands annihilate P_n; all other turnbacks are killed by Q.
inline WebSum recursion_step(int n, const WebSum& prev, Evaluator& ev) {
  const WebSum Q = ev.reduce(tensor(prev, WebSum(webs::identity(1))));
  const Web E = compose(layers::cup_at(n, n - 2), layers::cap_at(n, n - 2));
  const Web U = compose(layers::split_at(n, n - 2), layers::merge_at(n, n - 2));
  const WebSum X = ev.reduce(compose(Q, compose(WebSum(E), Q)));
  const WebSum Y = ev.reduce(compose(Q, compose(WebSum(U), Q)));
  std::vector<std::vector<RationalFunction>> rows;
  for (const Web& t : {layers::cap_at(n, n - 2), layers::merge_at(n, n - 2)}) {
    const WebSum T(t);
    const WebSum r0 = ev.reduce(compose(T, Q)), r1 = ev.reduce(compose(T, X)), r2 = ev.reduce(compose(T, Y));
    std::set<std::vector<int>> keys;
    for (const WebSum* s : {&r0, &r1, &r2})
      for (const auto& [code, term] : *s) keys.insert(code);
    for (const auto& k : keys) rows.push_back({coefficient(r1, k), coefficient(r2, k), -coefficient(r0, k)});
  }
  auto sol = solve(rows, 2);
  if (!sol) throw InvalidWeb("clasp recursion has no solution at n = " + std::to_string(n));
  return Q + (*sol)[0] * X + (*sol)[1] * Y;
}

}  // namespace detail

/// Process-wide clasp store: an in-memory memo in front of the disk cache.
class ClaspStore {
 public:
  static ClaspStore& instance() {
    static ClaspStore s;
    return s;
  }

  void set_cache_dir(std::optional<fs::path> dir) {
    std::lock_guard<std::mutex> g(m_);
    disk_ = DiskCache(std::move(dir));
  }
  std::optional<fs::path> cache_dir() const {
    std::lock_guard<std::mutex> g(m_);
    return disk_.dir();
  }
  void set_budget(long b) {
    std::lock_guard<std::mutex> g(m_);
    budget_ = b;
  }
  /// Forgets the in-memory memo (the disk cache is untouched).
  void clear_memory() {
    std::lock_guard<std::mutex> g(m_);
    single_.clear();
  }

  WebSum single(int n) {
    if (n < 0) throw InvalidInput("clasp size must be nonnegative");
    std::lock_guard<std::mutex> g(m_);
    if (auto it = single_.find(n); it != single_.end()) return it->second;
    if (n <= 1) return single_[n] = WebSum(webs::identity(n));
    if (auto cached = disk_.load("single", n)) return single_[n] = *cached;
    WebSum prev;
    int k = n - 1;
    for (;; --k) {
      if (auto it = single_.find(k); it != single_.end()) {
        prev = it->second;
        break;
      }
      if (k <= 1) {
        prev = single_[k] = WebSum(webs::identity(k));
        break;
      }
      if (auto cached = disk_.load("single", k)) {
        prev = single_[k] = *cached;
        break;
      }
    }
    Evaluator ev({budget_, Strategy::smallest_first, 0, true});
    for (int j = k + 1; j <= n; ++j) {
      prev = detail::recursion_step(j, prev, ev);
      single_[j] = prev;
      disk_.store("single", j, prev);
    }
    return prev;
  }

 private:
  ClaspStore() : disk_(DiskCache::default_dir()) {}

  mutable std::mutex m_;
  DiskCache disk_;
  long budget_ = 10'000'000;
  std::map<int, WebSum> single_;
};

/// The clasp P on n strands of the given type, as a sum of normal-form webs.
/// Double clasps are available for n <= 1 only.
inline WebSum clasp_expand(int n, EdgeType type = EdgeType::single) {
  if (n < 0) throw InvalidInput("clasp size must be nonnegative");
  if (type == EdgeType::twin) {
    if (n > 1) throw InvalidInput("double-strand clasps are only available for n <= 1");
    return WebSum(webs::identity(n, EdgeType::twin));
  }
  return ClaspStore::instance().single(n);
}

// ---------------------------------------------------------------------------
// Clasp boxes inside webs

namespace detail {

inline bool is_clasp(const Web& w, int v) { return v != kBoundary && w.vertices[v].kind == VertexKind::clasp; }

/// True when two adjacent legs on one side of clasp v close up directly or
/// meet at one trivalent vertex.
inline bool has_turnback(const Web& w, int v) {
  const auto& vx = w.vertices[v];
  const int n = vx.clasp_size;
  for (int side = 0; side < 2; ++side)
    for (int j = 0; j + 1 < n; ++j) {
      const int h1 = vx.rot[side * n + j], h2 = vx.rot[side * n + j + 1];
      const int m1 = w.mate[h1], m2 = w.mate[h2];
      if (m1 == h2) return true;
      const int u = w.owner[m1];
      if (u != kBoundary && u == w.owner[m2] && w.vertices[u].kind == VertexKind::trivalent) return true;
    }
  return false;
}

}  // namespace detail

/// Applies the clasp axioms: a box with a turnback kills the web (nothing is
/// returned), and two stacked boxes of the same size merge into one.
inline std::optional<Web> simplify_clasps(Web w) {
  for (bool changed = true; changed;) {
    changed = false;
    for (int v = 0; v < w.vertex_count(); ++v)
      if (detail::is_clasp(w, v) && detail::has_turnback(w, v)) return std::nullopt;
    for (int v = 0; v < w.vertex_count() && !changed; ++v) {
      if (!detail::is_clasp(w, v)) continue;
      const auto& rv = w.vertices[v].rot;
      const int n = w.vertices[v].clasp_size;
      const int u = w.owner[w.mate[rv[n]]];
      if (u == v || !detail::is_clasp(w, u) || w.vertices[u].clasp_size != n ||
          w.vertices[u].clasp_type != w.vertices[v].clasp_type)
        continue;
      const auto& ru = w.vertices[u].rot;
      bool stacked = true;
      for (int j = 0; j < n && stacked; ++j) stacked = w.mate[rv[n + j]] == ru[n - 1 - j];
      if (!stacked) continue;
      std::set<int> internal;
      for (int j = 0; j < n; ++j) {
        internal.insert(rv[n + j]);
        internal.insert(ru[j]);
      }
      const auto stubs = region_stubs(w, internal, rv[0]);
      w = substitute(w, {v, u}, stubs, clasp_box(n, w.vertices[v].clasp_type));
      changed = true;
    }
  }
  return w;
}

/// Replaces every clasp box by its expansion.
inline WebSum expand_clasps(const WebSum& in) {
  WebSum done, pending;
  for (const auto& [code, t] : in)
    if (auto s = simplify_clasps(t.web)) pending.add(t.coef, *s);
  while (!pending.empty()) {
    WebSum next;
    for (const auto& [code, t] : pending) {
      const Web& w = t.web;
      int v = -1;
      for (int i = 0; i < w.vertex_count() && v < 0; ++i)
        if (detail::is_clasp(w, i)) v = i;
      if (v < 0) {
        done.add(t.coef, w);
        continue;
      }
      const auto& vx = w.vertices[v];
      for (const auto& [c, p] : clasp_expand(vx.clasp_size, vx.clasp_type))
        next.add(t.coef * p.coef, substitute(w, {v}, vx.rot, p.web));
    }
    pending = std::move(next);
  }
  return done;
}

/// Normal form of a sum that may contain clasp boxes and crossings.
inline WebSum reduce_clasped(const WebSum& s) { return reduce(resolve_crossings(expand_clasps(s))); }

/// Scalar of a closed web that may contain clasp boxes and crossings.
inline RationalFunction eval_clasped(const Web& w) {
  auto s = simplify_clasps(w);
  if (!s) return RationalFunction();
  return eval_closed(expand_clasps(WebSum(*s)));
}

// ---------------------------------------------------------------------------
// Checks and derived quantities

/// True when P_n composed with itself reduces to P_n.
inline bool is_idempotent(int n) {
  const WebSum p = clasp_expand(n);
  return reduce(compose(p, p)) == p;
}

struct TurnbackCheck {
  std::string name;
  bool passed = false;
};

/// Composes P_n with every elementary turnback (caps and merges on top, cups
/// and splits below) and checks that each composite reduces to zero.
inline std::vector<TurnbackCheck> turnback_kill(int n) {
  std::vector<TurnbackCheck> out;
  if (n < 2) return out;
  const WebSum p = clasp_expand(n);
  for (int i = 0; i + 1 < n; ++i) {
    const std::string at = " at " + std::to_string(i) + "," + std::to_string(i + 1);
    out.push_back({"cap" + at, reduce(compose(WebSum(layers::cap_at(n, i)), p)).empty()});
    out.push_back({"merge" + at, reduce(compose(WebSum(layers::merge_at(n, i)), p)).empty()});
    out.push_back({"cup" + at, reduce(compose(p, WebSum(layers::cup_at(n, i)))).empty()});
    out.push_back({"split" + at, reduce(compose(p, WebSum(layers::split_at(n, i)))).empty()});
  }
  return out;
}

inline int signed_crossing_number(const std::vector<int>& word) {
  int c = 0;
  for (int l : word) c += l > 0 ? 1 : -1;
  return c;
}

struct BraidEigenvalue {
  LaurentPoly value;  // A^{c(b)}
  bool checked = false;
  bool holds = false;
};

/// A^{c(b)} for a braid on n single strands; with `verify`, also checks by
/// engine computation that b P_n = A^{c(b)} P_n.
inline BraidEigenvalue braid_eigenvalue(int n, const std::vector<int>& word, bool verify = true) {
  BraidEigenvalue r;
  r.value = LaurentPoly::monomial(kCrossingScalarExponent * signed_crossing_number(word));
  if (!verify) return r;
  const WebSum p = clasp_expand(n);
  // one crossing at a time, reducing in between
  WebSum lhs = p;
  for (int letter : word) lhs = reduce(compose(resolve_crossings(webs::braid(n, {letter})), lhs));
  r.checked = true;
  r.holds = lhs == RationalFunction(r.value) * p;
  return r;
}

/// Closure of the clasp in the annulus, evaluated by the engine.
inline RationalFunction clasp_trace(ClaspLabel l) {
  if (!l.expandable()) throw InvalidInput("mixed clasps (a,b) with a,b > 0 have no expansion");
  const EdgeType t = l.a > 0 ? EdgeType::single : EdgeType::twin;
  const int n = l.a > 0 ? l.a : l.b;
  return eval_closed(trace(clasp_expand(n, t)));
}

/// Admissibility of three (n,0) clasps: even sum and triangle inequalities.
inline bool admissible(int a, int b, int c) {
  return a >= 0 && b >= 0 && c >= 0 && (a + b + c) % 2 == 0 && a + b >= c && a + c >= b && b + c >= a;
}

/// Dimension (0 or 1) of the invariant space of three single-type clasps;
/// at a root of unity of order N it also needs N > 2(a+b+c) + 4.
inline int triple_space_dim(int a, int b, int c, std::optional<int> order = std::nullopt) {
  if (!admissible(a, b, c)) return 0;
  if (order && *order <= 2 * (a + b + c) + 4) return 0;
  return 1;
}

/// Closed network of clasps P_a, P_b (bottom) and P_c (top) joined pairwise.
/// When one label exceeds the sum of the others, that clasp is placed on top
/// with its surplus strands capped onto itself and the clasp axioms return 0
/// without expanding anything.
inline RationalFunction theta_net(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0) throw InvalidInput("theta_net needs nonnegative labels");
  if ((a + b + c) % 2 != 0) return RationalFunction();
  // rotate the network so that the largest label sits on top
  if (a > b + c) return theta_net(b, c, a);
  if (b > a + c) return theta_net(c, a, b);
  if (c > a + b) {
    const int s = (c - a - b) / 2;
    const Web layer = tensor(webs::identity(a + b), layers::rainbow_cup(s));
    const Web closing = tensor(webs::identity(a + b), layers::rainbow_cap(s));
    const Web net = compose(compose(clasp_box(c), compose(layer, tensor(clasp_box(a), clasp_box(b)))), closing);
    return eval_clasped(trace(net));
  }
  const int i = (a + b - c) / 2;
  const Web layer = tensor(tensor(webs::identity(a - i), layers::rainbow_cap(i)), webs::identity(b - i));
  const Web closing = tensor(tensor(webs::identity(a - i), layers::rainbow_cup(i)), webs::identity(b - i));
  // apply the clasps one after another, reducing in between
  WebSum m = reduce(compose(WebSum(layer), tensor(clasp_expand(a), WebSum(webs::identity(b)))));
  m = reduce(compose(m, tensor(WebSum(webs::identity(a)), clasp_expand(b))));
  m = reduce(compose(clasp_expand(c), m));
  RationalFunction total;
  for (const auto& [code, t] : m) total += t.coef * eval_closed(trace(compose(t.web, closing)));
  return total;
}

}  // namespace sp4::clasp
