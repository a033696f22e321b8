#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sp4/web/crossing.hpp"
#include "sp4/web/ops.hpp"
#include "sp4/web/rules.hpp"
#include "sp4/web/websum.hpp"

namespace sp4 {

enum class Strategy { smallest_first, random };

struct EvalOptions {
  long budget = 1'000'000;
  Strategy strategy = Strategy::smallest_first;
  std::uint64_t seed = 0;
  bool memo = true;
};

/// A matched left-hand side: the rule, the vertices it covers and the stubs
/// aligned with the rule's boundary.
struct Match {
  const Rule* rule = nullptr;
  std::vector<int> region;
  std::vector<int> stubs;
};

namespace detail {

struct FaceInfo {
  int index;
  int degree;
  int doubles;
  int key() const { return degree - doubles; }
};

inline std::optional<Match> build_match(const Web& w, const std::vector<int>& f, int double_choice) {
  const RuleTable& rt = RuleTable::standard();
  const int deg = static_cast<int>(f.size());
  std::set<int> internal;
  std::set<int> region_set;
  Match m;
  if (deg <= 3) {
    for (int h : f) {
      internal.insert(h);
      internal.insert(w.mate[h]);
      region_set.insert(w.owner[h]);
    }
    int doubles = 0;
    for (int h : f) doubles += w.type[h] == EdgeType::twin;
    if (deg == 1) m.rule = &rt.get("monogon");
    if (deg == 2) m.rule = &rt.get(doubles == 0 ? "bigon-single" : "bigon-mixed");
    if (deg == 3) {
      if (doubles > 1) throw InvalidWeb("triangle with two double edges");
      m.rule = &rt.get(doubles == 0 ? "triangle-single" : "triangle-mixed");
    }
  } else {
    const int h = double_choice;
    internal = {h, w.mate[h]};
    region_set = {w.owner[h], w.owner[w.mate[h]]};
    m.rule = &rt.get("double-edge");
  }
  m.region.assign(region_set.begin(), region_set.end());
  if (m.rule->rhs.empty()) return m;
  int start = -1;
  if (deg > 3) {
    const int a = w.owner[double_choice];
    const auto& rot = w.vertices[a].rot;
    start = rot[(w.slot[double_choice] + 1) % rot.size()];
  } else {
    for (int v : m.region)
      for (int h : w.vertices[v].rot)
        if (start < 0 && !internal.count(h)) start = h;
  }
  m.stubs = region_stubs(w, internal, start);
  if (m.rule->name == "triangle-mixed") {
    // the replacement vertex has its double leg last
    while (w.type[m.stubs.back()] != EdgeType::twin) std::rotate(m.stubs.begin(), m.stubs.begin() + 1, m.stubs.end());
  }
  return m;
}

}  // namespace detail

/// Finds a relation to apply. Faces are ranked by (degree minus number of
/// double edges, degree); every closed web has a face ranked at most 3, and
/// exchanging a double edge on a minimal face never raises that rank, which
/// makes the procedure terminate. Only faces away from the boundary whose
/// corners are trivalent or four-valent vertices are considered; a four-valent
/// corner on the chosen face is expanded first (this keeps the rank of every
/// face, so four-valent vertices elsewhere are never touched).
inline std::optional<Match> find_match(const Web& w, Strategy strategy = Strategy::smallest_first,
                                       std::mt19937_64* rng = nullptr) {
  const auto fs = faces(w);
  std::vector<detail::FaceInfo> cand;
  for (int i = 0; i < static_cast<int>(fs.size()); ++i) {
    const auto& f = fs[i];
    bool ok = true;
    int doubles = 0;
    for (int h : f) {
      const int v = w.owner[h];
      if (v == kBoundary ||
          (w.vertices[v].kind != VertexKind::trivalent && w.vertices[v].kind != VertexKind::tetravalent)) {
        ok = false;
        break;
      }
      doubles += w.type[h] == EdgeType::twin;
    }
    if (!ok) continue;
    detail::FaceInfo info{i, static_cast<int>(f.size()), doubles};
    if (info.key() <= 3) cand.push_back(info);
  }
  if (cand.empty()) return std::nullopt;

  auto best = cand.front();
  for (const auto& c : cand)
    if (std::pair(c.key(), c.degree) < std::pair(best.key(), best.degree)) best = c;

  if (strategy == Strategy::random && rng) {
    std::vector<detail::FaceInfo> small;
    for (const auto& c : cand)
      if (c.degree <= 3) small.push_back(c);
    if (!small.empty()) best = small[std::uniform_int_distribution<std::size_t>(0, small.size() - 1)(*rng)];
  }

  const auto& f = fs[best.index];
  for (int h : f) {
    const int v = w.owner[h];
    if (w.vertices[v].kind == VertexKind::tetravalent) {
      Match m;
      m.rule = &RuleTable::standard().get("tetravalent");
      m.region = {v};
      m.stubs = w.vertices[v].rot;
      return m;
    }
  }
  int choice = -1;
  if (best.degree > 3) {
    std::vector<int> doubles;
    for (int h : f)
      if (w.type[h] == EdgeType::twin) doubles.push_back(h);
    choice = doubles.front();
    if (strategy == Strategy::random && rng)
      choice = doubles[std::uniform_int_distribution<std::size_t>(0, doubles.size() - 1)(*rng)];
  }
  return detail::build_match(w, f, choice);
}

/// Applies a match; returns the replacement terms.
inline std::vector<std::pair<RationalFunction, Web>> apply_match(const Web& w, const Match& m) {
  std::vector<std::pair<RationalFunction, Web>> out;
  for (const auto& [c, r] : m.rule->rhs) out.emplace_back(c, substitute(w, m.region, m.stubs, r));
  return out;
}

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = v.size();
    for (int x : v) h ^= std::hash<int>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

/// Rewriting engine. Closed components are evaluated recursively with a memo
/// keyed by canonical code; open webs are reduced with a worklist that merges
/// equal diagrams before expanding them.
class Evaluator {
 public:
  explicit Evaluator(EvalOptions opts = {}) : opts_(opts), rng_(opts.seed) {}

  const EvalOptions& options() const { return opts_; }
  long steps() const { return steps_; }
  void set_budget(long b) { opts_.budget = b; }

  /// Scalar value of a closed web without crossings or clasps.
  LaurentPoly eval_trivalent(const Web& w) {
    steps_ = 0;
    return eval_closed_impl(w);
  }

  /// Scalar value of a closed web; crossings and four-valent vertices are
  /// expanded first.
  RationalFunction eval(const Web& w) {
    if (!w.closed()) throw BoundaryMismatch("eval_closed needs a web without boundary");
    if (w.has_kind(VertexKind::clasp)) throw InvalidWeb("expand clasps before evaluating");
    steps_ = 0;
    if (!w.has_kind(VertexKind::crossing)) return RationalFunction(eval_closed_impl(w));
    WebSum s = resolve_crossings(w);
    RationalFunction total;
    for (const auto& [code, t] : s) total += t.coef * eval_closed_impl(t.web);
    return total;
  }

  RationalFunction eval(const WebSum& s) {
    RationalFunction total;
    for (const auto& [code, t] : s) {
      if (!t.web.closed()) throw BoundaryMismatch("eval_closed needs closed webs");
      total += t.coef * eval(t.web);
    }
    return total;
  }

  /// Reduces every term to normal form. Internal faces are first reduced in
  /// the trivalent picture until every one has rank at least 4; then every
  /// double edge between two vertices is traded for the four-valent vertex
  /// (I = T - B), re-reducing the lower terms. The resulting webs have
  /// four-valent vertices, trivalent vertices only next to the boundary, and
  /// no floating closed components; equal morphisms give equal sums.
  WebSum reduce(const WebSum& in) {
    for (const auto& [code, t] : in)
      if (t.web.has_kind(VertexKind::crossing) || t.web.has_kind(VertexKind::clasp))
        throw InvalidWeb("reduce expects a web without crossings or clasps");
    steps_ = 0;
    const Rule& tet = RuleTable::standard().get("tetravalent");
    const Web& tet_vertex = tet.lhs;
    const Web& tet_lower = tet.rhs[1].second;

    using Key = std::pair<std::pair<int, int>, std::vector<int>>;
    std::map<Key, std::pair<RationalFunction, Web>> work;
    WebSum out;
    auto push = [&](const RationalFunction& c, const Web& w) {
      int size = 0, twins = 0;
      for (const auto& v : w.vertices) size += v.kind == VertexKind::tetravalent ? 2 : 1;
      for (int h = 0; h < w.half_edge_count(); ++h) twins += w.type[h] == EdgeType::twin;
      Key k{{-size, -twins}, canonical_code(w)};
      auto it = work.find(k);
      if (it == work.end()) {
        work.emplace(std::move(k), std::pair(c, w));
        return;
      }
      it->second.first += c;
      if (it->second.first.is_zero()) work.erase(it);
    };
    for (const auto& [code, t] : reduce_faces(in)) push(t.coef, t.web);
    while (!work.empty()) {
      auto node = work.extract(work.begin());
      auto& [coef, w] = node.mapped();
      int h = -1;
      for (int x = 0; x < w.half_edge_count() && h < 0; ++x) {
        if (w.type[x] != EdgeType::twin) continue;
        const int a = w.owner[x], b = w.owner[w.mate[x]];
        if (a != kBoundary && b != kBoundary && w.vertices[a].kind == VertexKind::trivalent &&
            w.vertices[b].kind == VertexKind::trivalent)
          h = x;
      }
      if (h < 0) {
        out.add(coef, w);
        continue;
      }
      tick();
      const int a = w.owner[h];
      const auto& rot = w.vertices[a].rot;
      const auto stubs = region_stubs(w, {h, w.mate[h]}, rot[(w.slot[h] + 1) % rot.size()]);
      const std::vector<int> region{a, w.owner[w.mate[h]]};
      push(coef, substitute(w, region, stubs, tet_vertex));
      const Web lower = substitute(w, region, stubs, tet_lower);
      for (const auto& [c2, t] : reduce_faces(WebSum(lower))) push(-coef * t.coef, t.web);
    }
    return out;
  }

  /// Face reduction only: no internal face of rank at most 3 remains and no
  /// closed component floats free of the boundary.
  WebSum reduce_faces(const WebSum& s) {
    // largest diagrams first so that merges happen before expansion
    using Key = std::pair<int, std::vector<int>>;
    std::map<Key, std::pair<RationalFunction, Web>> work;
    WebSum out;
    auto push = [&](const RationalFunction& c, const Web& w) {
      auto [factor, core] = detach_closed(w);
      RationalFunction coef = c * factor;
      if (coef.is_zero()) return;
      Key k{-core.vertex_count(), canonical_code(core)};
      auto it = work.find(k);
      if (it == work.end()) {
        work.emplace(std::move(k), std::pair(coef, core));
        return;
      }
      it->second.first += coef;
      if (it->second.first.is_zero()) work.erase(it);
    };
    for (const auto& [code, t] : s) push(t.coef, t.web);
    while (!work.empty()) {
      auto node = work.extract(work.begin());
      auto& [coef, w] = node.mapped();
      auto m = find_match(w, opts_.strategy, &rng_);
      if (!m) {
        out.add(coef, w);
        continue;
      }
      tick();
      for (const auto& [c, r] : apply_match(w, *m)) push(coef * c, r);
    }
    return out;
  }

  WebSum reduce(const Web& w) { return reduce(WebSum(w)); }

 private:
  void tick() {
    if (++steps_ > opts_.budget)
      throw NonTerminating("step budget of " + std::to_string(opts_.budget) + " rewrites exceeded");
  }

  /// Splits off loops and floating closed components as a scalar.
  std::pair<LaurentPoly, Web> detach_closed(const Web& w) {
    const RuleTable& rt = RuleTable::standard();
    LaurentPoly f = rt.loop_single.pow(static_cast<unsigned>(w.loops_single)) *
                    rt.loop_double.pow(static_cast<unsigned>(w.loops_double));
    auto [attached, closed] = split_components(w);
    attached.loops_single = attached.loops_double = 0;
    for (const auto& c : closed) {
      if (f.is_zero()) break;
      f *= eval_component(c);
    }
    return {f, attached};
  }

  LaurentPoly eval_closed_impl(const Web& w) {
    auto [f, rest] = detach_closed(w);
    if (!rest.empty() && !f.is_zero()) f *= eval_component(rest);
    return f;
  }

  LaurentPoly eval_component(const Web& c) {
    if (c.vertices.empty()) {
      const RuleTable& rt = RuleTable::standard();
      return rt.loop_single.pow(static_cast<unsigned>(c.loops_single)) *
             rt.loop_double.pow(static_cast<unsigned>(c.loops_double));
    }
    std::vector<int> code;
    if (opts_.memo) {
      code = closed_component_code(c);
      if (auto it = memo_.find(code); it != memo_.end()) return it->second;
    }
    auto m = find_match(c, opts_.strategy, &rng_);
    if (!m) throw InvalidWeb("closed web admits no relation; it is not a planar spider web");
    tick();
    LaurentPoly total;
    for (const auto& [coef, r] : apply_match(c, *m)) {
      if (!coef.is_laurent()) throw InvalidWeb("relation coefficient is not a Laurent polynomial");
      total += coef.num() * eval_closed_impl(r);
    }
    if (opts_.memo) memo_.emplace(std::move(code), total);
    return total;
  }

  EvalOptions opts_;
  std::mt19937_64 rng_;
  long steps_ = 0;
  std::unordered_map<std::vector<int>, LaurentPoly, VectorHash> memo_;
};

/// Step budget used when a call does not pass one; the CLI's --budget sets it.
inline std::atomic<long>& default_budget() {
  static std::atomic<long> b{1'000'000};
  return b;
}

namespace detail {

inline Evaluator& thread_evaluator(long budget) {
  thread_local Evaluator ev;
  ev.set_budget(budget);
  return ev;
}

}  // namespace detail

inline WebSum reduce(const Web& w, long budget = default_budget()) { return detail::thread_evaluator(budget).reduce(w); }
inline WebSum reduce(const WebSum& s, long budget = default_budget()) { return detail::thread_evaluator(budget).reduce(s); }

inline RationalFunction eval_closed(const Web& w, long budget = default_budget()) {
  return detail::thread_evaluator(budget).eval(w);
}
inline RationalFunction eval_closed(const WebSum& s, long budget = default_budget()) {
  return detail::thread_evaluator(budget).eval(s);
}

}  // namespace sp4
