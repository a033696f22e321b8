#pragma once

#include <set>
#include <string>

#include "sp4/web/ops.hpp"
#include "sp4/web/rules.hpp"
#include "sp4/web/websum.hpp"

namespace sp4 {

namespace detail {

/// Replaces every vertex of the given kind by the right-hand side of `rule`,
/// one vertex at a time, merging equal diagrams along the way.
inline WebSum expand_kind(const WebSum& in, VertexKind kind, const Rule& rule) {
  WebSum done, pending = in;
  while (!pending.empty()) {
    WebSum next;
    for (const auto& [code, t] : pending) {
      const Web& w = t.web;
      int v = -1;
      for (int i = 0; i < w.vertex_count(); ++i)
        if (w.vertices[i].kind == kind) {
          v = i;
          break;
        }
      if (v < 0) {
        done.add(t.coef, w);
        continue;
      }
      const auto& rot = w.vertices[v].rot;
      for (const auto& [c, r] : rule.rhs) next.add(t.coef * c, substitute(w, {v}, rot, r));
    }
    pending = std::move(next);
  }
  return done;
}

}  // namespace detail

/// Replaces each crossing by its three-term resolution. Only crossings of
/// two single strands are supported.
inline WebSum resolve_crossings(const WebSum& s) {
  for (const auto& [code, t] : s)
    for (const auto& v : t.web.vertices)
      if (v.kind == VertexKind::crossing)
        for (int h : v.rot)
          if (t.web.type[h] != EdgeType::single)
            throw UnsupportedCrossingType("only crossings of two single strands can be resolved");
  return detail::expand_kind(s, VertexKind::crossing, RuleTable::standard().get("crossing"));
}

inline WebSum resolve_crossings(const Web& w) { return resolve_crossings(WebSum(w)); }

/// Rewrites each formal four-valent vertex into trivalent webs.
inline WebSum expand_tetravalent(const WebSum& s) {
  return detail::expand_kind(s, VertexKind::tetravalent, RuleTable::standard().get("tetravalent"));
}

inline WebSum expand_tetravalent(const Web& w) { return expand_tetravalent(WebSum(w)); }

// ---------------------------------------------------------------------------
// Elementary tangles built from crossings

namespace webs {

/// A single crossing on two single strands; positive when the over strand
/// runs from bottom left to top right.
inline Web crossing(bool positive) {
  Assembler a;
  std::vector<int> inner, outer;
  for (int i = 0; i < 4; ++i) {
    inner.push_back(a.add_port(EdgeType::single));
    outer.push_back(a.add_port(EdgeType::single));
    a.link(inner.back(), outer.back());
  }
  // boundary: bottom left, bottom right, top right, top left
  std::vector<int> rot = positive ? std::vector<int>{inner[0], inner[1], inner[2], inner[3]}
                                  : std::vector<int>{inner[1], inner[2], inner[3], inner[0]};
  a.add_vertex(Vertex{VertexKind::crossing, {}, 0, EdgeType::single}, rot);
  a.set_boundary(outer, 2);
  return a.build();
}

/// Braid on n single strands; letter +i is the positive generator on strands
/// i-1, i (1-based), -i its inverse. The first letter is at the bottom.
inline Web braid(int n, const std::vector<int>& word) {
  Web w = identity(n);
  for (int letter : word) {
    const int i = letter > 0 ? letter : -letter;
    if (i < 1 || i >= n) throw InvalidInput("braid letter out of range");
    Web layer = tensor(tensor(identity(i - 1), crossing(letter > 0)), identity(n - i - 1));
    w = compose(layer, w);
  }
  return w;
}

}  // namespace webs

}  // namespace sp4
