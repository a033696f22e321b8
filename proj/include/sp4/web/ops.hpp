#pragma once

#include <set>
#include <utility>
#include <vector>

#include "sp4/web/web.hpp"
#include "sp4/web/websum.hpp"

namespace sp4 {

namespace detail {

inline void check_types(EdgeType a, EdgeType b) {
  if (a != b) throw BoundaryMismatch("boundary strand types differ");
}

}  // namespace detail

/// Stacks `top` on `bottom`: the top points of `bottom` are glued to the
/// bottom points of `top`.
inline Web compose(const Web& top, const Web& bottom) {
  const int m = bottom.target();
  if (m != top.source)
    throw BoundaryMismatch("compose: " + std::to_string(m) + " top points against " + std::to_string(top.source) +
                           " bottom points");
  Assembler a;
  const auto pb = import_web(a, bottom);
  const auto pt = import_web(a, top);
  const int nb = bottom.boundary_size();
  for (int i = 0; i < m; ++i) {
    const int hb = bottom.boundary[nb - 1 - i];
    const int ht = top.boundary[i];
    detail::check_types(bottom.type[hb], top.type[ht]);
    a.relay(pb[hb], pt[ht]);
  }
  std::vector<int> b;
  for (int i = 0; i < bottom.source; ++i) b.push_back(pb[bottom.boundary[i]]);
  for (int i = top.source; i < top.boundary_size(); ++i) b.push_back(pt[top.boundary[i]]);
  a.set_boundary(b, bottom.source);
  return a.build();
}

/// Places `right` beside `left`.
inline Web tensor(const Web& left, const Web& right) {
  Assembler a;
  const auto pl = import_web(a, left);
  const auto pr = import_web(a, right);
  std::vector<int> b;
  for (int i = 0; i < left.source; ++i) b.push_back(pl[left.boundary[i]]);
  for (int i = 0; i < right.source; ++i) b.push_back(pr[right.boundary[i]]);
  for (int i = right.source; i < right.boundary_size(); ++i) b.push_back(pr[right.boundary[i]]);
  for (int i = left.source; i < left.boundary_size(); ++i) b.push_back(pl[left.boundary[i]]);
  a.set_boundary(b, left.source + right.source);
  return a.build();
}

/// Cyclically shifts the boundary by `steps` positions; the split into
/// bottom and top points keeps its size.
inline Web rotate(const Web& w, int steps) {
  const int n = w.boundary_size();
  if (n == 0) return w;
  Web r = w;
  const int s = ((steps % n) + n) % n;
  for (int i = 0; i < n; ++i) {
    r.boundary[i] = w.boundary[(i + s) % n];
    r.slot[r.boundary[i]] = i;
  }
  return r;
}

/// Joins boundary points pairwise (indices into the boundary); the points
/// not mentioned stay on the boundary in their original order.
inline Web close(const Web& w, const std::vector<std::pair<int, int>>& pairs, int new_source = 0) {
  Assembler a;
  const auto p = import_web(a, w);
  std::vector<char> used(w.boundary_size(), 0);
  for (auto [i, j] : pairs) {
    if (i < 0 || j < 0 || i >= w.boundary_size() || j >= w.boundary_size() || i == j || used[i] || used[j])
      throw BoundaryMismatch("close: invalid boundary pairing");
    detail::check_types(w.boundary_type(i), w.boundary_type(j));
    used[i] = used[j] = 1;
    a.relay(p[w.boundary[i]], p[w.boundary[j]]);
  }
  std::vector<int> b;
  for (int i = 0; i < w.boundary_size(); ++i)
    if (!used[i]) b.push_back(p[w.boundary[i]]);
  a.set_boundary(b, new_source);
  return a.build();
}

/// Planar closure of an endomorphism: bottom point i is joined to top point i.
inline Web trace(const Web& w) {
  const int n = w.source;
  if (w.boundary_size() != 2 * n) throw BoundaryMismatch("trace needs as many top as bottom points");
  std::vector<std::pair<int, int>> pairs;
  for (int j = 0; j < n; ++j) pairs.emplace_back(j, 2 * n - 1 - j);
  return close(w, pairs);
}

/// Reflection of the disk in a vertical line. Bottom and top points keep their
/// roles, rotations reverse and a positive crossing becomes a negative one.
inline Web mirror(const Web& w) {
  Assembler a;
  std::vector<int> port(w.half_edge_count());
  for (int h = 0; h < w.half_edge_count(); ++h) port[h] = a.add_port(w.type[h]);
  for (int h = 0; h < w.half_edge_count(); ++h)
    if (h < w.mate[h]) a.link(port[h], port[w.mate[h]]);
  for (const auto& v : w.vertices) {
    Vertex m = v;
    std::vector<int> ports;
    const int d = v.degree();
    if (v.kind == VertexKind::clasp) {
      const int n = v.clasp_size;
      // inputs stay inputs, read right to left; likewise outputs
      for (int i = n - 1; i >= 0; --i) ports.push_back(port[v.rot[i]]);
      for (int i = 2 * n - 1; i >= n; --i) ports.push_back(port[v.rot[i]]);
    } else {
      // reversed order from slot 0 keeps a crossing's over strand in slots 0 and 2
      for (int k = 0; k < d; ++k) ports.push_back(port[v.rot[(d - k) % d]]);
    }
    a.add_vertex(m, ports);
  }
  const int s = w.source, n = w.boundary_size();
  std::vector<int> b;
  for (int i = s - 1; i >= 0; --i) b.push_back(port[w.boundary[i]]);
  for (int i = n - 1; i >= s; --i) b.push_back(port[w.boundary[i]]);
  a.set_boundary(b, s);
  a.add_loops(w.loops_single, w.loops_double);
  return a.build();
}

/// Half-edges leaving a region, in counterclockwise order around it. The
/// region is given by its internal half-edges (both halves of every internal
/// edge); `start` is any half-edge of the region that is not internal.
inline std::vector<int> region_stubs(const Web& w, const std::set<int>& internal, int start) {
  std::vector<int> out;
  int h = start;
  const int limit = w.half_edge_count() + 1;
  do {
    out.push_back(h);
    int t = w.succ(h);
    while (internal.count(t)) t = w.succ(w.mate[t]);
    h = t;
    if (static_cast<int>(out.size()) > limit) throw InvalidWeb("region walk does not close");
  } while (h != start);
  return out;
}

/// Replaces the vertices in `region` by the web `r`, whose boundary (in
/// counterclockwise order) is glued to `stubs`. Half-edges of the region that
/// are not stubs must be internal to it.
inline Web substitute(const Web& w, const std::vector<int>& region, const std::vector<int>& stubs, const Web& r) {
  if (static_cast<int>(stubs.size()) != r.boundary_size())
    throw BoundaryMismatch("substitute: boundary sizes differ");
  std::vector<char> in_region(w.vertex_count(), 0);
  for (int v : region) in_region[v] = 1;
  Assembler a;
  std::vector<int> port(w.half_edge_count(), -1);
  std::vector<char> is_stub(w.half_edge_count(), 0);
  for (int s : stubs) is_stub[s] = 1;
  for (int h = 0; h < w.half_edge_count(); ++h) {
    const int v = w.owner[h];
    if (v != kBoundary && in_region[v] && !is_stub[h]) continue;
    port[h] = a.add_port(w.type[h]);
  }
  for (int h = 0; h < w.half_edge_count(); ++h) {
    if (port[h] < 0) continue;
    const int m = w.mate[h];
    if (port[m] < 0) throw InvalidWeb("substitute: stub list misses an outgoing half-edge");
    if (h < m) a.link(port[h], port[m]);
  }
  for (int v = 0; v < w.vertex_count(); ++v) {
    if (in_region[v]) continue;
    std::vector<int> ports;
    for (int h : w.vertices[v].rot) ports.push_back(port[h]);
    a.add_vertex(w.vertices[v], ports);
  }
  std::vector<int> b;
  for (int h : w.boundary) b.push_back(port[h]);
  a.set_boundary(b, w.source);
  a.add_loops(w.loops_single, w.loops_double);
  const auto pr = import_web(a, r);
  for (std::size_t i = 0; i < stubs.size(); ++i) {
    detail::check_types(w.type[stubs[i]], r.boundary_type(static_cast<int>(i)));
    a.relay(port[stubs[i]], pr[r.boundary[i]]);
  }
  return a.build();
}

// Bilinear extensions to sums.

inline WebSum compose(const WebSum& top, const WebSum& bottom) {
  WebSum r;
  for (const auto& [c1, t] : top)
    for (const auto& [c2, b] : bottom) r.add(t.coef * b.coef, compose(t.web, b.web));
  return r;
}

inline WebSum tensor(const WebSum& left, const WebSum& right) {
  WebSum r;
  for (const auto& [c1, l] : left)
    for (const auto& [c2, g] : right) r.add(l.coef * g.coef, tensor(l.web, g.web));
  return r;
}

inline WebSum trace(const WebSum& s) {
  WebSum r;
  for (const auto& [c, t] : s) r.add(t.coef, trace(t.web));
  return r;
}

}  // namespace sp4
