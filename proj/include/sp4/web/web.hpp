#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sp4/error.hpp"

namespace sp4 {

/// Strand types of the C2 spider: the single strand carries the 4-dimensional
/// fundamental, the double strand the 5-dimensional one.
enum class EdgeType : std::uint8_t { single = 1, twin = 2 };

inline const char* to_string(EdgeType t) { return t == EdgeType::single ? "single" : "double"; }

enum class VertexKind : std::uint8_t { trivalent, tetravalent, crossing, clasp };

inline const char* to_string(VertexKind k) {
  switch (k) {
    case VertexKind::trivalent: return "trivalent";
    case VertexKind::tetravalent: return "tetravalent";
    case VertexKind::crossing: return "crossing";
    case VertexKind::clasp: return "clasp";
  }
  return "?";
}

/// A vertex and its half-edges in counterclockwise order.
///
/// crossing: the over strand joins rot[0] and rot[2].
/// clasp:    rot[0..n) are the inputs (left to right along the bottom),
///           rot[n..2n) the outputs (right to left along the top), so the
///           rotation runs counterclockwise around the box.
struct Vertex {
  VertexKind kind = VertexKind::trivalent;
  std::vector<int> rot;
  int clasp_size = 0;
  EdgeType clasp_type = EdgeType::single;

  int degree() const { return static_cast<int>(rot.size()); }
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

inline constexpr int kBoundary = -1;

/// Planar web in a disk as a combinatorial map.
///
/// Half-edges are integers; `mate` is the edge involution, `owner[h]` is the
/// vertex carrying h or kBoundary for points on the disk boundary. `boundary`
/// lists the boundary points counterclockwise; for morphisms the first
/// `source` of them are the bottom points (left to right) and the remaining
/// ones are the top points (right to left). Closed strands without vertices
/// are kept as counters.
struct Web {
  std::vector<Vertex> vertices;
  std::vector<int> mate;
  std::vector<int> owner;
  std::vector<int> slot;  // position of h in its owner's rotation (or in boundary)
  std::vector<EdgeType> type;
  std::vector<int> boundary;
  int source = 0;
  int loops_single = 0;
  int loops_double = 0;

  int half_edge_count() const { return static_cast<int>(mate.size()); }
  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int boundary_size() const { return static_cast<int>(boundary.size()); }
  int target() const { return boundary_size() - source; }
  bool closed() const { return boundary.empty(); }
  bool empty() const { return vertices.empty() && boundary.empty() && loops_single == 0 && loops_double == 0; }

  /// Next half-edge counterclockwise around the owner of h. At the boundary
  /// pseudo-vertex (the point at infinity) the disk order is reversed.
  int succ(int h) const {
    const int v = owner[h];
    if (v == kBoundary) {
      const int n = boundary_size();
      return boundary[(slot[h] + n - 1) % n];
    }
    const auto& r = vertices[v].rot;
    return r[(slot[h] + 1) % r.size()];
  }

  EdgeType boundary_type(int i) const { return type[boundary[i]]; }

  std::vector<EdgeType> boundary_word() const {
    std::vector<EdgeType> w;
    for (int h : boundary) w.push_back(type[h]);
    return w;
  }

  bool has_kind(VertexKind k) const {
    return std::any_of(vertices.begin(), vertices.end(), [k](const Vertex& v) { return v.kind == k; });
  }

  friend bool operator==(const Web&, const Web&) = default;
};

/// Builds webs from "ports". A port is either attached to a vertex, placed on
/// the boundary, or is a relay: a pass-through point joined to exactly one
/// other relay. Every port is linked to exactly one other port (its edge
/// partner). `build` contracts relay chains into edges and turns relay cycles
/// into loop counters. All gluing operations are expressed through this.
class Assembler {
 public:
  int add_port(EdgeType t) {
    types_.push_back(t);
    link_.push_back(-1);
    relay_.push_back(-1);
    role_.push_back(Role::relay);
    return static_cast<int>(types_.size()) - 1;
  }

  void link(int a, int b) {
    link_[a] = b;
    link_[b] = a;
  }

  void relay(int a, int b) {
    relay_[a] = b;
    relay_[b] = a;
  }

  int add_vertex(Vertex v, const std::vector<int>& ports) {
    for (int p : ports) role_[p] = Role::attached;
    v.rot = ports;
    vertices_.push_back(std::move(v));
    return static_cast<int>(vertices_.size()) - 1;
  }

  void set_boundary(const std::vector<int>& ports, int source) {
    for (int p : ports) role_[p] = Role::boundary;
    boundary_ = ports;
    source_ = source;
  }

  void add_loops(int single, int twin) {
    loops_single_ += single;
    loops_double_ += twin;
  }

  Web build() const {
    const int n = static_cast<int>(types_.size());
    std::vector<int> id(n, -1);
    int next = 0;
    for (const auto& v : vertices_)
      for (int p : v.rot) id[p] = next++;
    for (int p : boundary_) id[p] = next++;

    Web w;
    w.mate.assign(next, -1);
    w.owner.assign(next, kBoundary);
    w.slot.assign(next, 0);
    w.type.assign(next, EdgeType::single);
    w.source = source_;
    w.loops_single = loops_single_;
    w.loops_double = loops_double_;
    for (std::size_t vi = 0; vi < vertices_.size(); ++vi) {
      Vertex v = vertices_[vi];
      for (std::size_t k = 0; k < v.rot.size(); ++k) {
        const int p = v.rot[k];
        v.rot[k] = id[p];
        w.owner[id[p]] = static_cast<int>(vi);
        w.slot[id[p]] = static_cast<int>(k);
        w.type[id[p]] = types_[p];
      }
      w.vertices.push_back(std::move(v));
    }
    for (std::size_t k = 0; k < boundary_.size(); ++k) {
      const int p = boundary_[k];
      w.boundary.push_back(id[p]);
      w.slot[id[p]] = static_cast<int>(k);
      w.type[id[p]] = types_[p];
    }

    std::vector<char> seen(n, 0);
    for (int p = 0; p < n; ++p) {
      if (role_[p] == Role::relay || seen[p]) continue;
      // follow the edge out of p through any relays
      int cur = link_[p];
      if (cur < 0) throw InvalidWeb("unlinked port");
      while (role_[cur] == Role::relay) {
        seen[cur] = 1;
        if (types_[cur] != types_[p]) throw BoundaryMismatch("strand types disagree across a gluing");
        const int r = relay_[cur];
        if (r < 0) throw InvalidWeb("relay port without partner");
        seen[r] = 1;
        cur = link_[r];
        if (cur < 0) throw InvalidWeb("unlinked port");
      }
      if (types_[cur] != types_[p]) throw BoundaryMismatch("strand types disagree across a gluing");
      seen[p] = seen[cur] = 1;
      w.mate[id[p]] = id[cur];
      w.mate[id[cur]] = id[p];
    }
    // remaining relays form closed cycles
    for (int p = 0; p < n; ++p) {
      if (role_[p] != Role::relay || seen[p]) continue;
      int cur = p;
      do {
        seen[cur] = 1;
        const int r = relay_[cur];
        seen[r] = 1;
        cur = link_[r];
      } while (cur != p && !seen[cur]);
      if (types_[p] == EdgeType::single)
        ++w.loops_single;
      else
        ++w.loops_double;
    }
    return w;
  }

 private:
  enum class Role : std::uint8_t { relay, attached, boundary };
  std::vector<EdgeType> types_;
  std::vector<int> link_;
  std::vector<int> relay_;
  std::vector<Role> role_;
  std::vector<Vertex> vertices_;
  std::vector<int> boundary_;
  int source_ = 0;
  int loops_single_ = 0;
  int loops_double_ = 0;
};

/// Copies a whole web into an assembler; returns the port of every half-edge.
inline std::vector<int> import_web(Assembler& a, const Web& w) {
  std::vector<int> port(w.half_edge_count());
  for (int h = 0; h < w.half_edge_count(); ++h) port[h] = a.add_port(w.type[h]);
  for (int h = 0; h < w.half_edge_count(); ++h)
    if (h < w.mate[h]) a.link(port[h], port[w.mate[h]]);
  for (const auto& v : w.vertices) {
    std::vector<int> ports;
    for (int h : v.rot) ports.push_back(port[h]);
    a.add_vertex(v, ports);
  }
  a.add_loops(w.loops_single, w.loops_double);
  return port;
}

// ---------------------------------------------------------------------------
// Elementary webs

namespace webs {

inline Web empty() { return Web{}; }

/// n parallel strands of the given types (identity morphism).
inline Web identity(const std::vector<EdgeType>& types) {
  Assembler a;
  const int n = static_cast<int>(types.size());
  std::vector<int> bottom(n), top(n);
  for (int i = 0; i < n; ++i) {
    bottom[i] = a.add_port(types[i]);
    top[i] = a.add_port(types[i]);
    a.link(bottom[i], top[i]);
  }
  std::vector<int> b = bottom;
  for (int i = n - 1; i >= 0; --i) b.push_back(top[i]);
  a.set_boundary(b, n);
  return a.build();
}

inline Web identity(int n, EdgeType t = EdgeType::single) {
  return identity(std::vector<EdgeType>(static_cast<std::size_t>(n), t));
}

/// Closed loops.
inline Web loops(int single, int twin) {
  Web w;
  w.loops_single = single;
  w.loops_double = twin;
  return w;
}

/// Web on boundary points of the given types, joined pairwise by plain strands.
/// Pairs index the boundary (counterclockwise order).
inline Web matching(const std::vector<EdgeType>& types, const std::vector<std::pair<int, int>>& pairs, int source = 0) {
  Assembler a;
  std::vector<int> ports;
  for (auto t : types) ports.push_back(a.add_port(t));
  for (auto [i, j] : pairs) a.link(ports[i], ports[j]);
  a.set_boundary(ports, source);
  return a.build();
}

/// A single trivalent vertex whose three legs are the boundary points, in
/// the given counterclockwise order of types (two single, one double).
inline Web vertex(const std::vector<EdgeType>& types, int source = 0) {
  Assembler a;
  std::vector<int> inner, outer;
  for (auto t : types) {
    inner.push_back(a.add_port(t));
    outer.push_back(a.add_port(t));
    a.link(inner.back(), outer.back());
  }
  a.add_vertex(Vertex{VertexKind::trivalent, {}, 0, EdgeType::single}, inner);
  a.set_boundary(outer, source);
  return a.build();
}

/// Four single boundary points 0..3 (counterclockwise); trivalent vertices
/// join (i, i+1) and (i+2, i+3), with a double edge between the two vertices.
inline Web double_bridge(int first = 0, int source = 0) {
  Assembler a;
  std::vector<int> outer(4), inner(4);
  for (int i = 0; i < 4; ++i) {
    outer[i] = a.add_port(EdgeType::single);
    inner[i] = a.add_port(EdgeType::single);
    a.link(outer[i], inner[i]);
  }
  const int d1 = a.add_port(EdgeType::twin), d2 = a.add_port(EdgeType::twin);
  a.link(d1, d2);
  const int i0 = first % 4, i1 = (first + 1) % 4, i2 = (first + 2) % 4, i3 = (first + 3) % 4;
  // ccw at the first vertex: legs i0, i1 seen from inside, then the double edge
  a.add_vertex(Vertex{}, {inner[i0], inner[i1], d1});
  a.add_vertex(Vertex{}, {inner[i2], inner[i3], d2});
  a.set_boundary(outer, source);
  return a.build();
}

}  // namespace webs

// ---------------------------------------------------------------------------
// Structure queries

/// Faces as orbits of h -> succ(mate(h)). Each face lists its half-edges;
/// a half-edge h lies on the face that follows it out of its owner.
inline std::vector<std::vector<int>> faces(const Web& w) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(w.half_edge_count(), 0);
  for (int h = 0; h < w.half_edge_count(); ++h) {
    if (seen[h]) continue;
    std::vector<int> f;
    int cur = h;
    while (!seen[cur]) {
      seen[cur] = 1;
      f.push_back(cur);
      cur = w.succ(w.mate[cur]);
    }
    out.push_back(std::move(f));
  }
  return out;
}

/// Connected components as lists of vertex ids. Everything attached to the
/// boundary is one component, reported first (with kBoundary as a member).
struct Components {
  std::vector<int> of_vertex;  // component index per vertex
  int count = 0;
  bool boundary_component = false;  // component 0 contains the boundary
};

inline Components components(const Web& w) {
  Components c;
  c.of_vertex.assign(w.vertex_count(), -1);
  std::vector<int> stack;
  auto flood = [&](int comp, const std::vector<int>& seeds) {
    for (int h : seeds) stack.push_back(h);
    while (!stack.empty()) {
      const int h = stack.back();
      stack.pop_back();
      const int v = w.owner[w.mate[h]];
      if (v == kBoundary || c.of_vertex[v] >= 0) continue;
      c.of_vertex[v] = comp;
      for (int x : w.vertices[v].rot) stack.push_back(x);
    }
  };
  if (!w.boundary.empty()) {
    c.boundary_component = true;
    flood(0, w.boundary);
    c.count = 1;
  }
  for (int v = 0; v < w.vertex_count(); ++v) {
    if (c.of_vertex[v] >= 0) continue;
    c.of_vertex[v] = c.count;
    flood(c.count, w.vertices[v].rot);
    ++c.count;
  }
  return c;
}

/// Splits a web into the part attached to the boundary and the closed
/// components floating free of it (loops stay with the first part).
inline std::pair<Web, std::vector<Web>> split_components(const Web& w) {
  const Components c = components(w);
  if (c.boundary_component && c.count == 1) return {w, {}};
  std::vector<Assembler> parts(static_cast<std::size_t>(c.count + (c.boundary_component ? 0 : 1)));
  // index 0 is always the attached part (possibly empty)
  auto part_of = [&](int v) { return c.boundary_component ? c.of_vertex[v] : c.of_vertex[v] + 1; };
  std::vector<int> port(w.half_edge_count(), -1);
  for (int h = 0; h < w.half_edge_count(); ++h) {
    const int v = w.owner[h];
    const int p = v == kBoundary ? 0 : part_of(v);
    port[h] = parts[p].add_port(w.type[h]);
  }
  for (int h = 0; h < w.half_edge_count(); ++h) {
    if (h > w.mate[h]) continue;
    const int v = w.owner[h];
    const int p = v == kBoundary ? 0 : part_of(v);
    parts[p].link(port[h], port[w.mate[h]]);
  }
  for (int v = 0; v < w.vertex_count(); ++v) {
    std::vector<int> ports;
    for (int h : w.vertices[v].rot) ports.push_back(port[h]);
    parts[part_of(v)].add_vertex(w.vertices[v], ports);
  }
  std::vector<int> b;
  for (int h : w.boundary) b.push_back(port[h]);
  parts[0].set_boundary(b, w.source);
  parts[0].add_loops(w.loops_single, w.loops_double);
  std::vector<Web> closed;
  for (std::size_t i = 1; i < parts.size(); ++i) closed.push_back(parts[i].build());
  return {parts[0].build(), closed};
}

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string rule;
  std::string detail;
  int vertex = -1;
  int half_edge = -1;
};

/// Checks every structural invariant; returns the first violation found.
inline std::optional<Violation> validate(const Web& w) {
  const int n = w.half_edge_count();
  if (static_cast<int>(w.owner.size()) != n || static_cast<int>(w.type.size()) != n ||
      static_cast<int>(w.slot.size()) != n)
    return Violation{"shape", "per-half-edge arrays have different lengths"};
  if (w.source < 0 || w.source > w.boundary_size()) return Violation{"shape", "source count out of range"};
  if (w.loops_single < 0 || w.loops_double < 0) return Violation{"shape", "negative loop count"};
  for (int h = 0; h < n; ++h) {
    const int m = w.mate[h];
    if (m < 0 || m >= n) return Violation{"involution", "mate out of range", -1, h};
    if (m == h) return Violation{"involution", "half-edge paired with itself", -1, h};
    if (w.mate[m] != h) return Violation{"involution", "pairing is not an involution", -1, h};
    if (w.type[m] != w.type[h]) return Violation{"edge-type", "edge joins different strand types", -1, h};
  }
  std::vector<int> uses(n, 0);
  for (int v = 0; v < w.vertex_count(); ++v) {
    const auto& vx = w.vertices[v];
    for (int k = 0; k < vx.degree(); ++k) {
      const int h = vx.rot[k];
      if (h < 0 || h >= n) return Violation{"rotation", "half-edge out of range", v, h};
      if (w.owner[h] != v || w.slot[h] != k) return Violation{"rotation", "owner/slot mismatch", v, h};
      ++uses[h];
    }
    int singles = 0, doubles = 0;
    for (int h : vx.rot) (w.type[h] == EdgeType::single ? singles : doubles)++;
    switch (vx.kind) {
      case VertexKind::trivalent:
        if (vx.degree() != 3 || singles != 2 || doubles != 1)
          return Violation{"trivalent-pattern", "trivalent vertex needs two single and one double half-edge", v};
        break;
      case VertexKind::tetravalent:
        if (vx.degree() != 4 || singles != 4)
          return Violation{"tetravalent-pattern", "tetravalent vertex needs four single half-edges", v};
        break;
      case VertexKind::crossing:
        if (vx.degree() != 4) return Violation{"crossing-pattern", "crossing needs four half-edges", v};
        if (w.type[vx.rot[0]] != w.type[vx.rot[2]] || w.type[vx.rot[1]] != w.type[vx.rot[3]])
          return Violation{"crossing-pattern", "crossing strands change type", v};
        break;
      case VertexKind::clasp:
        if (vx.clasp_size < 1 || vx.degree() != 2 * vx.clasp_size)
          return Violation{"clasp-pattern", "clasp needs 2n half-edges", v};
        for (int h : vx.rot)
          if (w.type[h] != vx.clasp_type) return Violation{"clasp-pattern", "clasp leg of wrong type", v, h};
        break;
    }
  }
  for (int k = 0; k < w.boundary_size(); ++k) {
    const int h = w.boundary[k];
    if (h < 0 || h >= n) return Violation{"boundary", "boundary half-edge out of range", -1, h};
    if (w.owner[h] != kBoundary || w.slot[h] != k) return Violation{"boundary", "boundary owner/slot mismatch", -1, h};
    ++uses[h];
  }
  for (int h = 0; h < n; ++h)
    if (uses[h] != 1) return Violation{"rotation", "half-edge not used exactly once", -1, h};

  // Euler characteristic: every component must be a sphere (the boundary
  // circle counts as one vertex of its component).
  const Components c = components(w);
  std::vector<long> verts(c.count, 0), edges(c.count, 0), fcount(c.count, 0);
  auto comp_of_half = [&](int h) {
    const int v = w.owner[h];
    return v == kBoundary ? 0 : c.of_vertex[v];
  };
  for (int v = 0; v < w.vertex_count(); ++v) ++verts[c.of_vertex[v]];
  if (c.boundary_component) ++verts[0];
  for (int h = 0; h < n; ++h)
    if (h < w.mate[h]) ++edges[comp_of_half(h)];
  for (const auto& f : faces(w)) ++fcount[comp_of_half(f.front())];
  for (int i = 0; i < c.count; ++i)
    if (verts[i] - edges[i] + fcount[i] != 2)
      return Violation{"planarity", "Euler characteristic " + std::to_string(verts[i] - edges[i] + fcount[i]) +
                                        " in component " + std::to_string(i)};
  return std::nullopt;
}

inline void require_valid(const Web& w, const char* where) {
  if (auto v = validate(w)) throw InvalidWeb(std::string(where) + ": " + v->rule + ": " + v->detail);
}

// ---------------------------------------------------------------------------
// Canonical form

namespace detail {

/// Relabels the component reachable from the start half-edge by a
/// breadth-first traversal. When `boundary_start` is true the traversal is
/// rooted at the boundary pseudo-vertex and `start` is ignored.
inline void canonical_traversal(const Web& w, int start, bool boundary_start, std::vector<int>& code,
                                std::vector<int>* order_out, std::vector<int>* entry_out) {
  code.clear();
  std::vector<int> label(w.half_edge_count(), -1);
  std::vector<int> by_label;
  std::vector<int> vert_entry(w.vertex_count(), -1);
  std::vector<int> order;
  auto discover = [&](int v, int entry) {
    order.push_back(v);
    vert_entry[v] = entry;
    const auto& vx = w.vertices[v];
    const int d = vx.degree();
    const int p = w.slot[entry];
    code.push_back(static_cast<int>(vx.kind));
    code.push_back(d);
    int start_slot = p;
    if (vx.kind == VertexKind::clasp) {
      code.push_back(vx.clasp_size);
      code.push_back(static_cast<int>(vx.clasp_type));
      code.push_back(p);
      start_slot = 0;
    } else if (vx.kind == VertexKind::crossing) {
      code.push_back(p % 2);
      start_slot = p - p % 2;  // rotation by two is the same crossing
    }
    for (int k = 0; k < d; ++k) {
      const int h = vx.rot[(start_slot + k) % d];
      label[h] = static_cast<int>(by_label.size());
      by_label.push_back(h);
    }
  };
  if (boundary_start) {
    code.push_back(-1);
    code.push_back(w.boundary_size());
    code.push_back(w.source);
    for (int h : w.boundary) {
      label[h] = static_cast<int>(by_label.size());
      by_label.push_back(h);
    }
  } else {
    discover(w.owner[start], start);
  }
  for (std::size_t i = 0; i < by_label.size(); ++i) {
    const int m = w.mate[by_label[i]];
    const int v = w.owner[m];
    if (v != kBoundary && vert_entry[v] < 0) discover(v, m);
  }
  code.push_back(-2);
  for (int h : by_label) {
    code.push_back(label[w.mate[h]]);
    code.push_back(static_cast<int>(w.type[h]));
  }
  if (order_out) *order_out = std::move(order);
  if (entry_out) *entry_out = std::move(vert_entry);
}

}  // namespace detail

/// Canonical code of a web. Two webs have equal codes iff they are the same
/// planar diagram with the same boundary (up to relabelling). Floating
/// closed components are coded up to rotation and sorted.
inline std::vector<int> canonical_code(const Web& w) {
  std::vector<int> code;
  auto [attached, closed] = split_components(w);
  std::vector<int> c;
  detail::canonical_traversal(attached, 0, true, c, nullptr, nullptr);
  // vertices not reached from the boundary cannot exist in `attached` except
  // for a vertex-only closed web, which split_components moved out
  code = c;
  std::vector<std::vector<int>> closed_codes;
  for (const auto& comp : closed) {
    std::vector<int> best, cur;
    for (int h = 0; h < comp.half_edge_count(); ++h) {
      detail::canonical_traversal(comp, h, false, cur, nullptr, nullptr);
      if (best.empty() || cur < best) best = cur;
    }
    closed_codes.push_back(std::move(best));
  }
  std::sort(closed_codes.begin(), closed_codes.end());
  for (const auto& cc : closed_codes) {
    code.push_back(-3);
    code.insert(code.end(), cc.begin(), cc.end());
  }
  code.push_back(-4);
  code.push_back(w.loops_single);
  code.push_back(w.loops_double);
  return code;
}

/// Canonical code of a connected closed web (minimum over all roots).
inline std::vector<int> closed_component_code(const Web& comp) {
  std::vector<int> best, cur;
  for (int h = 0; h < comp.half_edge_count(); ++h) {
    detail::canonical_traversal(comp, h, false, cur, nullptr, nullptr);
    if (best.empty() || cur < best) best = cur;
  }
  best.push_back(-4);
  best.push_back(comp.loops_single);
  best.push_back(comp.loops_double);
  return best;
}

/// Rebuilds a web whose component attached to the boundary is relabelled in
/// canonical traversal order; the result compares equal (operator==) to the
/// canonical form of any isomorphic web with the same boundary.
inline Web canonical_form(const Web& w) {
  auto [attached, closed] = split_components(w);
  if (!closed.empty()) return w;  // canonical_code still identifies it
  std::vector<int> code, order, entry;
  detail::canonical_traversal(attached, 0, true, code, &order, &entry);
  Assembler a;
  std::vector<int> port(attached.half_edge_count(), -1);
  for (int h : attached.boundary) port[h] = a.add_port(attached.type[h]);
  for (int v : order) {
    const auto& vx = attached.vertices[v];
    const int d = vx.degree();
    int start_slot = attached.slot[entry[v]];
    if (vx.kind == VertexKind::clasp) start_slot = 0;
    if (vx.kind == VertexKind::crossing) start_slot -= start_slot % 2;
    for (int k = 0; k < d; ++k) {
      const int h = vx.rot[(start_slot + k) % d];
      port[h] = a.add_port(attached.type[h]);
    }
  }
  for (int h = 0; h < attached.half_edge_count(); ++h)
    if (h < attached.mate[h]) a.link(port[h], port[attached.mate[h]]);
  for (int v : order) {
    Vertex vx = attached.vertices[v];
    const int d = vx.degree();
    int start_slot = attached.slot[entry[v]];
    if (vx.kind == VertexKind::clasp) start_slot = 0;
    if (vx.kind == VertexKind::crossing) start_slot -= start_slot % 2;
    std::vector<int> ports;
    for (int k = 0; k < d; ++k) ports.push_back(port[vx.rot[(start_slot + k) % d]]);
    a.add_vertex(vx, ports);
  }
  std::vector<int> b;
  for (int h : attached.boundary) b.push_back(port[h]);
  a.set_boundary(b, attached.source);
  a.add_loops(attached.loops_single, attached.loops_double);
  return a.build();
}

}  // namespace sp4
