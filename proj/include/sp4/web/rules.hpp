#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sp4/ring/laurent.hpp"
#include "sp4/ring/ratfunc.hpp"
#include "sp4/web/web.hpp"

namespace sp4 {

/// The scalar by which a crossing acts on clasped strands, as a power of q. This is
/// the only place the conversion lives.
inline constexpr int kCrossingScalarExponent = 1;

inline LaurentPoly crossing_scalar() { return LaurentPoly::monomial(kCrossingScalarExponent); }

namespace constants {

/// Closed single loop (negative under the symplectic sign convention).
inline LaurentPoly delta_single() { return -LaurentPoly::from_terms({{4, 1}, {2, 1}, {-2, 1}, {-4, 1}}); }

/// Closed double loop, [5][6]/([2][3]).
inline LaurentPoly delta_double() { return qint(5) * LaurentPoly::from_terms({{2, 1}, {0, -1}, {-2, 1}}); }

/// Bigon bounded by two single edges.
inline LaurentPoly bigon_single() { return -(qint(2) * qint(2)); }

/// Bigon bounded by a single and a double edge.
inline LaurentPoly bigon_mixed() { return qint(5); }

/// Triangle with one double edge.
inline LaurentPoly triangle() { return -qint(3); }

}  // namespace constants

/// One local relation: a pattern web whose boundary points are the stubs of
/// the matched region (counterclockwise), and the replacement sum on the same
/// boundary.
struct Rule {
  std::string name;
  std::string pattern;
  Web lhs;
  std::vector<std::pair<RationalFunction, Web>> rhs;
};

namespace detail {

inline Web make_monogon() {
  Assembler a;
  const int s1 = a.add_port(EdgeType::single), s2 = a.add_port(EdgeType::single);
  const int d = a.add_port(EdgeType::twin), out = a.add_port(EdgeType::twin);
  a.link(s1, s2);
  a.link(d, out);
  a.add_vertex(Vertex{}, {s1, s2, d});
  a.set_boundary({out}, 0);
  return a.build();
}

/// Two vertices u (bottom) and v (top) joined by a right and a left edge.
inline Web make_bigon(EdgeType right, EdgeType left) {
  const EdgeType stub = (right == EdgeType::single && left == EdgeType::single) ? EdgeType::twin : EdgeType::single;
  Assembler a;
  const int ur = a.add_port(right), ul = a.add_port(left), ud = a.add_port(stub);
  const int vu = a.add_port(stub), vl = a.add_port(left), vr = a.add_port(right);
  const int b0 = a.add_port(stub), b1 = a.add_port(stub);
  a.link(ur, vr);
  a.link(ul, vl);
  a.link(ud, b0);
  a.link(vu, b1);
  a.add_vertex(Vertex{}, {ur, ul, ud});
  a.add_vertex(Vertex{}, {vu, vl, vr});
  a.set_boundary({b0, b1}, 1);
  return a.build();
}

/// Triangle with vertices A (bottom left), B (bottom right), C (top).
inline Web make_triangle(EdgeType ab, EdgeType bc, EdgeType ca) {
  auto other = [](EdgeType x, EdgeType y) {
    return (x == EdgeType::single && y == EdgeType::single) ? EdgeType::twin : EdgeType::single;
  };
  Assembler a;
  const int a_b = a.add_port(ab), a_c = a.add_port(ca), a_s = a.add_port(other(ab, ca));
  const int b_c = a.add_port(bc), b_a = a.add_port(ab), b_s = a.add_port(other(ab, bc));
  const int c_s = a.add_port(other(bc, ca)), c_a = a.add_port(ca), c_b = a.add_port(bc);
  const int pa = a.add_port(other(ab, ca)), pb = a.add_port(other(ab, bc)), pc = a.add_port(other(bc, ca));
  a.link(a_b, b_a);
  a.link(b_c, c_b);
  a.link(c_a, a_c);
  a.link(a_s, pa);
  a.link(b_s, pb);
  a.link(c_s, pc);
  a.add_vertex(Vertex{}, {a_b, a_c, a_s});
  a.add_vertex(Vertex{}, {b_c, b_a, b_s});
  a.add_vertex(Vertex{}, {c_s, c_a, c_b});
  a.set_boundary({pa, pb, pc}, 0);
  return a.build();
}

inline Web make_four_valent(VertexKind kind) {
  Assembler a;
  std::vector<int> inner, outer;
  for (int i = 0; i < 4; ++i) {
    inner.push_back(a.add_port(EdgeType::single));
    outer.push_back(a.add_port(EdgeType::single));
    a.link(inner.back(), outer.back());
  }
  a.add_vertex(Vertex{kind, {}, 0, EdgeType::single}, inner);
  a.set_boundary(outer, 2);
  return a.build();
}

inline Web four_point_matching(int i, int j, int k, int l) {
  return webs::matching(std::vector<EdgeType>(4, EdgeType::single), {{i, j}, {k, l}}, 2);
}

}  // namespace detail

/// The relations of the C2 spider used by the rewriting engine, stored as
/// data. Boundary point i of every right-hand side is glued to stub i of the
/// matched region.
class RuleTable {
 public:
  static const RuleTable& standard() {
    static const RuleTable t = build();
    return t;
  }

  LaurentPoly loop_single;
  LaurentPoly loop_double;
  std::vector<Rule> rules;

  const Rule& get(const std::string& name) const {
    for (const auto& r : rules)
      if (r.name == name) return r;
    throw std::out_of_range("no rule named " + name);
  }

  /// Deterministic text form, the input of the rule-table hash.
  std::string serialize() const {
    std::ostringstream os;
    os << "A=q^" << kCrossingScalarExponent << "\n";
    os << "loop-single=" << loop_single.str() << "\n";
    os << "loop-double=" << loop_double.str() << "\n";
    for (const auto& r : rules) {
      os << r.name << ":";
      for (int c : canonical_code(r.lhs)) os << ' ' << c;
      os << "\n";
      for (const auto& [coef, w] : r.rhs) {
        os << "  " << coef.str() << " *";
        for (int c : canonical_code(w)) os << ' ' << c;
        os << "\n";
      }
    }
    return os.str();
  }

 private:
  static RuleTable build() {
    using E = EdgeType;
    RuleTable t;
    t.loop_single = constants::delta_single();
    t.loop_double = constants::delta_double();
    auto R = [](const LaurentPoly& p) { return RationalFunction(p); };

    t.rules.push_back({"monogon", "single loop at a vertex", detail::make_monogon(), {}});
    t.rules.push_back({"bigon-single", "face bounded by two single edges", detail::make_bigon(E::single, E::single),
                       {{R(constants::bigon_single()), webs::identity(1, E::twin)}}});
    t.rules.push_back({"bigon-mixed", "face bounded by a single and a double edge",
                       detail::make_bigon(E::single, E::twin),
                       {{R(constants::bigon_mixed()), webs::identity(1, E::single)}}});
    t.rules.push_back({"triangle-single", "triangle of single edges",
                       detail::make_triangle(E::single, E::single, E::single), {}});
    t.rules.push_back({"triangle-mixed", "triangle with one double edge",
                       detail::make_triangle(E::twin, E::single, E::single),
                       {{R(constants::triangle()), webs::vertex({E::single, E::single, E::twin})}}});
    // I = H + A - B on a double edge; stubs 0,1 at one end, 2,3 at the other
    t.rules.push_back({"double-edge", "double edge between two vertices (I to H exchange)", webs::double_bridge(0, 2),
                       {{R(1), webs::double_bridge(1, 2)},
                        {R(1), detail::four_point_matching(0, 1, 2, 3)},
                        {R(-1), detail::four_point_matching(1, 2, 3, 0)}}});
    // over strand joins stubs 0 and 2
    const LaurentPoly q = LaurentPoly::q();
    t.rules.push_back({"crossing", "crossing of two single strands", detail::make_four_valent(VertexKind::crossing),
                       {{R(crossing_scalar()), detail::four_point_matching(0, 3, 1, 2)},
                        {RationalFunction(1, q.pow(3) + q), detail::four_point_matching(0, 1, 2, 3)},
                        {RationalFunction(1, qint(2)), webs::double_bridge(0, 2)}}});
    t.rules.push_back({"tetravalent", "formal four-valent vertex", detail::make_four_valent(VertexKind::tetravalent),
                       {{R(1), webs::double_bridge(0, 2)}, {R(1), detail::four_point_matching(1, 2, 3, 0)}}});
    return t;
  }
};

}  // namespace sp4
