#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sp4/clasp/clasp.hpp"
#include "sp4/faithful/walk.hpp"

namespace sp4::faithful {

inline constexpr const char* kCertificateSchema = "sp4.certificate/1";

struct VertexCheck {
  int vertex = 0;
  std::array<int, 3> edges{};
  std::array<int, 3> labels{};  // first coordinates of the (p, 0) labels
  bool admissible = false;      // parity and triangle inequalities
  bool order_ok = false;        // 4k + 12 > 2 (sum) + 4
  int triple_dim = 0;
  // numeric spot check: theta network of the three clasps
  std::optional<RationalFunction> theta;
  std::optional<CycNumber> theta_at_root;
};

struct Certificate {
  Spine spine;
  CurveWalk walk;
  int level = 0;
  int order = 0;
  Complexity complexity;
  Labeling labels;
  std::vector<VertexCheck> vertices;
  bool order_condition = false;
  LaurentPoly d;  // closed (1,0) loop, the scalar of C(alpha) on Z(H)
  std::vector<std::string> steps;
  std::string conclusion;
};

namespace detail {

inline std::string list(const std::vector<int>& xs) {
  std::string s = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + ")";
}

}  // namespace detail

/// Replays the detection argument for h(alpha) given as a walk, where alpha
/// is a curve of the decomposition dual to the spine. Throws
/// NotGraphGeodesic or LevelTooSmall naming the failed check. With
/// `numeric`, vertices with label sum <= 6 also get their theta network
/// evaluated by the web engine.
inline Certificate certify_detection(const Spine& spine, const CurveWalk& walk, int k, bool numeric = false) {
  if (k < 1) throw InvalidInput("level must be at least 1");
  Certificate c;
  c.spine = spine;
  c.walk = walk;
  c.level = k;
  c.order = 4 * k + 12;

  if (auto v = check_graph_geodesic(spine, walk))
    throw NotGraphGeodesic(v->step < 0 ? v->reason : "step " + std::to_string(v->step) + ": " + v->reason);
  c.steps.push_back("graph geodesic: the walk never leaves a vertex through the edge it arrived by");

  c.complexity = complexity(spine, walk);
  c.labels = comparison_labeling(c.complexity);
  for (int e = 0; e < spine.edge_count(); ++e)
    if (c.complexity.p[e] > k)
      throw LevelTooSmall("edge " + std::to_string(e) + " has p = " + std::to_string(c.complexity.p[e]) +
                          " > k = " + std::to_string(k) + ", so (p,0) is not simple");
  c.steps.push_back("labels simple: every p_e <= k, so each (p_e,0) is a simple object at level k");

  for (int v = 0; v < spine.vertices; ++v) {
    VertexCheck vc;
    vc.vertex = v;
    const auto inc = spine.incident(v);
    for (int i = 0; i < 3; ++i) {
      vc.edges[i] = inc[i];
      vc.labels[i] = c.complexity.p[inc[i]];
    }
    const auto [a, b, d] = vc.labels;
    vc.admissible = clasp::admissible(a, b, d);
    vc.order_ok = c.order > 2 * (a + b + d) + 4;
    vc.triple_dim = clasp::triple_space_dim(a, b, d, c.order);
    if (numeric && a + b + d <= 6) {
      vc.theta = clasp::theta_net(a, b, d);
      try {
        vc.theta_at_root = specialize(*vc.theta, c.order);
      } catch (const DenominatorVanishes&) {
      }
    }
    c.vertices.push_back(vc);
  }
  for (const auto& vc : c.vertices) {
    const std::string where = "vertex " + std::to_string(vc.vertex) + " triple " +
                              detail::list({vc.labels[0], vc.labels[1], vc.labels[2]});
    if (!vc.admissible) throw LevelTooSmall(where + " is not admissible");
    if (!vc.order_ok)
      throw LevelTooSmall(where + " fails the order condition " + std::to_string(c.order) + " > " +
                          std::to_string(2 * (vc.labels[0] + vc.labels[1] + vc.labels[2]) + 4));
    if (vc.theta && vc.theta->is_zero()) throw LevelTooSmall(where + " has a vanishing theta network");
    if (vc.theta_at_root && vc.theta_at_root->is_zero())
      throw LevelTooSmall(where + " has a theta network vanishing at the root of unity");
  }
  c.order_condition = c.order > 2 * c.complexity.m + 4;
  c.steps.push_back("triples: every vertex triple is admissible with order " + std::to_string(c.order) + " > 2m+4 = " +
                    std::to_string(2 * c.complexity.m + 4) + ", so each triple clasped space is one-dimensional");
  c.steps.push_back("factoring: each edge bundle of p_e strands factors through clasps of weight <= (p_e,0), and the (p_e,0) "
                    "clasp appears with coefficient 1 because p_e <= k");
  c.steps.push_back("braiding: crossings inside each pair of pants act on clasped strands by a power of A, a nonzero scalar");
  c.steps.push_back("geodesic: no strand starts and ends on the same boundary circle, so the comparison vector b_w survives "
                    "with nonzero coefficient in Z(H, h(alpha))");
  c.d = constants::delta_single();
  c.steps.push_back("C(alpha) acts on Z(H) by the closed (1,0) loop value d, while C(h(alpha)) Z(H) has a nonzero b_w "
                    "component and Z(H) has none (assumes h(alpha) is not isotopic to alpha)");
  c.conclusion = "detected at level " + std::to_string(k) + ": C(alpha) != C(h(alpha)), so V_h is not a scalar";
  return c;
}

inline io::Json to_json(const Certificate& c) {
  io::Json labels = io::Json::array();
  for (const auto& w : c.labels) labels.push_back({w.a, w.b});
  io::Json vertices = io::Json::array();
  for (const auto& v : c.vertices) {
    io::Json j{{"vertex", v.vertex},
               {"edges", v.edges},
               {"labels", v.labels},
               {"admissible", v.admissible},
               {"order_ok", v.order_ok},
               {"triple_dim", v.triple_dim}};
    if (v.theta) j["theta"] = io::to_json(*v.theta);
    if (v.theta_at_root) j["theta_at_root"] = io::to_json(*v.theta_at_root);
    vertices.push_back(j);
  }
  return io::Json{{"schema", kCertificateSchema},
                  {"spine", tqft::to_json(c.spine)},
                  {"walk", to_json(c.walk)},
                  {"level", c.level},
                  {"order", c.order},
                  {"p", c.complexity.p},
                  {"m", c.complexity.m},
                  {"min_level", min_level(c.complexity)},
                  {"labels", labels},
                  {"vertices", vertices},
                  {"order_condition", c.order_condition},
                  {"d", io::to_json(c.d)},
                  {"assumption", "h(alpha) is not isotopic to alpha"},
                  {"steps", c.steps},
                  {"conclusion", c.conclusion}};
}

}  // namespace sp4::faithful
