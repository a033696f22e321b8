#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sp4/tqft/spine.hpp"

namespace sp4::faithful {

using tqft::Labeling;
using tqft::Spine;

inline constexpr const char* kWalkSchema = "sp4.walk/1";

/// Leave `vertex` along `edge`; the walk arrives at the other endpoint.
struct Step {
  int vertex = 0;
  int edge = 0;
  bool operator==(const Step&) const = default;
};

/// Closed walk on a spine. A step along a loop always runs the loop in the
/// same direction, so repeating a loop is never a backtrack.
struct CurveWalk {
  std::vector<Step> steps;

  int length() const { return static_cast<int>(steps.size()); }

  /// Throws InvalidInput unless every step leaves its vertex along an
  /// incident edge and arrives where the next step (cyclically) starts.
  void validate(const Spine& s) const {
    s.validate();
    if (s.is_circle()) throw InvalidInput("walks need a spine with vertices");
    for (int i = 0; i < length(); ++i) {
      const Step& x = steps[i];
      if (x.vertex < 0 || x.vertex >= s.vertices || x.edge < 0 || x.edge >= s.edge_count())
        throw InvalidInput("step " + std::to_string(i) + " is out of range");
      if (s.edges[x.edge][0] != x.vertex && s.edges[x.edge][1] != x.vertex)
        throw InvalidInput("step " + std::to_string(i) + ": edge " + std::to_string(x.edge) + " does not meet vertex " +
                           std::to_string(x.vertex));
      const Step& y = steps[(i + 1) % length()];
      if (s.across(x.edge, x.vertex) != y.vertex)
        throw InvalidInput("step " + std::to_string(i) + " does not arrive at the next step's vertex");
    }
  }
};

/// A failed graph-geodesic check: the step that leaves through the edge it
/// arrived by, or step -1 for the empty walk.
struct Violation {
  int step = -1;
  int vertex = -1;
  int edge = -1;
  std::string reason;
};

/// nullopt when the walk is a nontrivial graph geodesic.
inline std::optional<Violation> check_graph_geodesic(const Spine& s, const CurveWalk& w) {
  if (w.steps.empty()) return Violation{-1, -1, -1, "empty walk is trivial"};
  w.validate(s);
  for (int i = 0; i < w.length(); ++i) {
    const Step& in = w.steps[(i + w.length() - 1) % w.length()];
    const Step& out = w.steps[i];
    if (in.edge == out.edge && !s.is_loop(out.edge))
      return Violation{i, out.vertex, out.edge,
                       "walk leaves vertex " + std::to_string(out.vertex) + " through edge " + std::to_string(out.edge) +
                           ", the edge it arrived by"};
  }
  return std::nullopt;
}

struct Complexity {
  std::vector<int> p;           // traversals per edge
  std::vector<int> vertex_sum;  // incident p, loops counted twice
  int m = 0;
  int max_p = 0;
};

inline Complexity complexity(const Spine& s, const CurveWalk& w) {
  w.validate(s);
  Complexity c;
  c.p.assign(s.edge_count(), 0);
  for (const Step& x : w.steps) ++c.p[x.edge];
  for (int v = 0; v < s.vertices; ++v) {
    int sum = 0;
    for (int e : s.incident(v)) sum += c.p[e];
    c.vertex_sum.push_back(sum);
  }
  c.m = c.vertex_sum.empty() ? 0 : *std::max_element(c.vertex_sum.begin(), c.vertex_sum.end());
  c.max_p = *std::max_element(c.p.begin(), c.p.end());
  return c;
}

/// Edge e carries (p_e, 0).
inline Labeling comparison_labeling(const Complexity& c) {
  Labeling l;
  for (int p : c.p) l.push_back({p, 0});
  return l;
}

/// Smallest k >= 0 with 4k + 12 > 2m + 4.
inline int order_level(int m) {
  int k = 0;
  while (4 * k + 12 <= 2 * m + 4) ++k;
  return k;
}

/// Smallest level at which the comparison labels are simple and every vertex
/// meets the order condition.
inline int min_level(const Complexity& c) { return std::max({1, c.max_p, order_level(c.m)}); }

inline io::Json to_json(const CurveWalk& w) {
  io::Json steps = io::Json::array();
  for (const Step& x : w.steps) steps.push_back({x.vertex, x.edge});
  return io::Json{{"schema", kWalkSchema}, {"steps", steps}};
}

inline CurveWalk walk_from_json(const io::Json& j) {
  try {
    if (j.contains("schema") && j["schema"] != kWalkSchema)
      throw InvalidInput(std::string("walk JSON must carry \"schema\": \"") + kWalkSchema + "\"");
    CurveWalk w;
    for (const auto& x : j.at("steps")) {
      if (!x.is_array() || x.size() != 2) throw InvalidInput("each step must be [vertex, edge]");
      w.steps.push_back({x[0].get<int>(), x[1].get<int>()});
    }
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed walk JSON: ") + e.what());
  }
}

/// Connected trivalent spine of the given genus (2g - 2 vertices) from a
/// uniformly random pairing of half-edges, resampled until connected.
inline Spine random_spine(int genus, std::mt19937_64& rng) {
  if (genus < 2) throw InvalidInput("random spines need genus >= 2");
  const int n = 2 * genus - 2;
  while (true) {
    std::vector<int> ends;
    for (int v = 0; v < n; ++v) ends.insert(ends.end(), {v, v, v});
    std::shuffle(ends.begin(), ends.end(), rng);
    Spine s{n, {}};
    for (std::size_t i = 0; i < ends.size(); i += 2) s.edges.push_back({ends[i], ends[i + 1]});
    try {
      s.validate();
      return s;
    } catch (const InvalidInput&) {
    }
  }
}

/// Random closed graph geodesic: a non-backtracking walk from a random step,
/// stopped at the first return that closes up without backtracking once
/// at least `min_length` steps are taken. nullopt if no such return happens
/// within `max_length` steps.
inline std::optional<CurveWalk> random_walk(const Spine& s, std::mt19937_64& rng, int min_length, int max_length) {
  std::uniform_int_distribution<int> pick_v(0, s.vertices - 1);
  const int v0 = pick_v(rng);
  const auto inc0 = s.incident(v0);
  CurveWalk w;
  w.steps.push_back({v0, inc0[std::uniform_int_distribution<std::size_t>(0, inc0.size() - 1)(rng)]});
  while (w.length() < max_length) {
    const Step last = w.steps.back();
    const int v = s.across(last.edge, last.vertex);
    const auto allowed = [&](int e) { return e != last.edge || s.is_loop(e); };
    if (w.length() >= min_length && v == v0 && allowed(w.steps.front().edge)) return w;
    std::vector<int> exits;
    for (int e : s.incident(v))
      if (allowed(e) && std::find(exits.begin(), exits.end(), e) == exits.end()) exits.push_back(e);
    w.steps.push_back({v, exits[std::uniform_int_distribution<std::size_t>(0, exits.size() - 1)(rng)]});
  }
  return std::nullopt;
}

}  // namespace sp4::faithful
