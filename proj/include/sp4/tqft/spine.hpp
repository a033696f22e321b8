#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <string>
#include <vector>

#include "sp4/cat/modular.hpp"
#include "sp4/io/json.hpp"

namespace sp4::tqft {

using cat::Weight;

inline constexpr const char* kSpineSchema = "sp4.spine/1";

/// Trivalent multigraph whose regular neighborhood is a handlebody. Loops and
/// parallel edges are allowed. The spine with no vertices and one edge is the
/// circle (genus 1); its edge endpoints are ignored.
struct Spine {
  int vertices = 0;
  std::vector<std::array<int, 2>> edges;

  bool is_circle() const { return vertices == 0 && edges.size() == 1; }
  int edge_count() const { return static_cast<int>(edges.size()); }

  /// First Betti number.
  int genus() const { return is_circle() ? 1 : edge_count() - vertices + 1; }

  /// Edge ends at vertex v, in edge order; a loop appears twice.
  std::vector<int> incident(int v) const {
    std::vector<int> out;
    for (int e = 0; e < edge_count(); ++e)
      for (int end : edges[e])
        if (end == v) out.push_back(e);
    return out;
  }

  /// The other endpoint of e seen from v.
  int across(int e, int v) const { return edges[e][0] == v ? edges[e][1] : edges[e][0]; }

  bool is_loop(int e) const { return edges[e][0] == edges[e][1]; }

  /// Throws InvalidInput unless the graph is a connected trivalent spine.
  void validate() const {
    if (is_circle()) return;
    if (vertices <= 0) throw InvalidInput("a spine needs vertices (or is the one-edge circle)");
    for (const auto& e : edges)
      for (int end : e)
        if (end < 0 || end >= vertices) throw InvalidInput("edge endpoint out of range");
    std::vector<int> parent(vertices);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& e : edges) parent[find(e[0])] = find(e[1]);
    for (int v = 0; v < vertices; ++v) {
      if (incident(v).size() != 3)
        throw InvalidInput("vertex " + std::to_string(v) + " has degree " + std::to_string(incident(v).size()));
      if (find(v) != find(0)) throw InvalidInput("spine is not connected");
    }
  }

  static Spine circle() { return {0, {{0, 0}}}; }
  static Spine theta() { return {2, {{0, 1}, {0, 1}, {0, 1}}}; }
  static Spine dumbbell() { return {2, {{0, 0}, {0, 1}, {1, 1}}}; }
  static Spine tetrahedron() { return {4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}}; }
  /// Genus 3: two loops joined through a theta-like middle.
  static Spine chain3() { return {4, {{0, 0}, {0, 1}, {1, 2}, {1, 2}, {2, 3}, {3, 3}}}; }
};

inline io::Json to_json(const Spine& s) {
  io::Json edges = io::Json::array();
  for (const auto& e : s.edges) edges.push_back({e[0], e[1]});
  return io::Json{{"schema", kSpineSchema}, {"vertices", s.vertices}, {"edges", edges}};
}

inline Spine spine_from_json(const io::Json& j) {
  try {
    if (j.contains("schema") && j["schema"] != kSpineSchema)
      throw InvalidInput(std::string("spine JSON must carry \"schema\": \"") + kSpineSchema + "\"");
    Spine s;
    s.vertices = j.at("vertices").get<int>();
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InvalidInput("each edge must be [v, w]");
      s.edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    s.validate();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed spine JSON: ") + e.what());
  }
}

/// Fusion multiplicities N_{ij}^l among the simples of level k, by index.
class FusionTable {
 public:
  explicit FusionTable(int k) : simples_(cat::simples(k)) {
    const int n = size();
    n_.assign(n, std::vector<std::vector<int>>(n, std::vector<int>(n, 0)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (const auto& [w, c] : cat::fusion(simples_[i], simples_[j], k)) n_[i][j][index(w)] = c;
  }
  int size() const { return static_cast<int>(simples_.size()); }
  const std::vector<Weight>& simples() const { return simples_; }
  int operator()(int i, int j, int l) const { return n_[i][j][l]; }
  int index(const Weight& w) const {
    for (int i = 0; i < size(); ++i)
      if (simples_[i] == w) return i;
    throw NotSimpleAtLevel(w.str());
  }

 private:
  std::vector<Weight> simples_;
  std::vector<std::vector<std::vector<int>>> n_;
};

/// Edge weights, indexed like Spine::edges.
using Labeling = std::vector<Weight>;

/// Every edge weight is simple at level k and every vertex has nonzero
/// fusion multiplicity for its three incident weights.
inline bool is_admissible(const Spine& s, const Labeling& l, int k) {
  s.validate();
  if (static_cast<int>(l.size()) != s.edge_count()) throw InvalidInput("labeling needs one weight per edge");
  for (const Weight& w : l)
    if (!cat::is_simple_at(w, k)) return false;
  for (int v = 0; v < s.vertices; ++v) {
    const auto inc = s.incident(v);
    const auto f = cat::fusion(l[inc[0]], l[inc[1]], k);
    if (!f.contains(l[inc[2]])) return false;
  }
  return true;
}

/// Dimension of V_k of the boundary surface: the sum over edge labelings by
/// level-k simples of the product of vertex fusion multiplicities (all
/// simples are self-dual, so edge orientations do not matter).
inline long statespace_dim(const Spine& s, int k) {
  s.validate();
  if (k < 0) throw InvalidInput("level must be nonnegative");
  const FusionTable table(k);
  if (s.is_circle()) return table.size();
  const int ne = s.edge_count();
  // a vertex is checked once its last incident edge gets a label
  std::vector<std::vector<int>> ready(ne);
  std::vector<std::vector<int>> inc(s.vertices);
  for (int v = 0; v < s.vertices; ++v) {
    inc[v] = s.incident(v);
    ready[*std::max_element(inc[v].begin(), inc[v].end())].push_back(v);
  }
  std::vector<int> label(ne, 0);
  long total = 0;
  auto rec = [&](auto&& self, int e, long weight) -> void {
    if (e == ne) {
      total += weight;
      return;
    }
    for (int l = 0; l < table.size(); ++l) {
      label[e] = l;
      long w = weight;
      for (int v : ready[e]) {
        w *= table(label[inc[v][0]], label[inc[v][1]], label[inc[v][2]]);
        if (w == 0) break;
      }
      if (w != 0) self(self, e + 1, w);
    }
  };
  rec(rec, 0, 1);
  return total;
}

/// Verlinde formula: sum over simples of S_{0l}^{2-2g}, exact in the
/// cyclotomic field; must be an integer.
inline long verlinde_dim(int genus, int k) {
  if (genus < 1) throw InvalidInput("genus must be at least 1");
  const auto& md = cat::modular_data(k);
  CycNumber sum(md.order());
  for (int l = 0; l < md.size(); ++l) {
    const CycNumber s0 = md.s_tilde[0][l];
    sum += (md.d_squared / (s0 * s0.conj())).pow(genus - 1);
  }
  if (!sum.is_rational() || sum.rational_value().get_den() != 1)
    throw NonIntegerResult("Verlinde sum " + sum.str() + " is not an integer");
  return sum.rational_value().get_num().get_si();
}

}  // namespace sp4::tqft
