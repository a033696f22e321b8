#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>
#include "sp4/ring/cyclotomic.hpp"
#include "sp4/ring/ratfunc.hpp"
#include "sp4/web/web.hpp"
#include "sp4/web/websum.hpp"

namespace sp4::io {

using Json = nlohmann::json;

inline constexpr const char* kWebSchema = "sp4.web/1";
inline constexpr const char* kWebSumSchema = "sp4.websum/1";

// ---------------------------------------------------------------------------
// Scalars

/// Integers that fit in 64 bits are plain JSON numbers, larger ones decimal strings.
inline Json to_json(const BigInt& n) {
  if (mpz_fits_slong_p(n.get_mpz_t())) return Json(static_cast<std::int64_t>(n.get_si()));
  return Json(n.get_str());
}

inline BigInt bigint_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  throw InvalidInput("expected an integer, got " + j.dump());
}

inline Json rational_to_json(const Rational& r) { return Json::array({to_json(r.get_num()), to_json(r.get_den())}); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer() || j.is_string()) return Rational(bigint_from_json(j));
  if (!j.is_array() || j.size() != 2) throw InvalidInput("expected [numerator, denominator], got " + j.dump());
  const BigInt d = bigint_from_json(j[1]);
  if (d == 0) throw InvalidInput("zero denominator in " + j.dump());
  return make_rational(bigint_from_json(j[0]), d);
}

/// [[exponent, numerator, denominator], ...] in increasing exponent order.
inline Json to_json(const LaurentPoly& p) {
  Json a = Json::array();
  for (const auto& [e, c] : p.terms()) a.push_back(Json::array({e, to_json(c.get_num()), to_json(c.get_den())}));
  return a;
}

inline LaurentPoly laurent_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidInput("expected a list of [exponent, numerator, denominator] triples");
  LaurentPoly p;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer())
      throw InvalidInput("malformed Laurent term " + t.dump());
    const BigInt d = bigint_from_json(t[2]);
    if (d == 0) throw InvalidInput("zero denominator in " + t.dump());
    p += LaurentPoly::monomial(t[0].get<int>(), make_rational(bigint_from_json(t[1]), d));
  }
  return p;
}

/// Integer constants as plain numbers, Laurent polynomials as triple lists,
/// genuine fractions as {"num": ..., "den": ...}.
inline Json to_json(const RationalFunction& f) {
  if (f.is_laurent()) {
    const LaurentPoly& p = f.num();
    if (p.is_constant()) {
      const Rational c = p.coeff(0);
      if (c.get_den() == 1) return to_json(c.get_num());
    }
    return to_json(p);
  }
  return Json{{"num", to_json(f.num())}, {"den", to_json(f.den())}};
}

inline RationalFunction scalar_from_json(const Json& j) {
  if (j.is_number_integer() || j.is_string()) return RationalFunction(Rational(bigint_from_json(j)));
  if (j.is_array()) return RationalFunction(laurent_from_json(j));
  if (j.is_object() && j.contains("num") && j.contains("den"))
    return RationalFunction(laurent_from_json(j["num"]), laurent_from_json(j["den"]));
  throw InvalidInput("malformed scalar " + j.dump());
}

/// {"order": N, "coefficients": [[num, den], ...]} in powers of the root.
inline Json to_json(const CycNumber& c) {
  Json a = Json::array();
  for (const auto& x : c.coefficients()) a.push_back(rational_to_json(x));
  return Json{{"order", c.order()}, {"coefficients", a}};
}

inline CycNumber cyc_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("order") || !j.contains("coefficients"))
    throw InvalidInput("malformed cyclotomic number " + j.dump());
  poly::Poly p;
  for (const auto& x : j["coefficients"]) p.push_back(rational_from_json(x));
  return CycNumber(j["order"].get<int>(), p);
}

// ---------------------------------------------------------------------------
// Webs

inline VertexKind kind_from_string(const std::string& s) {
  if (s == "trivalent") return VertexKind::trivalent;
  if (s == "tetravalent") return VertexKind::tetravalent;
  if (s == "crossing") return VertexKind::crossing;
  if (s == "clasp") return VertexKind::clasp;
  throw InvalidInput("unknown vertex kind " + s);
}

inline EdgeType edge_type_from_string(const std::string& s) {
  if (s == "single") return EdgeType::single;
  if (s == "double") return EdgeType::twin;
  throw InvalidInput("unknown edge type " + s);
}

/// Web as {schema, vertices, half_edges, pairing, edge_types, boundary,
/// source, loops}. Boundary half-edges have "vertex": null and their boundary
/// index as position. Edge types are keyed by the smaller half-edge id.
inline Json to_json(const Web& w) {
  Json vs = Json::array();
  for (int v = 0; v < w.vertex_count(); ++v) {
    const auto& vx = w.vertices[v];
    Json extra = Json::object();
    if (vx.kind == VertexKind::crossing) extra["over"] = Json::array({0, 2});
    if (vx.kind == VertexKind::clasp) {
      extra["size"] = vx.clasp_size;
      extra["type"] = to_string(vx.clasp_type);
    }
    vs.push_back(Json{{"id", v}, {"kind", to_string(vx.kind)}, {"extra", extra}});
  }
  Json hs = Json::array(), pairing = Json::array(), types = Json::object();
  for (int h = 0; h < w.half_edge_count(); ++h) {
    hs.push_back(Json{{"id", h},
                      {"vertex", w.owner[h] == kBoundary ? Json(nullptr) : Json(w.owner[h])},
                      {"position_in_rotation", w.slot[h]}});
    if (h < w.mate[h]) {
      pairing.push_back(Json::array({h, w.mate[h]}));
      types[std::to_string(h)] = to_string(w.type[h]);
    }
  }
  return Json{{"schema", kWebSchema},
              {"vertices", vs},
              {"half_edges", hs},
              {"pairing", pairing},
              {"edge_types", types},
              {"boundary", w.boundary},
              {"source", w.source},
              {"loops", Json{{"single", w.loops_single}, {"double", w.loops_double}}}};
}

inline Web web_from_json(const Json& j) {
  try {
    if (j.value("schema", std::string()) != kWebSchema)
      throw InvalidInput(std::string("web JSON must carry \"schema\": \"") + kWebSchema + "\"");
    Web w;
    for (const auto& v : j.at("vertices")) {
      if (v.at("id").get<int>() != w.vertex_count()) throw InvalidInput("vertex ids must be 0, 1, 2, ...");
      Vertex vx;
      vx.kind = kind_from_string(v.at("kind").get<std::string>());
      if (vx.kind == VertexKind::clasp) {
        const Json& e = v.at("extra");
        vx.clasp_size = e.at("size").get<int>();
        vx.clasp_type = edge_type_from_string(e.at("type").get<std::string>());
      }
      w.vertices.push_back(vx);
    }
    const auto& hs = j.at("half_edges");
    const int n = static_cast<int>(hs.size());
    w.mate.assign(n, -1);
    w.owner.assign(n, kBoundary);
    w.slot.assign(n, -1);
    w.type.assign(n, EdgeType::single);
    for (const auto& h : hs) {
      const int id = h.at("id").get<int>();
      if (id < 0 || id >= n) throw InvalidInput("half-edge id out of range");
      w.slot[id] = h.at("position_in_rotation").get<int>();
      if (!h.at("vertex").is_null()) {
        const int v = h.at("vertex").get<int>();
        if (v < 0 || v >= w.vertex_count()) throw InvalidInput("half-edge vertex out of range");
        w.owner[id] = v;
        auto& rot = w.vertices[v].rot;
        if (w.slot[id] < 0 || w.slot[id] >= n) throw InvalidInput("rotation position out of range");
        if (static_cast<int>(rot.size()) <= w.slot[id]) rot.resize(w.slot[id] + 1, -1);
        rot[w.slot[id]] = id;
      }
    }
    for (const auto& p : j.at("pairing")) {
      const int a = p.at(0).get<int>(), b = p.at(1).get<int>();
      if (a < 0 || b < 0 || a >= n || b >= n) throw InvalidInput("pairing out of range");
      w.mate[a] = b;
      w.mate[b] = a;
    }
    for (const auto& [key, t] : j.at("edge_types").items()) {
      const int h = std::stoi(key);
      if (h < 0 || h >= n || w.mate[h] < 0) throw InvalidInput("edge type for an unpaired half-edge");
      w.type[h] = w.type[w.mate[h]] = edge_type_from_string(t.get<std::string>());
    }
    w.boundary = j.at("boundary").get<std::vector<int>>();
    w.source = j.value("source", 0);
    if (j.contains("loops")) {
      w.loops_single = j["loops"].value("single", 0);
      w.loops_double = j["loops"].value("double", 0);
    }
    if (auto v = validate(w)) throw InvalidWeb(v->rule + ": " + v->detail);
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed web JSON: ") + e.what());
  }
}

inline Json to_json(const WebSum& s) {
  Json terms = Json::array();
  for (const auto& [code, t] : s) {
    Json w = to_json(t.web);
    w.erase("schema");
    terms.push_back(Json{{"coef", to_json(t.coef)}, {"web", w}});
  }
  return Json{{"schema", kWebSumSchema}, {"terms", terms}};
}

inline WebSum websum_from_json(const Json& j) {
  if (j.value("schema", std::string()) != kWebSumSchema)
    throw InvalidInput(std::string("web sum JSON must carry \"schema\": \"") + kWebSumSchema + "\"");
  WebSum s;
  for (const auto& t : j.at("terms")) {
    Json w = t.at("web");
    w["schema"] = kWebSchema;
    s.add(scalar_from_json(t.at("coef")), web_from_json(w));
  }
  return s;
}

}  // namespace sp4::io
