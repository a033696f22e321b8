#include <gtest/gtest.h>

#include "sp4/io/hash.hpp"
#include "sp4/io/json.hpp"
#include "sp4/web/crossing.hpp"
#include "sp4/web/reduce.hpp"
#include "support/random_webs.hpp"
#include "support/weyl.hpp"

using namespace sp4;
using E = EdgeType;
using fixtures::weyl_qdim;

namespace {

const LaurentPoly q = LaurentPoly::q();

Web theta() {
  Web merge = webs::vertex({E::single, E::single, E::twin}, 2);
  Web split = webs::vertex({E::twin, E::single, E::single}, 1);
  return trace(compose(split, merge));
}

WebSum resolved(const Web& w) { return reduce(resolve_crossings(w)); }

// Top word left to right of a web whose points are all on top.
std::vector<EdgeType> top_word(const Web& w) {
  auto b = w.boundary_word();
  return {b.rbegin(), b.rend()};
}

WebSum of(const std::vector<std::pair<RationalFunction, Web>>& terms) {
  WebSum s;
  for (const auto& [c, w] : terms) s.add(c, w);
  return s;
}

}  // namespace

// --- structure -------------------------------------------------------------

TEST(Validate, EmptyWebIsValid) { EXPECT_FALSE(validate(webs::empty()).has_value()); }

TEST(Validate, ThreeSingleLegsViolateTrivalentPattern) {
  Web w = webs::vertex({E::single, E::single, E::twin});
  for (int h = 0; h < w.half_edge_count(); ++h) w.type[h] = E::single;
  auto v = validate(w);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->rule, "trivalent-pattern");
  EXPECT_EQ(v->vertex, 0);
}

TEST(Validate, ReversedRotationViolatesPlanarity) {
  Web w = theta();
  ASSERT_FALSE(validate(w).has_value());
  auto& rot = w.vertices[0].rot;
  std::swap(rot[0], rot[1]);
  w.slot[rot[0]] = 0;
  w.slot[rot[1]] = 1;
  auto v = validate(w);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->rule, "planarity");
}

TEST(Validate, BrokenInvolution) {
  Web w = webs::identity(2);
  w.mate[0] = 0;
  ASSERT_TRUE(validate(w).has_value());
  EXPECT_EQ(validate(w)->rule, "involution");
}

TEST(Operations, CompositionAndTensorUnits) {
  Web id = webs::identity(1);
  EXPECT_EQ(canonical_code(compose(id, id)), canonical_code(id));
  Web v = webs::vertex({E::single, E::single, E::twin}, 2);
  EXPECT_EQ(canonical_code(tensor(webs::empty(), v)), canonical_code(v));
  EXPECT_EQ(canonical_code(tensor(v, webs::empty())), canonical_code(v));
  EXPECT_THROW(compose(id, webs::identity(2)), BoundaryMismatch);
  EXPECT_THROW(compose(webs::identity(1, E::twin), id), BoundaryMismatch);
}

TEST(Operations, FullRotationIsIdentity) {
  fixtures::RandomWebs gen(5);
  for (int i = 0; i < 50; ++i) {
    auto [w, word, nv] = gen.open(8);
    const int n = w.boundary_size();
    EXPECT_EQ(canonical_code(rotate(w, n)), canonical_code(w));
    EXPECT_EQ(canonical_code(rotate(rotate(w, 1), n - 1)), canonical_code(w));
  }
}

TEST(Operations, RotatedVertexIsTheVertexWithRotatedTypes) {
  Web v = webs::vertex({E::single, E::single, E::twin});
  EXPECT_EQ(canonical_code(rotate(v, 1)), canonical_code(webs::vertex({E::single, E::twin, E::single})));
  EXPECT_EQ(canonical_code(rotate(v, 2)), canonical_code(webs::vertex({E::twin, E::single, E::single})));
}

TEST(Operations, GeneratedWebsAreValid) {
  fixtures::RandomWebs gen(17);
  for (int i = 0; i < 200; ++i) {
    Web w = gen.closed(12);
    EXPECT_FALSE(validate(w).has_value());
    EXPECT_TRUE(w.closed());
  }
}

// --- closed evaluation -----------------------------------------------------

TEST(Evaluation, EmptyWebIsOne) {
  EXPECT_EQ(eval_closed(webs::empty()), RationalFunction(1));
  WebSum r = reduce(webs::empty());
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(r.is_scalar());
}

TEST(Evaluation, LoopsMatchWeylDimensionUpToSign) {
  const RationalFunction d1 = eval_closed(trace(webs::identity(1)));
  const RationalFunction d2 = eval_closed(trace(webs::identity(1, E::twin)));
  EXPECT_EQ(d1, -weyl_qdim(1, 0));
  EXPECT_EQ(d2, weyl_qdim(1, 1));
  EXPECT_EQ(d1.num().at_one(), -4);
  EXPECT_EQ(d2.num().at_one(), 5);
  EXPECT_EQ(d1, RationalFunction(RuleTable::standard().loop_single));
  EXPECT_EQ(d2, RationalFunction(RuleTable::standard().loop_double));
}

TEST(Evaluation, DisjointLoopsMultiply) {
  const auto d1 = eval_closed(webs::loops(1, 0));
  EXPECT_EQ(eval_closed(webs::loops(2, 0)), d1 * d1);
  EXPECT_EQ(eval_closed(tensor(trace(webs::identity(1)), trace(webs::identity(1)))), d1 * d1);
}

TEST(Evaluation, ThetaAgreesThroughEitherBigon) {
  const auto& rt = RuleTable::standard();
  const RationalFunction t = eval_closed(theta());
  EXPECT_EQ(t, RationalFunction(constants::bigon_single() * rt.loop_double));
  EXPECT_EQ(t, RationalFunction(constants::bigon_mixed() * rt.loop_single));
  EXPECT_EQ(t.num().at_one(), -20);
}

TEST(Evaluation, MultiplicativeOverDisjointUnion) {
  fixtures::RandomWebs gen(23);
  for (int i = 0; i < 60; ++i) {
    Web a = gen.closed(7), b = gen.closed(7);
    EXPECT_EQ(eval_closed(tensor(a, b)), eval_closed(a) * eval_closed(b));
  }
}

TEST(Evaluation, ConfluenceAcrossStrategies) {
  fixtures::RandomWebs gen(2024);
  Evaluator first({1'000'000, Strategy::smallest_first, 0, true});
  int count = 0;
  for (int i = 0; count < 520; ++i) {
    Web w = gen.closed(14);
    if (w.vertex_count() > 14) continue;
    ++count;
    Evaluator random({1'000'000, Strategy::random, static_cast<std::uint64_t>(i), false});
    EXPECT_EQ(first.eval(w), random.eval(w)) << "web " << i;
  }
  EXPECT_GE(count, 500);
}

TEST(Evaluation, RotationOfAnOpenPieceBeforeClosing) {
  fixtures::RandomWebs gen(31);
  for (int i = 0; i < 60; ++i) {
    auto [x, word, nv] = gen.open(7);
    const Web z = gen.closing(word);
    const int n = x.boundary_size();
    if (n == 0) continue;
    // rotate the open piece a full turn in single steps; the glued web is unchanged
    Web r = x;
    for (int s = 0; s < n; ++s) r = rotate(r, 1);
    EXPECT_EQ(eval_closed(compose(z, r)), eval_closed(compose(z, x)));
    const int s = i % n;
    EXPECT_EQ(canonical_code(compose(z, x)), canonical_code(compose(z, rotate(rotate(x, s), n - s))));
  }
}

TEST(Evaluation, BudgetTurnsRunawayIntoError) {
  Evaluator ev({1, Strategy::smallest_first, 0, false});
  Web w = compose(theta(), webs::empty());
  EXPECT_THROW(ev.eval(tensor(w, w)), NonTerminating);
}

// --- relations -------------------------------------------------------------

TEST(Relations, EveryRuleHoldsInNormalForm) {
  for (const auto& r : RuleTable::standard().rules) {
    if (r.name == "crossing" || r.name == "tetravalent") continue;
    EXPECT_EQ(reduce(r.lhs), reduce(of(r.rhs))) << r.name;
  }
}

TEST(Relations, RuleSidesAgreeUnderEveryClosure) {
  // glue each relation into random surroundings and compare closed values
  fixtures::RandomWebs gen(7);
  for (const auto& r : RuleTable::standard().rules) {
    if (r.name == "crossing" || r.name == "tetravalent") continue;
    for (int i = 0; i < 10; ++i) {
      const Web z = gen.closing(top_word(r.lhs));
      Web lhs = r.lhs;
      lhs.source = 0;
      RationalFunction right;
      for (const auto& [c, w] : r.rhs) {
        Web t = w;
        t.source = 0;
        right += c * eval_closed(compose(z, t));
      }
      EXPECT_EQ(eval_closed(compose(z, lhs)), right) << r.name;
    }
  }
}

TEST(Relations, FourPointNormalFormsAreIndependent) {
  // A, B and the four-valent vertex span the invariants of V^4 (dimension 3);
  // their pairing matrix must be invertible.
  Web t = detail::make_four_valent(VertexKind::tetravalent);
  std::vector<Web> basis{detail::four_point_matching(0, 1, 2, 3), detail::four_point_matching(1, 2, 3, 0), t};
  for (auto& b : basis) b.source = 0;
  std::vector<std::vector<RationalFunction>> g(3, std::vector<RationalFunction>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Web top = basis[j];
      top.source = 4;
      g[i][j] = eval_closed(compose(top, basis[i]));
    }
  const RationalFunction det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
                               g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
                               g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
  EXPECT_FALSE(det.is_zero());
  // every four-point web reduces into that span
  for (const Web& w : {webs::double_bridge(0, 2), webs::double_bridge(1, 2)})
    for (const auto& [code, term] : reduce(w)) EXPECT_LE(term.web.vertex_count(), 1);
}

TEST(Relations, OpenNormalFormIsIdempotentAndFaithfulToClosures) {
  fixtures::RandomWebs gen(99);
  for (int i = 0; i < 80; ++i) {
    auto [x, word, nv] = gen.open(9);
    const WebSum n = reduce(x);
    EXPECT_EQ(reduce(n), n);
    const Web z = gen.closing(word);
    WebSum closed;
    for (const auto& [code, t] : n) closed.add(t.coef, compose(z, t.web));
    EXPECT_EQ(eval_closed(closed), eval_closed(compose(z, x))) << i;
  }
}

TEST(Relations, ReduceRejectsCrossingsAndClasps) {
  EXPECT_THROW(reduce(webs::crossing(true)), InvalidWeb);
}

// --- crossings and the four-valent vertex ----------------------------------

TEST(Crossings, ZeroCrossingWebIsUnchanged) {
  Web w = theta();
  WebSum s = resolve_crossings(w);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.begin()->second.coef, RationalFunction(1));
}

TEST(Crossings, DoubleStrandCrossingIsRejected) {
  Web c = webs::crossing(true);
  for (int h = 0; h < c.half_edge_count(); ++h) c.type[h] = E::twin;
  EXPECT_THROW(resolve_crossings(c), UnsupportedCrossingType);
}

TEST(Crossings, ReidemeisterTwo) {
  const WebSum id = reduce(webs::identity(2));
  EXPECT_EQ(resolved(webs::braid(2, {1, -1})), id);
  EXPECT_EQ(resolved(webs::braid(2, {-1, 1})), id);
  EXPECT_EQ(resolved(webs::braid(3, {2, 1, -1, -2})), reduce(webs::identity(3)));
}

TEST(Crossings, ReidemeisterThree) {
  EXPECT_EQ(resolved(webs::braid(3, {1, 2, 1})), resolved(webs::braid(3, {2, 1, 2})));
  EXPECT_EQ(resolved(webs::braid(3, {-1, -2, -1})), resolved(webs::braid(3, {-2, -1, -2})));
}

TEST(Crossings, TracedDiagramsAreInvariantUnderReidemeisterTwo) {
  const std::vector<std::vector<int>> words{{1}, {-1}, {1, 1}, {1, -1, 1}};
  for (const auto& w : words) {
    std::vector<int> padded = w;
    padded.insert(padded.begin(), {1, -1});
    EXPECT_EQ(eval_closed(trace(webs::braid(2, w))), eval_closed(trace(webs::braid(2, padded))));
  }
}

TEST(Crossings, CurlIsTheFramingScalar) {
  // closing the right strand of a crossing leaves a single strand
  const WebSum pos = resolved(close(webs::crossing(true), {{1, 2}}));
  const WebSum neg = resolved(close(webs::crossing(false), {{1, 2}}));
  Web line = webs::identity(1);
  line.source = 0;
  const WebSum strand = reduce(line);
  EXPECT_EQ(pos, RationalFunction(-q.pow(5)) * strand);
  EXPECT_EQ(neg, RationalFunction(-LaurentPoly::monomial(-5)) * strand);
}

TEST(Crossings, MirrorSwapsSign) {
  EXPECT_EQ(canonical_code(mirror(webs::crossing(true))), canonical_code(webs::crossing(false)));
  EXPECT_EQ(resolved(mirror(webs::braid(3, {1, 2, -1}))), resolved(webs::braid(3, {-2, -1, 2})));
}

TEST(Crossings, EigenvaluesOnTheSymmetricSquare) {
  // sigma = q B + A/(q^3 + q) + I/[2]; on normal forms I = T - B
  const WebSum s = resolved(webs::crossing(true));
  ASSERT_EQ(s.size(), 3u);
  const WebSum expect = of({{RationalFunction(q.pow(3), q.pow(2) + 1), detail::four_point_matching(0, 3, 1, 2)},
                            {RationalFunction(1, q.pow(3) + q), detail::four_point_matching(0, 1, 2, 3)},
                            {RationalFunction(q, q.pow(2) + 1), detail::make_four_valent(VertexKind::tetravalent)}});
  WebSum e;
  for (const auto& [code, t] : expect) {
    Web w = t.web;
    w.source = 2;
    e.add(t.coef, w);
  }
  EXPECT_EQ(s, e);
}

TEST(Tetravalent, NoTetravalentVertexIsIdentity) {
  Web w = theta();
  WebSum s = expand_tetravalent(w);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.begin()->second.coef, RationalFunction(1));
}

TEST(Tetravalent, ExpansionIsTheTwoTermSum) {
  Web t = detail::make_four_valent(VertexKind::tetravalent);
  EXPECT_EQ(expand_tetravalent(t), of(RuleTable::standard().get("tetravalent").rhs));
}

TEST(Tetravalent, RotationSymmetric) {
  Web t = detail::make_four_valent(VertexKind::tetravalent);
  EXPECT_EQ(reduce(expand_tetravalent(rotate(t, 1))), reduce(expand_tetravalent(t)));
}

TEST(Tetravalent, ExpandBeforeOrAfterComposing) {
  Web t = detail::make_four_valent(VertexKind::tetravalent);
  t.source = 0;
  fixtures::RandomWebs gen(3);
  for (int i = 0; i < 15; ++i) {
    const Web z = gen.closing(top_word(t));
    RationalFunction before;
    for (const auto& [code, term] : expand_tetravalent(t)) {
      Web w = term.web;
      w.source = 0;
      before += term.coef * eval_closed(compose(z, w));
    }
    EXPECT_EQ(eval_closed(compose(z, t)), before);
  }
}

TEST(RuleTable, SerializationIsStable) {
  const auto& rt = RuleTable::standard();
  EXPECT_EQ(rt.serialize(), rt.serialize());
  EXPECT_NE(rt.serialize().find("A=q^1"), std::string::npos);
  EXPECT_EQ(rt.rules.size(), 8u);
}

TEST(Generator, CorpusCoversLargerWebs) {
  fixtures::RandomWebs gen(2024);
  int big = 0, max_v = 0;
  for (int i = 0; i < 520; ++i) {
    Web w = gen.closed(14);
    max_v = std::max(max_v, w.vertex_count());
    big += w.vertex_count() >= 8;
  }
  EXPECT_GE(max_v, 12);
  EXPECT_GE(big, 100);
}

TEST(WebJson, RoundTripIsBitExact) {
  fixtures::RandomWebs gen(41);
  std::vector<Web> corpus{webs::empty(), webs::loops(2, 1), webs::crossing(true), webs::braid(3, {1, -2}),
                          detail::make_four_valent(VertexKind::tetravalent)};
  for (int i = 0; i < 40; ++i) corpus.push_back(std::get<0>(gen.open(9)));
  for (const Web& w : corpus) {
    const std::string text = io::to_json(w).dump();
    const Web back = io::web_from_json(io::Json::parse(text));
    EXPECT_EQ(back, w);
    EXPECT_EQ(io::to_json(back).dump(), text);
  }
}

TEST(WebJson, RejectsInvalidWebs) {
  io::Json j = io::to_json(webs::vertex({E::single, E::single, E::twin}));
  j["edge_types"] = io::Json::object();
  for (const auto& p : j["pairing"]) j["edge_types"][std::to_string(p[0].get<int>())] = "single";
  EXPECT_THROW(io::web_from_json(j), InvalidWeb);
  io::Json k = io::to_json(webs::empty());
  k.erase("schema");
  EXPECT_THROW(io::web_from_json(k), InvalidInput);
}

TEST(WebJson, ScalarsRoundTrip) {
  const RationalFunction one(1);
  EXPECT_EQ(io::to_json(one).dump(), "1");
  const RationalFunction d1(RuleTable::standard().loop_single);
  EXPECT_EQ(io::to_json(d1).dump(), "[[-4,-1,1],[-2,-1,1],[2,-1,1],[4,-1,1]]");
  const RationalFunction f(LaurentPoly::from_terms({{1, make_rational(3, 2)}}), q.pow(2) + 1);
  for (const auto& x : {one, d1, f, RationalFunction(make_rational(BigInt("123456789012345678901234567890"), 7))})
    EXPECT_EQ(io::scalar_from_json(io::Json::parse(io::to_json(x).dump())), x);
  const CycNumber c = specialize(qint(3), 20);
  EXPECT_EQ(io::cyc_from_json(io::to_json(c)), c);
}

TEST(WebJson, WebSumRoundTrip) {
  const WebSum s = resolved(webs::crossing(true));
  EXPECT_EQ(io::websum_from_json(io::Json::parse(io::to_json(s).dump())), s);
}

TEST(RuleTable, HashIsSha256OfSerialization) {
  EXPECT_EQ(io::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(io::rule_table_hash().size(), 64u);
}
