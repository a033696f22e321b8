#include <gtest/gtest.h>

#include "sp4/tqft/spine.hpp"
#include "sp4/tqft/torus.hpp"

using namespace sp4;
using namespace sp4::tqft;

namespace {

// Brute force over all labelings: product of multiplicities read straight off
// cat::fusion, with no pruning or precomputed table.
long brute_dim(const Spine& s, int k) {
  const auto simples = cat::simples(k);
  const int n = static_cast<int>(simples.size());
  long total = 0;
  std::vector<int> idx(s.edge_count(), 0);
  while (true) {
    long w = 1;
    for (int v = 0; v < s.vertices && w; ++v) {
      const auto inc = s.incident(v);
      const auto f = cat::fusion(simples[idx[inc[0]]], simples[idx[inc[1]]], k);
      const auto it = f.find(simples[idx[inc[2]]]);
      w *= it == f.end() ? 0 : it->second;
    }
    total += w;
    int e = 0;
    while (e < s.edge_count() && ++idx[e] == n) idx[e++] = 0;
    if (e == s.edge_count()) break;
  }
  return total;
}

std::vector<MappingWord> words_upto(int len) {
  std::vector<MappingWord> out{""};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (static_cast<int>(out[i].size()) == len) continue;
    for (char c : std::string("sStT")) out.push_back(out[i] + c);
  }
  return out;
}

bool commute(const CycMatrix& x, const CycMatrix& y) { return cat::mat_mul(x, y) == cat::mat_mul(y, x); }

}  // namespace

TEST(Spine, GenusAndValidation) {
  EXPECT_EQ(Spine::circle().genus(), 1);
  EXPECT_EQ(Spine::theta().genus(), 2);
  EXPECT_EQ(Spine::dumbbell().genus(), 2);
  EXPECT_EQ(Spine::tetrahedron().genus(), 3);
  EXPECT_EQ(Spine::chain3().genus(), 3);
  for (const auto& s : {Spine::circle(), Spine::theta(), Spine::dumbbell(), Spine::tetrahedron(), Spine::chain3()})
    EXPECT_NO_THROW(s.validate());
  EXPECT_THROW((Spine{2, {{0, 1}, {0, 1}}}).validate(), InvalidInput);
  EXPECT_THROW((Spine{2, {{0, 1}, {0, 1}, {0, 2}}}).validate(), InvalidInput);
  EXPECT_THROW((Spine{4, {{0, 1}, {0, 1}, {0, 1}, {2, 3}, {2, 3}, {2, 3}}}).validate(), InvalidInput);
  EXPECT_THROW((Spine{0, {}}).validate(), InvalidInput);
}

TEST(Spine, JsonRoundTrip) {
  for (const auto& s : {Spine::circle(), Spine::theta(), Spine::tetrahedron()}) {
    const Spine t = spine_from_json(to_json(s));
    EXPECT_EQ(t.vertices, s.vertices);
    EXPECT_EQ(t.edges, s.edges);
  }
  EXPECT_NO_THROW(spine_from_json(io::Json::parse(R"({"vertices": 2, "edges": [[0,1],[0,1],[0,1]]})")));
  EXPECT_THROW(spine_from_json(io::Json::parse(R"({"vertices": 2})")), InvalidInput);
  EXPECT_THROW(spine_from_json(io::Json::parse(R"({"vertices": 2, "edges": [[0,1,1]]})")), InvalidInput);
  EXPECT_THROW(spine_from_json(io::Json::parse(R"({"schema": "other", "vertices": 0, "edges": [[0,0]]})")), InvalidInput);
}

TEST(Labeling, Admissibility) {
  const Spine th = Spine::theta();
  EXPECT_TRUE(is_admissible(th, {{1, 0}, {1, 0}, {0, 1}}, 1));
  EXPECT_FALSE(is_admissible(th, {{1, 0}, {1, 0}, {1, 0}}, 1));
  EXPECT_FALSE(is_admissible(th, {{2, 0}, {1, 0}, {1, 0}}, 1));
  EXPECT_TRUE(is_admissible(th, {{2, 0}, {1, 0}, {1, 0}}, 2));
  EXPECT_THROW(is_admissible(th, {{0, 0}}, 1), InvalidInput);
}

TEST(StateSpace, TorusCountsSimples) {
  for (int k = 0; k <= 6; ++k) EXPECT_EQ(statespace_dim(Spine::circle(), k), (k + 1) * (k + 2) / 2);
  EXPECT_EQ(statespace_dim(Spine::circle(), 1), 3);
}

TEST(StateSpace, MatchesBruteForce) {
  for (int k = 0; k <= 2; ++k)
    for (const auto& s : {Spine::theta(), Spine::dumbbell(), Spine::tetrahedron(), Spine::chain3()})
      EXPECT_EQ(statespace_dim(s, k), brute_dim(s, k)) << k;
}

TEST(StateSpace, BasisIndependence) {
  for (int k = 0; k <= 3; ++k) {
    EXPECT_EQ(statespace_dim(Spine::theta(), k), statespace_dim(Spine::dumbbell(), k)) << k;
    EXPECT_EQ(statespace_dim(Spine::tetrahedron(), k), statespace_dim(Spine::chain3(), k)) << k;
  }
}

TEST(StateSpace, VerlindeEquality) {
  for (int k = 1; k <= 2; ++k) {
    EXPECT_EQ(verlinde_dim(1, k), statespace_dim(Spine::circle(), k));
    EXPECT_EQ(verlinde_dim(2, k), statespace_dim(Spine::theta(), k));
    EXPECT_EQ(verlinde_dim(2, k), statespace_dim(Spine::dumbbell(), k));
    EXPECT_EQ(verlinde_dim(3, k), statespace_dim(Spine::tetrahedron(), k));
  }
  // rank 3 with quantum dimensions 1, sqrt 2, 1: sum of (4 / d^2)^(g-1)
  EXPECT_EQ(verlinde_dim(2, 1), 10);
  EXPECT_EQ(verlinde_dim(3, 1), 36);
  EXPECT_THROW(verlinde_dim(0, 1), InvalidInput);
}

TEST(Torus, IdentityAndTwist) {
  for (int k = 1; k <= 2; ++k) {
    const TorusRep r = torus_rep(k);
    EXPECT_EQ(r.rho(""), identity_matrix(r.size(), r.order));
    const CycMatrix t = r.rho("t");
    for (int i = 0; i < r.size(); ++i)
      for (int j = 0; j < r.size(); ++j) {
        if (i == j) {
          EXPECT_EQ(t[i][i], CycNumber::q_power(r.order, cat::twist_exponent(cat::simples(k)[i])));
        } else {
          EXPECT_TRUE(t[i][j].is_zero());
        }
      }
    EXPECT_EQ(r.rho("sS"), r.rho(""));
    EXPECT_EQ(r.rho("tT"), r.rho(""));
    EXPECT_THROW(r.rho("x"), InvalidInput);
  }
}

TEST(Torus, ModularRelationAndCentralCharge) {
  for (int k = 1; k <= 3; ++k) {
    const TorusRep r = torus_rep(k);
    const CycMatrix st3 = r.rho("ststst");
    const CycMatrix s2 = r.rho("ss");
    const auto c = cat::modular_data(k).st_cubed_scalar();
    ASSERT_TRUE(c.has_value());
    for (int i = 0; i < r.size(); ++i)
      for (int j = 0; j < r.size(); ++j) EXPECT_EQ(st3[i][j], *c * s2[i][j]);
    EXPECT_TRUE(r.central_charge_consistent()) << k;
    EXPECT_EQ(r.central_charge, make_rational(BigInt(10 * k), BigInt(k + 3)));
    EXPECT_EQ(r.phase_turns * 24, -r.central_charge);
  }
}

TEST(Torus, HomologyAction) {
  EXPECT_EQ(act("s", {1, 0}), (Slope{0, 1}));
  EXPECT_EQ(act("ss", {1, 0}), (Slope{-1, 0}));
  EXPECT_EQ(act("t", {0, 1}), (Slope{1, 1}));
  EXPECT_EQ(act("t", {1, 0}), (Slope{1, 0}));
  for (const auto& w : words_upto(4)) EXPECT_EQ(act(w + inverse_word(w), {2, 3}), (Slope{2, 3})) << w;
  for (Slope x : {Slope{1, 0}, Slope{0, 1}, Slope{3, 5}, Slope{-7, 2}, Slope{4, -9}, Slope{1, 1}}) {
    const Slope y = act(slope_word(x), {1, 0});
    EXPECT_TRUE(y == x || y == (Slope{-x[0], -x[1]})) << x[0] << "," << x[1];
  }
  EXPECT_THROW(slope_word({2, 4}), InvalidInput);
}

TEST(CurveOperator, Meridian) {
  for (int k = 1; k <= 3; ++k) {
    const CycMatrix m = curve_meridian(k);
    EXPECT_EQ(m[0][0], cat::qdim_at({1, 0}, 4 * k + 12));
    EXPECT_TRUE(commute(m, m));
  }
}

TEST(CurveOperator, LongitudeIsTheSConjugate) {
  for (int k = 1; k <= 3; ++k) {
    const TorusRep r = torus_rep(k);
    EXPECT_EQ(cat::mat_mul(cat::mat_mul(r.s, curve_meridian(k)), r.s_inv), curve_longitude(k)) << k;
  }
}

TEST(CurveOperator, TwistFixesTheMeridian) {
  for (int k = 1; k <= 2; ++k) {
    EXPECT_TRUE(conjugation_identity("t", {1, 0}, k));
    EXPECT_TRUE(conjugation_identity("s", {1, 0}, k));
  }
}

TEST(CurveOperator, ConjugationIdentityForShortWords) {
  const auto words = words_upto(3);
  EXPECT_EQ(words.size(), 85u);
  for (int k = 1; k <= 2; ++k)
    for (const auto& w : words)
      for (Slope g : {Slope{1, 0}, Slope{0, 1}}) EXPECT_TRUE(conjugation_identity(w, g, k)) << k << " " << w;
}

TEST(CurveOperator, DistinctSlopesGiveDistinctOperators) {
  // a twist moves the longitude, so its operator changes
  for (int k = 1; k <= 2; ++k) EXPECT_NE(curve_operator({1, 1}, k), curve_operator({0, 1}, k));
}
