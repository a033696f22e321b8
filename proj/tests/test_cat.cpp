#include <gtest/gtest.h>

#include "sp4/cat/modular.hpp"
#include "sp4/clasp/hopf.hpp"
#include "support/weyl.hpp"

using namespace sp4;
using namespace sp4::cat;

namespace {

std::vector<Weight> weights_upto(int total) {
  std::vector<Weight> out;
  for (int a = 0; a <= total; ++a)
    for (int b = 0; a + b <= total; ++b) out.push_back({a, b});
  return out;
}

// Classical dimension as the number of weights counted with multiplicity.
long classical_dim(const Weight& w) {
  long d = 0;
  for (const auto& [v, m] : weight_multiplicities(w)) d += m;
  return d;
}

// Principal specialization of the character: sum of q^{2<nu, rho>}.
RationalFunction principal_character(const Weight& w) {
  LaurentPoly s;
  for (const auto& [v, m] : weight_multiplicities(w)) s += LaurentPoly::monomial(2 * dot(v, kRho), m);
  return RationalFunction(s);
}

std::map<Weight, int> times(const std::map<Weight, int>& x, const Weight& w, std::optional<int> k) {
  std::map<Weight, int> out;
  for (const auto& [v, c] : x)
    for (const auto& [u, d] : fusion(v, w, k)) out[u] += c * d;
  return out;
}

}  // namespace

TEST(Simples, Examples) {
  EXPECT_EQ(simples(0), (std::vector<Weight>{{0, 0}}));
  EXPECT_EQ(simples(2), (std::vector<Weight>{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}}));
  EXPECT_THROW(simples(-1), InvalidInput);
}

TEST(Simples, CountAndOrder) {
  for (int k = 0; k <= 20; ++k) {
    const auto s = simples(k);
    EXPECT_EQ(s.size(), static_cast<std::size_t>((k + 1) * (k + 2) / 2));
    EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
    const auto ld = LevelData::at(k);
    EXPECT_EQ(ld.q_order, 2 * (2 * k + 6));
    EXPECT_EQ(ld.simples, s);
  }
}

TEST(Dominance, Examples) {
  EXPECT_TRUE(dominates({2, 0}, {0, 1}));
  EXPECT_TRUE(dominates({3, 1}, {1, 2}));
  EXPECT_FALSE(dominates({0, 1}, {2, 0}));
  EXPECT_TRUE(dominates({0, 2}, {2, 0}));
  EXPECT_FALSE(dominates({1, 0}, {0, 0}));
}

TEST(Dominance, IsAPartialOrder) {
  std::vector<Weight> ws;
  for (int a = 0; a <= 12; ++a)
    for (int b = 0; a + 2 * b <= 12; ++b) ws.push_back({a, b});
  for (const auto& x : ws) {
    EXPECT_TRUE(dominates(x, x));
    for (const auto& y : ws) {
      if (!dominates(x, y)) continue;
      if (x != y) {
        EXPECT_FALSE(dominates(y, x));
      }
      for (const auto& z : ws) {
        if (dominates(y, z)) {
          EXPECT_TRUE(dominates(x, z));
        }
      }
    }
  }
}

TEST(QuantumDimension, Examples) {
  EXPECT_EQ(qdim({0, 0}), RationalFunction(1));
  EXPECT_EQ(abs(qdim({1, 0}).at_one()), 4);
  EXPECT_EQ(qdim({0, 1}).at_one(), 5);
  EXPECT_EQ(qdim({1, 1}).at_one(), 16);
  EXPECT_EQ(qdim({0, 2}).at_one(), 14);
  EXPECT_EQ(qdim({2, 0}).at_one(), 10);
  EXPECT_THROW(qdim({-1, 0}), InvalidInput);
}

TEST(QuantumDimension, AgreesWithTheCharacter) {
  for (const auto& w : weights_upto(5)) {
    EXPECT_EQ(qdim(w), principal_character(w)) << w;
    EXPECT_EQ(qdim(w).at_one(), classical_dim(w)) << w;
    EXPECT_EQ(qdim(w), fixtures::weyl_qdim_fundamental(w.a, w.b)) << w;
  }
}

TEST(QuantumDimension, RootOfUnityValues) {
  for (int order : {16, 20, 24})
    for (const auto& w : weights_upto(4)) EXPECT_EQ(qdim_at(w, order), specialize(qdim(w), order)) << w;
  EXPECT_THROW(qdim_at({1, 0}, 8), DenominatorVanishes);
  EXPECT_THROW(qdim_at({0, 0}, 6), DenominatorVanishes);
  // the boundary of the level-1 alcove has quantum dimension zero
  EXPECT_TRUE(qdim_at({2, 0}, 16).is_zero());
  EXPECT_TRUE(qdim_at({1, 1}, 16).is_zero());
}

TEST(Fusion, Examples) {
  EXPECT_EQ(fusion({1, 0}, {1, 0}), (std::map<Weight, int>{{{0, 0}, 1}, {{0, 1}, 1}, {{2, 0}, 1}}));
  EXPECT_EQ(fusion({1, 0}, {1, 0}, 1), (std::map<Weight, int>{{{0, 0}, 1}, {{0, 1}, 1}}));
  EXPECT_EQ(fusion({1, 0}, {0, 1}), (std::map<Weight, int>{{{1, 0}, 1}, {{1, 1}, 1}}));
  for (const auto& w : weights_upto(3)) {
    EXPECT_EQ(fusion(w, {0, 0}), (std::map<Weight, int>{{w, 1}}));
    EXPECT_EQ(fusion({0, 0}, w, 3), (std::map<Weight, int>{{w, 1}}));
  }
  EXPECT_THROW(fusion({2, 0}, {1, 0}, 1), NotSimpleAtLevel);
}

TEST(Fusion, DimensionsMultiply) {
  for (const auto& x : weights_upto(3))
    for (const auto& y : weights_upto(3)) {
      long total = 0;
      for (const auto& [w, c] : fusion(x, y)) total += c * classical_dim(w);
      EXPECT_EQ(total, classical_dim(x) * classical_dim(y)) << x << y;
    }
}

TEST(Fusion, CommutativeAndAssociative) {
  for (std::optional<int> k : {std::optional<int>(), std::optional<int>(1), std::optional<int>(2)}) {
    const auto s = simples(std::min(2, k.value_or(2)));
    for (const auto& x : s)
      for (const auto& y : s) {
        EXPECT_EQ(fusion(x, y, k), fusion(y, x, k));
        for (const auto& z : s) {
          const auto left = times(fusion(x, y, k), z, k);
          const auto right = times(fusion(y, z, k), x, k);
          EXPECT_EQ(left, right) << x << y << z;
        }
      }
  }
}

TEST(Fusion, LevelResultsAreSimple) {
  for (int k = 1; k <= 3; ++k)
    for (const auto& x : simples(k))
      for (const auto& y : simples(k))
        for (const auto& [w, c] : fusion(x, y, k)) EXPECT_TRUE(is_simple_at(w, k)) << w;
}

TEST(IdentityTangle, Examples) {
  EXPECT_EQ(identity_tangle_decomposition(1, 0), (std::map<Weight, int>{{{1, 0}, 1}}));
  EXPECT_EQ(identity_tangle_decomposition(2, 0), (std::map<Weight, int>{{{2, 0}, 1}, {{0, 1}, 1}, {{0, 0}, 1}}));
  EXPECT_EQ(identity_tangle_decomposition(0, 0), (std::map<Weight, int>{{{0, 0}, 1}}));
}

TEST(IdentityTangle, BalanceDominanceAndTopCoefficient) {
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b) {
      const auto d = identity_tangle_decomposition(a, b);
      RationalFunction total;
      for (const auto& [w, c] : d) {
        total += RationalFunction(Rational(c)) * qdim(w);
        EXPECT_TRUE(dominates({a, b}, w)) << a << "," << b << " " << w;
      }
      EXPECT_EQ(total, qdim({1, 0}).pow(a) * qdim({0, 1}).pow(b));
      EXPECT_EQ(d.at({a, b}), 1);
      for (int k = std::max(1, a + b); k <= 4; ++k) EXPECT_EQ(identity_tangle_decomposition(a, b, k).at({a, b}), 1);
    }
}

TEST(Modular, Invariants) {
  for (int k = 1; k <= 3; ++k) {
    const auto& md = modular_data(k);
    EXPECT_EQ(md.order(), 4 * k + 12);
    EXPECT_TRUE(md.symmetric()) << k;
    EXPECT_TRUE(md.unitary()) << k;
    const auto perm = md.s_squared_permutation();
    ASSERT_TRUE(perm.has_value()) << k;
    for (int i = 0; i < md.size(); ++i) EXPECT_EQ((*perm)[i], i);  // all simples self-dual
    EXPECT_TRUE(md.st_relation_holds()) << k;
  }
  EXPECT_THROW(modular_data(0), InvalidInput);
}

TEST(Modular, Twists) {
  const auto& md = modular_data(2);
  const std::vector<int> expected{0, 5, 8, 12, 15, 20};
  for (int i = 0; i < md.size(); ++i) {
    EXPECT_EQ(twist_exponent(md.level.simples[i]), expected[i]);
    EXPECT_EQ(md.t[i], CycNumber::q_power(md.order(), expected[i]));
  }
  for (int k = 1; k <= 5; ++k) {
    const auto& m = modular_data(k);
    EXPECT_EQ(m.t[0], CycNumber(m.order(), Rational(1)));
    bool nontrivial = false;
    for (const auto& t : m.t) nontrivial |= t != m.t[0];
    EXPECT_TRUE(nontrivial) << k;
  }
}

TEST(Modular, OmegaWeightsAreQuantumDimensions) {
  for (int k = 1; k <= 3; ++k) {
    const auto& md = modular_data(k);
    for (int i = 0; i < md.size(); ++i)
      EXPECT_EQ(md.omega_weights[i], md.normalized_s({0, 0}, md.level.simples[i]));
  }
}

TEST(Modular, VerlindeMatchesFusion) {
  for (int k = 1; k <= 2; ++k) {
    const auto& md = modular_data(k);
    for (const auto& x : md.level.simples)
      for (const auto& y : md.level.simples) {
        const auto f = fusion(x, y, k);
        for (const auto& z : md.level.simples) {
          const auto it = f.find(z);
          EXPECT_EQ(md.verlinde(x, y, z), it == f.end() ? 0 : it->second) << k << x << y << z;
        }
      }
  }
}

TEST(Hopf, EngineMatchesSGeneric) {
  const std::vector<Weight> ws{{0, 0}, {1, 0}, {0, 1}, {2, 0}};
  for (const auto& x : ws)
    for (const auto& y : ws) {
      const RationalFunction engine = clasp::hopf_link({x.a, x.b}, {y.a, y.b});
      const RationalFunction s(s_tilde(x, y), s_tilde({0, 0}, {0, 0}));
      EXPECT_EQ(engine, RationalFunction(diagram_sign(x) * diagram_sign(y)) * s) << x << y;
    }
}

TEST(Hopf, EngineMatchesNormalizedSAtLevelOne) {
  const auto& md = modular_data(1);
  for (const auto& x : md.level.simples)
    for (const auto& y : md.level.simples) {
      const CycNumber engine = specialize(clasp::hopf_link({x.a, x.b}, {y.a, y.b}), md.order());
      EXPECT_EQ(engine, md.normalized_s(x, y) * Rational(diagram_sign(x) * diagram_sign(y))) << x << y;
    }
}
