#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include "sp4/clasp/clasp.hpp"
#include "support/weyl.hpp"

using namespace sp4;
using namespace sp4::clasp;
using E = EdgeType;
namespace fs = std::filesystem;

namespace {

const LaurentPoly q = LaurentPoly::q();

WebSum sum(std::initializer_list<std::pair<RationalFunction, Web>> terms) {
  WebSum s;
  for (const auto& [c, w] : terms) s.add(c, w);
  return s;
}

// Every braid word of length at most `len` on n strands.
std::vector<std::vector<int>> braid_words(int n, int len) {
  std::vector<std::vector<int>> out{{}};
  std::vector<std::vector<int>> frontier{{}};
  for (int l = 0; l < len && n > 1; ++l) {
    std::vector<std::vector<int>> next;
    for (const auto& w : frontier)
      for (int i = 1; i < n; ++i)
        for (int s : {i, -i}) {
          auto x = w;
          x.push_back(s);
          next.push_back(x);
        }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// Points the store at a fresh directory for the lifetime of the object.
class ScopedCache {
 public:
  explicit ScopedCache(const std::string& name) : dir_(fs::temp_directory_path() / ("sp4-test-" + name)) {
    fs::remove_all(dir_);
    saved_ = ClaspStore::instance().cache_dir();
    ClaspStore::instance().set_cache_dir(dir_);
    ClaspStore::instance().clear_memory();
  }
  ~ScopedCache() {
    ClaspStore::instance().set_cache_dir(saved_);
    ClaspStore::instance().clear_memory();
    fs::remove_all(dir_);
  }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  std::optional<fs::path> saved_;
};

}  // namespace

TEST(Label, ExpandableExactlyWhenOneComponentVanishes) {
  EXPECT_TRUE((ClaspLabel{3, 0}.expandable()));
  EXPECT_TRUE((ClaspLabel{0, 2}.expandable()));
  EXPECT_TRUE((ClaspLabel{0, 0}.expandable()));
  EXPECT_FALSE((ClaspLabel{1, 1}.expandable()));
  EXPECT_THROW(clasp_trace({1, 1}), InvalidInput);
}

TEST(Expand, SmallClaspsAreIdentities) {
  EXPECT_EQ(clasp_expand(0), WebSum(webs::identity(0)));
  EXPECT_EQ(clasp_expand(1), WebSum(webs::identity(1)));
  EXPECT_EQ(clasp_expand(1, E::twin), WebSum(webs::identity(1, E::twin)));
  EXPECT_THROW(clasp_expand(2, E::twin), InvalidInput);
  EXPECT_THROW(clasp_expand(-1), InvalidInput);
}

TEST(Expand, TwoStrandClasp) {
  // identity minus the two projections onto lower weights
  const RationalFunction d1(constants::delta_single());
  const RationalFunction b(constants::bigon_single());
  const Web e = compose(layers::cup_at(2, 0), layers::cap_at(2, 0));
  const Web u = compose(layers::split_at(2, 0), layers::merge_at(2, 0));
  const WebSum expected =
      reduce(sum({{1, webs::identity(2)}, {-(RationalFunction(1) / d1), e}, {-(RationalFunction(1) / b), u}}));
  EXPECT_EQ(clasp_expand(2), expected);
  EXPECT_EQ(clasp_expand(2).size(), 3u);
}

TEST(Expand, TermCountsGrow) {
  EXPECT_EQ(clasp_expand(3).size(), 14u);
  EXPECT_EQ(clasp_expand(4).size(), 84u);
}

TEST(Axioms, Idempotent) {
  for (int n = 0; n <= 4; ++n) EXPECT_TRUE(is_idempotent(n)) << n;
}

TEST(Axioms, TurnbacksAnnihilate) {
  EXPECT_TRUE(turnback_kill(1).empty());
  for (int n = 2; n <= 4; ++n) {
    const auto checks = turnback_kill(n);
    EXPECT_EQ(checks.size(), static_cast<std::size_t>(4 * (n - 1)));
    for (const auto& c : checks) EXPECT_TRUE(c.passed) << "n=" << n << " " << c.name;
  }
}

TEST(Axioms, IdentityIsNotAnnihilated) {
  // the check is not vacuous: a bare cap on two strands survives
  EXPECT_FALSE(reduce(compose(WebSum(layers::cap_at(2, 0)), WebSum(webs::identity(2)))).empty());
}

TEST(Boxes, StackedBoxesAbsorb) {
  for (int n = 2; n <= 3; ++n) {
    const Web twice = compose(clasp_box(n), clasp_box(n));
    EXPECT_EQ(reduce_clasped(WebSum(twice)), clasp_expand(n)) << n;
  }
}

TEST(Boxes, TurnbackOnABoxIsZeroWithoutExpansion) {
  const Web capped = compose(layers::cap_at(4, 1), clasp_box(4));
  auto s = simplify_clasps(capped);
  EXPECT_FALSE(s.has_value());
  EXPECT_TRUE(reduce_clasped(WebSum(capped)).empty());
}

TEST(Boxes, BoxedTraceEqualsExpandedTrace) {
  for (int n = 1; n <= 3; ++n) EXPECT_EQ(eval_clasped(trace(clasp_box(n))), clasp_trace({n, 0})) << n;
}

TEST(Braid, Examples) {
  EXPECT_EQ(braid_eigenvalue(2, {}).value, LaurentPoly(1));
  const auto s1 = braid_eigenvalue(2, {1});
  EXPECT_EQ(s1.value, crossing_scalar());
  EXPECT_TRUE(s1.checked && s1.holds);
  const auto s2 = braid_eigenvalue(3, {-1, -2});
  EXPECT_EQ(RationalFunction(s2.value), RationalFunction(1) / RationalFunction(crossing_scalar().pow(2)));
  EXPECT_TRUE(s2.checked && s2.holds);
  EXPECT_FALSE(braid_eigenvalue(3, {1, 2}, false).checked);
}

TEST(Braid, EveryShortWordActsByItsScalar) {
  int count = 0;
  for (int n = 1; n <= 3; ++n)
    for (const auto& w : braid_words(n, 4)) {
      const auto r = braid_eigenvalue(n, w);
      EXPECT_TRUE(r.holds) << "n=" << n << " length " << w.size();
      ++count;
    }
  EXPECT_EQ(count, 1 + 31 + 341);
}

TEST(Braid, NonScalarWithoutTheClasp) {
  // on the bare identity a crossing is not a scalar
  const WebSum id(webs::identity(2));
  EXPECT_NE(reduce(resolve_crossings(webs::braid(2, {1}))), RationalFunction(crossing_scalar()) * id);
}

TEST(Trace, SmallLabels) {
  EXPECT_EQ(clasp_trace({0, 0}), RationalFunction(1));
  EXPECT_EQ(clasp_trace({1, 0}), RationalFunction(constants::delta_single()));
  EXPECT_EQ(clasp_trace({0, 1}), RationalFunction(constants::delta_double()));
}

TEST(Trace, MatchesWeylDimensionUpToTheStrandSign) {
  for (int n = 0; n <= 4; ++n) {
    const RationalFunction sign = n % 2 ? -1 : 1;
    EXPECT_EQ(clasp_trace({n, 0}), sign * fixtures::weyl_qdim_fundamental(n, 0)) << n;
  }
  EXPECT_EQ(abs(clasp_trace({2, 0}).at_one()), 10);
  EXPECT_EQ(clasp_trace({0, 1}), fixtures::weyl_qdim_fundamental(0, 1));
}

TEST(Theta, Examples) {
  EXPECT_EQ(theta_net(0, 0, 0), RationalFunction(1));
  EXPECT_TRUE(theta_net(1, 1, 1).is_zero());
  EXPECT_EQ(theta_net(1, 1, 0), clasp_trace({1, 0}));
  EXPECT_EQ(theta_net(2, 1, 1), clasp_trace({2, 0}));
  EXPECT_EQ(theta_net(3, 3, 0), clasp_trace({3, 0}));
  EXPECT_THROW(theta_net(-1, 1, 0), InvalidInput);
}

TEST(Theta, InvariantUnderRotation) {
  EXPECT_EQ(theta_net(2, 1, 1), theta_net(1, 1, 2));
  EXPECT_EQ(theta_net(2, 2, 0), theta_net(0, 2, 2));
  EXPECT_EQ(theta_net(2, 0, 2), theta_net(0, 2, 2));
  EXPECT_EQ(theta_net(3, 2, 1), theta_net(2, 1, 3));
}

TEST(Theta, NonzeroExactlyForAdmissibleTriples) {
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; a + b <= 8; ++b)
      for (int c = 0; a + b + c <= 8; ++c) {
        const bool nonzero = !theta_net(a, b, c).is_zero();
        EXPECT_EQ(nonzero, triple_space_dim(a, b, c) == 1) << a << "," << b << "," << c;
      }
}

TEST(Theta, InadmissibleLargeLabelVanishesByAxioms) {
  EXPECT_TRUE(theta_net(4, 1, 1).is_zero());
  EXPECT_TRUE(theta_net(1, 5, 2).is_zero());
}

TEST(TripleSpace, Examples) {
  EXPECT_EQ(triple_space_dim(2, 2, 2), 1);
  EXPECT_EQ(triple_space_dim(4, 1, 1), 0);
  EXPECT_EQ(triple_space_dim(1, 1, 1), 0);
  EXPECT_EQ(triple_space_dim(2, 2, 2, 16), 0);
  EXPECT_EQ(triple_space_dim(2, 2, 2, 20), 1);
}

TEST(TripleSpace, RootOfUnityThresholdIsStrict) {
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int c = 0; c <= 4; ++c)
        for (int order = 12; order <= 24; ++order) {
          const int expected = admissible(a, b, c) && order > 2 * (a + b + c) + 4 ? 1 : 0;
          EXPECT_EQ(triple_space_dim(a, b, c, order), expected);
        }
}

TEST(Cache, StoresAndReloads) {
  ScopedCache cache("roundtrip");
  const WebSum p3 = clasp_expand(3);
  const fs::path entry = cache.dir() / io::rule_table_hash() / "clasp-single-3.json";
  ASSERT_TRUE(fs::exists(entry));
  std::ifstream in(entry);
  const io::Json j = io::Json::parse(in);
  EXPECT_EQ(j.at("schema"), "sp4.clasp/1");
  EXPECT_EQ(j.at("n"), 3);
  EXPECT_EQ(j.at("rule_hash"), io::rule_table_hash());
  ClaspStore::instance().clear_memory();
  EXPECT_EQ(DiskCache(cache.dir()).load("single", 3), p3);
  EXPECT_EQ(clasp_expand(3), p3);
}

TEST(Cache, CorruptEntryIsRecomputed) {
  ScopedCache cache("corrupt");
  const WebSum p3 = clasp_expand(3);
  const fs::path entry = cache.dir() / io::rule_table_hash() / "clasp-single-3.json";
  std::ofstream(entry) << "{\"schema\": \"sp4.clasp/1\", \"n\": 3, trunc";
  ClaspStore::instance().clear_memory();
  EXPECT_FALSE(DiskCache(cache.dir()).load("single", 3).has_value());
  EXPECT_EQ(clasp_expand(3), p3);
  EXPECT_EQ(DiskCache(cache.dir()).load("single", 3), p3);
}

TEST(Cache, GcRemovesOnlyStaleHashes) {
  ScopedCache cache("gc");
  clasp_expand(2);
  const fs::path stale = cache.dir() / std::string(64, 'a');
  fs::create_directories(stale);
  std::ofstream(stale / "clasp-single-2.json") << "{}";
  std::ofstream(stale / "clasp-single-3.json") << "{}";
  const fs::path other = cache.dir() / "notes";
  fs::create_directories(other);
  EXPECT_EQ(DiskCache::gc(cache.dir()), 2);
  EXPECT_FALSE(fs::exists(stale));
  EXPECT_TRUE(fs::exists(other));
  EXPECT_TRUE(fs::exists(cache.dir() / io::rule_table_hash() / "clasp-single-2.json"));
  EXPECT_EQ(DiskCache::gc(cache.dir()), 0);
  EXPECT_EQ(DiskCache::gc(cache.dir() / "missing"), 0);
}

TEST(Cache, ConcurrentWritersLeaveAReadableEntry) {
  ScopedCache cache("concurrent");
  const WebSum p2 = clasp_expand(2);
  std::vector<std::thread> ts;
  for (int i = 0; i < 8; ++i) ts.emplace_back([&] { DiskCache(cache.dir()).store("single", 2, p2); });
  std::atomic<int> good = 0;
  for (int i = 0; i < 8; ++i)
    ts.emplace_back([&] {
      auto s = DiskCache(cache.dir()).load("single", 2);
      if (!s || *s == p2) ++good;
    });
  for (auto& t : ts) t.join();
  EXPECT_EQ(good, 8);
  EXPECT_EQ(DiskCache(cache.dir()).load("single", 2), p2);
  for (const auto& f : fs::directory_iterator(cache.dir() / io::rule_table_hash()))
    EXPECT_EQ(f.path().string().find(".tmp"), std::string::npos);
}

TEST(Cache, DisabledCacheStillComputes) {
  const auto saved = ClaspStore::instance().cache_dir();
  ClaspStore::instance().set_cache_dir(std::nullopt);
  ClaspStore::instance().clear_memory();
  EXPECT_EQ(clasp_expand(3).size(), 14u);
  ClaspStore::instance().set_cache_dir(saved);
}
