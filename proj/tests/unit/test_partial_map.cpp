#include <gtest/gtest.h>

#include "generators.hpp"
#include "monoflow/error.hpp"
#include "monoflow/partial_map.hpp"
#include "suites.hpp"

using namespace monoflow;
using monoflow::testing::keys_xy;
using monoflow::testing::PClass;
using monoflow::testing::PMap;
using monoflow::testing::SuiteOptions;

namespace {

LatticePtr ab() { return std::make_shared<PowersetLattice>(TokenSet{"a", "b"}); }

PMap make(std::initializer_list<std::pair<std::string, TokenSet>> bindings,
          PMap::Universe keys = keys_xy()) {
  PMap f(ab(), std::move(keys));
  for (const auto& [k, v] : bindings) f.set(k, v);
  return f;
}

std::string describe(const monoflow::testing::LawReport& r) {
  std::string out = std::to_string(r.failures) + "/" + std::to_string(r.cases) + " failed";
  for (const auto& e : r.examples) out += "; " + e;
  return out;
}

}  // namespace

TEST(PartialMap, SetValidatesValues) {
  PMap f(ab());
  EXPECT_THROW(f.set("x", TokenSet{"z"}), DomainError);
  EXPECT_THROW(f.set("x", Flat::top()), DomainError);
  f.set("x", TokenSet{"a"});
  EXPECT_TRUE(f.defined_at("x"));
  EXPECT_EQ(f.lifted_at("y"), Value(TokenSet{}));
}

TEST(PartialMap, LeqNeedsDomainContainment) {
  EXPECT_TRUE(leq_partial(make({{"x", {"a"}}}), make({{"x", {"a", "b"}}, {"y", {}}})));
  EXPECT_FALSE(leq_partial(make({{"x", {}}}), make({{"y", {"a"}}})));
  EXPECT_TRUE(leq_partial(make({}), make({{"y", {"a"}}})));
}

TEST(PartialMap, JoinCoversUnionOfDomains) {
  PMap j = join_partial(make({{"x", {"a"}}}), make({{"x", {"b"}}, {"y", {"a"}}}));
  EXPECT_EQ(j, make({{"x", {"a", "b"}}, {"y", {"a"}}}));
}

TEST(PartialMap, MeetKeepsIntersection) {
  PMap m = meet_partial(make({{"x", {"a", "b"}}, {"y", {"a"}}}), make({{"x", {"b"}}}));
  EXPECT_EQ(m, make({{"x", {"b"}}}));
}

TEST(PartialMap, MeetNeedsAMeet) {
  class NoMeet final : public Lattice {
   public:
    std::string name() const override { return "two"; }
    bool contains(const Value& v) const override { return v.is_flat(); }
    bool leq(const Value& a, const Value& b) const override {
      return flat_leq(a.as_flat(), b.as_flat());
    }
    Value join(const Value& a, const Value& b) const override {
      return flat_join(a.as_flat(), b.as_flat());
    }
    Value bottom() const override { return Flat::bottom(); }
    std::size_t height() const override { return 2; }
    std::string render(const Value&) const override { return "?"; }
  };
  PartialMap<std::string> f(std::make_shared<NoMeet>());
  EXPECT_THROW(meet_partial(f, f), UnsupportedOperation);
}

TEST(PartialMap, LiftNeedsUniverse) {
  PMap f(ab());
  f.set("x", TokenSet{"a"});
  EXPECT_THROW(lift(f), ConfigurationError);
  PMap g = make({{"x", {"a"}}});
  EXPECT_EQ(lift(g), make({{"x", {"a"}}, {"y", {}}}));
}

TEST(PartialMap, DerivedOrderNotAntisymmetric) {
  EXPECT_TRUE(monoflow::testing::derived_order_not_antisymmetric());
}

TEST(PartialMap, WitnessClassesCoincide) {
  PMap f(ab(), keys_xy());
  PMap g(ab(), keys_xy());
  f.set("x", TokenSet{});
  g.set("y", TokenSet{});
  EXPECT_TRUE(eq_up(f, g));
  EXPECT_EQ(alpha(f), alpha(g));
}

TEST(PartialMap, DerivedJoin) {
  PMap j = join_derived(make({{"x", {"a"}}}), make({{"x", {"b"}}, {"y", {}}}));
  EXPECT_EQ(j, make({{"x", {"a", "b"}}, {"y", {}}}));
}

TEST(PartialMap, GammaIsTheLift) {
  PClass c(make({{"x", {"a"}}, {"y", {}}}));
  EXPECT_EQ(c.representative(), make({{"x", {"a"}}}));
  EXPECT_EQ(gamma(c), make({{"x", {"a"}}, {"y", {}}}));
}

TEST(Laws, PartialMapStraightforward) {
  auto r = monoflow::testing::partial_map_laws(SuiteOptions{});
  EXPECT_TRUE(r.ok()) << describe(r);
  EXPECT_GE(r.cases, 1000U);
}

TEST(Laws, PartialMapDerived) {
  auto r = monoflow::testing::derived_map_laws(SuiteOptions{});
  EXPECT_TRUE(r.ok()) << describe(r);
}

TEST(Laws, EqUpClasses) {
  auto r = monoflow::testing::class_laws(SuiteOptions{});
  EXPECT_TRUE(r.ok()) << describe(r);
}

TEST(Laws, GaloisAndHomomorphisms) {
  auto r = monoflow::testing::galois_laws(SuiteOptions{});
  EXPECT_TRUE(r.ok()) << describe(r);
  EXPECT_EQ(r.cases, 6000U);
}

TEST(Laws, ExhaustiveGaloisOnSmallCarrier) {
  // Every map and every class over S = {x, y}, M = 𝒫({a, b}).
  const auto m = ab();
  const auto keys = keys_xy();
  const auto maps = monoflow::testing::all_pmaps(m, keys);
  const auto classes = monoflow::testing::all_classes(m, keys);
  ASSERT_EQ(maps.size(), 25U);
  ASSERT_EQ(classes.size(), 16U);
  for (const auto& f : maps) {
    for (const auto& c : classes) {
      EXPECT_EQ(leq_class(alpha(f), c), leq_partial(f, gamma(c)));
    }
  }
  for (const auto& c : classes) EXPECT_EQ(alpha(gamma(c)), c);
}
