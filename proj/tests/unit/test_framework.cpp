#include <gtest/gtest.h>

#include "generators.hpp"
#include "monoflow/error.hpp"
#include "monoflow/framework.hpp"

using namespace monoflow;

namespace {

Label P(std::uint32_t n) { return Label::plain(n); }
Label C(std::uint32_t n) { return Label::call(n); }
Label R(std::uint32_t n) { return Label::ret(n); }

LatticePtr tokens() { return std::make_shared<PowersetLattice>(TokenSet{"a", "b", "g"}); }

Value identity(Label, FlowKind, const Value& v) { return v; }

/// Adds "g" on every normal edge, nothing else.
Value gen_g(Label, FlowKind kind, const Value& v) {
  if (kind != FlowKind::normal) return v;
  TokenSet s = v.as_set();
  s.insert("g");
  return s;
}

ImplicitFramework make(std::set<TaggedFlow> flows, TransferFunction f = identity) {
  ImplicitFramework impl;
  impl.lattice = tokens();
  impl.start_labels = {P(1)};
  impl.flows = std::move(flows);
  impl.initial = TokenSet{"a"};
  impl.transfer = std::move(f);
  return impl;
}

Context ctx(std::initializer_list<Label> calls) { return Context{calls}; }

ContextMap cmap(std::initializer_list<std::pair<Context, TokenSet>> bindings) {
  ContextMap m(tokens());
  for (const auto& [c, v] : bindings) m.set(c, v);
  return m;
}

// Main calls p at 2; p is 10 → 11 → 12.
std::set<TaggedFlow> one_call() {
  return {{P(1), C(2), FlowKind::normal}, {C(2), P(10), FlowKind::call},
          {P(10), P(11), FlowKind::normal}, {P(11), P(12), FlowKind::normal},
          {P(12), R(2), FlowKind::ret},   {R(2), P(3), FlowKind::normal}};
}

}  // namespace

TEST(Context, Rendering) {
  EXPECT_EQ(to_string(Context{}), "[]");
  EXPECT_EQ(to_string(ctx({C(2), C(5)})), "[2_c,5_c]");
  EXPECT_LT(Context{}, ctx({C(2)}));
}

TEST(WellFormed, Examples) {
  EXPECT_TRUE(check_wellformed({}).ok());
  EXPECT_TRUE(check_wellformed({{C(2), P(10), FlowKind::call}, {P(12), R(2), FlowKind::ret}}).ok());
  auto report = check_wellformed({{C(2), P(10), FlowKind::call}});
  ASSERT_FALSE(report.ok());
  ASSERT_EQ(report.unmatched_calls.size(), 1U);
  EXPECT_EQ(report.unmatched_calls[0].from, C(2));
  EXPECT_NE(report.describe().find("2_c"), std::string::npos);
}

TEST(WellFormed, ReturnToTheWrongSite) {
  auto report = check_wellformed({{C(2), P(10), FlowKind::call}, {P(12), R(5), FlowKind::ret}});
  EXPECT_FALSE(report.ok());
}

TEST(Embellish, Errors) {
  EXPECT_THROW(embellish(make(one_call()), {0, false}), std::invalid_argument);
  auto broken = one_call();
  broken.erase({P(12), R(2), FlowKind::ret});
  EXPECT_THROW(embellish(make(broken)), WellFormednessError);
  auto impl = make(one_call());
  impl.start_labels.clear();
  EXPECT_THROW(embellish(impl), std::invalid_argument);
}

TEST(Embellish, InitialValueOnlyAtEmptyContext) {
  auto fw = embellish(make(one_call()));
  EXPECT_EQ(fw.initial(), cmap({{Context{}, {"a"}}}));
  EXPECT_EQ(fw.initial().size(), 1U);
  EXPECT_TRUE(fw.bottom().empty());
  EXPECT_EQ(fw.context_bound(), 16U);
}

TEST(Embellish, GammaReadOffTags) {
  auto fw = embellish(make(one_call()));
  std::size_t calls = 0;
  std::size_t returns = 0;
  for (const auto& f : fw.flows()) {
    calls += f.kind == FlowKind::call;
    returns += f.kind == FlowKind::ret;
  }
  EXPECT_EQ(calls, 1U);
  EXPECT_EQ(returns, 1U);
  EXPECT_EQ(fw.labels().size(), 7U);
  EXPECT_EQ(fw.outgoing(C(2)).size(), 1U);
  EXPECT_TRUE(fw.outgoing(P(3)).empty());
}

TEST(Embellish, BackwardSwapsCallAndReturn) {
  auto impl = make(one_call());
  impl.direction = Direction::backward;
  impl.start_labels = {P(3)};
  auto fw = embellish(impl);
  std::set<TaggedFlow> got(fw.flows().begin(), fw.flows().end());
  EXPECT_TRUE(got.contains({R(2), P(12), FlowKind::call}));
  EXPECT_TRUE(got.contains({P(10), C(2), FlowKind::ret}));
  EXPECT_TRUE(got.contains({P(3), R(2), FlowKind::normal}));
}

TEST(ApplyNormal, PerContext) {
  auto fw = embellish(make(one_call(), gen_g));
  auto v = cmap({{Context{}, {"a"}}, {ctx({C(2)}), {"b"}}});
  EXPECT_EQ(fw.apply_normal(P(11), v), cmap({{Context{}, {"a", "g"}}, {ctx({C(2)}), {"b", "g"}}}));
  EXPECT_TRUE(fw.apply_normal(P(11), fw.bottom()).empty());
  auto id = embellish(make(one_call()));
  EXPECT_EQ(id.apply_normal(P(11), v), v);
}

TEST(ApplyCall, Pushes) {
  auto fw = embellish(make(one_call()));
  EXPECT_EQ(fw.apply_call(C(2), cmap({{Context{}, {"a"}}})), cmap({{ctx({C(2)}), {"a"}}}));
  EXPECT_TRUE(fw.apply_call(C(2), fw.bottom()).empty());
  EXPECT_EQ(fw.apply_call(C(2), cmap({{ctx({C(7)}), {"b"}}})),
            cmap({{ctx({C(7), C(2)}), {"b"}}}));
}

TEST(ApplyCall, BoundIsEnforced) {
  auto fw = embellish(make(one_call()), {1, false});
  try {
    fw.apply_call(C(2), cmap({{ctx({C(9)}), {"a"}}}));
    FAIL() << "no error";
  } catch (const ContextDepthExceeded& e) {
    EXPECT_EQ(e.call_site(), "2_c");
    EXPECT_EQ(e.context(), "[9_c]");
  }
  EXPECT_NO_THROW(fw.apply_call(C(2), cmap({{Context{}, {"a"}}})));
}

TEST(ApplyReturn, PopsAndScreens) {
  auto fw = embellish(make(one_call()));
  EXPECT_EQ(fw.apply_return(P(12), R(2), cmap({{ctx({C(2)}), {"a"}}})),
            cmap({{Context{}, {"a"}}}));
  EXPECT_TRUE(fw.apply_return(P(12), R(2), cmap({{ctx({C(5)}), {"a"}}})).empty());
  EXPECT_TRUE(fw.apply_return(P(12), R(2), fw.bottom()).empty());
  EXPECT_TRUE(fw.apply_return(P(12), R(2), cmap({{Context{}, {"a"}}})).empty());
  EXPECT_EQ(fw.apply_return(P(12), R(2),
                            cmap({{ctx({C(5), C(2)}), {"b"}}, {ctx({C(2), C(5)}), {"a"}}})),
            cmap({{ctx({C(5)}), {"b"}}}));
}

TEST(ApplyReturn, RoundTrip) {
  auto fw = embellish(make(one_call()), {3, false});
  monoflow::testing::Rng rng(7);
  const auto values = tokens();
  for (int i = 0; i < 200; ++i) {
    ContextMap v(values);
    const std::vector<Context> pool = {Context{}, ctx({C(5)}), ctx({C(5), C(7)})};
    for (const auto& c : pool) {
      if (rng() & 1U) v.set(c, monoflow::testing::random_value(rng, *values));
    }
    const ContextMap pushed = fw.apply_call(C(2), v);
    EXPECT_EQ(pushed.size(), v.size());
    for (const auto& [c, _] : pushed.entries()) EXPECT_EQ(c.calls.back(), C(2));
    EXPECT_EQ(fw.apply_return(P(12), R(2), pushed), v);
    EXPECT_TRUE(fw.apply_return(P(12), R(5), pushed).empty());
  }
}

TEST(ApplyNormal, DomainIsPreserved) {
  auto fw = embellish(make(one_call(), gen_g));
  monoflow::testing::Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    ContextMap v(tokens());
    for (const auto& c : {Context{}, ctx({C(2)}), ctx({C(5)})}) {
      if (rng() & 1U) v.set(c, monoflow::testing::random_value(rng, *tokens()));
    }
    EXPECT_EQ(fw.apply_normal(P(11), v).domain(), v.domain());
  }
}

TEST(Monotonicity, LiftedFunctionsAreMonotone) {
  auto fw = embellish(make(one_call(), gen_g), {4, false});
  monoflow::testing::Rng rng(3);
  const auto values = tokens();
  const std::vector<Context> pool = {Context{}, ctx({C(2)}), ctx({C(5)}), ctx({C(5), C(2)})};
  auto draw = [&] {
    ContextMap v(values);
    for (const auto& c : pool) {
      if (rng() % 3) v.set(c, monoflow::testing::random_value(rng, *values));
    }
    return v;
  };
  int ordered = 0;
  for (int i = 0; i < 2000; ++i) {
    ContextMap a = draw();
    ContextMap b = join_partial(a, draw());   // a ⊑ b by construction
    ASSERT_TRUE(leq_partial(a, b));
    ++ordered;
    for (const auto& f : fw.flows()) {
      EXPECT_TRUE(leq_partial(fw.apply(f, a), fw.apply(f, b)));
    }
  }
  EXPECT_EQ(ordered, 2000);
}

TEST(Monotonicity, SamplingFindsViolations) {
  auto decreasing = [](Label, FlowKind, const Value& v) -> Value {
    return v.as_set().contains("a") ? TokenSet{} : TokenSet{"b"};
  };
  std::vector<Value> samples = {TokenSet{}, TokenSet{"a"}, TokenSet{"a", "b"}};
  EXPECT_FALSE(sample_monotonicity(make(one_call(), decreasing), samples).empty());
  EXPECT_TRUE(sample_monotonicity(make(one_call(), gen_g), samples).empty());
}

TEST(Collapsed, ContextsStayEmpty) {
  auto fw = embellish(make(one_call()), {16, true});
  auto v = cmap({{Context{}, {"a"}}});
  EXPECT_EQ(fw.apply_call(C(2), v), v);
  EXPECT_EQ(fw.apply_return(P(12), R(2), v), v);
}
