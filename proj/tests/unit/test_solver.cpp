#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "corpus.hpp"
#include "harness.hpp"
#include "monoflow/error.hpp"
#include "monoflow/solver.hpp"

using namespace monoflow;
using monoflow::testing::analysis_for;
using monoflow::testing::framework_for;

namespace {

Label P(std::uint32_t n) { return Label::plain(n); }

LatticePtr tokens() { return std::make_shared<PowersetLattice>(TokenSet{"a", "b", "g"}); }

ImplicitFramework toy(std::set<TaggedFlow> flows, TransferFunction f) {
  ImplicitFramework impl;
  impl.lattice = tokens();
  impl.start_labels = {P(1)};
  impl.flows = std::move(flows);
  impl.initial = TokenSet{"a"};
  impl.transfer = std::move(f);
  return impl;
}

struct Case {
  std::string file;
  std::string analysis;
  bool call_to_return;
};

std::vector<Case> corpus_cases() {
  std::vector<Case> out;
  for (const auto& f : monoflow::testing::corpus_files()) {
    for (const auto& a : analyses::names()) {
      out.push_back({f, a, false});
      out.push_back({f, a, true});
    }
  }
  return out;
}

std::string case_name(const ::testing::TestParamInfo<Case>& info) {
  std::string n = monoflow::testing::base_name(info.param.file);
  n = n.substr(0, n.find('.')) + "_" + info.param.analysis + (info.param.call_to_return ? "_ctr" : "");
  return n;
}

}  // namespace

TEST(Solve, NoFlows) {
  auto add_b = [](Label, FlowKind, const Value& v) -> Value {
    TokenSet s = v.as_set();
    s.insert("b");
    return s;
  };
  auto fw = embellish(toy({}, add_b));
  auto r = solve(fw);
  ASSERT_EQ(r.entry.size(), 1U);
  EXPECT_EQ(r.entry.at(P(1)), fw.initial());
  ASSERT_EQ(r.exit.at(P(1)).size(), 1U);
  EXPECT_EQ(r.exit.at(P(1)).at(std::nullopt), fw.apply_normal(P(1), fw.initial()));
  EXPECT_EQ(r.iterations, 0U);
  EXPECT_TRUE(naive_fixpoint(fw).same_tables(r));
  EXPECT_TRUE(verify_df_residual(fw, r).empty());
}

TEST(Solve, ReachingDefinitionsOnLoop) {
  auto a = analysis_for("rd", "x := 3; y := 4; while x > 1 do (x := x - 1; y := x * y)");
  auto fw = framework_for(a);
  auto r = solve(fw);
  EXPECT_EQ(monoflow::testing::entry_at(*a, r, P(3)), "{(x,1), (x,4), (y,2), (y,5)}");
  EXPECT_TRUE(naive_fixpoint(fw).same_tables(r));
}

TEST(Solve, EntryIsJoinOfPredecessorExits) {
  auto a = analysis_for("rd", "x := 3; read(y); if x > y then x := x - 1 else y := y - 1");
  auto fw = framework_for(a);
  auto r = naive_fixpoint(fw);
  EXPECT_EQ(r.entry.at(P(3)), r.exit.at(P(2)).at(P(3)));
  EXPECT_EQ(r.exit.at(P(4)).size(), 1U);
  EXPECT_TRUE(r.exit.at(P(4)).contains(std::nullopt));
}

TEST(Solve, TwoCallSitesKeepContextsApart) {
  auto a = analysis_for("cp",
                        "proc id(val x, res y) is y := x end\n"
                        "a := 0; call id(1, a); b := 0; c := a; call id(2, b)");
  auto fw = framework_for(a);
  auto r = solve(fw);
  const ContextMap& at_entry = r.entry.at(P(6));
  ASSERT_EQ(at_entry.size(), 2U);
  const auto& cp = dynamic_cast<const analyses::ConstantPropagation&>(*a);
  auto x_in = [&](Label site) {
    return cp.map_lattice().get(*at_entry.find(Context{{site}}), "x");
  };
  EXPECT_EQ(x_in(Label::call(2)), Value(Flat::of(1)));
  EXPECT_EQ(x_in(Label::call(5)), Value(Flat::of(2)));
  EXPECT_TRUE(naive_fixpoint(fw).same_tables(r));
}

TEST(Solve, ContextDepthExceededPropagates) {
  auto a = analysis_for("cp", monoflow::testing::read_file(monoflow::testing::data_path("recursion.hal")));
  EXPECT_THROW(solve(framework_for(a)), ContextDepthExceeded);
  EXPECT_THROW(naive_fixpoint(framework_for(a)), ContextDepthExceeded);
  EXPECT_THROW(solve(framework_for(a, {2, false})), ContextDepthExceeded);
}

TEST(Solve, RejectsBadSeedOrder) {
  auto a = analysis_for("rd", "x := 1; y := 2");
  auto fw = framework_for(a);
  SolveOptions o;
  o.seed_order = {0, 0};
  EXPECT_THROW(solve(fw, o), std::invalid_argument);
}

TEST(Solve, NonMonotoneTransferIsReported) {
  // 2 erases everything once "g" shows up; 3 adds "g": the input of (2,3)
  // grows while its output shrinks.
  auto f = [](Label at, FlowKind, const Value& v) -> Value {
    TokenSet s = v.as_set();
    if (at == P(3)) s.insert("g");
    if (at == P(2) && s.contains("g")) s.clear();
    return s;
  };
  auto fw = embellish(toy({{P(1), P(2), FlowKind::normal},
                           {P(2), P(3), FlowKind::normal},
                           {P(3), P(2), FlowKind::normal}},
                          f));
  auto r = solve(fw);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(Residual, DetectsUnstableFlow) {
  auto a = analysis_for("rd", "x := 1; y := 2");
  auto fw = framework_for(a);
  auto r = solve(fw);
  EXPECT_TRUE(verify_df_residual(fw, r).empty());
  r.entry.at(P(2)) = fw.bottom();
  auto v = verify_df_residual(fw, r);
  ASSERT_EQ(v.size(), 1U);
  EXPECT_EQ(v[0].from, P(1));
  EXPECT_EQ(v[0].to, P(2));
  r.entry.at(P(1)) = fw.bottom();
  EXPECT_EQ(verify_df_residual(fw, r).size(), 1U);   // start label; (1,2) now holds
}

TEST(Intraprocedural, OnlyTheEmptyContextAppears) {
  auto a = analysis_for("rd", monoflow::testing::read_file(
                                  monoflow::testing::data_path("corpus/04_nested_loop.hal")));
  auto fw = framework_for(a);
  auto r = solve(fw);
  for (const auto& [l, v] : r.entry) {
    EXPECT_EQ(v.domain(), (std::set<Context>{Context{}})) << to_string(l);
  }
  // DF•(ℓ) = f_ℓ(DF∘(ℓ)) at every label.
  for (const auto& [l, outputs] : r.exit) {
    for (const auto& [succ, v] : outputs) EXPECT_EQ(v, fw.apply_normal(l, r.entry.at(l)));
  }
}

class CorpusSolve : public ::testing::TestWithParam<Case> {};

TEST_P(CorpusSolve, MatchesNaiveFixpoint) {
  const auto& c = GetParam();
  auto a = analysis_for(c.analysis, monoflow::testing::read_file(c.file), c.call_to_return);
  auto fw = framework_for(a);
  auto r = solve(fw);
  auto oracle = naive_fixpoint(fw);
  EXPECT_TRUE(r.same_tables(oracle));
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_TRUE(verify_df_residual(fw, r).empty());
  EXPECT_TRUE(verify_df_residual(fw, oracle).empty());
  for (Label l : fw.labels()) EXPECT_TRUE(r.entry.contains(l));
}

TEST_P(CorpusSolve, WithinIterationBound) {
  const auto& c = GetParam();
  auto a = analysis_for(c.analysis, monoflow::testing::read_file(c.file), c.call_to_return);
  auto fw = framework_for(a);
  auto r = solve(fw);
  EXPECT_LE(r.iterations, iteration_bound(fw, r));
  EXPECT_LE(r.iterations, fw.flows().size() * (1 + r.increases));
}

TEST_P(CorpusSolve, LoopInvariantHolds) {
  const auto& c = GetParam();
  auto a = analysis_for(c.analysis, monoflow::testing::read_file(c.file), c.call_to_return);
  auto fw = framework_for(a);
  auto oracle = naive_fixpoint(fw);
  SolveOptions o;
  o.invariant_bound = &oracle.entry;
  EXPECT_NO_THROW(solve(fw, o));
}

TEST_P(CorpusSolve, SeedOrderDoesNotMatter) {
  const auto& c = GetParam();
  auto a = analysis_for(c.analysis, monoflow::testing::read_file(c.file), c.call_to_return);
  auto fw = framework_for(a);
  const auto reference = solve(fw);
  std::mt19937 rng(42);
  SolveOptions o;
  o.seed_order.resize(fw.flows().size());
  for (std::size_t i = 0; i < o.seed_order.size(); ++i) o.seed_order[i] = i;
  for (int round = 0; round < 20; ++round) {
    std::shuffle(o.seed_order.begin(), o.seed_order.end(), rng);
    EXPECT_TRUE(solve(fw, o).same_tables(reference)) << "permutation " << round;
  }
}

INSTANTIATE_TEST_SUITE_P(Corpus, CorpusSolve, ::testing::ValuesIn(corpus_cases()), case_name);

TEST(LoopInvariant, WrongBoundIsCaught) {
  auto a = analysis_for("rd", "x := 1; y := 2");
  auto fw = framework_for(a);
  std::map<Label, ContextMap> too_small;
  for (Label l : fw.labels()) too_small.emplace(l, fw.bottom());
  SolveOptions o;
  o.invariant_bound = &too_small;
  EXPECT_THROW(solve(fw, o), std::logic_error);
}
