#include <gtest/gtest.h>

#include "gen.hpp"
#include "pcr/parse.hpp"
#include "pcr/prover.hpp"

namespace pcr {
namespace {

Sequent seq(const char* text) { return parse_sequent(text); }

void expect_proved(const Sequent& s) {
  const ProveResult r = prove(s);
  ASSERT_TRUE(r.valid()) << to_string(s);
  EXPECT_TRUE(check_pk(*r.proof).ok()) << to_string(s);
  EXPECT_EQ(r.proof->conclusion, s);
  EXPECT_EQ(r.stats.counted_sequents, counted_size(*r.proof));
  EXPECT_EQ(r.stats.max_line, max_line_length(*r.proof));
  const std::size_t c = cost(s);
  EXPECT_EQ(r.stats.cost_at_root, c);
  EXPECT_LE(r.stats.counted_sequents, kLineBound << c);
  EXPECT_LE(r.stats.max_line, kLengthFactor * length(s));
}

TEST(Prove, Identity) {
  const ProveResult r = prove(seq("p |- p"));
  ASSERT_TRUE(r.valid());
  EXPECT_EQ(r.stats.counted_sequents, 1u);
  EXPECT_EQ(r.proof->rule, RuleTag::AxId);
}

TEST(Prove, BaseCasesUseWeakening) {
  for (const char* s : {"q, r |- p, 1", "p, 0 |- q", "q, p |- r, p, s"}) {
    const ProveResult r = prove(seq(s));
    ASSERT_TRUE(r.valid()) << s;
    EXPECT_EQ(r.stats.counted_sequents, 1u) << s;
    EXPECT_TRUE(check_pk(*r.proof).ok());
  }
}

TEST(Prove, ValidityExample) { expect_proved(seq("|- (R(p) & R(~p)) => (R(q) | R(~q))")); }

TEST(Prove, ConnectivesAndRCases) {
  for (const char* s : {"|- p | ~p", "p & q |- q & p", "p | q |- q | p", "R(p) |- R(~~p)", "R(p & q) |- R(q & p)",
                        "R(1) |- R(p | ~p)", "R(p, q), p <=> r |- R(r, q)", "R(R(p)) |- R(R(~~p))",
                        "R(p) & R(~p) |- R(1), R(0)", "|- R(1), ~R(~0)"})
    expect_proved(seq(s));
}

TEST(Prove, InvalidSequentGivesCounterexample) {
  const Sequent s = seq("R(p) |-");
  const ProveResult r = prove(s);
  ASSERT_FALSE(r.valid());
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_FALSE(eval(s, *r.counterexample));
  const auto p = r.counterexample->atoms.at("p");
  EXPECT_TRUE(r.counterexample->contains(p ? "1" : "0"));
}

TEST(Prove, CounterexamplesFalsify) {
  for (const char* text : {"|-", "p |- q", "R(p) |- R(q)", "R(p & q) |- R(p)", "|- R(1) | R(0)", "p | q |- p & q"}) {
    const Sequent s = seq(text);
    const ProveResult r = prove(s);
    ASSERT_FALSE(r.valid()) << text;
    EXPECT_FALSE(eval(s, *r.counterexample)) << text;
  }
}

TEST(Prove, Deterministic) {
  const Sequent s = seq("R(p & q, r) |- R(q & p, ~~r)");
  EXPECT_EQ(prove(s).proof, prove(s).proof);
}

TEST(Prove, RejectsQuantifiers) { EXPECT_THROW(prove(seq("|- ex x. x | ~x")), Error); }

TEST(PremiseCosts, Examples) {
  EXPECT_EQ(premise_costs(seq("|- R(p)"), {true, 0}), (std::vector<std::size_t>{0, 0}));
  EXPECT_EQ(premise_costs(seq("|- p & p"), {true, 0}), (std::vector<std::size_t>{0, 0}));
  // cost(R(p & q)) is 2 (one connective, one non-constant argument).
  EXPECT_EQ(cost(seq("R(p & q) |-")), 2u);
  EXPECT_EQ(premise_costs(seq("R(p & q) |-"), {false, 0}), (std::vector<std::size_t>{1, 1}));
}

TEST(PremiseCosts, ConnectivesDropAndRStepsDropByOne) {
  EXPECT_EQ(premise_costs(seq("p |- ~q"), {true, 0}), (std::vector<std::size_t>{0}));
  EXPECT_EQ(premise_costs(seq("R(p) | R(q) |- R(q)"), {false, 0}), (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(premise_costs(seq("R(p, q) |- R(q, p)"), {true, 0}), (std::vector<std::size_t>{3, 3}));
  EXPECT_THROW(premise_costs(seq("p |- q"), {true, 0}), Error);
  EXPECT_THROW(premise_costs(seq("p |- q"), {true, 3}), Error);
}

TEST(Prove, RandomSuiteMeetsBounds) {
  testing::Rng rng(42);
  for (int i = 0; i < 60; ++i) {
    const Sequent s = testing::random_valid_sequent(rng, 8);
    const ProveResult r = prove(s);
    ASSERT_TRUE(r.valid()) << to_string(s);
    EXPECT_TRUE(check_pk(*r.proof).ok()) << to_string(s);
    EXPECT_EQ(r.proof->conclusion, s);
    EXPECT_LE(r.stats.counted_sequents, kLineBound << cost(s));
    EXPECT_LE(r.stats.max_line, kLengthFactor * length(s));
    if (r.stats.r_steps > 0) {
      EXPECT_EQ(r.stats.r_drop_min, 1u);
      EXPECT_EQ(r.stats.r_drop_max, 1u);
    }
  }
}

}  // namespace
}  // namespace pcr
