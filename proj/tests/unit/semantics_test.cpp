#include <gtest/gtest.h>

#include "gen.hpp"
#include "pcr/parse.hpp"
#include "pcr/semantics.hpp"

namespace pcr {
namespace {

Formula f(const char* text) { return parse_formula(text); }

Structure make(std::map<std::string, bool> atoms, std::set<std::string> oracle) { return {std::move(atoms), std::move(oracle)}; }

TEST(Eval, ValidityExampleInstance) {
  EXPECT_TRUE(eval(f("(R(p) & R(~p)) => (R(q) | R(~q))"), make({{"p", true}, {"q", false}}, {})));
}

TEST(Eval, ConstantsAndNullaryR) {
  EXPECT_TRUE(eval(f("1"), {}));
  EXPECT_FALSE(eval(f("0"), {}));
  EXPECT_TRUE(eval(f("R()"), make({}, {""})));
  EXPECT_FALSE(eval(f("R()"), {}));
}

TEST(Eval, OracleReadsArgumentString) {
  const Structure s = make({{"p", true}}, {"10"});
  EXPECT_TRUE(eval(f("R(p, ~p)"), s));
  EXPECT_FALSE(eval(f("R(~p, p)"), s));
}

TEST(Eval, Quantifiers) {
  EXPECT_TRUE(eval(f("ex x. x"), {}));
  EXPECT_FALSE(eval(f("all x. x"), {}));
  EXPECT_TRUE(eval(f("all x. R(x)"), make({}, {"0", "1"})));
  EXPECT_TRUE(eval(f("all x. ex y. (x <=> y)"), {}));
}

TEST(Eval, UnassignedAtomIsNamed) {
  try {
    eval(f("p & q"), make({{"p", true}}, {}));
    FAIL() << "expected EvalError";
  } catch (const EvalError& e) {
    EXPECT_EQ(e.atom(), "q");
  }
}

TEST(Eval, SequentFormula) {
  EXPECT_EQ(sequent_formula(parse_sequent("|-")), f("0"));
  EXPECT_EQ(sequent_formula(parse_sequent("p, q |- r")), f("~p | ~q | r"));
  EXPECT_TRUE(eval(parse_sequent("p |- p"), make({{"p", false}}, {})));
}

TEST(Eval, DependsOnlyOnQueriedStrings) {
  testing::Rng rng(1);
  testing::GenOptions opt;
  opt.max_arity = 2;
  for (int i = 0; i < 300; ++i) {
    const Formula g = testing::random_formula(rng, opt);
    Structure s = testing::random_structure(rng, opt.atoms, 2);
    for (const auto& one : testing::random_structure(rng, {}, 1).oracle) s.oracle.insert(one);
    const bool before = eval(g, s);
    for (const auto& extra : testing::random_structure(rng, {}, 5).oracle) s.oracle.insert(extra);
    s.oracle.insert("0000000");
    EXPECT_EQ(eval(g, s), before) << to_string(g);
  }
}

TEST(Structure, JsonRoundTrip) {
  const Structure s = make({{"p", true}, {"q", false}}, {"", "010"});
  EXPECT_EQ(structure_from_json(to_json(s)), s);
  EXPECT_EQ(structure_from_json(R"({"atoms": {"p": 1}, "oracle": ["1"]})"), make({{"p", true}}, {"1"}));
  EXPECT_THROW(structure_from_json(R"({"atoms": {"p": 2}, "oracle": []})"), Error);
  EXPECT_THROW(structure_from_json(R"({"atoms": {}, "oracle": ["012"]})"), Error);
}

TEST(SatPc, Examples) {
  const SatResult a = sat_pc(f("R(p) & ~R(1)"));
  ASSERT_TRUE(a.sat());
  EXPECT_EQ(*a.witness, make({{"p", false}}, {"0"}));
  EXPECT_EQ(sat_pc(f("0")).status, SatStatus::Unsat);
  EXPECT_EQ(sat_pc(f("~((R(p) & R(~p)) => (R(q) | R(~q)))")).status, SatStatus::Unsat);
}

TEST(SatPc, EqualStringsShareOneUnknown) {
  EXPECT_FALSE(sat_pc(f("R(p & p) & ~R(p)")).sat());
  EXPECT_FALSE(sat_pc(f("R(1, p) & ~R(~0, p | p)")).sat());
  EXPECT_TRUE(sat_pc(f("R(p) & ~R(~p)")).sat());
}

TEST(SatPc, RejectsQuantifiers) { EXPECT_THROW(sat_pc(f("all x. x")), Error); }

TEST(Valid, Examples) {
  EXPECT_TRUE(valid_pc(f("(R(p) & R(~p)) => (R(q) | R(~q))")));
  EXPECT_FALSE(valid_pc(f("R(p)")));
  EXPECT_TRUE(sequent_valid(parse_sequent("R(1) |- R(1)")));
  EXPECT_FALSE(sequent_valid(parse_sequent("|-")));
}

TEST(Valid, CounterexampleFalsifies) {
  const Sequent s = parse_sequent("R(p) |- R(q)");
  const auto w = counterexample(s);
  ASSERT_TRUE(w.has_value());
  EXPECT_FALSE(eval(s, *w));
  EXPECT_FALSE(counterexample(parse_sequent("p |- p")).has_value());
}

TEST(SatPi1, Examples) {
  const Pi1Result a = sat_pi1(f("all s. ~R(s)"));
  ASSERT_EQ(a.status, SatStatus::Sat);
  EXPECT_TRUE(a.witness->oracle.empty());
  EXPECT_EQ(sat_pi1(f("(all s. ~R(s)) & R(1)")).status, SatStatus::Unsat);
}

TEST(SatPi1, FreeAtomsAreExistential) {
  const Pi1Result r = sat_pi1(f("all x. (R(x) <=> p) & R(0)"));
  ASSERT_EQ(r.status, SatStatus::Sat);
  EXPECT_TRUE(r.witness->atoms.at("p"));
  EXPECT_TRUE(eval(f("all x. (R(x) <=> p) & R(0)"), *r.witness));
}

TEST(SatPi1, Budgets) {
  SolverLimits limits;
  limits.max_universal_vars = 2;
  const Pi1Result r = sat_pi1(f("all x. all y. all z. R(x, y, z)"), limits);
  EXPECT_EQ(r.status, SatStatus::BudgetExceeded);
  EXPECT_FALSE(r.budget_reason.empty());
  limits = {};
  limits.max_oracle_strings = 3;
  EXPECT_EQ(sat_pi1(f("all x. all y. R(x, y)"), limits).status, SatStatus::BudgetExceeded);
  limits = {};
  EXPECT_EQ(sat_pi1(f("all x. all y. R(x, y)"), limits).status, SatStatus::Sat);
}

TEST(SatPi1, RejectsOtherClasses) {
  EXPECT_THROW(sat_pi1(f("ex x. R(x)")), Error);
  EXPECT_THROW(sat_pi1(f("all x. ex y. R(x, y)")), Error);
}

TEST(SatPi1, ParallelMatchesSerial) {
  const Formula g = f("(all x. all y. R(x, y) | R(y, x)) & (all z. ~R(z, z) | p) & ~p");
  const Pi1Result a = sat_pi1(g, {}, 1), b = sat_pi1(g, {}, 4);
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.witness, b.witness);
}

TEST(Prenex, RenamesApart) {
  const Prenex p = prenex_pi1(f("(all x. R(x)) & (all x. ~R(x) | q)"));
  ASSERT_EQ(p.universals.size(), 2u);
  EXPECT_NE(p.universals[0], p.universals[1]);
  EXPECT_TRUE(p.matrix.is_quantifier_free());
}

TEST(BruteForce, Examples) {
  EXPECT_FALSE(valid_q_bruteforce(f("all x. R(x)")));
  EXPECT_TRUE(valid_q_bruteforce(f("ex x. (R(x) | ~R(x))")));
  EXPECT_THROW(valid_q_bruteforce(f("R(0) | R(0, 1)")), Error);
  EXPECT_THROW(valid_q_bruteforce(f("R(p)")), Error);
  EXPECT_THROW(valid_q_bruteforce(f("R(0,0,0,0,0)")), Error);
}

TEST(BatchEvaluator, MatchesEval) {
  testing::Rng rng(5);
  testing::GenOptions opt;
  opt.atoms = {"a", "b", "c"};
  opt.max_arity = 2;
  for (int i = 0; i < 100; ++i) {
    const Formula g = testing::random_formula(rng, opt);
    const Structure st = testing::random_structure(rng, {}, 2);
    BatchEvaluator be(g, opt.atoms);
    std::vector<std::uint64_t> lanes(3, 0);
    for (std::uint64_t lane = 0; lane < 8; ++lane)
      for (std::size_t v = 0; v < 3; ++v)
        if ((lane >> v) & 1) lanes[v] |= std::uint64_t{1} << lane;
    const std::uint64_t out = be.eval(lanes, OracleIndex(st.oracle));
    for (std::uint64_t lane = 0; lane < 8; ++lane) {
      Structure s = st;
      for (std::size_t v = 0; v < 3; ++v) s.atoms[opt.atoms[v]] = (lane >> v) & 1;
      EXPECT_EQ(((out >> lane) & 1) != 0, eval(g, s)) << to_string(g);
    }
  }
}

}  // namespace
}  // namespace pcr
