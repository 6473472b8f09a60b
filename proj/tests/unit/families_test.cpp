#include <gtest/gtest.h>

#include "gen.hpp"
#include "pcr/families.hpp"
#include "pcr/parse.hpp"

namespace pcr {
namespace {

TEST(Wphp, ClassAndArity) {
  for (unsigned n = 1; n <= 4; ++n) {
    const Formula f = wphp(n);
    EXPECT_EQ(classify(f), FormulaClass::Sigma2);
    EXPECT_EQ(r_arities(f), (std::set<std::size_t>{3 * n}));
    EXPECT_TRUE(free_atoms(f).empty());
  }
  EXPECT_THROW(wphp(0), Error);
}

TEST(Wphp, ExactFormulaForOne) {
  const Formula expected = parse_formula(
      "ex p1. ex p2. ex q1. ex q2. ex r1. "
      "((~(p1 <=> q1) | ~(p2 <=> q2)) & R(p1, p2, r1) & R(q1, q2, r1) | all s1. ~R(p1, p2, s1))");
  EXPECT_EQ(wphp(1), expected);
}

TEST(Wphp, EmptyOracleSatisfies) { EXPECT_TRUE(eval(wphp(1), {})); }

TEST(Wphp, ValidForOne) { EXPECT_TRUE(valid_q_bruteforce(wphp(1), 3)); }

TEST(Wphp, TrueOnRandomStructuresForTwo) {
  testing::Rng rng(21);
  const Formula f = wphp(2);
  for (int i = 0; i < 50; ++i) EXPECT_TRUE(eval(f, testing::random_structure(rng, {}, 6)));
}

TEST(Wphp, LinearLength) {
  std::vector<std::size_t> lens;
  for (unsigned n = 1; n <= 6; ++n) lens.push_back(length(wphp(n)));
  for (std::size_t i = 2; i < lens.size(); ++i) EXPECT_EQ(lens[i] - lens[i - 1], lens[1] - lens[0]);
}

}  // namespace
}  // namespace pcr
