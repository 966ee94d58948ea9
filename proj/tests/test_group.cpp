#include <gtest/gtest.h>

#include "bloch_forge/budget.hpp"
#include "bloch_forge/group.hpp"

using namespace bf;

TEST(Group, MatrixGroupOrders) {
  EXPECT_EQ(make_sl2(Ring::gf(2)).order(), 6u);
  EXPECT_EQ(make_gl2(Ring::gf(3)).order(), 48u);
  EXPECT_EQ(make_sl2(Ring::gf(8)).order(), 504u);
  EXPECT_EQ(make_gl2(Ring::gf(4)).order(), 180u);
  EXPECT_EQ(make_b2(Ring::gf(5)).order(), 80u);
  EXPECT_EQ(make_t2(Ring::gf(7)).order(), 36u);
  EXPECT_EQ(make_gm2(Ring::gf(5)).order(), 32u);
  EXPECT_EQ(make_n2(Ring::gf(9)).order(), 9u);
  EXPECT_EQ(make_n2_center(Ring::gf(5)).order(), 20u);
  // |SL2(Z/9)| = 9^3 (1 - 1/9) = 648
  EXPECT_EQ(make_sl2(Ring::zmod(9)).order(), 648u);
}

TEST(Group, Axioms) {
  for (const char* s : {"sl2(gf(2))", "gl2(gf(3))", "sl2(gf(5))", "b2(gf(7))", "cyclic(12)", "abelian(2,4)",
                        "product(cyclic(2),sl2(gf(2)))", "gl2(zmod(4))"}) {
    auto g = parse_group(s);
    EXPECT_TRUE(g.check_axioms()) << s;
  }
}

TEST(Group, ClosureAndSubgroup) {
  auto g = make_gl2(Ring::gf(3));
  auto sub = g.subgroup(g.closure({g.generators()[0]}));
  EXPECT_EQ(sub.group->order(), 3u);
  EXPECT_TRUE(sub.group->check_axioms());
  for (uint32_t a = 0; a < sub.group->order(); ++a)
    for (uint32_t b = 0; b < sub.group->order(); ++b)
      EXPECT_EQ(sub.embedding[sub.group->mul(a, b)], g.mul(sub.embedding[a], sub.embedding[b]));
  EXPECT_THROW(make_gl2(Ring::gf(9), 100), BudgetExceeded);
}

TEST(Group, AbelianTables) {
  auto g = FiniteGroup::abelian({2, 6});
  EXPECT_EQ(g.order(), 12u);
  EXPECT_TRUE(g.is_abelian());
  EXPECT_EQ(g.element_order(g.generators()[1]), 6u);
  EXPECT_FALSE(make_sl2(Ring::gf(3)).is_abelian());
}
