#include <gtest/gtest.h>

#include <random>

#include "bloch_forge/group.hpp"
#include "bloch_forge/homology.hpp"

using namespace bf;

namespace {

AbGroup Zn(long long n) { return AbGroup::cyclic(Integer(n)); }

BarChain random_chain(const FiniteGroup& g, int n, std::mt19937& rng, int terms) {
  std::uniform_int_distribution<uint32_t> el(1, static_cast<uint32_t>(g.order() - 1));
  std::uniform_int_distribution<int> co(-3, 3);
  BarChain c(n);
  for (int i = 0; i < terms; ++i) {
    BarTuple t;
    for (int j = 0; j < n; ++j) t.push_back(el(rng));
    c.add(t, co(rng));
  }
  return c;
}

}  // namespace

TEST(Homology, SmallExamples) {
  auto s3 = make_sl2(Ring::gf(2));
  EXPECT_EQ(bar_homology(s3, 1), Zn(2));
  EXPECT_EQ(bar_homology(s3, 2), AbGroup());
  EXPECT_EQ(bar_homology(s3, 3), Zn(6));
  EXPECT_EQ(bar_homology(FiniteGroup::cyclic(4), 3), Zn(4));
  EXPECT_EQ(bar_homology(FiniteGroup::abelian({2, 2}), 2), Zn(2));
}

TEST(Homology, BoundaryExamples) {
  auto g = FiniteGroup::cyclic(5);
  uint32_t x = 2, xi = g.inv(x);
  BarChain c = BarChain::symbol({x, xi});
  BarChain expect(1);
  expect.add(BarTuple{xi}, 1);
  expect.add(BarTuple{x}, 1);
  EXPECT_EQ(bar_boundary(g, c), expect);
}

TEST(HomologyProperty, BoundarySquaredZeroSL2F5) {
  auto g = make_sl2(Ring::gf(5));
  std::mt19937 rng(7);
  for (int i = 0; i < 100; ++i) {
    BarChain c = random_chain(g, 3, rng, 4);
    EXPECT_TRUE(bar_boundary(g, bar_boundary(g, c)).is_zero());
  }
}

TEST(HomologyProperty, BarMatchesKunneth) {
  std::vector<std::vector<uint64_t>> types{{2}, {3}, {4}, {5}, {6}, {7}, {8}, {2, 2}, {2, 4}, {3, 3}, {2, 6}, {2, 2, 2}};
  for (const auto& t : types)
    for (int n = 1; n <= 3; ++n) {
      auto g = FiniteGroup::abelian(t);
      EXPECT_EQ(bar_homology(g, n), abelian_homology_group(t, n)) << "order " << g.order() << " degree " << n;
    }
}

TEST(HomologyProperty, ExplicitCyclesGenerate) {
  for (std::vector<uint64_t> t : {std::vector<uint64_t>{2, 2}, {2, 4}, {3, 3}, {2, 2, 2}})
    for (int n = 2; n <= 3; ++n) {
      auto g = FiniteGroup::abelian(t);
      auto ah = abelian_homology(g, abelian_basis(g), n);
      BarHomology h(g, n);
      ASSERT_EQ(h.group(), ah.group);
      auto mods = h.moduli();
      IntMatrix m(mods.size(), 0);
      for (uint32_t i = 0; i < mods.size(); ++i) m.append_column({{i, mods[i]}});
      Integer prod(1);
      for (size_t i = 0; i < ah.cycles.size(); ++i) {
        EXPECT_TRUE(bar_boundary(g, ah.cycles[i]).is_zero());
        m.append_column(sparse_of(h.class_of(ah.cycles[i])));
        prod = prod * ah.orders[i];
      }
      // Surjective with |⊕ Z/orders| = |H_n|: the classes form a basis.
      EXPECT_TRUE(cokernel(m).is_trivial());
      EXPECT_EQ(prod, h.group().order());
    }
}

TEST(HomologyProperty, OrderAnnihilates) {
  for (const char* s : {"sl2(gf(2))", "b2(gf(3))", "abelian(2,4)", "cyclic(6)", "gm2(gf(3))"}) {
    auto g = parse_group(s);
    for (int n = 1; n <= 3; ++n)
      for (const auto& d : bar_homology(g, n).torsion)
        EXPECT_TRUE(Integer::mod(Integer(static_cast<long long>(g.order())), d).is_zero()) << s << " " << n;
  }
}

TEST(HomologyProperty, FirstHomologyIsAbelianization) {
  for (const char* s : {"sl2(gf(2))", "sl2(gf(3))", "gl2(gf(3))", "b2(gf(5))", "gm2(gf(5))", "abelian(2,6)"}) {
    auto g = parse_group(s);
    EXPECT_EQ(bar_homology(g, 1), abelianization(g)) << s;
  }
}

TEST(Homology, ShuffleCycles) {
  auto g = FiniteGroup::abelian({4, 2});
  BarHomology h(g, 2);
  uint32_t x = 1, y = 4;  // generators of the two factors
  BarChain c = shuffle_cycle(g, {x, y});
  EXPECT_TRUE(bar_boundary(g, c).is_zero());
  EXPECT_FALSE(h.class_of(c) == IntVector(h.moduli().size()));
  // antisymmetry and bilinearity up to boundaries
  IntVector zero(h.moduli().size());
  EXPECT_EQ(h.class_of(shuffle_cycle(g, {x, x})), zero);
  EXPECT_EQ(h.class_of(c + shuffle_cycle(g, {y, x})), zero);
  uint32_t x2 = g.mul(x, x);
  BarChain lin = shuffle_cycle(g, {x2, y}) - shuffle_cycle(g, {x, y}) * 2;
  EXPECT_EQ(h.class_of(lin), zero);
  EXPECT_THROW(shuffle_cycle(make_sl2(Ring::gf(2)), {1, 2}), std::invalid_argument);
}

TEST(Homology, ShuffleClassInTorus) {
  // c(diag(3,1), diag(3,3^-1)) over F7 is nonzero in H2(Z/6 x Z/6) = Z/6.
  auto r = Ring::gf(7);
  auto t2 = make_t2(r);
  uint32_t g = *t2.find(mat_diag(*r, 3, 1));
  uint32_t k = *t2.find(mat_diag(*r, 3, r->inv(3)));
  BarHomology h(t2, 2);
  EXPECT_EQ(h.group(), Zn(6));
  EXPECT_NE(h.class_of(shuffle_cycle(t2, {g, k})), IntVector(1));
}

TEST(Homology, ClassOfRejectsNonCycles) {
  auto g = FiniteGroup::cyclic(3);
  BarHomology h(g, 1);
  EXPECT_NO_THROW(h.class_of(BarChain::symbol({1})));
  BarHomology h2(g, 2);
  EXPECT_THROW(h2.class_of(BarChain::symbol({1, 1})), std::invalid_argument);
}

TEST(TransferProperty, ChainMapAndCorRes) {
  std::mt19937 rng(11);
  struct Case {
    const char* group;
    int n;
  };
  for (Case c : {Case{"sl2(gf(2))", 3}, Case{"b2(gf(3))", 2}, Case{"abelian(4,2)", 3}, Case{"gm2(gf(3))", 2}}) {
    auto g = parse_group(c.group);
    std::uniform_int_distribution<uint32_t> el(1, static_cast<uint32_t>(g.order() - 1));
    BarHomology hg(g, c.n);
    auto gens = hg.generators();
    for (int trial = 0; trial < 3; ++trial) {
      auto h_el = g.closure({el(rng)});
      if (h_el.size() == g.order()) continue;
      auto sub = g.subgroup(h_el);
      long long index = static_cast<long long>(g.order() / h_el.size());
      // chain map on random chains
      for (int i = 0; i < 5; ++i) {
        BarChain z = random_chain(g, c.n, rng, 3);
        EXPECT_EQ(bar_boundary(g, transfer(g, h_el, z)), transfer(g, h_el, bar_boundary(g, z))) << c.group;
      }
      for (const auto& z : gens) {
        BarChain back = to_parent(sub, to_sub(sub, transfer(g, h_el, z)));
        IntVector lhs = hg.class_of(back), rhs = hg.class_of(z * index);
        EXPECT_EQ(reduce_mod(lhs, hg.moduli()), reduce_mod(rhs, hg.moduli())) << c.group;
      }
    }
  }
}

TEST(Stable, MatchesBar) {
  for (const char* s : {"sl2(gf(2))", "b2(gf(3))", "gl2(gf(2))", "gm2(gf(3))"})
    for (int n = 1; n <= 3; ++n) {
      auto g = parse_group(s);
      EXPECT_EQ(stable_homology(g, n), bar_homology(g, n)) << s << " " << n;
    }
}

TEST(Stable, SeedIndependence) {
  auto g = make_sl2(Ring::gf(4));
  AbGroup first = stable_element_homology(g, 2, 3, 1).group;
  for (unsigned seed : {2u, 3u}) EXPECT_EQ(stable_element_homology(g, 2, 3, seed).group, first);
  EXPECT_EQ(first, Zn(2));
  EXPECT_EQ(stable_homology(g, 3), Zn(30));
}

TEST(Stable, SylowOrders) {
  auto g = make_gl2(Ring::gf(3));
  EXPECT_EQ(sylow_subgroup(g, 2).size(), 16u);
  EXPECT_EQ(sylow_subgroup(g, 3).size(), 3u);
}

TEST(Module, TrivialCoefficientsMatchBar) {
  for (const char* s : {"sl2(gf(2))", "cyclic(4)", "abelian(2,2)"}) {
    auto g = parse_group(s);
    auto m = GModule::trivial(g, {Integer(0)});
    EXPECT_EQ(module_homology(m, 0), AbGroup::from_factors(1, {}));
    for (int n = 1; n <= 2; ++n) EXPECT_EQ(module_homology(m, n), bar_homology(g, n)) << s;
  }
  // universal coefficients: H_1(Z/4; Z/2) = Z/2, H_2(Z/4; Z/2) = Z/2
  auto c4 = FiniteGroup::cyclic(4);
  auto m2 = GModule::trivial(c4, {Integer(2)});
  EXPECT_EQ(module_homology(m2, 1), Zn(2));
  EXPECT_EQ(module_homology(m2, 2), Zn(2));
}

TEST(Module, SwapAndSignModules) {
  auto c2 = FiniteGroup::cyclic(2);
  // Z[C2] is induced: H_0 = Z, higher homology vanishes.
  IntMatrix swap(2, 0);
  swap.append_column({{1, 1}});
  swap.append_column({{0, 1}});
  GModule reg(c2, {Integer(0), Integer(0)}, {swap});
  EXPECT_EQ(coinvariants(reg), AbGroup::from_factors(1, {}));
  EXPECT_EQ(module_homology(reg, 1), AbGroup());
  EXPECT_EQ(module_homology(reg, 2), AbGroup());
  // Z with the sign action: Z/2, 0, Z/2.
  IntMatrix neg(1, 0);
  neg.append_column({{0, -1}});
  GModule sign(c2, {Integer(0)}, {neg});
  EXPECT_EQ(module_homology(sign, 0), Zn(2));
  EXPECT_EQ(module_homology(sign, 1), AbGroup());
  EXPECT_EQ(module_homology(sign, 2), Zn(2));
}

TEST(Module, RejectsInconsistentActions) {
  auto c2 = FiniteGroup::cyclic(2);
  IntMatrix two(1, 0);
  two.append_column({{0, 2}});
  EXPECT_THROW(GModule(c2, {Integer(0)}, {two}), std::invalid_argument);
}
