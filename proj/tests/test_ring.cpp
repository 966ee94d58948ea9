#include <gtest/gtest.h>

#include <random>

#include "bloch_forge/ring.hpp"

using namespace bf;

namespace {

const char* kFleet[] = {"gf(2)", "gf(3)", "gf(4)", "gf(5)", "gf(7)", "gf(8)", "gf(9)", "gf(16)", "gf(27)",
                        "gf(32)", "zmod(9)", "zmod(25)", "zmod(27)", "zmod(8)", "truncpoly(gf(4),2)",
                        "truncpoly(gf(3),3)", "truncpoly(gf(9),2)"};

// Brute force element order.
uint64_t order_of(const Ring& r, Elem x) {
  uint64_t k = 1;
  for (Elem y = x; y != r.one(); y = r.mul(y, x)) ++k;
  return k;
}

}  // namespace

TEST(Ring, Examples) {
  auto z9 = Ring::parse("zmod(9)");
  EXPECT_EQ(z9->size(), 9u);
  EXPECT_EQ(z9->units().size(), 6u);
  EXPECT_FALSE(z9->is_unit(3));
  EXPECT_TRUE(z9->is_unit(2));

  auto f8 = Ring::parse("gf(8, poly=[1,1,0,1])");
  EXPECT_EQ(f8->units().size(), 7u);
  Elem x = f8->parse_element("x");
  EXPECT_EQ(f8->pow(x, 3), f8->add(x, f8->one()));
  EXPECT_EQ(f8->name(), "gf(8)");

  auto f4 = Ring::parse("gf(4)");
  Elem a = f4->field_generator();
  EXPECT_EQ(f4->mul(a, a), f4->add(a, 1));

  auto r = Ring::parse("truncpoly(gf(4), 2)");
  EXPECT_EQ(r->size(), 16u);
  EXPECT_EQ(r->units().size(), 12u);
  EXPECT_EQ(r->residue_field()->size(), 4u);
  EXPECT_TRUE(r->is_unit(r->parse_element("t+1")));
  Elem t = r->parse_element("t");
  EXPECT_EQ(r->mul(t, t), 0u);

  auto z25 = Ring::parse("Z/25");
  EXPECT_EQ(z25->residue(7), 2u);
  EXPECT_EQ(z25->residue_field()->size(), 5u);
}

TEST(Ring, DefaultModuli) {
  EXPECT_EQ(default_modulus(2, 2), (std::vector<unsigned>{1, 1, 1}));
  EXPECT_EQ(default_modulus(2, 3), (std::vector<unsigned>{1, 1, 0, 1}));
  EXPECT_EQ(default_modulus(3, 2), (std::vector<unsigned>{1, 0, 1}));
  EXPECT_EQ(default_modulus(2, 4), (std::vector<unsigned>{1, 1, 0, 0, 1}));
  EXPECT_FALSE(is_irreducible({1, 0, 1}, 2));
  EXPECT_THROW(Ring::parse("gf(4, poly=[1,0,1])"), std::invalid_argument);
  EXPECT_THROW(Ring::parse("gf(6)"), std::invalid_argument);
  EXPECT_THROW(Ring::parse("zmod(12)"), std::invalid_argument);
}

TEST(Ring, UnitsGroupExamples) {
  EXPECT_EQ(Ring::parse("gf(7)")->units_group().factors, (std::vector<uint64_t>{6}));
  EXPECT_EQ(Ring::parse("zmod(9)")->units_group().factors, (std::vector<uint64_t>{6}));
  // 12 units: elementary divisors 2, 2, 3, i.e. invariant factors 2 | 6
  EXPECT_EQ(Ring::parse("truncpoly(gf(4),2)")->units_group().factors, (std::vector<uint64_t>{2, 6}));
  EXPECT_EQ(Ring::parse("zmod(8)")->units_group().factors, (std::vector<uint64_t>{2, 2}));
  EXPECT_TRUE(Ring::parse("gf(2)")->units_group().factors.empty());
}

TEST(RingProperty, AxiomsAndResidue) {
  for (const char* name : kFleet) {
    SCOPED_TRACE(name);
    auto r = Ring::parse(name);
    auto k = r->residue_field();
    size_t maximal = 0;
    for (Elem x = 0; x < r->size(); ++x) {
      if (!r->is_unit(x)) {
        ++maximal;
        EXPECT_EQ(r->residue(x), 0u);
      } else {
        EXPECT_EQ(r->mul(x, r->inv(x)), r->one());
        EXPECT_NE(r->residue(x), 0u);
      }
      EXPECT_EQ(r->add(x, r->neg(x)), 0u);
      EXPECT_EQ(r->parse_element(r->str(x)), x);
    }
    EXPECT_EQ(maximal + r->units().size(), r->size());
    if (r->size() <= 64) {
      for (Elem x = 0; x < r->size(); ++x)
        for (Elem y = 0; y < r->size(); ++y) {
          ASSERT_EQ(k->add(r->residue(x), r->residue(y)), r->residue(r->add(x, y)));
          ASSERT_EQ(k->mul(r->residue(x), r->residue(y)), r->residue(r->mul(x, y)));
          for (Elem z = 0; z < r->size(); z += 3) {
            ASSERT_EQ(r->mul(x, r->add(y, z)), r->add(r->mul(x, y), r->mul(x, z)));
            ASSERT_EQ(r->mul(x, r->mul(y, z)), r->mul(r->mul(x, y), z));
          }
        }
    }
  }
}

TEST(RingProperty, DiscreteLog) {
  std::mt19937_64 rng(3);
  for (const char* name : kFleet) {
    SCOPED_TRACE(name);
    auto r = Ring::parse(name);
    const auto& ug = r->units_group();
    EXPECT_EQ(ug.order(), r->units().size());
    for (size_t i = 0; i + 1 < ug.factors.size(); ++i) EXPECT_EQ(ug.factors[i + 1] % ug.factors[i], 0u);
    for (size_t i = 0; i < ug.rank(); ++i) EXPECT_EQ(order_of(*r, ug.generators[i]), ug.factors[i]);
    for (auto d : ug.dlog(r->one())) EXPECT_EQ(d, 0u);
    const auto& us = r->units();
    for (int t = 0; t < 1000; ++t) {
      Elem x = us[rng() % us.size()], y = us[rng() % us.size()];
      auto a = ug.dlog(x), b = ug.dlog(y), c = ug.dlog(r->mul(x, y));
      for (size_t i = 0; i < ug.rank(); ++i) ASSERT_EQ((a[i] + b[i]) % ug.factors[i], c[i]);
    }
  }
}
