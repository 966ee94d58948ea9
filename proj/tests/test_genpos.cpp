#include <gtest/gtest.h>

#include <random>

#include "bloch_forge/genpos.hpp"

using namespace bf;

namespace {

std::vector<RVec> random_config(const Ring& r, unsigned n, size_t count, std::mt19937& rng) {
  std::uniform_int_distribution<Elem> el(0, static_cast<Elem>(r.size() - 1));
  std::vector<RVec> out;
  for (size_t i = 0; i < count; ++i) {
    RVec v(n);
    for (auto& x : v) x = el(rng);
    out.push_back(v);
  }
  return out;
}

// Random element of GL_n(R) as a product of elementary and diagonal unit matrices.
std::vector<RVec> random_gl(const Ring& r, unsigned n, std::mt19937& rng) {
  std::vector<RVec> m(n, RVec(n, 0));
  for (unsigned i = 0; i < n; ++i) m[i][i] = r.one();
  std::uniform_int_distribution<Elem> el(0, static_cast<Elem>(r.size() - 1));
  std::uniform_int_distribution<size_t> un(0, r.units().size() - 1);
  std::uniform_int_distribution<unsigned> ix(0, n - 1);
  for (int step = 0; step < 12; ++step) {
    unsigned i = ix(rng), j = ix(rng);
    if (i == j) {
      Elem u = r.units()[un(rng)];
      for (unsigned c = 0; c < n; ++c) m[i][c] = r.mul(u, m[i][c]);
    } else {
      Elem t = el(rng);
      for (unsigned c = 0; c < n; ++c) m[i][c] = r.add(m[i][c], r.mul(t, m[j][c]));
    }
  }
  return m;
}

RVec apply(const Ring& r, const std::vector<RVec>& m, const RVec& v) {
  RVec out(v.size(), 0);
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) out[i] = r.add(out[i], r.mul(m[i][j], v[j]));
  return out;
}

const char* kSmallRings[] = {"gf(2)", "gf(3)", "gf(4)", "gf(5)", "zmod(4)", "zmod(9)", "truncpoly(gf(2),2)"};

}  // namespace

TEST(GeneralPosition, Examples) {
  auto f3 = Ring::gf(3);
  EXPECT_TRUE(in_general_position(*f3, 2, {{1, 1}}, {{1, 0}, {0, 1}}));
  EXPECT_FALSE(in_general_position(*f3, 2, {{2, 0}}, {{1, 0}}));
  EXPECT_FALSE(in_general_position(*f3, 2, {{2, 0}}, {{1, 0}}, GPDecider::Oracle));
  EXPECT_THROW(in_general_position(*f3, 2, {{1, 1, 1}}), std::invalid_argument);
  // over Z/9 the pair (1,0), (1,3) spans a non-free summand
  auto z9 = Ring::zmod(9);
  EXPECT_FALSE(in_general_position(*z9, 2, {{1, 0}}, {{1, 3}}));
  EXPECT_FALSE(in_general_position(*z9, 2, {{1, 0}}, {{1, 3}}, GPDecider::Oracle));
  EXPECT_TRUE(in_general_position(*z9, 2, {{1, 0}}, {{1, 1}}, GPDecider::Oracle));
}

TEST(GeneralPosition, QuotedF7ConfigurationIsDependent) {
  auto f7 = Ring::gf(7);
  auto cfg = f7_quoted_configuration(*f7);
  ASSERT_EQ(cfg.size(), 9u);
  EXPECT_FALSE(in_general_position(*f7, 4, cfg));
  auto bad = first_dependent_subset(*f7, 4, cfg);
  ASSERT_TRUE(bad.has_value());
  EXPECT_EQ(*bad, (std::vector<size_t>{0, 1, 6, 8}));
}

TEST(GeneralPositionProperty, OracleAgreesWithFastPath) {
  std::mt19937 rng(3);
  for (const char* d : kSmallRings) {
    auto r = Ring::parse(d);
    for (int i = 0; i < 1000; ++i) {
      unsigned n = 2 + i % 2;
      auto vs = random_config(*r, n, 1 + i % 2, rng);
      auto S = random_config(*r, n, i % 3, rng);
      EXPECT_EQ(in_general_position(*r, n, vs, S, GPDecider::Oracle), in_general_position(*r, n, vs, S)) << d;
    }
  }
}

TEST(GeneralPositionProperty, GLAndUnitInvariance) {
  std::mt19937 rng(5);
  for (const char* d : {"gf(3)", "gf(4)", "gf(5)", "gf(7)", "zmod(9)", "zmod(25)", "truncpoly(gf(4),2)"}) {
    auto r = Ring::parse(d);
    std::uniform_int_distribution<size_t> un(0, r->units().size() - 1);
    for (int i = 0; i < 50; ++i) {
      unsigned n = 2 + i % 2;
      auto vs = random_config(*r, n, 2, rng);
      auto S = random_config(*r, n, 2, rng);
      bool base = in_general_position(*r, n, vs, S);
      auto g = random_gl(*r, n, rng);
      std::vector<RVec> gvs, gS;
      for (const auto& v : vs) gvs.push_back(apply(*r, g, v));
      for (const auto& v : S) gS.push_back(apply(*r, g, v));
      EXPECT_EQ(in_general_position(*r, n, gvs, gS), base) << d;
      Elem u = r->units()[un(rng)];
      for (auto& x : vs[0]) x = r->mul(u, x);
      EXPECT_EQ(in_general_position(*r, n, vs, S), base) << d;
    }
  }
}

TEST(MaxGeneralPosition, Tables) {
  // Exhaustive arc sizes; n = 3 and n = 4 rows differ from the quoted table for q = 8, 9 and q = 5, 7.
  std::vector<uint64_t> qs{2, 3, 4, 5, 7, 8, 9};
  std::vector<unsigned> n2{3, 4, 5, 6, 8, 9, 10}, n3{4, 4, 6, 6, 8, 10, 10}, n4{5, 5, 5, 6, 8};
  for (size_t i = 0; i < qs.size(); ++i) {
    auto r = Ring::gf(qs[i]);
    auto a = max_general_position(*r, 2);
    auto b = max_general_position(*r, 3);
    EXPECT_TRUE(a.exhaustive && b.exhaustive);
    EXPECT_EQ(a.size, n2[i]) << qs[i];
    EXPECT_EQ(b.size, n3[i]) << qs[i];
    EXPECT_TRUE(in_general_position(*r, 3, b.witness));
    if (i < n4.size()) {
      auto c = max_general_position(*r, 4);
      EXPECT_EQ(c.size, n4[i]) << qs[i];
      EXPECT_TRUE(in_general_position(*r, 4, c.witness));
    }
  }
}

TEST(MaxGeneralPosition, ResidueFieldOnly) {
  for (unsigned n : {2u, 3u}) {
    auto z9 = max_general_position(*Ring::zmod(9), n);
    auto f3 = max_general_position(*Ring::gf(3), n);
    EXPECT_EQ(z9.size, f3.size);
    EXPECT_EQ(z9.witness, f3.witness);
    EXPECT_TRUE(in_general_position(*Ring::zmod(9), n, z9.witness));
    auto t4 = max_general_position(*Ring::parse("truncpoly(gf(4),2)"), n);
    EXPECT_EQ(t4.size, max_general_position(*Ring::gf(4), n).size);
  }
}

TEST(MaxGeneralPosition, BudgetGivesLowerBound) {
  auto r = Ring::gf(9);
  auto m = max_general_position(*r, 3, 3);
  EXPECT_FALSE(m.exhaustive);
  EXPECT_GE(m.size, 4u);
  EXPECT_THROW(max_general_position(*r, 1), std::invalid_argument);
}

TEST(C2, ExactValues) {
  EXPECT_EQ(c2_exact(*Ring::gf(4)).value, 5u);
  EXPECT_EQ(c2_exact(*Ring::gf(2)).value, 3u);
  EXPECT_EQ(c2_exact(*Ring::zmod(9)).value, 4u);
  for (const char* d : {"gf(3)", "gf(5)", "gf(7)", "gf(8)", "gf(9)", "zmod(25)", "truncpoly(gf(3),2)"}) {
    auto r = Ring::parse(d);
    EXPECT_EQ(c2_exact(*r).value, max_general_position(*r, 2).size) << d;
  }
}

TEST(N3Conditions, ListedConditionsMissOneDeterminant) {
  // Both sides are false for every tuple over F2.
  auto f2 = verify_n3_conditions(*Ring::gf(2), 1);
  EXPECT_TRUE(f2.equivalent);
  EXPECT_EQ(f2.tuples, 4u);
  EXPECT_EQ(f2.in_general_position, 0u);
  auto f5 = verify_n3_conditions(*Ring::gf(5), 2);
  EXPECT_FALSE(f5.equivalent);
  EXPECT_FALSE(f5.counterexample_in_gp);
  EXPECT_EQ(f5.counterexample, (std::vector<std::pair<Elem, Elem>>{{2, 4}, {3, 2}}));
  EXPECT_TRUE(verify_n3_conditions(*Ring::gf(5), 2, true).equivalent);
  EXPECT_TRUE(verify_n3_conditions(*Ring::gf(7), 2, true).equivalent);
  EXPECT_EQ(verify_n3_conditions(*Ring::gf(5), 1).equivalent, true);
}
