#include <gtest/gtest.h>

#include "bloch_forge/chains.hpp"

using namespace bf;

TEST(Templates, BuiltinCounts) {
  const auto& t = builtin_templates();
  EXPECT_EQ(t.at("X").terms.size(), 16u);
  EXPECT_EQ(t.at("Y").terms.size(), 16u);
  EXPECT_EQ(t.at("Z").terms.size(), 14u);
  EXPECT_EQ(t.at("W").terms.size(), 66u);
  EXPECT_EQ(t.at("W").degree, 3);
  EXPECT_FALSE(builtin_template_text().empty());
}

TEST(Templates, NormalizedSizesOverF5) {
  auto d = build_d3_chains(*Ring::gf(5), 2);
  EXPECT_EQ(d.X.size(), 16u);
  EXPECT_EQ(d.Y.size(), 15u);
  EXPECT_EQ(d.Z.size(), 10u);
  EXPECT_EQ(d.W.size(), 60u);
}

TEST(Templates, ParseErrors) {
  EXPECT_THROW(parse_templates("[X]\n1 (a,1) | (1,a)\n1 (a,1) | (1,a) | (a,a)\n"), TemplateError);
  EXPECT_THROW(parse_templates("1 (a,1) | (1,a)\n"), TemplateError);
  EXPECT_THROW(parse_templates("[X]\nfoo (a,1) | (1,a)\n"), TemplateError);
  auto f5 = Ring::gf(5);
  EXPECT_EQ(eval_template_matrix(*f5, "(a,1)", 2), mat_diag(*f5, 2, 1));
  EXPECT_THROW(eval_template_matrix(*f5, "(a-1,1)", 1), TemplateError);
  auto ok = parse_templates("[X]\n1 (a,1) | (1,a)\n-1 {1,a,1} | (a,a)\n");
  EXPECT_EQ(ok.at("X").terms.size(), 2u);
  EXPECT_EQ(ok.at("X").terms[1].coef, -1);
}

TEST(ChainIdentity, HoldsOnFleet) {
  for (const char* d : {"gf(4)", "gf(5)", "gf(7)", "gf(8)", "gf(9)", "gf(11)", "gf(13)", "zmod(25)", "zmod(49)"}) {
    auto r = Ring::parse(d);
    size_t checked = 0;
    for (Elem a = 0; a < r->size(); ++a) {
      if (!d3_evaluable(*r, a)) continue;
      auto rep = verify_d3_identity(*r, a);
      EXPECT_TRUE(rep.holds) << d << " a=" << a;
      EXPECT_EQ(rep.residual_terms, 0u);
      ++checked;
    }
    EXPECT_GT(checked, 0u) << d;
  }
  EXPECT_FALSE(d3_evaluable(*Ring::gf(5), 1));
  EXPECT_THROW(verify_d3_identity(*Ring::gf(5), 1), std::invalid_argument);
}

TEST(ChainIdentity, DetectsBrokenTemplate) {
  auto t = builtin_templates();
  t.at("X").terms.pop_back();
  EXPECT_FALSE(verify_d3_identity(*Ring::gf(7), 3, t).holds);
}

TEST(ChainReductions, F5) {
  auto r = Ring::gf(5);
  for (Elem a : {2, 3, 4}) {
    auto rep = verify_d3_reductions(r, a);
    EXPECT_TRUE(rep.boundary_expansion) << a;
    EXPECT_TRUE(rep.y_is_cycle) << a;
    EXPECT_TRUE(rep.y_equals_shuffles) << a;
    EXPECT_TRUE(rep.y_equals_target) << a;
    EXPECT_TRUE(rep.z_is_cycle) << a;
    EXPECT_TRUE(rep.z_equals_shuffles) << a;
  }
}

TEST(ChainReductions, RhoCycle) {
  auto rep = rho_cycle_check(Ring::gf(5), 2);
  EXPECT_TRUE(rep.h_is_cycle);
  EXPECT_TRUE(rep.solvable);
  EXPECT_TRUE(rep.is_cycle);
}

TEST(ChainReductions, RhoOfBoundaryIsChainMap) {
  // ρ_s commutes with ∂ up to the conjugation term on 2-cycles: on a cycle, ∂ρ_s(h) = τ(h) - h.
  auto r = Ring::gf(3);
  auto g = make_gm2(r);
  uint32_t s = *g.find(Mat2{0, 1, 1, 0});
  uint32_t x = *g.find(mat_diag(*r, 2, 1)), y = *g.find(mat_diag(*r, 1, 2));
  BarChain h = shuffle_cycle(g, {x, y});
  BarChain tau(2);
  for (const auto& [t, c] : h.terms) tau.add(BarTuple{g.mul(g.mul(s, t[0]), g.inv(s)), g.mul(g.mul(s, t[1]), g.inv(s))}, c);
  EXPECT_EQ(bar_boundary(g, rho_s(g, h, s)), tau - h);
}
