#include <gtest/gtest.h>

#include "bloch_forge/bloch.hpp"

using namespace bf;

namespace {

AbGroup Zn(long long n) { return AbGroup::cyclic(Integer(n)); }

AbGroup elementary(long long p, int k) {
  AbGroup g;
  for (int i = 0; i < k; ++i) g = g.direct_sum(Zn(p));
  return g;
}

// (R^x ⊗ R^x)_σ from all pairs of units with bilinearity and symmetry relators.
AbGroup tensor_sigma_oracle(const Ring& r) {
  const auto& u = r.units();
  size_t k = u.size();
  std::vector<int> pos(r.size(), -1);
  for (size_t i = 0; i < k; ++i) pos[u[i]] = static_cast<int>(i);
  auto id = [&](Elem x, Elem y) { return static_cast<uint32_t>(pos[x] * k + pos[y]); };
  IntMatrix rel(k * k, 0);
  for (Elem x : u)
    for (Elem y : u) {
      rel.append_column(normalize_sparse({{id(x, y), Integer(1)}, {id(y, x), Integer(1)}}));
      for (Elem z : u) {
        rel.append_column(normalize_sparse(
            {{id(r.mul(x, z), y), Integer(1)}, {id(x, y), Integer(-1)}, {id(z, y), Integer(-1)}}));
        rel.append_column(normalize_sparse(
            {{id(x, r.mul(y, z)), Integer(1)}, {id(x, y), Integer(-1)}, {id(x, z), Integer(-1)}}));
      }
    }
  return cokernel(rel);
}

}  // namespace

TEST(Bloch, FiniteFields) {
  for (uint64_t q : {4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32}) {
    auto b = bloch_group(*Ring::gf(q));
    long long expect = q % 2 == 0 ? static_cast<long long>(q + 1) : static_cast<long long>((q + 1) / 2);
    EXPECT_EQ(b.bloch, Zn(expect)) << q;
  }
}

TEST(Bloch, LocalRings) {
  EXPECT_EQ(bloch_group(*Ring::zmod(25)).bloch, Zn(15));
  EXPECT_EQ(bloch_group(*Ring::parse("truncpoly(gf(4),2)")).bloch, Zn(10));
  // no relators when the residue field is F3: the pre-Bloch group is free
  auto z9 = bloch_group(*Ring::zmod(9));
  EXPECT_EQ(z9.relations, 0u);
  EXPECT_EQ(z9.pre_bloch.free_rank, z9.generators);
}

TEST(Bloch, LambdaWellDefined) {
  for (const char* d : {"gf(4)", "gf(5)", "gf(7)", "gf(8)", "gf(9)", "gf(16)", "zmod(25)", "zmod(49)", "zmod(8)",
                        "truncpoly(gf(5),2)"})
    EXPECT_TRUE(lambda_well_defined(*Ring::parse(d))) << d;
}

TEST(Bloch, TensorSigmaAgreesWithPairOracle) {
  for (const char* d : {"gf(5)", "gf(7)", "gf(8)", "zmod(8)", "zmod(9)", "zmod(27)", "truncpoly(gf(2),3)"}) {
    auto r = Ring::parse(d);
    EXPECT_EQ(tensor_sigma(*r).sigma.structure(), tensor_sigma_oracle(*r)) << d;
  }
}

TEST(K2, FiniteFieldsVanish) {
  for (uint64_t q : {4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32}) {
    auto k = k2_presentations(*Ring::gf(q));
    EXPECT_TRUE(k.ms.is_trivial()) << q;
    EXPECT_TRUE(k.milnor.is_trivial()) << q;
    EXPECT_TRUE(k.simplified.is_trivial()) << q;
  }
}

TEST(K2, SmallResidueFieldRegression) {
  auto k = k2_presentations(*Ring::zmod(8));
  EXPECT_EQ(k.ms, elementary(2, 3));
  EXPECT_EQ(k.milnor, elementary(2, 2));
  EXPECT_EQ(k.simplified, elementary(2, 4));
}

TEST(TorTilde, Examples) {
  auto t3 = tor_and_tilde(3);
  EXPECT_EQ(t3.tor, Zn(3));
  EXPECT_EQ(t3.tilde, Zn(3));
  EXPECT_TRUE(t3.h1_sigma2.is_trivial());
  auto t6 = tor_and_tilde(6);
  EXPECT_EQ(t6.tor, Zn(6));
  EXPECT_EQ(t6.tilde, Zn(12));
  EXPECT_EQ(t6.h1_sigma2, Zn(2));
  EXPECT_THROW(tor_and_tilde(0), std::invalid_argument);
}

TEST(BlochWigner, OrderConsistency) {
  for (uint64_t q : {4, 5, 7, 8, 9, 11, 13, 16}) EXPECT_TRUE(bw_order_check(q)) << q;
  EXPECT_THROW(bw_order_check(6), std::invalid_argument);
}
