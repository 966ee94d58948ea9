#include <gtest/gtest.h>

#include "bloch_forge/coinvariants.hpp"

using namespace bf;

namespace {
AbGroup Zn(long long n) { return AbGroup::cyclic(Integer(n)); }
}  // namespace

TEST(Coinvariants, AdditiveHomology) {
  auto f3 = additive_homology_coinvariants(Ring::gf(3), 3);
  EXPECT_EQ(f3.homology, Zn(3));
  EXPECT_EQ(f3.coinvariants, Zn(3));
  auto f4 = additive_homology_coinvariants(Ring::gf(4), 2);
  EXPECT_EQ(f4.homology, Zn(2));
  EXPECT_EQ(f4.coinvariants, Zn(2));
  EXPECT_EQ(additive_homology_coinvariants(Ring::gf(4), 3).coinvariants, Zn(2));
  EXPECT_EQ(additive_homology_coinvariants(Ring::gf(8), 3).coinvariants, Zn(2));
}

TEST(Coinvariants, AntisymmetricTensor) {
  EXPECT_TRUE(antisymmetric_tensor_coinvariants(Ring::gf(8)).coinvariants.is_trivial());
}

TEST(CoinvariantsProperty, QuotientOfHomology) {
  for (const char* d : {"gf(2)", "gf(3)", "gf(4)", "gf(5)", "gf(8)", "gf(9)"})
    for (int n = 1; n <= 2; ++n) {
      auto c = additive_homology_coinvariants(Ring::parse(d), n);
      EXPECT_TRUE(Integer::mod(c.homology.order(), c.coinvariants.order()).is_zero()) << d << " " << n;
    }
  // H_1 of the additive group is the field, and units act transitively on nonzero elements
  EXPECT_TRUE(additive_homology_coinvariants(Ring::gf(5), 1).coinvariants.is_trivial());
}
