#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <sstream>

#include "bloch_forge/linalg.hpp"

using namespace bf;

namespace {

IntVector iv(std::initializer_list<long long> xs) {
  IntVector v;
  for (auto x : xs) v.emplace_back(x);
  return v;
}

// Fraction-free Gaussian elimination over Z, used as a rank oracle.
size_t bareiss_rank(std::vector<std::vector<mpz_class>> a) {
  size_t n = a.size(), m = n ? a[0].size() : 0, r = 0;
  for (size_t c = 0; c < m && r < n; ++c) {
    size_t p = r;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(a[p], a[r]);
    for (size_t i = r + 1; i < n; ++i) {
      mpz_class f = a[i][c];
      for (size_t j = c; j < m; ++j) a[i][j] = a[i][j] * a[r][c] - f * a[r][j];
    }
    ++r;
  }
  return r;
}

// Invariant factors via gcds of k x k minors, for tiny matrices.
std::vector<mpz_class> minor_factors(const std::vector<std::vector<long long>>& a) {
  size_t n = a.size(), m = a[0].size();
  auto det = [](std::vector<std::vector<mpz_class>> b) -> mpz_class {
    size_t k = b.size();
    mpz_class d = 1, prev = 1;
    for (size_t c = 0; c < k; ++c) {
      size_t p = c;
      while (p < k && b[p][c] == 0) ++p;
      if (p == k) return mpz_class(0);
      if (p != c) {
        std::swap(b[p], b[c]);
        d = -d;
      }
      for (size_t i = c + 1; i < k; ++i) {
        for (size_t j = c + 1; j < k; ++j) b[i][j] = (b[i][j] * b[c][c] - b[i][c] * b[c][j]) / prev;
        b[i][c] = 0;
      }
      prev = b[c][c];
    }
    return d * b[k - 1][k - 1];
  };
  std::vector<mpz_class> g;
  for (size_t k = 1; k <= std::min(n, m); ++k) {
    mpz_class acc = 0;
    auto all = [&](size_t total, size_t kk) {
      std::vector<std::vector<size_t>> out;
      std::vector<size_t> cur;
      std::function<void(size_t)> go = [&](size_t s) {
        if (cur.size() == kk) {
          out.push_back(cur);
          return;
        }
        for (size_t i = s; i < total; ++i) {
          cur.push_back(i);
          go(i + 1);
          cur.pop_back();
        }
      };
      go(0);
      return out;
    };
    for (const auto& r : all(n, k)) {
      for (const auto& c : all(m, k)) {
        std::vector<std::vector<mpz_class>> b(k, std::vector<mpz_class>(k));
        for (size_t i = 0; i < k; ++i)
          for (size_t j = 0; j < k; ++j) b[i][j] = static_cast<long>(a[r[i]][c[j]]);
        mpz_class d = det(b);
        mpz_gcd(acc.get_mpz_t(), acc.get_mpz_t(), d.get_mpz_t());
      }
    }
    if (acc == 0) break;
    g.push_back(acc);
  }
  std::vector<mpz_class> f;
  for (size_t k = 0; k < g.size(); ++k) f.push_back(k ? g[k] / g[k - 1] : g[k]);
  return f;
}

IntMatrix random_matrix(std::mt19937_64& rng, size_t r, size_t c, int bound, double density) {
  std::uniform_int_distribution<int> val(-bound, bound);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<std::vector<long long>> d(r, std::vector<long long>(c));
  for (auto& row : d)
    for (auto& x : row)
      if (u(rng) < density) x = val(rng);
  if (r == 0) return IntMatrix(0, c);
  return IntMatrix::from_dense(d);
}

void check_reconstruction(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m, true);
  IntMatrix d = s.u_matrix() * m * s.v_matrix();
  for (size_t c = 0; c < d.cols(); ++c) {
    for (size_t r = 0; r < d.rows(); ++r) {
      Integer want = (r == c && r < s.rank) ? s.diagonal[r] : Integer(0);
      ASSERT_EQ(d.get(r, c), want) << "entry " << r << "," << c;
    }
  }
  for (size_t k = 0; k + 1 < s.rank; ++k) ASSERT_TRUE(Integer::divides(s.diagonal[k], s.diagonal[k + 1]));
  for (size_t k = 0; k < s.rank; ++k) ASSERT_GT(s.diagonal[k].sign(), 0);
  // inverses replay consistently
  IntVector e(m.rows());
  for (size_t i = 0; i < m.rows(); ++i) e[i] = Integer(static_cast<long long>(i * 7 % 11) - 5);
  ASSERT_EQ(s.apply_u_inverse(s.apply_u(e)), e);
  IntVector f(m.cols());
  for (size_t i = 0; i < m.cols(); ++i) f[i] = Integer(static_cast<long long>(i * 5 % 13) - 6);
  ASSERT_EQ(s.apply_v_inverse(s.apply_v(f)), f);
}

}  // namespace

TEST(Smith, DiagonalCoprime) {
  auto s = smith_normal_form(IntMatrix::from_dense({{2, 0}, {0, 3}}));
  EXPECT_EQ(s.diagonal, iv({1, 6}));
}

TEST(Smith, TwoByTwo) {
  auto s = smith_normal_form(IntMatrix::from_dense({{2, 4}, {6, 8}}));
  EXPECT_EQ(s.diagonal, iv({2, 4}));
}

TEST(Smith, KernelOfPath) {
  auto k = kernel_basis(IntMatrix::from_dense({{2, -1, 0}, {0, 1, -2}}));
  ASSERT_EQ(k.size(), 1u);
  IntVector v = k[0];
  if (v[0].sign() < 0)
    for (auto& x : v) x = -x;
  EXPECT_EQ(v, iv({1, 2, 1}));
}

TEST(Smith, EmptyShapes) {
  EXPECT_EQ(cokernel(IntMatrix(3, 0)), AbGroup::from_factors(3, {}));
  EXPECT_EQ(cokernel(IntMatrix(0, 4)), AbGroup::trivial());
  EXPECT_EQ(kernel_basis(IntMatrix(0, 2)).size(), 2u);
}

TEST(Smith, LargeEntriesPromote) {
  Integer big("123456789012345678901234567890");
  IntMatrix m(2, 2);
  m.set(0, 0, big);
  m.set(1, 1, big * Integer(6));
  m.set(0, 1, Integer(4));
  check_reconstruction(m);
}

TEST(SmithProperty, RandomReconstruction) {
  std::mt19937_64 rng(20240611);
  for (int t = 0; t < 200; ++t) {
    size_t r = rng() % 40 + 1, c = rng() % 40 + 1;
    double density = (t % 3 == 0) ? 0.9 : 0.25;
    IntMatrix m = random_matrix(rng, r, c, 50, density);
    SCOPED_TRACE(t);
    check_reconstruction(m);
    if (HasFatalFailure()) return;
  }
}

TEST(SmithProperty, RankMatchesBareiss) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 100; ++t) {
    size_t r = rng() % 25 + 1, c = rng() % 25 + 1;
    IntMatrix m = random_matrix(rng, r, c, 3, 0.3);
    // force low rank sometimes
    if (t % 2 && c > 2) m.set_column(c - 1, normalize_sparse([&] {
      SparseVec v = m.column(0);
      for (auto e : m.column(1)) v.push_back(e);
      return v;
    }()));
    std::vector<std::vector<mpz_class>> d(r, std::vector<mpz_class>(c));
    for (size_t j = 0; j < c; ++j)
      for (const auto& [i, v] : m.column(j)) d[i][j] = v.to_mpz();
    EXPECT_EQ(rank(m), bareiss_rank(d));
    EXPECT_EQ(rank_mod_p(m, 1000003), bareiss_rank(d));
  }
}

TEST(SmithProperty, FactorsMatchMinors) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 60; ++t) {
    size_t r = rng() % 4 + 1, c = rng() % 4 + 1;
    std::uniform_int_distribution<int> val(-6, 6);
    std::vector<std::vector<long long>> d(r, std::vector<long long>(c));
    for (auto& row : d)
      for (auto& x : row) x = val(rng);
    auto s = smith_normal_form(IntMatrix::from_dense(d));
    auto want = minor_factors(d);
    ASSERT_EQ(s.diagonal.size(), want.size());
    for (size_t k = 0; k < want.size(); ++k) EXPECT_EQ(s.diagonal[k].to_mpz(), want[k]);
  }
}

TEST(AbGroupTest, CanonicalFactors) {
  EXPECT_EQ(AbGroup::from_factors(0, iv({4, 6})).torsion, iv({2, 12}));
  EXPECT_EQ(AbGroup::from_factors(1, iv({0, 1, 5, 3})).torsion, iv({15}));
  EXPECT_EQ(AbGroup::from_factors(1, iv({0, 1, 5, 3})).free_rank, 2u);
  EXPECT_EQ(AbGroup::from_factors(0, iv({12, 18})).elementary_divisors(), iv({2, 3, 4, 9}));
  EXPECT_EQ(AbGroup::from_factors(0, iv({12, 18})).primary_part(Integer(3)).torsion, iv({3, 9}));
  EXPECT_EQ(AbGroup::from_factors(2, iv({2, 4})).str(), "Z^2 + Z/2 + Z/4");
}

TEST(QuotientTest, CoordinatesRoundTrip) {
  // Z^3 / <(2,0,0),(0,4,2)>
  Quotient q(IntMatrix::from_dense({{2, 0}, {0, 4}, {0, 2}}));
  EXPECT_EQ(q.group(), AbGroup::from_factors(1, iv({2, 2})));
  EXPECT_TRUE(q.is_zero(iv({2, 4, 2})));
  EXPECT_FALSE(q.is_zero(iv({0, 2, 1})));
  for (const auto& g : q.generators()) {
    auto c = q.coordinates(g);
    EXPECT_EQ(q.coordinates(q.element(c)), c);
  }
}

TEST(KernelGroupTest, InducedKernel) {
  // Z/4 -> Z/2 reduction has kernel 2Z/4Z = Z/2
  KernelGroup k(IntMatrix::from_dense({{4}}), IntMatrix::from_dense({{1}}), IntMatrix::from_dense({{2}}));
  EXPECT_EQ(k.group(), AbGroup::cyclic(Integer(2)));
  // multiplication by 2 on Z/6: kernel Z/2
  KernelGroup k2(IntMatrix::from_dense({{6}}), IntMatrix::from_dense({{2}}), IntMatrix::from_dense({{6}}));
  EXPECT_EQ(k2.group(), AbGroup::cyclic(Integer(2)));
  EXPECT_FALSE(k2.coordinates(iv({3}))[0].is_zero());
}

TEST(LatticeTest, Solve) {
  IntMatrix m = IntMatrix::from_dense({{2, 0}, {0, 3}, {2, 3}});
  auto x = lattice_coordinates(m, iv({4, 3, 7}));
  ASSERT_TRUE(x);
  EXPECT_EQ(m.multiply(*x), iv({4, 3, 7}));
  EXPECT_FALSE(lattice_coordinates(m, iv({1, 0, 1})));
  IntMatrix b = column_span_basis(IntMatrix::from_dense({{2, 4, 6}, {0, 0, 0}}));
  EXPECT_EQ(b.cols(), 1u);
  EXPECT_EQ(b.get(0, 0).abs(), Integer(2));
}

TEST(MatrixMarketTest, RoundTrip) {
  IntMatrix m = IntMatrix::from_dense({{1, 0, -3}, {0, 0, 0}, {5, 7, 0}});
  std::stringstream ss;
  write_matrix_market(ss, m);
  EXPECT_EQ(read_matrix_market(ss), m);
}
