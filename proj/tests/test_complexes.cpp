#include <gtest/gtest.h>

#include "bloch_forge/complexes.hpp"

using namespace bf;

namespace {

ExactnessReport run(const char* ring, unsigned n, ComplexFlavor f, int hi, std::vector<RVec> S = {}) {
  return complex_exactness(ConfigComplexSpec{Ring::parse(ring), n, f, -1, hi, std::move(S)});
}

bool exact_through(const ExactnessReport& r, int d) {
  for (const auto& x : r.degrees)
    if (x.degree <= d && !x.exact) return false;
  return r.boundary_squares_to_zero && r.certified_through >= d;
}

}  // namespace

TEST(Complexes, PointCounts) {
  EXPECT_EQ(projective_points(*Ring::zmod(9), 2).size(), 12u);
  EXPECT_EQ(projective_points(*Ring::gf(4), 3).size(), 21u);
  EXPECT_EQ(unimodular_vectors(*Ring::gf(3), 2).size(), 8u);
  EXPECT_EQ(unimodular_vectors(*Ring::zmod(4), 2).size(), 12u);
}

TEST(Complexes, ResidueRank) {
  auto z9 = Ring::zmod(9);
  EXPECT_EQ(residue_rank(*z9, {{1, 3}, {1, 0}}), 1u);
  EXPECT_EQ(residue_rank(*z9, {{3, 0}, {0, 3}}), 0u);
  EXPECT_EQ(residue_rank(*z9, {{1, 0}, {1, 1}}), 2u);
}

TEST(Complexes, LinesOverSmallFields) {
  auto f2 = run("gf(2)", 2, ComplexFlavor::Lines, 2);
  EXPECT_TRUE(exact_through(f2, 1));
  // P^1(F2) has three points, so the complex stops in degree 2 with homology there.
  EXPECT_FALSE(f2.degrees.back().exact);
  auto f3 = run("gf(3)", 2, ComplexFlavor::Lines, 2);
  EXPECT_TRUE(f3.all_exact());
  EXPECT_EQ(f3.degrees[3].generators, 24u);
  EXPECT_TRUE(run("zmod(4)", 2, ComplexFlavor::Lines, 1).all_exact());
}

TEST(Complexes, OtherFlavors) {
  auto hat = run("gf(2)", 3, ComplexFlavor::HatLines, 1);
  EXPECT_TRUE(hat.all_exact());
  EXPECT_EQ(hat.degrees[2].generators, 42u);
  EXPECT_TRUE(run("gf(3)", 2, ComplexFlavor::Vectors, 1, {{1, 0}}).all_exact());
  EXPECT_TRUE(run("gf(2)", 2, ComplexFlavor::Frames, 1).all_exact());
  EXPECT_EQ(parse_flavor(flavor_name(ComplexFlavor::HatLines)), ComplexFlavor::HatLines);
  EXPECT_THROW(parse_flavor("nope"), std::invalid_argument);
}

TEST(ComplexesProperty, BoundarySquaresToZero) {
  for (const char* d : {"gf(3)", "gf(4)", "zmod(4)"}) {
    auto c = build_config_complex(ConfigComplexSpec{Ring::parse(d), 2, ComplexFlavor::Lines, -1, 2, {}}, 3);
    for (int l = 1; l <= 3; ++l) {
      auto prod = c.boundary(l - 1) * c.boundary(l);
      EXPECT_EQ(prod.nnz(), 0u) << d << " " << l;
    }
  }
}

TEST(Orbits, FramesOverF5) {
  auto o3 = orbit_frames(Ring::gf(5), 3);
  EXPECT_EQ(o3.orbits, 3u);
  EXPECT_EQ(o3.frames, 3u);
  EXPECT_TRUE(o3.one_frame_per_orbit);
  auto o4 = orbit_frames(Ring::gf(5), 4);
  EXPECT_EQ(o4.orbits, 6u);
  EXPECT_TRUE(o4.one_frame_per_orbit);
  EXPECT_THROW(orbit_frames(Ring::gf(5), 2), std::invalid_argument);
}

TEST(Orbits, FiveTermBoundary) {
  for (uint64_t q : {5, 7, 8}) {
    auto r = Ring::gf(q);
    for (Elem a : r->units())
      for (Elem b : r->units()) {
        if (a == b || a == r->one() || b == r->one()) continue;
        if (!r->is_unit(r->sub(r->one(), a)) || !r->is_unit(r->sub(r->one(), b))) continue;
        EXPECT_TRUE(five_term_boundary_check(r, a, b)) << q << " " << a << " " << b;
      }
  }
  EXPECT_THROW(five_term_boundary_check(Ring::gf(5), 2, 2), std::invalid_argument);
}
