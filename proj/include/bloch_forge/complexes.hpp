#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bloch_forge/linalg.hpp"
#include "bloch_forge/ring.hpp"

namespace bf {

using RVec = std::vector<Elem>;

// Rank over the residue field of the residues of the given vectors.
size_t residue_rank(const Ring& r, const std::vector<RVec>& vs);
// Points of P^{n-1}(R): unimodular vectors whose first unit coordinate is 1.
std::vector<RVec> projective_points(const Ring& r, unsigned n);
// Unimodular vectors of R^n.
std::vector<RVec> unimodular_vectors(const Ring& r, unsigned n);
RVec normalize_line(const Ring& r, const RVec& v);

enum class ComplexFlavor {
  Lines,     // tuples of lines, every min(l+1, n) of them a basis of a free summand
  HatLines,  // tuples of lines in R^n, every min(l+1, 2) of them a basis of a free summand
  Vectors,   // tuples of vectors in general position with S
  Frames     // tuples of vectors, every min(l+1, n) of them a basis of a free summand
};

ComplexFlavor parse_flavor(const std::string& s);
std::string flavor_name(ComplexFlavor f);

struct ConfigComplexSpec {
  RingPtr ring;
  unsigned n = 2;
  ComplexFlavor flavor = ComplexFlavor::Lines;
  int lo = -1;
  int hi = 1;
  std::vector<RVec> S;
};

struct DegreeReport {
  int degree = 0;
  uint64_t generators = 0;
  size_t rank_in = 0;    // rank of ∂ out of this degree
  size_t rank_out = 0;   // rank of ∂ into this degree
  AbGroup homology;
  bool exact = false;
};

struct ExactnessReport {
  std::vector<DegreeReport> degrees;
  bool boundary_squares_to_zero = true;
  int certified_through = -2;   // highest degree reached within budget
  std::string note;
  bool all_exact() const;
};

// Generators of degree l of the configuration complex (l >= 0), as tuples of
// point indices into `points`.
struct ConfigComplex {
  ConfigComplexSpec spec;
  std::vector<RVec> points;
  std::vector<std::vector<std::vector<uint32_t>>> tuples;  // tuples[l]
  // ∂_l : C_l -> C_{l-1}; l = 0 is the augmentation.
  IntMatrix boundary(int l) const;
};

ConfigComplex build_config_complex(const ConfigComplexSpec& spec, int max_degree);
ExactnessReport complex_exactness(const ConfigComplexSpec& spec);

struct OrbitReport {
  size_t tuples = 0;
  size_t orbits = 0;
  size_t frames = 0;                // |A| for l = 3, |B| for l = 4
  bool one_frame_per_orbit = false;
  std::vector<std::vector<Elem>> frame_parameters;  // a, or (a, b)
};

// GL_2(R) orbits on C_l(R^2) for l in {3, 4}, compared with the frames p(a), q(a, b).
OrbitReport orbit_frames(const RingPtr& r, int l);
// ∂ q(a,b) projected to GL_2 orbit classes equals
// p(a) - p(b) + p(b/a) - p((1-a^-1)/(1-b^-1)) + p((1-a)/(1-b)).
bool five_term_boundary_check(const RingPtr& r, Elem a, Elem b);

}  // namespace bf
