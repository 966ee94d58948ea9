#pragma once

#include <string>
#include <vector>

#include "bloch_forge/linalg.hpp"
#include "bloch_forge/ring.hpp"

namespace bf {

// Generators with labels and a relation matrix (columns are relations).
struct PresentedAbGroup {
  std::vector<std::string> labels;
  IntMatrix relations;
  AbGroup structure() const { return cokernel(relations); }
};

// (R^x ⊗ R^x)_σ on the basis e_ij = g_i ⊗ g_j of the tensor of cyclic factors.
struct TensorSigma {
  std::vector<uint64_t> factors;
  PresentedAbGroup tensor;   // R^x ⊗ R^x
  PresentedAbGroup sigma;    // tensor modulo x⊗y + y⊗x
  size_t rank() const { return factors.size() * factors.size(); }
  // Coordinates of x ⊗ y from discrete logarithms.
  IntVector pair(const Ring& r, Elem x, Elem y) const;
};

TensorSigma tensor_sigma(const Ring& r);
// Units a with 1 - a a unit, ascending.
std::vector<Elem> five_term_generators(const Ring& r);
PresentedAbGroup pre_bloch_group(const Ring& r);
// Columns: images a ⊗ (1-a) of the generators [a].
IntMatrix lambda_map(const Ring& r, const TensorSigma& t);
// Every five term relator maps into the σ relations.
bool lambda_well_defined(const Ring& r);

struct BlochReport {
  AbGroup pre_bloch;
  AbGroup bloch;
  AbGroup image;      // image of λ in (R^x ⊗ R^x)_σ
  AbGroup tensor_sigma;
  size_t generators = 0;
  size_t relations = 0;
};
BlochReport bloch_group(const Ring& r);

struct K2Report {
  AbGroup ms, milnor, simplified;
};
K2Report k2_presentations(const Ring& r);

struct TorTilde {
  AbGroup tor, tilde, h1_sigma2;
};
TorTilde tor_and_tilde(long long m);
// |Tor~(μ, μ)| · |B(F_q)| = q^2 - 1 with B computed from the presentation.
bool bw_order_check(uint64_t q, AbGroup* bloch_out = nullptr);

}  // namespace bf
