#pragma once

#include "bloch_forge/linalg.hpp"
#include "bloch_forge/ring.hpp"

namespace bf {

struct AdditiveCoinvariants {
  AbGroup homology;      // H_n of the additive group
  AbGroup coinvariants;  // modulo the multiplication action of the units
};
// H_n(R, Z)_{R^x} for the additive group of a finite field, n <= 3.
AdditiveCoinvariants additive_homology_coinvariants(const RingPtr& f, int n);

struct TensorCoinvariants {
  AbGroup anti_invariants;  // (F ⊗ F)^{-σ}
  AbGroup coinvariants;     // ((F ⊗ F)^{-σ})_{F^x}
};
// F ⊗_Z F for the additive group of a finite field, σ the swap, F^x acting diagonally.
TensorCoinvariants antisymmetric_tensor_coinvariants(const RingPtr& f);

}  // namespace bf
