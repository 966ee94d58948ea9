#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bloch_forge/complexes.hpp"
#include "bloch_forge/ring.hpp"

namespace bf {

// A dependency "sums to zero" when it vanishes modulo the maximal ideal and
// "touches" vs when some vs-coefficient is a unit. Over a field this is the
// literal condition.
enum class GPDecider { Oracle, Fast };

// Every zero combination of at most n vectors of vs ∪ S has only non-unit
// coefficients on vs. Throws on dimension mismatch.
bool in_general_position(const Ring& r, unsigned n, const std::vector<RVec>& vs, const std::vector<RVec>& S = {},
                         GPDecider d = GPDecider::Fast);

struct MaxGPResult {
  unsigned size = 0;
  std::vector<RVec> witness;  // lifted to r
  bool exhaustive = false;
  uint64_t nodes = 0;
};

// Largest set of vectors of R^n, every <= n of them independent over the
// residue field. Searches the residue field from the normalized frame.
MaxGPResult max_general_position(const Ring& r, unsigned n, uint64_t node_budget = 50'000'000);

struct C2Result {
  unsigned value = 0;
  std::vector<RVec> saturating;  // a minimal S
  uint64_t sets_checked = 0;
};
// Minimum |S| in R^2 with no vector in general position with S.
C2Result c2_exact(const Ring& r, uint64_t cap = 1u << 20);

struct N3ConditionResult {
  bool equivalent = true;
  uint64_t tuples = 0;
  uint64_t in_general_position = 0;
  std::vector<std::pair<Elem, Elem>> counterexample;  // first mismatch
  bool counterexample_in_gp = false;
};
// Compares the oracle on {e1, e2, e3, e1+e2+e3, e1+a_i e2+b_i e3} with the
// unit-condition list. With include_frame_condition the list also demands
// that det(e1+e2+e3, v_i, v_j) is a unit.
N3ConditionResult verify_n3_conditions(const Ring& f, unsigned count, bool include_frame_condition = false);

// The nine vectors of F_7^4 quoted for the bound c_4 >= 9.
std::vector<RVec> f7_quoted_configuration(const Ring& f7);
// First dependent subset of size <= n (indices), if any.
std::optional<std::vector<size_t>> first_dependent_subset(const Ring& r, unsigned n, const std::vector<RVec>& vs);

}  // namespace bf
