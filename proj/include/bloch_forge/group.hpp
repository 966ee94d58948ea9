#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bloch_forge/ring.hpp"

namespace bf {

// 2x2 matrix [[m[0], m[1]], [m[2], m[3]]] over a ring.
using Mat2 = std::array<Elem, 4>;

Mat2 mat_mul(const Ring& r, const Mat2& a, const Mat2& b);
Elem mat_det(const Ring& r, const Mat2& a);
Mat2 mat_inv(const Ring& r, const Mat2& a);
Mat2 mat_identity(const Ring& r);
Mat2 mat_diag(const Ring& r, Elem x, Elem y);
std::string mat_str(const Ring& r, const Mat2& a);

// A finite group with elements 0..order()-1 and identity 0.  Either a group
// of 2x2 matrices over a ring (products computed, or tabulated when small)
// or an abstract group given by its table.
class FiniteGroup {
 public:
  FiniteGroup() = default;

  // Closure of the generators by breadth first search from the identity,
  // generators in the given order.  Throws BudgetExceeded beyond `cap`.
  static FiniteGroup from_matrices(RingPtr ring, const std::vector<Mat2>& gens, size_t cap = 0);
  static FiniteGroup cyclic(uint64_t n);
  static FiniteGroup abelian(const std::vector<uint64_t>& orders);
  static FiniteGroup from_table(std::vector<uint32_t> table, size_t n);
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

  size_t order() const { return n_; }
  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t inv(uint32_t a) const { return inv_[a]; }
  uint32_t pow(uint32_t a, long long e) const;
  uint32_t conj(uint32_t g, uint32_t x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
  uint64_t element_order(uint32_t a) const;
  const std::vector<uint32_t>& generators() const { return gens_; }
  bool is_abelian() const;
  std::string label(uint32_t a) const;

  bool is_matrix_group() const { return ring_ != nullptr; }
  const RingPtr& ring() const { return ring_; }
  const Mat2& matrix(uint32_t a) const { return mats_[a]; }
  std::optional<uint32_t> find(const Mat2& m) const;

  // Subgroup generated by the given elements, as a sorted element list
  // starting with the identity.
  std::vector<uint32_t> closure(const std::vector<uint32_t>& gens, size_t cap = 0) const;
  // The subgroup on a closed element list as a group of its own; parent
  // indices are kept in `embedding`.
  struct Sub;
  Sub subgroup(const std::vector<uint32_t>& elements) const;

  // Checks associativity exhaustively up to order 64, else on random triples.
  bool check_axioms(unsigned seed = 1) const;

 private:
  static uint64_t pack(const Mat2& m) {
    return (uint64_t(m[0]) << 48) | (uint64_t(m[1]) << 32) | (uint64_t(m[2]) << 16) | uint64_t(m[3]);
  }
  void finish(size_t table_limit);

  size_t n_ = 0;
  RingPtr ring_;
  std::vector<Mat2> mats_;
  std::unordered_map<uint64_t, uint32_t> index_;
  std::vector<uint32_t> table_;
  std::vector<uint32_t> inv_;
  std::vector<uint32_t> gens_;
};

struct FiniteGroup::Sub {
  std::shared_ptr<FiniteGroup> group;
  std::vector<uint32_t> embedding;                 // sub index -> parent index
  std::unordered_map<uint32_t, uint32_t> lookup;   // parent index -> sub index
};

// Group spec grammar: sl2(R), gl2(R), b2(R), t2(R), gm2(R), n2(R), cyclic(n),
// abelian(n1,n2,...), product(G,H).
FiniteGroup parse_group(const std::string& spec, size_t cap = 0);

FiniteGroup make_sl2(const RingPtr& r, size_t cap = 0);
FiniteGroup make_gl2(const RingPtr& r, size_t cap = 0);
FiniteGroup make_b2(const RingPtr& r, size_t cap = 0);
FiniteGroup make_t2(const RingPtr& r, size_t cap = 0);
FiniteGroup make_gm2(const RingPtr& r, size_t cap = 0);
FiniteGroup make_n2(const RingPtr& r, size_t cap = 0);
// N2 times the scalar matrices.
FiniteGroup make_n2_center(const RingPtr& r, size_t cap = 0);

// Additive generators of a ring (a Z-basis of the additive group up to order).
std::vector<Elem> additive_generators(const Ring& r);

}  // namespace bf
