#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bloch_forge/group.hpp"
#include "bloch_forge/linalg.hpp"

namespace bf {

using BarTuple = std::vector<uint32_t>;

// Integer combination of normalized bar symbols [g1|...|gn].  Tuples with an
// identity entry are dropped on insertion, zero coefficients are never kept.
struct BarChain {
  int degree = 0;
  std::map<BarTuple, long long> terms;

  BarChain() = default;
  explicit BarChain(int n) : degree(n) {}
  static BarChain symbol(const BarTuple& t, long long c = 1);

  void add(const BarTuple& t, long long c);
  void add(const BarChain& o, long long c = 1);
  BarChain& operator+=(const BarChain& o) { add(o, 1); return *this; }
  BarChain& operator-=(const BarChain& o) { add(o, -1); return *this; }
  BarChain operator+(const BarChain& o) const { BarChain r = *this; r += o; return r; }
  BarChain operator-(const BarChain& o) const { BarChain r = *this; r -= o; return r; }
  BarChain operator*(long long c) const;
  bool is_zero() const { return terms.empty(); }
  size_t size() const { return terms.size(); }
  bool operator==(const BarChain& o) const { return degree == o.degree && terms == o.terms; }
  // Image under an element map (a homomorphism for chain maps).
  BarChain map(const std::function<uint32_t(uint32_t)>& f) const;
  std::string str(const FiniteGroup& g) const;
};

// ∂[g1|...|gn] = [g2|...|gn] + Σ (-1)^i [...|g_i g_{i+1}|...] + (-1)^n [g1|...|g_{n-1}].
BarChain bar_boundary(const FiniteGroup& g, const BarChain& c);
// Shuffle product; the entries of u must commute with those of v.
BarChain shuffle_product(const FiniteGroup& g, const BarChain& u, const BarChain& v);
// c(g1,...,gn) = Σ sign(σ) [g_σ(1)|...|g_σ(n)].  Throws for non-commuting input.
BarChain shuffle_cycle(const FiniteGroup& g, const std::vector<uint32_t>& gs);
// Σ_{i<m} [g^i | g] where m is the order of g; its boundary is m[g].
BarChain norm_chain(const FiniteGroup& g, uint32_t x);

// Index of a normalized tuple in the mixed radix basis of C_n (entries 1..|G|-1).
uint64_t bar_index(const BarTuple& t, size_t order);
BarTuple bar_tuple(uint64_t index, int n, size_t order);
uint64_t bar_rank(size_t order, int n);
// ∂_n : C_n -> C_{n-1} of the normalized bar complex (C_0 = Z).
IntMatrix bar_boundary_matrix(const FiniteGroup& g, int n);
IntVector chain_vector(const BarChain& c, size_t order);
BarChain vector_chain(const IntVector& v, int n, size_t order);

// H_n(G, Z) for n >= 1 through the normalized bar complex, with cycle classes.
class BarHomology {
 public:
  BarHomology(const FiniteGroup& g, int n, bool check_free_rank = false);
  const AbGroup& group() const { return group_; }
  int degree() const { return n_; }
  // Coordinates of a cycle, one per invariant factor (reduced).  Throws for non-cycles.
  IntVector class_of(const BarChain& z) const;
  // Cycles representing the invariant factor generators.
  std::vector<BarChain> generators() const;
  std::vector<Integer> moduli() const { return group_.torsion; }

 private:
  const FiniteGroup* g_;
  int n_;
  AbGroup group_;
  Quotient quotient_;
};

// Checks the bar degree budget; throws BudgetExceeded suggesting the stable method.
void check_bar_budget(size_t order, int n);
AbGroup bar_homology(const FiniteGroup& g, int n);

// Homology of a finite abelian group given by a basis of cyclic generators
// (g_i of order m_i, the group being their internal direct sum).
struct AbelianHomology {
  AbGroup group;
  std::vector<BarChain> cycles;   // one explicit cycle per listed summand
  std::vector<Integer> orders;    // order of each cycle's class (summand order)
  std::vector<std::string> kinds;
};
// Closed form for n <= 3 by iterated Künneth over the cyclic factors.
AbGroup abelian_homology_group(const std::vector<uint64_t>& orders, int n);
AbelianHomology abelian_homology(const FiniteGroup& g, const std::vector<uint32_t>& basis, int n);
// Basis of an abelian table group: its listed generators when they form a
// direct sum decomposition (true for FiniteGroup::abelian).
std::vector<uint32_t> abelian_basis(const FiniteGroup& g);

// Transfer (restriction) on chains from G to the subgroup with the given sorted
// element list, via a section of G -> G/H.  Entries of the result lie in H.
BarChain transfer(const FiniteGroup& g, const std::vector<uint32_t>& h_elements, const BarChain& z);
// Conjugation x -> s x s^-1 applied to every entry.
BarChain conjugate_chain(const FiniteGroup& g, uint32_t s, const BarChain& z);
// Sub-group chain to parent indices and back.
BarChain to_parent(const FiniteGroup::Sub& sub, const BarChain& z);
BarChain to_sub(const FiniteGroup::Sub& sub, const BarChain& z);

// A Sylow p-subgroup as a sorted element list, found by random p-element
// growth; the lexicographically least result over seeds seed..seed+tries-1.
std::vector<uint32_t> sylow_subgroup(const FiniteGroup& g, uint64_t p, unsigned seed = 1, unsigned tries = 3);

struct StableResult {
  AbGroup group;              // inv_G(H_n(P)) = H_n(G)_(p)
  AbGroup sylow_homology;     // H_n(P)
  size_t sylow_order = 0;
  size_t double_cosets = 0;   // double coset representatives with P ∩ gPg^-1 != 1
};
StableResult stable_element_homology(const FiniteGroup& g, uint64_t p, int n, unsigned seed = 1,
                                     const std::vector<uint32_t>* sylow = nullptr);
// H_n(G) assembled over all primes dividing |G| by stable elements.
AbGroup stable_homology(const FiniteGroup& g, int n, unsigned seed = 1);

// Abelianization from the multiplication table (independent of the bar complex).
AbGroup abelianization(const FiniteGroup& g);

// A module ⊕ Z/d_i (d_i = 0 for Z) with a left action, given per group generator.
class GModule {
 public:
  GModule(const FiniteGroup& g, std::vector<Integer> moduli, std::vector<IntMatrix> generator_actions);
  static GModule trivial(const FiniteGroup& g, std::vector<Integer> moduli);

  const FiniteGroup& group() const { return *g_; }
  size_t rank() const { return moduli_.size(); }
  const std::vector<Integer>& moduli() const { return moduli_; }
  const IntMatrix& action(uint32_t x) const { return actions_[x]; }
  IntMatrix relations() const;
  // Checks A_x A_s = A_{xs} on every edge of the Cayley graph.
  bool consistent() const { return consistent_; }

 private:
  const FiniteGroup* g_;
  std::vector<Integer> moduli_;
  std::vector<IntMatrix> actions_;
  bool consistent_ = true;
};

AbGroup coinvariants(const GModule& m);
// H_n(G, M) for n <= 2 through the bar complex with coefficients.
AbGroup module_homology(const GModule& m, int n);

// Reduces entries of v modulo the moduli (nonnegative representatives).
IntVector reduce_mod(const IntVector& v, const std::vector<Integer>& moduli);

}  // namespace bf
