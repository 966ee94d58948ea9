#include "bloch_forge/coinvariants.hpp"

#include <stdexcept>

#include "bloch_forge/group.hpp"
#include "bloch_forge/homology.hpp"

namespace bf {

namespace {

// x ↦ u x on a field element index, with additive coordinates as digits.
std::vector<uint32_t> multiplication_permutation(const Ring& f, Elem u) {
  std::vector<uint32_t> perm(f.size());
  for (Elem x = 0; x < f.size(); ++x) perm[x] = f.mul(u, x);
  return perm;
}

Elem unit_generator(const Ring& f) {
  const UnitsGroup& ug = f.units_group();
  if (ug.generators.empty()) return f.one();
  if (ug.generators.size() != 1) throw std::logic_error("units of a finite field are cyclic");
  return ug.generators[0];
}

}  // namespace

AdditiveCoinvariants additive_homology_coinvariants(const RingPtr& fp, int n) {
  const Ring& f = *fp;
  if (!f.is_field()) throw std::invalid_argument("expects a finite field");
  size_t m = 0;
  for (size_t s = 1; s < f.size(); s *= f.characteristic_prime()) ++m;
  FiniteGroup a = FiniteGroup::abelian(std::vector<uint64_t>(m, f.characteristic_prime()));
  BarHomology h(a, n);
  AdditiveCoinvariants out;
  out.homology = h.group();
  auto perm = multiplication_permutation(f, unit_generator(f));
  auto mods = h.moduli();
  IntMatrix rel(mods.size(), 0);
  for (uint32_t i = 0; i < mods.size(); ++i) rel.append_column({{i, mods[i]}});
  auto gens = h.generators();
  for (uint32_t i = 0; i < gens.size(); ++i) {
    IntVector col = h.class_of(gens[i].map([&](uint32_t x) { return perm[x]; }));
    col[i] -= Integer(1);
    rel.append_column(sparse_of(col));
  }
  out.coinvariants = cokernel(rel);
  return out;
}

TensorCoinvariants antisymmetric_tensor_coinvariants(const RingPtr& fp) {
  const Ring& f = *fp;
  if (!f.is_field()) throw std::invalid_argument("expects a finite field");
  uint64_t p = f.characteristic_prime();
  size_t m = f.coords(0).size();
  size_t d = m * m;
  // Multiplication by the unit generator on the additive basis.
  Elem u = unit_generator(f);
  std::vector<std::vector<long long>> mu(m, std::vector<long long>(m));
  for (size_t j = 0; j < m; ++j) {
    std::vector<unsigned> e(m, 0);
    e[j] = 1;
    auto c = f.coords(f.mul(u, f.from_coords(e)));
    for (size_t i = 0; i < m; ++i) mu[i][j] = c[i];
  }
  auto idx = [&](size_t i, size_t j) { return static_cast<uint32_t>(i * m + j); };
  IntMatrix prel(d, 0), swap_plus(d, 0), act(d, 0);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      prel.append_column({{idx(i, j), Integer(static_cast<long long>(p))}});
      SparseVec s{{idx(i, j), Integer(1)}};
      s.emplace_back(idx(j, i), Integer(1));
      swap_plus.append_column(normalize_sparse(s));
      SparseVec a;
      for (size_t k = 0; k < m; ++k)
        for (size_t l = 0; l < m; ++l)
          if (long long c = mu[k][i] * mu[l][j]) a.emplace_back(idx(k, l), Integer(c));
      act.append_column(normalize_sparse(a));
    }
  // Elements t with σ t = -t, as a subgroup of (Z/p)^{m^2}.
  KernelGroup inv(prel, swap_plus, prel);
  TensorCoinvariants out;
  out.anti_invariants = inv.group();
  // Coinvariants: the invariant lattice L modulo (u - 1) L and p Z^d ∩ L.
  const IntMatrix& basis = inv.lattice_basis();
  IntMatrix moved = act * basis;
  const AbGroup& q = out.anti_invariants;
  IntMatrix rel(q.torsion.size() + q.free_rank, 0);
  for (size_t c = 0; c < basis.cols(); ++c) {
    IntVector v = moved.column_dense(c);
    IntVector w = basis.column_dense(c);
    for (size_t i = 0; i < d; ++i) v[i] -= w[i];
    rel.append_column(sparse_of(inv.coordinates(v)));
  }
  for (uint32_t i = 0; i < q.torsion.size(); ++i) rel.append_column({{i, q.torsion[i]}});
  out.coinvariants = cokernel(rel);
  return out;
}

}  // namespace bf
