#include "bloch_forge/bloch.hpp"

#include <numeric>
#include <stdexcept>

#include "bloch_forge/group.hpp"
#include "bloch_forge/homology.hpp"

namespace bf {

namespace {

IntMatrix concat(IntMatrix a, const IntMatrix& b) {
  a.append_columns(b);
  return a;
}

std::string elem_label(const Ring& r, Elem a) { return "[" + r.str(a) + "]"; }

}  // namespace

IntVector TensorSigma::pair(const Ring& r, Elem x, Elem y) const {
  const UnitsGroup& u = r.units_group();
  auto dx = u.dlog(x), dy = u.dlog(y);
  size_t k = factors.size();
  IntVector v(k * k);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) v[i * k + j] = Integer(static_cast<long long>(dx[i] * dy[j]));
  return v;
}

TensorSigma tensor_sigma(const Ring& r) {
  TensorSigma t;
  const UnitsGroup& u = r.units_group();
  t.factors = u.factors;
  size_t k = t.factors.size();
  IntMatrix rel(k * k, 0);
  for (uint32_t i = 0; i < k; ++i)
    for (uint32_t j = 0; j < k; ++j) {
      t.tensor.labels.push_back("g" + std::to_string(i) + "⊗g" + std::to_string(j));
      rel.append_column({{i * static_cast<uint32_t>(k) + j, Integer(std::gcd(t.factors[i], t.factors[j]))}});
    }
  t.tensor.relations = rel;
  IntMatrix sym(k * k, 0);
  for (uint32_t i = 0; i < k; ++i)
    for (uint32_t j = i; j < k; ++j) {
      if (i == j) sym.append_column({{i * static_cast<uint32_t>(k) + i, 2}});
      else sym.append_column({{i * static_cast<uint32_t>(k) + j, 1}, {j * static_cast<uint32_t>(k) + i, 1}});
    }
  t.sigma.labels = t.tensor.labels;
  t.sigma.relations = concat(rel, sym);
  return t;
}

std::vector<Elem> five_term_generators(const Ring& r) {
  std::vector<Elem> g;
  for (Elem a = 0; a < r.size(); ++a)
    if (r.is_unit(a) && r.is_unit(r.sub(r.one(), a))) g.push_back(a);
  return g;
}

PresentedAbGroup pre_bloch_group(const Ring& r) {
  PresentedAbGroup p;
  auto gens = five_term_generators(r);
  std::vector<int64_t> pos(r.size(), -1);
  for (size_t i = 0; i < gens.size(); ++i) {
    pos[gens[i]] = static_cast<int64_t>(i);
    p.labels.push_back(elem_label(r, gens[i]));
  }
  p.relations = IntMatrix(gens.size(), 0);
  Elem one = r.one();
  for (Elem a : gens)
    for (Elem b : gens) {
      if (!r.is_unit(r.sub(a, b))) continue;
      Elem terms[5] = {a, b, r.div(b, a), r.div(r.sub(one, r.inv(a)), r.sub(one, r.inv(b))),
                       r.div(r.sub(one, a), r.sub(one, b))};
      int sign[5] = {1, -1, 1, -1, 1};
      SparseVec v;
      for (int i = 0; i < 5; ++i) {
        if (pos[terms[i]] < 0) throw std::logic_error("five term relator leaves the generator set");
        v.emplace_back(static_cast<uint32_t>(pos[terms[i]]), Integer(sign[i]));
      }
      p.relations.append_column(normalize_sparse(std::move(v)));
    }
  return p;
}

IntMatrix lambda_map(const Ring& r, const TensorSigma& t) {
  auto gens = five_term_generators(r);
  IntMatrix m(t.rank(), 0);
  for (Elem a : gens) m.append_column(sparse_of(t.pair(r, a, r.sub(r.one(), a))));
  return m;
}

bool lambda_well_defined(const Ring& r) {
  TensorSigma t = tensor_sigma(r);
  PresentedAbGroup p = pre_bloch_group(r);
  if (p.relations.cols() == 0) return true;
  IntMatrix img = lambda_map(r, t) * p.relations;
  LatticeSolver s(t.sigma.relations);
  for (size_t c = 0; c < img.cols(); ++c)
    if (!s.solve(img.column_dense(c))) return false;
  return true;
}

BlochReport bloch_group(const Ring& r) {
  BlochReport rep;
  TensorSigma t = tensor_sigma(r);
  PresentedAbGroup p = pre_bloch_group(r);
  rep.generators = p.labels.size();
  rep.relations = p.relations.cols();
  rep.pre_bloch = p.structure();
  rep.tensor_sigma = t.sigma.structure();
  IntMatrix lam = lambda_map(r, t);
  if (rep.generators == 0) return rep;
  rep.bloch = KernelGroup(p.relations, lam, t.sigma.relations).group();
  // image of λ: (span(Λ) + σ relations) / σ relations
  Quotient tq(t.sigma.relations);
  IntMatrix coords(tq.group().torsion.size() + tq.group().free_rank, 0);
  std::vector<Integer> mods = tq.moduli();
  IntMatrix rel(mods.size(), 0);
  for (uint32_t i = 0; i < mods.size(); ++i)
    if (!mods[i].is_zero()) rel.append_column({{i, mods[i]}});
  for (size_t c = 0; c < lam.cols(); ++c) coords.append_column(sparse_of(tq.coordinates(lam.column_dense(c))));
  // Z^gens modulo the preimage of the σ relations
  IntMatrix both = concat(coords, rel);
  IntMatrix lat(lam.cols(), 0);
  for (auto v : kernel_basis(both)) {
    v.resize(lam.cols());
    lat.append_column(sparse_of(v));
  }
  rep.image = cokernel(lat);
  return rep;
}

K2Report k2_presentations(const Ring& r) {
  TensorSigma t = tensor_sigma(r);
  IntMatrix steinberg(t.rank(), 0);
  for (Elem a : five_term_generators(r)) steinberg.append_column(sparse_of(t.pair(r, a, r.sub(r.one(), a))));
  IntMatrix minus(t.rank(), 0);
  for (Elem b : r.units()) minus.append_column(sparse_of(t.pair(r, b, r.neg(b))));
  K2Report rep;
  rep.ms = cokernel(concat(t.sigma.relations, steinberg));
  rep.milnor = cokernel(concat(concat(t.tensor.relations, steinberg), minus));
  rep.simplified = cokernel(concat(t.tensor.relations, steinberg));
  return rep;
}

TorTilde tor_and_tilde(long long m) {
  if (m <= 0) throw std::invalid_argument("the order of μ must be positive");
  TorTilde t;
  t.tor = AbGroup::cyclic(Integer(m));
  t.tilde = AbGroup::cyclic(Integer(m % 2 ? m : 2 * m));
  long long v = 1;
  while (m % (2 * v) == 0) v *= 2;
  if (v > 1) {
    // μ_{2^∞} ⊗ μ_{2^∞} = Z/2^v on g ⊗ g; the swap fixes g ⊗ g.
    auto s2 = FiniteGroup::cyclic(2);
    GModule mod(s2, {Integer(v)}, {IntMatrix::identity(1)});
    t.h1_sigma2 = module_homology(mod, 1);
  }
  return t;
}

bool bw_order_check(uint64_t q, AbGroup* bloch_out) {
  auto [p, e] = prime_power(q);
  if (p == 0) throw std::invalid_argument("q must be a prime power");
  auto r = Ring::gf(q);
  BlochReport b = bloch_group(*r);
  if (bloch_out) *bloch_out = b.bloch;
  if (!b.bloch.is_finite()) return false;
  TorTilde t = tor_and_tilde(static_cast<long long>(q - 1));
  return t.tilde.order() * b.bloch.order() == Integer(static_cast<unsigned long long>(q * q - 1));
}

}  // namespace bf
