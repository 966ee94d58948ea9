#include <numeric>
#include <stdexcept>

#include "bloch_forge/homology.hpp"

namespace bf {

namespace {

struct Summand {
  std::vector<size_t> idx;
  uint64_t order;
  std::string kind;
};

// Künneth summands of H_n for ⊕ Z/m_i, n <= 3.
std::vector<Summand> summands(const std::vector<uint64_t>& m, int n) {
  std::vector<Summand> out;
  size_t k = m.size();
  auto push = [&](std::vector<size_t> idx, uint64_t o, const char* kind) {
    if (o > 1) out.push_back({std::move(idx), o, kind});
  };
  if (n == 1) {
    for (size_t i = 0; i < k; ++i) push({i}, m[i], "generator");
  } else if (n == 2) {
    for (size_t i = 0; i < k; ++i)
      for (size_t j = i + 1; j < k; ++j) push({i, j}, std::gcd(m[i], m[j]), "product");
  } else if (n == 3) {
    for (size_t i = 0; i < k; ++i) push({i}, m[i], "cyclic");
    for (size_t i = 0; i < k; ++i)
      for (size_t j = i + 1; j < k; ++j) push({i, j}, std::gcd(m[i], m[j]), "tor");
    for (size_t i = 0; i < k; ++i)
      for (size_t j = i + 1; j < k; ++j)
        for (size_t l = j + 1; l < k; ++l) push({i, j, l}, std::gcd(std::gcd(m[i], m[j]), m[l]), "product");
  } else {
    throw std::invalid_argument("abelian homology is implemented for degrees 1..3");
  }
  return out;
}

}  // namespace

AbGroup abelian_homology_group(const std::vector<uint64_t>& orders, int n) {
  if (n == 0) return AbGroup::from_factors(1, {});
  std::vector<Integer> f;
  for (const auto& s : summands(orders, n)) f.emplace_back(s.order);
  return AbGroup::from_factors(0, f);
}

std::vector<uint32_t> abelian_basis(const FiniteGroup& g) {
  uint64_t prod = 1;
  for (uint32_t x : g.generators()) prod *= g.element_order(x);
  if (!g.is_abelian() || prod != g.order()) throw std::invalid_argument("generators are not a cyclic basis");
  return g.generators();
}

AbelianHomology abelian_homology(const FiniteGroup& g, const std::vector<uint32_t>& basis, int n) {
  std::vector<uint64_t> m;
  for (uint32_t x : basis) m.push_back(g.element_order(x));
  AbelianHomology out;
  out.group = abelian_homology_group(m, n);
  for (const auto& s : summands(m, n)) {
    BarChain z;
    if (s.kind == "generator") {
      z = BarChain::symbol({basis[s.idx[0]]});
    } else if (s.kind == "product") {
      std::vector<uint32_t> gs;
      for (size_t i : s.idx) gs.push_back(basis[i]);
      z = shuffle_cycle(g, gs);
    } else if (s.kind == "cyclic") {
      uint32_t x = basis[s.idx[0]];
      z = BarChain(3);
      uint32_t y = 0;
      for (uint64_t k = 0; k < m[s.idx[0]]; ++k) {
        z.add({x, y, x}, 1);
        y = g.mul(y, x);
      }
    } else {
      uint32_t x = basis[s.idx[0]], y = basis[s.idx[1]];
      long long a = static_cast<long long>(m[s.idx[0]]), b = static_cast<long long>(m[s.idx[1]]);
      long long d = static_cast<long long>(s.order);
      z = shuffle_product(g, norm_chain(g, x), BarChain::symbol({y})) * (b / d);
      z += shuffle_product(g, BarChain::symbol({x}), norm_chain(g, y)) * (a / d);
    }
    out.cycles.push_back(std::move(z));
    out.orders.emplace_back(s.order);
    out.kinds.push_back(s.kind);
  }
  return out;
}

}  // namespace bf
