#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "bloch_forge/homology.hpp"

namespace bf {

BarChain transfer(const FiniteGroup& g, const std::vector<uint32_t>& h, const BarChain& z) {
  size_t n = g.order();
  if (h.empty() || h[0] != 0) throw std::invalid_argument("subgroup list must start with the identity");
  if (n % h.size()) throw std::invalid_argument("subgroup order does not divide the group order");
  // Left cosets xH with section θ(xH) = least element (θ(H) = identity).
  std::vector<uint32_t> theta(n, UINT32_MAX);
  std::vector<uint32_t> reps;
  for (uint32_t x = 0; x < n; ++x) {
    if (theta[x] != UINT32_MAX) continue;
    reps.push_back(x);
    for (uint32_t y : h) theta[g.mul(x, y)] = x;
  }
  if (reps.size() * h.size() != n) throw std::invalid_argument("element list is not a subgroup");
  // f(x) = θ(xH)^-1 x lies in H and f(xh) = f(x) h.
  auto f = [&](uint32_t x) { return g.mul(g.inv(theta[x]), x); };
  int d = z.degree;
  BarChain out(d);
  std::vector<uint32_t> hom(d + 1), img(d + 1);
  BarTuple t(d);
  for (const auto& [s, c] : z.terms) {
    hom[d] = 0;
    for (int i = d; i >= 1; --i) hom[i - 1] = g.mul(s[i - 1], hom[i]);
    for (uint32_t r : reps) {
      for (int i = 0; i <= d; ++i) img[i] = f(g.mul(hom[i], r));
      for (int i = 0; i < d; ++i) t[i] = g.mul(img[i], g.inv(img[i + 1]));
      out.add(t, c);
    }
  }
  return out;
}

BarChain conjugate_chain(const FiniteGroup& g, uint32_t s, const BarChain& z) {
  return z.map([&](uint32_t x) { return g.conj(s, x); });
}

BarChain to_parent(const FiniteGroup::Sub& sub, const BarChain& z) {
  return z.map([&](uint32_t x) { return sub.embedding[x]; });
}

BarChain to_sub(const FiniteGroup::Sub& sub, const BarChain& z) {
  return z.map([&](uint32_t x) {
    auto it = sub.lookup.find(x);
    if (it == sub.lookup.end()) throw std::invalid_argument("chain entry outside the subgroup");
    return it->second;
  });
}

namespace {

uint64_t p_part(uint64_t n, uint64_t p) {
  uint64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

std::vector<uint32_t> grow_sylow(const FiniteGroup& g, uint64_t p, uint64_t target, unsigned seed) {
  std::mt19937_64 rng(seed);
  size_t n = g.order();
  const int kAttempts = 20000;
  for (int restart = 0; restart < 20; ++restart) {
    std::vector<uint32_t> gens, cur{0};
    int fails = 0;
    while (cur.size() < target && fails < kAttempts) {
      uint32_t x = static_cast<uint32_t>(rng() % n);
      uint64_t o = g.element_order(x);
      uint32_t y = g.pow(x, static_cast<long long>(o / p_part(o, p)));
      if (y == 0 || std::binary_search(cur.begin(), cur.end(), y)) {
        ++fails;
        continue;
      }
      auto trial = gens;
      trial.push_back(y);
      try {
        auto c = g.closure(trial, target);
        if (target % c.size() == 0) {
          gens = std::move(trial);
          cur = std::move(c);
          fails = 0;
          continue;
        }
      } catch (const BudgetExceeded&) {
      }
      ++fails;
    }
    if (cur.size() == target) return cur;
  }
  throw BudgetExceeded("no Sylow subgroup found");
}

IntMatrix diag_matrix(const std::vector<Integer>& d) {
  IntMatrix m(d.size(), 0);
  for (uint32_t i = 0; i < d.size(); ++i) m.append_column({{i, d[i]}});
  return m;
}

}  // namespace

std::vector<uint32_t> sylow_subgroup(const FiniteGroup& g, uint64_t p, unsigned seed, unsigned tries) {
  uint64_t target = p_part(g.order(), p);
  if (target == 1) return {0};
  std::vector<uint32_t> best;
  for (unsigned k = 0; k < std::max(1u, tries); ++k) {
    auto s = grow_sylow(g, p, target, seed + k);
    if (best.empty() || s < best) best = std::move(s);
  }
  return best;
}

StableResult stable_element_homology(const FiniteGroup& g, uint64_t p, int n, unsigned seed,
                                     const std::vector<uint32_t>* given) {
  StableResult res;
  std::vector<uint32_t> P = given ? *given : sylow_subgroup(g, p, seed);
  res.sylow_order = P.size();
  if (P.size() == 1) return res;
  auto sp = g.subgroup(P);
  BarHomology hp(*sp.group, n);
  res.sylow_homology = hp.group();
  if (hp.group().is_trivial()) return res;
  auto gens = hp.generators();

  std::vector<char> inP(g.order(), 0);
  for (uint32_t x : P) inP[x] = 1;
  std::vector<char> seen(g.order(), 0);
  std::vector<uint32_t> reps;
  for (uint32_t x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    reps.push_back(x);
    for (uint32_t a : P) {
      uint32_t ax = g.mul(a, x);
      for (uint32_t b : P) seen[g.mul(ax, b)] = 1;
    }
  }

  IntMatrix map(0, gens.size());
  std::vector<Integer> tgt_moduli;
  std::vector<SparseVec> cols(gens.size());
  std::map<std::vector<uint32_t>, std::pair<FiniteGroup::Sub, std::shared_ptr<BarHomology>>> cache;
  size_t row = 0;
  for (uint32_t r : reps) {
    if (inP[r]) continue;  // the trivial double coset imposes no condition
    std::vector<uint32_t> Q, Qp;
    for (uint32_t a : P) {
      uint32_t c = g.conj(r, a);
      if (inP[c]) {
        Q.push_back(c);
        Qp.push_back(a);
      }
    }
    if (Q.size() == 1) continue;
    ++res.double_cosets;
    std::sort(Q.begin(), Q.end());
    std::sort(Qp.begin(), Qp.end());
    auto it = cache.find(Q);
    if (it == cache.end()) {
      auto sq = g.subgroup(Q);
      auto hq = std::make_shared<BarHomology>(*sq.group, n);
      it = cache.emplace(Q, std::make_pair(std::move(sq), hq)).first;
    }
    const auto& sq = it->second.first;
    const BarHomology& hq = *it->second.second;
    if (hq.group().is_trivial()) continue;
    std::vector<uint32_t> q_in_p, qp_in_p;
    for (uint32_t x : Q) q_in_p.push_back(sp.lookup.at(x));
    for (uint32_t x : Qp) qp_in_p.push_back(sp.lookup.at(x));
    std::sort(q_in_p.begin(), q_in_p.end());
    std::sort(qp_in_p.begin(), qp_in_p.end());
    for (size_t i = 0; i < gens.size(); ++i) {
      BarChain a = to_sub(sq, to_parent(sp, transfer(*sp.group, q_in_p, gens[i])));
      BarChain b = to_sub(sq, conjugate_chain(g, r, to_parent(sp, transfer(*sp.group, qp_in_p, gens[i]))));
      IntVector ca = hq.class_of(a), cb = hq.class_of(b);
      for (size_t k = 0; k < ca.size(); ++k) {
        Integer v = Integer::mod(ca[k] - cb[k], hq.moduli()[k]);
        if (!v.is_zero()) cols[i].emplace_back(static_cast<uint32_t>(row + k), v);
      }
    }
    for (const auto& m : hq.moduli()) tgt_moduli.push_back(m);
    row += hq.moduli().size();
  }
  if (row == 0) {
    res.group = hp.group();
    return res;
  }
  IntMatrix M(row, std::move(cols));
  KernelGroup kg(diag_matrix(hp.moduli()), M, diag_matrix(tgt_moduli));
  res.group = kg.group();
  return res;
}

AbGroup stable_homology(const FiniteGroup& g, int n, unsigned seed) {
  if (n == 0) return AbGroup::from_factors(1, {});
  AbGroup total;
  uint64_t m = g.order();
  for (uint64_t p = 2; m > 1; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    total = total.direct_sum(stable_element_homology(g, p, n, seed).group);
  }
  return total;
}

}  // namespace bf
