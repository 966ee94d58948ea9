#include <stdexcept>

#include "bloch_forge/homology.hpp"

namespace bf {

namespace {

IntMatrix reduce_matrix(const IntMatrix& a, const std::vector<Integer>& moduli) {
  IntMatrix out(a.rows(), a.cols());
  for (size_t c = 0; c < a.cols(); ++c) {
    SparseVec v;
    for (const auto& [r, x] : a.column(c)) {
      Integer y = moduli[r].is_zero() ? x : Integer::mod(x, moduli[r]);
      if (!y.is_zero()) v.emplace_back(r, y);
    }
    out.set_column(c, std::move(v));
  }
  return out;
}

}  // namespace

IntVector reduce_mod(const IntVector& v, const std::vector<Integer>& moduli) {
  IntVector out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = moduli[i].is_zero() ? v[i] : Integer::mod(v[i], moduli[i]);
  return out;
}

GModule::GModule(const FiniteGroup& g, std::vector<Integer> moduli, std::vector<IntMatrix> gen_actions)
    : g_(&g), moduli_(std::move(moduli)) {
  size_t r = moduli_.size();
  const auto& gens = g.generators();
  if (gen_actions.size() != gens.size()) throw std::invalid_argument("one action matrix per group generator expected");
  for (auto& a : gen_actions) {
    if (a.rows() != r || a.cols() != r) throw std::invalid_argument("action matrix has the wrong shape");
    a = reduce_matrix(a, moduli_);
  }
  size_t n = g.order();
  actions_.assign(n, IntMatrix());
  std::vector<char> have(n, 0);
  actions_[0] = IntMatrix::identity(r);
  have[0] = 1;
  std::vector<uint32_t> queue{0};
  for (size_t i = 0; i < queue.size(); ++i) {
    uint32_t x = queue[i];
    for (size_t k = 0; k < gens.size(); ++k) {
      uint32_t y = g.mul(x, gens[k]);
      IntMatrix prod = reduce_matrix(actions_[x] * gen_actions[k], moduli_);
      if (!have[y]) {
        have[y] = 1;
        actions_[y] = std::move(prod);
        queue.push_back(y);
      } else if (n <= 512 && !(actions_[y] == prod)) {
        consistent_ = false;
      }
    }
  }
  if (queue.size() != n) throw std::invalid_argument("group generators do not generate the group");
  if (!consistent_) throw std::invalid_argument("action matrices do not respect the group relations");
}

GModule GModule::trivial(const FiniteGroup& g, std::vector<Integer> moduli) {
  std::vector<IntMatrix> a(g.generators().size(), IntMatrix::identity(moduli.size()));
  return GModule(g, std::move(moduli), std::move(a));
}

IntMatrix GModule::relations() const {
  IntMatrix m(rank(), 0);
  for (uint32_t i = 0; i < rank(); ++i)
    if (!moduli_[i].is_zero()) m.append_column({{i, moduli_[i]}});
  return m;
}

AbGroup coinvariants(const GModule& m) {
  IntMatrix rel = m.relations();
  for (uint32_t s : m.group().generators()) {
    const IntMatrix& a = m.action(s);
    for (uint32_t c = 0; c < m.rank(); ++c) {
      SparseVec v = a.column(c);
      v.emplace_back(c, Integer(-1));
      rel.append_column(normalize_sparse(v));
    }
  }
  return cokernel(rel);
}

namespace {

// ∂_n on C_n(G, M) = M ⊗ (normalized bar)_n, index = tuple index * rank + basis index.
IntMatrix module_boundary(const GModule& m, int n) {
  const FiniteGroup& g = m.group();
  size_t N = g.order(), r = m.rank();
  uint64_t tuples = bar_rank(N, n);
  uint64_t cols = tuples * r;
  if (cols > default_budget().max_columns) throw BudgetExceeded("module bar complex too large");
  std::vector<SparseVec> out(cols);
  for (uint64_t t = 0; t < tuples; ++t) {
    BarTuple s = bar_tuple(t, n, N);
    for (uint32_t i = 0; i < r; ++i) {
      SparseVec v;
      // g1^-1 m ⊗ [g2|...|gn]
      BarTuple f(s.begin() + 1, s.end());
      uint64_t fi = bar_index(f, N);
      for (const auto& [row, x] : m.action(g.inv(s[0])).column(i)) v.emplace_back(static_cast<uint32_t>(fi * r + row), x);
      for (int k = 1; k < n; ++k) {
        BarTuple h;
        for (int j = 0; j < n; ++j) {
          if (j == k - 1) {
            h.push_back(g.mul(s[j], s[j + 1]));
            ++j;
          } else {
            h.push_back(s[j]);
          }
        }
        bool degenerate = false;
        for (uint32_t x : h) degenerate |= (x == 0);
        if (!degenerate) v.emplace_back(static_cast<uint32_t>(bar_index(h, N) * r + i), Integer(k % 2 ? -1 : 1));
      }
      BarTuple l(s.begin(), s.end() - 1);
      v.emplace_back(static_cast<uint32_t>(bar_index(l, N) * r + i), Integer(n % 2 ? -1 : 1));
      out[t * r + i] = normalize_sparse(std::move(v));
    }
  }
  return IntMatrix(bar_rank(N, n - 1) * r, std::move(out));
}

IntMatrix module_relations(const GModule& m, int n) {
  uint64_t tuples = bar_rank(m.group().order(), n);
  size_t r = m.rank();
  IntMatrix out(tuples * r, 0);
  for (uint64_t t = 0; t < tuples; ++t)
    for (uint32_t i = 0; i < r; ++i)
      if (!m.moduli()[i].is_zero()) out.append_column({{static_cast<uint32_t>(t * r + i), m.moduli()[i]}});
  return out;
}

}  // namespace

AbGroup module_homology(const GModule& m, int n) {
  if (n < 0 || n > 2) throw std::invalid_argument("module homology is implemented for degrees 0..2");
  if (m.group().order() == 1) return n == 0 ? cokernel(m.relations()) : AbGroup();
  check_bar_budget(m.group().order(), n + 1);
  IntMatrix src = module_boundary(m, n + 1);
  src.append_columns(module_relations(m, n));
  if (n == 0) return cokernel(src);
  return KernelGroup(src, module_boundary(m, n), module_relations(m, n - 1)).group();
}

}  // namespace bf
