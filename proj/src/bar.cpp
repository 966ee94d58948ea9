#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "bloch_forge/homology.hpp"

namespace bf {

BarChain BarChain::symbol(const BarTuple& t, long long c) {
  BarChain r(static_cast<int>(t.size()));
  r.add(t, c);
  return r;
}

void BarChain::add(const BarTuple& t, long long c) {
  if (c == 0) return;
  if (static_cast<int>(t.size()) != degree) throw std::invalid_argument("bar symbol of the wrong degree");
  for (uint32_t x : t)
    if (x == 0) return;
  auto [it, fresh] = terms.emplace(t, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

void BarChain::add(const BarChain& o, long long c) {
  if (o.terms.empty()) return;
  if (terms.empty()) degree = o.degree;
  for (const auto& [t, v] : o.terms) add(t, v * c);
}

BarChain BarChain::operator*(long long c) const {
  BarChain r(degree);
  if (c == 0) return r;
  r.terms = terms;
  for (auto& kv : r.terms) kv.second *= c;
  return r;
}

BarChain BarChain::map(const std::function<uint32_t(uint32_t)>& f) const {
  BarChain r(degree);
  BarTuple u(degree);
  for (const auto& [t, v] : terms) {
    for (int i = 0; i < degree; ++i) u[i] = f(t[i]);
    r.add(u, v);
  }
  return r;
}

std::string BarChain::str(const FiniteGroup& g) const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, v] : terms) {
    if (!first) os << (v < 0 ? " - " : " + ");
    else if (v < 0) os << "-";
    first = false;
    if (v != 1 && v != -1) os << (v < 0 ? -v : v) << "*";
    os << "[";
    for (size_t i = 0; i < t.size(); ++i) os << (i ? "|" : "") << g.label(t[i]);
    os << "]";
  }
  if (first) os << "0";
  return os.str();
}

BarChain bar_boundary(const FiniteGroup& g, const BarChain& c) {
  int n = c.degree;
  if (n < 1) throw std::invalid_argument("boundary of a degree 0 chain");
  BarChain r(n - 1);
  BarTuple f(n - 1);
  for (const auto& [t, v] : c.terms) {
    std::copy(t.begin() + 1, t.end(), f.begin());
    r.add(f, v);
    for (int i = 1; i < n; ++i) {
      size_t k = 0;
      for (int j = 0; j < n; ++j) {
        if (j == i - 1) {
          f[k++] = g.mul(t[j], t[j + 1]);
          ++j;
        } else {
          f[k++] = t[j];
        }
      }
      r.add(f, (i % 2) ? -v : v);
    }
    std::copy(t.begin(), t.end() - 1, f.begin());
    r.add(f, (n % 2) ? -v : v);
  }
  return r;
}

BarChain shuffle_product(const FiniteGroup& g, const BarChain& u, const BarChain& v) {
  (void)g;
  int p = u.degree, q = v.degree, n = p + q;
  BarChain r(n);
  // positions of u's entries: all p-subsets of {0..n-1}
  std::vector<int> pos(p);
  std::iota(pos.begin(), pos.end(), 0);
  BarTuple t(n);
  while (true) {
    int inv = 0;
    for (int i = 0; i < p; ++i) inv += pos[i] - i;
    long long sign = (inv % 2) ? -1 : 1;
    std::vector<char> mark(n, 0);
    for (int x : pos) mark[x] = 1;
    for (const auto& [a, ca] : u.terms) {
      for (const auto& [b, cb] : v.terms) {
        int ia = 0, ib = 0;
        for (int k = 0; k < n; ++k) t[k] = mark[k] ? a[ia++] : b[ib++];
        r.add(t, sign * ca * cb);
      }
    }
    int i = p - 1;
    while (i >= 0 && pos[i] == n - p + i) --i;
    if (i < 0) break;
    ++pos[i];
    for (int j = i + 1; j < p; ++j) pos[j] = pos[j - 1] + 1;
  }
  return r;
}

BarChain shuffle_cycle(const FiniteGroup& g, const std::vector<uint32_t>& gs) {
  for (size_t i = 0; i < gs.size(); ++i)
    for (size_t j = i + 1; j < gs.size(); ++j)
      if (g.mul(gs[i], gs[j]) != g.mul(gs[j], gs[i])) throw std::invalid_argument("shuffle cycle needs commuting elements");
  if (gs.empty()) throw std::invalid_argument("shuffle cycle of no elements");
  BarChain c = BarChain::symbol({gs[0]});
  for (size_t i = 1; i < gs.size(); ++i) c = shuffle_product(g, c, BarChain::symbol({gs[i]}));
  return c;
}

BarChain norm_chain(const FiniteGroup& g, uint32_t x) {
  BarChain c(2);
  uint64_t m = g.element_order(x);
  uint32_t y = 0;
  for (uint64_t i = 0; i < m; ++i) {
    c.add({y, x}, 1);
    y = g.mul(y, x);
  }
  return c;
}

uint64_t bar_rank(size_t order, int n) {
  uint64_t r = 1;
  for (int i = 0; i < n; ++i) r *= (order - 1);
  return r;
}

uint64_t bar_index(const BarTuple& t, size_t order) {
  uint64_t idx = 0;
  for (uint32_t x : t) idx = idx * (order - 1) + (x - 1);
  return idx;
}

BarTuple bar_tuple(uint64_t index, int n, size_t order) {
  BarTuple t(n);
  for (int i = n - 1; i >= 0; --i) {
    t[i] = static_cast<uint32_t>(index % (order - 1)) + 1;
    index /= (order - 1);
  }
  return t;
}

IntMatrix bar_boundary_matrix(const FiniteGroup& g, int n) {
  size_t N = g.order();
  if (n < 1) throw std::invalid_argument("bar boundary degree must be at least 1");
  uint64_t cols = bar_rank(N, n), rows = bar_rank(N, n - 1);
  if (cols > default_budget().max_columns) {
    throw BudgetExceeded("bar complex degree " + std::to_string(n) + " needs " + std::to_string(cols) + " columns");
  }
  std::vector<SparseVec> out(cols);
  for (uint64_t c = 0; c < cols; ++c) {
    BarChain b = bar_boundary(g, BarChain::symbol(bar_tuple(c, n, N)));
    SparseVec v;
    v.reserve(b.terms.size());
    for (const auto& [t, k] : b.terms) v.emplace_back(static_cast<uint32_t>(bar_index(t, N)), Integer(k));
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out[c] = std::move(v);
  }
  return IntMatrix(rows, std::move(out));
}

IntVector chain_vector(const BarChain& c, size_t order) {
  IntVector v(bar_rank(order, c.degree));
  for (const auto& [t, k] : c.terms) v[bar_index(t, order)] += Integer(k);
  return v;
}

BarChain vector_chain(const IntVector& v, int n, size_t order) {
  BarChain c(n);
  for (uint64_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) c.add(bar_tuple(i, n, order), v[i].to_int64());
  }
  return c;
}

void check_bar_budget(size_t order, int n) {
  const Budget& b = default_budget();
  size_t cap = n >= 3 ? b.bar_order_deg3 : b.bar_order_deg2;
  if (n >= 4 || order > cap) {
    throw BudgetExceeded("bar homology of a group of order " + std::to_string(order) + " in degree " +
                         std::to_string(n) + " exceeds the budget; use the stable element method");
  }
}

BarHomology::BarHomology(const FiniteGroup& g, int n, bool check_free_rank) : g_(&g), n_(n) {
  if (n < 1) throw std::invalid_argument("bar homology is computed for degrees >= 1");
  check_bar_budget(g.order(), n);
  if (g.order() == 1) return;
  quotient_ = Quotient(bar_boundary_matrix(g, n + 1));
  group_.torsion = quotient_.group().torsion;
  if (check_free_rank) {
    size_t r = rank(bar_boundary_matrix(g, n));
    if (quotient_.group().free_rank != r) throw std::logic_error("bar homology has free rank in positive degree");
  }
}

IntVector BarHomology::class_of(const BarChain& z) const {
  if (z.is_zero()) return IntVector(group_.torsion.size());
  if (z.degree != n_) throw std::invalid_argument("cycle of the wrong degree");
  if (!bar_boundary(*g_, z).is_zero()) throw std::invalid_argument("chain is not a cycle");
  IntVector c = quotient_.coordinates(chain_vector(z, g_->order()));
  size_t t = group_.torsion.size();
  for (size_t i = t; i < c.size(); ++i)
    if (!c[i].is_zero()) throw std::logic_error("cycle with a free coordinate");
  c.resize(t);
  return c;
}

std::vector<BarChain> BarHomology::generators() const {
  std::vector<BarChain> out;
  if (g_->order() == 1) return out;
  auto gens = quotient_.generators();
  for (size_t i = 0; i < group_.torsion.size(); ++i) out.push_back(vector_chain(gens[i], n_, g_->order()));
  return out;
}

AbGroup bar_homology(const FiniteGroup& g, int n) {
  if (n == 0) return AbGroup::from_factors(1, {});
  return BarHomology(g, n).group();
}

AbGroup abelianization(const FiniteGroup& g) {
  // G / [G,G]: the commutator subgroup is the normal closure of generator commutators.
  std::vector<uint32_t> comms;
  const auto& gens = g.generators();
  for (uint32_t a : gens)
    for (uint32_t b : gens) {
      uint32_t c = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
      if (c) comms.push_back(c);
    }
  std::vector<uint32_t> sub = g.closure(comms);
  // normal closure: add conjugates until stable
  while (true) {
    std::vector<uint32_t> more;
    for (uint32_t x : sub)
      for (uint32_t s : gens) {
        uint32_t y = g.conj(s, x);
        if (!std::binary_search(sub.begin(), sub.end(), y)) more.push_back(y);
      }
    if (more.empty()) break;
    more.insert(more.end(), sub.begin(), sub.end());
    sub = g.closure(more);
  }
  // Quotient order and structure: count elements of each order in G/[G,G].
  size_t n = g.order(), k = sub.size();
  std::vector<int64_t> coset(n, -1);
  std::vector<uint32_t> reps;
  for (uint32_t x = 0; x < n; ++x) {
    if (coset[x] >= 0) continue;
    for (uint32_t s : sub) coset[g.mul(x, s)] = static_cast<int64_t>(reps.size());
    reps.push_back(x);
  }
  size_t m = n / k;
  // Relation matrix of the finite abelian quotient on generator images.
  // Build the quotient's table and use its cyclic decomposition via relations.
  std::vector<uint32_t> table(m * m);
  for (uint32_t i = 0; i < m; ++i)
    for (uint32_t j = 0; j < m; ++j) table[i * m + j] = static_cast<uint32_t>(coset[g.mul(reps[i], reps[j])]);
  // Z^m -> Q with relations e_i + e_j - e_{ij} and e_identity; the cokernel is Q.
  IntMatrix rel(m, 0);
  for (uint32_t i = 0; i < m; ++i)
    for (uint32_t j = i; j < m; ++j) {
      SparseVec v{{i, 1}, {j, 1}};
      v.emplace_back(table[i * m + j], -1);
      rel.append_column(normalize_sparse(v));
    }
  rel.append_column({{static_cast<uint32_t>(coset[0]), 1}});
  return cokernel(rel);
}

}  // namespace bf
