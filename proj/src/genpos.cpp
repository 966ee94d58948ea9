#include "bloch_forge/genpos.hpp"

#include <functional>
#include <stdexcept>

#include "bloch_forge/budget.hpp"

namespace bf {

namespace {

void check_dims(unsigned n, const std::vector<RVec>& vs) {
  for (const auto& v : vs)
    if (v.size() != n) throw std::invalid_argument("vector has the wrong number of coordinates");
}

// Calls f on every subset of {0..m-1} of size 1..k (ascending indices); stops when f returns false.
bool for_subsets(size_t m, unsigned k, const std::function<bool(const std::vector<size_t>&)>& f) {
  std::vector<size_t> idx;
  std::function<bool(size_t)> rec = [&](size_t start) {
    if (!idx.empty() && !f(idx)) return false;
    if (idx.size() == k) return true;
    for (size_t i = start; i < m; ++i) {
      idx.push_back(i);
      if (!rec(i + 1)) return false;
      idx.pop_back();
    }
    return true;
  };
  return rec(0);
}

bool oracle_subset_ok(const Ring& r, unsigned n, const std::vector<const RVec*>& sel, size_t n_vs) {
  size_t k = sel.size();
  std::vector<Elem> nonzero;
  for (Elem a = 1; a < r.size(); ++a) nonzero.push_back(a);
  std::vector<size_t> c(k, 0);
  while (true) {
    bool touches = false;
    for (size_t i = 0; i < n_vs; ++i) touches |= r.is_unit(nonzero[c[i]]);
    if (touches) {
      bool zero = true;
      for (unsigned j = 0; j < n && zero; ++j) {
        Elem s = 0;
        for (size_t i = 0; i < k; ++i) s = r.add(s, r.mul(nonzero[c[i]], (*sel[i])[j]));
        zero = !r.is_unit(s);
      }
      if (zero) return false;
    }
    size_t i = 0;
    while (i < k && ++c[i] == nonzero.size()) c[i++] = 0;
    if (i == k) return true;
  }
}

}  // namespace

bool in_general_position(const Ring& r, unsigned n, const std::vector<RVec>& vs, const std::vector<RVec>& S,
                         GPDecider d) {
  check_dims(n, vs);
  check_dims(n, S);
  std::vector<const RVec*> all;
  for (const auto& v : vs) all.push_back(&v);
  for (const auto& v : S) all.push_back(&v);
  size_t nv = vs.size();
  return for_subsets(all.size(), n, [&](const std::vector<size_t>& idx) {
    if (idx[0] >= nv) return true;
    std::vector<const RVec*> sel;
    std::vector<RVec> vsel, ssel;
    size_t k_vs = 0;
    for (size_t i : idx) {
      sel.push_back(all[i]);
      if (i < nv) {
        ++k_vs;
        vsel.push_back(*all[i]);
      } else {
        ssel.push_back(*all[i]);
      }
    }
    if (d == GPDecider::Oracle) return oracle_subset_ok(r, n, sel, k_vs);
    std::vector<RVec> both = vsel;
    both.insert(both.end(), ssel.begin(), ssel.end());
    return residue_rank(r, both) == k_vs + residue_rank(r, ssel);
  });
}

std::optional<std::vector<size_t>> first_dependent_subset(const Ring& r, unsigned n, const std::vector<RVec>& vs) {
  check_dims(n, vs);
  std::optional<std::vector<size_t>> out;
  for_subsets(vs.size(), n, [&](const std::vector<size_t>& idx) {
    std::vector<RVec> sel;
    for (size_t i : idx) sel.push_back(vs[i]);
    if (residue_rank(r, sel) == sel.size()) return true;
    out = idx;
    return false;
  });
  return out;
}

namespace {

bool det_nonzero(const Ring& f, std::vector<RVec> m) {
  size_t n = m.size();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return false;
    std::swap(m[piv], m[c]);
    Elem inv = f.inv(m[c][c]);
    for (size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Elem t = f.mul(m[i][c], inv);
      for (size_t j = c; j < n; ++j) m[i][j] = f.sub(m[i][j], f.mul(t, m[c][j]));
    }
  }
  return true;
}

struct ArcSearch {
  const Ring& f;
  unsigned n;
  uint64_t budget;
  uint64_t nodes = 0;
  bool aborted = false;
  std::vector<RVec> chosen, best;

  // Every choice of n-2 chosen vectors together with v and w is a basis.
  bool compatible(const RVec& v, const RVec& w) const {
    if (n == 2) return det_nonzero(f, {v, w});
    bool ok = true;
    std::vector<size_t> idx;
    std::function<void(size_t)> rec = [&](size_t start) {
      if (!ok) return;
      if (idx.size() == n - 2) {
        std::vector<RVec> m;
        for (size_t i : idx) m.push_back(chosen[i]);
        m.push_back(v);
        m.push_back(w);
        ok = det_nonzero(f, m);
        return;
      }
      for (size_t i = start; i < chosen.size(); ++i) {
        idx.push_back(i);
        rec(i + 1);
        idx.pop_back();
      }
    };
    rec(0);
    return ok;
  }

  void dfs(const std::vector<RVec>& cands) {
    if (aborted) return;
    if (++nodes > budget) {
      aborted = true;
      return;
    }
    if (chosen.size() > best.size()) best = chosen;
    for (size_t i = 0; i < cands.size(); ++i) {
      if (chosen.size() + (cands.size() - i) <= best.size()) return;
      const RVec& v = cands[i];
      std::vector<RVec> next;
      for (size_t j = i + 1; j < cands.size(); ++j)
        if (compatible(v, cands[j])) next.push_back(cands[j]);
      chosen.push_back(v);
      dfs(next);
      chosen.pop_back();
      if (aborted) return;
    }
  }
};

}  // namespace

MaxGPResult max_general_position(const Ring& r, unsigned n, uint64_t node_budget) {
  if (n < 2) throw std::invalid_argument("rank must be at least 2");
  RingPtr fp = r.residue_field();
  const Ring& f = *fp;
  ArcSearch s{f, n, node_budget, 0, false, {}, {}};
  for (unsigned i = 0; i < n; ++i) {
    RVec e(n, 0);
    e[i] = 1;
    s.chosen.push_back(e);
  }
  RVec ones(n, 1);
  // Candidates: leading coordinate 1, all coordinates nonzero (forced by the
  // frame), lexicographic.
  std::vector<RVec> cands;
  RVec cur(n, 1);
  std::function<void(unsigned)> gen = [&](unsigned pos) {
    if (pos == n) {
      if (cur != ones) cands.push_back(cur);
      return;
    }
    for (Elem a = 1; a < f.size(); ++a) {
      cur[pos] = a;
      gen(pos + 1);
    }
  };
  gen(1);
  std::vector<RVec> first;
  for (const auto& w : cands)
    if (s.compatible(ones, w)) first.push_back(w);
  s.chosen.push_back(ones);
  s.dfs(first);
  MaxGPResult out;
  out.size = static_cast<unsigned>(s.best.size());
  out.witness = s.best;  // residue indices lift to r unchanged
  out.exhaustive = !s.aborted;
  out.nodes = s.nodes;
  return out;
}

C2Result c2_exact(const Ring& r, uint64_t cap) {
  RingPtr fp = r.residue_field();
  std::vector<RVec> lines = projective_points(*fp, 2);
  if (lines.size() > 20) throw std::invalid_argument("residue field too large for the saturation search");
  C2Result out;
  auto all_vectors = [&]() {
    std::vector<RVec> vs;
    for (Elem x = 0; x < r.size(); ++x)
      for (Elem y = 0; y < r.size(); ++y) vs.push_back({x, y});
    return vs;
  };
  // Only distinct residue lines can help: a repeated line or a vector in m R^2
  // excludes nothing new.
  for (size_t k = 0; k <= lines.size(); ++k) {
    std::vector<size_t> idx(k);
    for (size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      if (++out.sets_checked > cap) throw BudgetExceeded("saturation search exceeded its cap");
      std::vector<RVec> S;
      std::vector<char> covered(lines.size(), 0);
      for (size_t i : idx) {
        S.push_back(lines[i]);
        covered[i] = 1;
      }
      bool escapes = false;
      for (size_t l = 0; l < lines.size() && !escapes; ++l)
        if (!covered[l]) escapes = in_general_position(r, 2, {lines[l]}, S);
      if (!escapes) {
        for (const auto& v : all_vectors())
          if (in_general_position(r, 2, {v}, S)) {
            escapes = true;
            break;
          }
      }
      if (!escapes) {
        out.value = static_cast<unsigned>(k);
        out.saturating = S;
        return out;
      }
      size_t i = k;
      while (i > 0 && idx[i - 1] == lines.size() - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  throw std::logic_error("no saturating set found");
}

N3ConditionResult verify_n3_conditions(const Ring& f, unsigned count, bool include_frame_condition) {
  if (!f.is_field()) throw std::invalid_argument("verify_n3_conditions expects a field");
  N3ConditionResult out;
  size_t q = f.size();
  std::vector<Elem> t(2 * count, 0);
  Elem one = f.one();
  auto unit = [&](Elem x) { return f.is_unit(x); };
  while (true) {
    ++out.tuples;
    auto a = [&](unsigned i) { return t[2 * i]; };
    auto b = [&](unsigned i) { return t[2 * i + 1]; };
    auto x = [&](unsigned i, unsigned j) { return f.sub(f.mul(a(i), b(j)), f.mul(a(j), b(i))); };
    bool cond = true;
    for (unsigned i = 0; i < count && cond; ++i)
      cond = unit(a(i)) && unit(f.sub(one, a(i))) && unit(b(i)) && unit(f.sub(one, b(i))) && unit(f.sub(a(i), b(i)));
    for (unsigned i = 0; i < count && cond; ++i)
      for (unsigned j = 0; j < count && cond; ++j) {
        if (i == j) continue;
        cond = unit(f.sub(a(i), a(j))) && unit(f.sub(b(i), b(j))) && unit(x(i, j));
        if (cond && include_frame_condition)
          cond = unit(f.add(f.sub(x(i, j), f.sub(b(j), b(i))), f.sub(a(j), a(i))));
      }
    for (unsigned i = 0; i < count && cond; ++i)
      for (unsigned j = 0; j < count && cond; ++j)
        for (unsigned k = 0; k < count && cond; ++k) {
          if (i == j || j == k || i == k) continue;
          cond = unit(f.add(f.sub(x(i, j), x(i, k)), x(j, k)));
        }
    std::vector<RVec> vs{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
    for (unsigned i = 0; i < count; ++i) vs.push_back({1, a(i), b(i)});
    bool gp = in_general_position(f, 3, vs, {}, GPDecider::Oracle);
    if (gp) ++out.in_general_position;
    if (gp != cond && out.equivalent) {
      out.equivalent = false;
      out.counterexample_in_gp = gp;
      for (unsigned i = 0; i < count; ++i) out.counterexample.emplace_back(a(i), b(i));
    }
    size_t i = 0;
    while (i < t.size() && ++t[i] == q) t[i++] = 0;
    if (i == t.size()) break;
  }
  return out;
}

std::vector<RVec> f7_quoted_configuration(const Ring& f7) {
  std::vector<std::vector<long long>> raw{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 1, 1},
                                          {1, 2, 3, 4}, {1, 5, 6, 2}, {1, 3, 4, 5}, {1, 6, 2, 3}};
  std::vector<RVec> out;
  for (const auto& v : raw) {
    RVec w;
    for (long long x : v) w.push_back(f7.from_int(x));
    out.push_back(w);
  }
  return out;
}

}  // namespace bf
