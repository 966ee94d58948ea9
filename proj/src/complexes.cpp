#include "bloch_forge/complexes.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "bloch_forge/group.hpp"

namespace bf {

size_t residue_rank(const Ring& r, const std::vector<RVec>& vs) {
  RingPtr k = r.residue_field();
  const Ring& f = *k;
  std::vector<RVec> m;
  for (const auto& v : vs) {
    RVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = r.residue(v[i]);
    m.push_back(std::move(w));
  }
  size_t rank = 0;
  size_t cols = m.empty() ? 0 : m[0].size();
  for (size_t c = 0; c < cols && rank < m.size(); ++c) {
    size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    Elem inv = f.inv(m[rank][c]);
    for (size_t i = rank + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      Elem t = f.mul(m[i][c], inv);
      for (size_t j = c; j < cols; ++j) m[i][j] = f.sub(m[i][j], f.mul(t, m[rank][j]));
    }
    ++rank;
  }
  return rank;
}

RVec normalize_line(const Ring& r, const RVec& v) {
  for (size_t i = 0; i < v.size(); ++i) {
    if (r.is_unit(v[i])) {
      Elem u = r.inv(v[i]);
      RVec w(v.size());
      for (size_t j = 0; j < v.size(); ++j) w[j] = r.mul(u, v[j]);
      return w;
    }
  }
  throw std::invalid_argument("vector is not unimodular");
}

namespace {

void enumerate_vectors(const Ring& r, unsigned n, RVec& cur, std::vector<RVec>& out, bool lines) {
  if (cur.size() == n) {
    bool unimodular = false;
    size_t first = n;
    for (size_t i = 0; i < n; ++i)
      if (r.is_unit(cur[i])) {
        unimodular = true;
        first = std::min(first, i);
      }
    if (!unimodular) return;
    if (lines && cur[first] != r.one()) return;
    out.push_back(cur);
    return;
  }
  for (Elem x = 0; x < r.size(); ++x) {
    cur.push_back(x);
    enumerate_vectors(r, n, cur, out, lines);
    cur.pop_back();
  }
}

}  // namespace

std::vector<RVec> projective_points(const Ring& r, unsigned n) {
  std::vector<RVec> out;
  RVec cur;
  enumerate_vectors(r, n, cur, out, true);
  return out;
}

std::vector<RVec> unimodular_vectors(const Ring& r, unsigned n) {
  std::vector<RVec> out;
  RVec cur;
  enumerate_vectors(r, n, cur, out, false);
  return out;
}

ComplexFlavor parse_flavor(const std::string& s) {
  if (s == "lines" || s == "C") return ComplexFlavor::Lines;
  if (s == "hat" || s == "hat-lines" || s == "Chat") return ComplexFlavor::HatLines;
  if (s == "vectors" || s == "tilde" || s == "Ctilde") return ComplexFlavor::Vectors;
  if (s == "frames" || s == "prime" || s == "Cprime") return ComplexFlavor::Frames;
  throw std::invalid_argument("unknown complex flavor '" + s + "'");
}

std::string flavor_name(ComplexFlavor f) {
  switch (f) {
    case ComplexFlavor::Lines: return "lines";
    case ComplexFlavor::HatLines: return "hat-lines";
    case ComplexFlavor::Vectors: return "vectors";
    case ComplexFlavor::Frames: return "frames";
  }
  return "?";
}

bool ExactnessReport::all_exact() const {
  for (const auto& d : degrees)
    if (!d.exact) return false;
  return !degrees.empty() && boundary_squares_to_zero;
}

namespace {

// Whether appending p keeps the tuple valid: every subset of size <= kmax that
// contains p is independent, and for vectors with S no dependency touches the tuple.
bool extends(const ConfigComplexSpec& s, const std::vector<RVec>& pts, const std::vector<uint32_t>& t, uint32_t p,
             unsigned kmax) {
  const Ring& r = *s.ring;
  size_t m = t.size();
  size_t limit = std::min<size_t>(kmax, m + 1);
  // subsets of t of size < limit, combined with p
  std::vector<RVec> sel;
  std::vector<size_t> idx;
  bool ok = true;
  auto rec = [&](auto&& self, size_t start) -> void {
    if (!ok) return;
    sel.clear();
    for (size_t i : idx) sel.push_back(pts[t[i]]);
    sel.push_back(pts[p]);
    if (residue_rank(r, sel) != sel.size()) {
      ok = false;
      return;
    }
    if (idx.size() + 1 >= limit) return;
    for (size_t i = start; i < m; ++i) {
      idx.push_back(i);
      self(self, i + 1);
      idx.pop_back();
    }
  };
  rec(rec, 0);
  if (!ok || s.S.empty()) return ok;
  // General position with S: A ⊆ tuple with p ∈ A, B ⊆ S, |A| + |B| <= n, rank(A ∪ B) = |A| + rank(B).
  std::vector<uint32_t> full = t;
  full.push_back(p);
  size_t ns = s.S.size();
  for (uint64_t bm = 0; bm < (uint64_t(1) << ns); ++bm) {
    std::vector<RVec> B;
    for (size_t i = 0; i < ns; ++i)
      if (bm >> i & 1) B.push_back(s.S[i]);
    if (B.size() + 1 > s.n) continue;
    size_t rb = residue_rank(r, B);
    size_t room = s.n - B.size();
    std::vector<size_t> ai;
    bool good = true;
    auto recA = [&](auto&& self, size_t start) -> void {
      if (!good) return;
      std::vector<RVec> all = B;
      for (size_t i : ai) all.push_back(pts[full[i]]);
      all.push_back(pts[p]);
      if (residue_rank(r, all) != rb + ai.size() + 1) {
        good = false;
        return;
      }
      if (ai.size() + 1 >= room) return;
      for (size_t i = start; i < m; ++i) {
        ai.push_back(i);
        self(self, i + 1);
        ai.pop_back();
      }
    };
    recA(recA, 0);
    if (!good) return false;
  }
  return true;
}

}  // namespace

ConfigComplex build_config_complex(const ConfigComplexSpec& spec, int max_degree) {
  ConfigComplex cx;
  cx.spec = spec;
  const Ring& r = *spec.ring;
  bool lines = spec.flavor == ComplexFlavor::Lines || spec.flavor == ComplexFlavor::HatLines;
  cx.points = lines ? projective_points(r, spec.n) : unimodular_vectors(r, spec.n);
  unsigned kmax = spec.flavor == ComplexFlavor::HatLines ? 2 : spec.n;
  size_t cap = default_budget().max_columns;
  std::vector<RVec> pts = cx.points;
  if (spec.flavor == ComplexFlavor::Vectors && !spec.S.empty()) {
    for (const auto& v : spec.S)
      if (v.size() != spec.n) throw std::invalid_argument("S vector of the wrong length");
  }
  std::vector<uint32_t> level0;
  cx.tuples.assign(std::max(0, max_degree + 1), {});
  if (max_degree < 0) return cx;
  for (uint32_t p = 0; p < pts.size(); ++p) {
    if (extends(spec, pts, {}, p, kmax)) cx.tuples[0].push_back({p});
  }
  for (int l = 1; l <= max_degree; ++l) {
    for (const auto& t : cx.tuples[l - 1]) {
      for (uint32_t p = 0; p < pts.size(); ++p) {
        if (extends(spec, pts, t, p, kmax)) {
          auto u = t;
          u.push_back(p);
          cx.tuples[l].push_back(std::move(u));
          if (cx.tuples[l].size() > cap) throw BudgetExceeded("configuration complex degree " + std::to_string(l) + " too large");
        }
      }
    }
  }
  return cx;
}

IntMatrix ConfigComplex::boundary(int l) const {
  if (l == 0) {
    IntMatrix m(1, 0);
    for (size_t i = 0; i < tuples[0].size(); ++i) m.append_column({{0, 1}});
    return m;
  }
  std::unordered_map<uint64_t, uint32_t> index;
  uint64_t radix = points.size() + 1;
  auto key = [&](const std::vector<uint32_t>& t) {
    uint64_t k = 0;
    for (uint32_t x : t) k = k * radix + x;
    return k;
  };
  for (uint32_t i = 0; i < tuples[l - 1].size(); ++i) index.emplace(key(tuples[l - 1][i]), i);
  std::vector<SparseVec> cols;
  cols.reserve(tuples[l].size());
  std::vector<uint32_t> f;
  for (const auto& t : tuples[l]) {
    SparseVec v;
    for (size_t i = 0; i < t.size(); ++i) {
      f.assign(t.begin(), t.end());
      f.erase(f.begin() + static_cast<long>(i));
      v.emplace_back(index.at(key(f)), Integer(i % 2 ? -1 : 1));
    }
    cols.push_back(normalize_sparse(std::move(v)));
  }
  return IntMatrix(tuples[l - 1].size(), std::move(cols));
}

ExactnessReport complex_exactness(const ConfigComplexSpec& spec) {
  ExactnessReport rep;
  int top = spec.hi + 1;
  ConfigComplex cx;
  try {
    cx = build_config_complex(spec, top);
  } catch (const BudgetExceeded& e) {
    rep.note = e.what();
    // fall back to the largest range that fits
    for (top = spec.hi; top >= 0; --top) {
      try {
        cx = build_config_complex(spec, top);
        break;
      } catch (const BudgetExceeded&) {
      }
    }
    if (top < 0) return rep;
  }
  auto count = [&](int i) -> uint64_t {
    if (i == -1) return 1;
    if (i < -1 || i > top) return 0;
    return cx.tuples[i].size();
  };
  // ranks and torsion of ∂_i for i = lo .. top
  std::vector<size_t> rk(top + 3, 0);
  std::vector<std::vector<Integer>> tors(top + 3);
  std::vector<IntMatrix> mats(top + 3);
  auto slot = [](int i) { return static_cast<size_t>(i + 1); };
  for (int i = std::max(0, spec.lo); i <= top; ++i) {
    mats[slot(i)] = cx.boundary(i);
    SmithForm s = smith_normal_form(mats[slot(i)], false);
    rk[slot(i)] = s.rank;
    for (const auto& d : s.diagonal)
      if (!d.is_one()) tors[slot(i)].push_back(d);
  }
  for (int i = std::max(0, spec.lo) + 1; i <= top; ++i) {
    IntMatrix prod = mats[slot(i - 1)] * mats[slot(i)];
    if (prod.nnz() != 0) rep.boundary_squares_to_zero = false;
  }
  for (int i = spec.lo; i <= std::min(spec.hi, top - 1); ++i) {
    DegreeReport d;
    d.degree = i;
    d.generators = count(i);
    d.rank_in = i >= 0 ? rk[slot(i)] : 0;
    d.rank_out = rk[slot(i + 1)];
    uint64_t free = d.generators - d.rank_in - d.rank_out;
    d.homology = AbGroup::from_factors(free, tors[slot(i + 1)]);
    d.exact = d.homology.is_trivial();
    rep.degrees.push_back(d);
    rep.certified_through = i;
  }
  if (top - 1 < spec.hi) {
    rep.note += (rep.note.empty() ? "" : "; ") + std::string("certified through degree ") +
                std::to_string(rep.certified_through) + " of the requested " + std::to_string(spec.hi);
  }
  return rep;
}

namespace {

struct UnionFind {
  std::vector<uint32_t> p;
  explicit UnionFind(size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  uint32_t find(uint32_t x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(uint32_t a, uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

struct Orbits {
  ConfigComplex cx;
  std::unordered_map<uint64_t, uint32_t> index;
  uint64_t radix = 0;
  std::vector<uint32_t> root;
  std::vector<RVec> pts;

  uint64_t key(const std::vector<uint32_t>& t) const {
    uint64_t k = 0;
    for (uint32_t x : t) k = k * radix + x;
    return k;
  }
  uint32_t point(const Ring& r, const RVec& v) const {
    RVec w = normalize_line(r, v);
    auto it = std::find(pts.begin(), pts.end(), w);
    return static_cast<uint32_t>(it - pts.begin());
  }
  uint32_t orbit_of(const std::vector<uint32_t>& t) const { return root[index.at(key(t))]; }
};

Orbits compute_orbits(const RingPtr& rp, int l) {
  const Ring& r = *rp;
  ConfigComplexSpec spec;
  spec.ring = rp;
  spec.n = 2;
  spec.flavor = ComplexFlavor::Lines;
  Orbits o;
  o.cx = build_config_complex(spec, l);
  o.pts = o.cx.points;
  o.radix = o.pts.size() + 1;
  const auto& tuples = o.cx.tuples[l];
  for (uint32_t i = 0; i < tuples.size(); ++i) o.index.emplace(o.key(tuples[i]), i);
  std::vector<Mat2> gens;
  for (Elem x : additive_generators(r)) {
    gens.push_back({r.one(), x, 0, r.one()});
    gens.push_back({r.one(), 0, x, r.one()});
  }
  for (Elem u : r.units_group().generators) gens.push_back({u, 0, 0, r.one()});
  UnionFind uf(tuples.size());
  std::vector<uint32_t> img;
  for (const auto& g : gens) {
    std::vector<uint32_t> act(o.pts.size());
    for (uint32_t i = 0; i < o.pts.size(); ++i) {
      const RVec& v = o.pts[i];
      act[i] = o.point(r, {r.add(r.mul(g[0], v[0]), r.mul(g[1], v[1])), r.add(r.mul(g[2], v[0]), r.mul(g[3], v[1]))});
    }
    for (uint32_t i = 0; i < tuples.size(); ++i) {
      img.clear();
      for (uint32_t x : tuples[i]) img.push_back(act[x]);
      uf.unite(i, o.index.at(o.key(img)));
    }
  }
  o.root.resize(tuples.size());
  for (uint32_t i = 0; i < tuples.size(); ++i) o.root[i] = uf.find(i);
  return o;
}

std::vector<uint32_t> frame(const Orbits& o, const Ring& r, const std::vector<Elem>& params) {
  std::vector<uint32_t> t{o.point(r, {r.one(), 0}), o.point(r, {0, r.one()}), o.point(r, {r.one(), r.one()})};
  for (Elem a : params) t.push_back(o.point(r, {r.one(), a}));
  return t;
}

bool good(const Ring& r, Elem a) { return r.is_unit(a) && r.is_unit(r.sub(r.one(), a)); }

}  // namespace

OrbitReport orbit_frames(const RingPtr& rp, int l) {
  if (l != 3 && l != 4) throw std::invalid_argument("frames are defined for l = 3 and l = 4");
  const Ring& r = *rp;
  Orbits o = compute_orbits(rp, l);
  OrbitReport rep;
  rep.tuples = o.root.size();
  std::unordered_map<uint32_t, size_t> per_orbit;
  for (uint32_t i = 0; i < o.root.size(); ++i) per_orbit.emplace(o.root[i], 0);
  rep.orbits = per_orbit.size();
  for (Elem a = 0; a < r.size(); ++a) {
    if (!good(r, a)) continue;
    if (l == 3) {
      rep.frame_parameters.push_back({a});
    } else {
      for (Elem b = 0; b < r.size(); ++b)
        if (good(r, b) && r.is_unit(r.sub(a, b))) rep.frame_parameters.push_back({a, b});
    }
  }
  rep.frames = rep.frame_parameters.size();
  for (const auto& p : rep.frame_parameters) ++per_orbit[o.orbit_of(frame(o, r, p))];
  rep.one_frame_per_orbit = true;
  for (const auto& [k, c] : per_orbit)
    if (c != 1) rep.one_frame_per_orbit = false;
  return rep;
}

bool five_term_boundary_check(const RingPtr& rp, Elem a, Elem b) {
  const Ring& r = *rp;
  if (!good(r, a) || !good(r, b) || !r.is_unit(r.sub(a, b))) {
    throw std::invalid_argument("five term check needs a, 1-a, b, 1-b, a-b units");
  }
  Orbits o = compute_orbits(rp, 3);
  std::map<uint32_t, long long> lhs, rhs;
  auto q = frame(o, r, {a, b});
  for (size_t i = 0; i < q.size(); ++i) {
    auto f = q;
    f.erase(f.begin() + static_cast<long>(i));
    lhs[o.orbit_of(f)] += (i % 2) ? -1 : 1;
  }
  Elem one = r.one();
  auto p = [&](Elem c, long long s) { rhs[o.orbit_of(frame(o, r, {c}))] += s; };
  p(a, 1);
  p(b, -1);
  p(r.div(b, a), 1);
  p(r.div(r.sub(one, r.inv(a)), r.sub(one, r.inv(b))), -1);
  p(r.div(r.sub(one, a), r.sub(one, b)), 1);
  auto clean = [](std::map<uint32_t, long long>& m) {
    for (auto it = m.begin(); it != m.end();) it = it->second == 0 ? m.erase(it) : std::next(it);
  };
  clean(lhs);
  clean(rhs);
  return lhs == rhs;
}

}  // namespace bf
