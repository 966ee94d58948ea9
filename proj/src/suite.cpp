#include "bloch_forge/suite.hpp"

#include <chrono>
#include <random>
#include <sstream>
#include <stdexcept>

#include "bloch_forge/bloch.hpp"
#include "bloch_forge/budget.hpp"
#include "bloch_forge/chains.hpp"
#include "bloch_forge/coinvariants.hpp"
#include "bloch_forge/complexes.hpp"
#include "bloch_forge/genpos.hpp"
#include "bloch_forge/homology.hpp"

namespace bf {

bool CriterionResult::pass() const {
  if (!within_time() || rows.empty()) return false;
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

bool CriterionResult::only_declared_failures() const {
  if (!within_time()) return false;
  for (const auto& r : rows)
    if (!r.pass && !r.declared_conflict) return false;
  return true;
}

size_t CriterionResult::passed_rows() const {
  size_t n = 0;
  for (const auto& r : rows) n += r.pass;
  return n;
}

namespace {

struct Spec {
  int id;
  const char* title;
  double limit_s;
};

const Spec kSpecs[] = {
    {1, "Bloch groups of finite fields", 60},
    {2, "K2 presentations of finite fields", 30},
    {3, "chain identity and its reductions", 300},
    {4, "general position tables", 600},
    {5, "stable element homology", 600},
    {6, "coinvariants of additive homology", 60},
    {7, "H2 of small GL2", 300},
    {8, "exactness ranges", 900},
    {9, "Bloch-Wigner order consistency", 120},
    {10, "property suites", 600},
};

const Spec& spec_of(int id) {
  for (const auto& s : kSpecs)
    if (s.id == id) return s;
  throw std::invalid_argument("unknown criterion " + std::to_string(id));
}

std::string gf(uint64_t q) { return "gf(" + std::to_string(q) + ")"; }

std::string cyc(long long n) { return n == 1 ? "0" : "Z/" + std::to_string(n); }

void row(CriterionResult& c, std::string claim, std::string expected, std::string computed, bool pass,
         bool conflict = false, std::string note = {}) {
  c.rows.push_back({std::move(claim), std::move(expected), std::move(computed), pass, conflict && !pass,
                    std::move(note)});
}

void row_eq(CriterionResult& c, std::string claim, const std::string& expected, const std::string& computed) {
  row(c, std::move(claim), expected, computed, expected == computed);
}

std::string yes(bool b) { return b ? "true" : "false"; }

const std::vector<uint64_t>& prime_powers_4_32() {
  static const std::vector<uint64_t> q{4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32};
  return q;
}

// Bar complex when it is within budget, stable elements otherwise.
AbGroup homology_any(const FiniteGroup& g, int n, unsigned seed) {
  const Budget& b = default_budget();
  size_t cap = n >= 3 ? b.bar_order_deg3 : b.bar_order_deg2;
  return g.order() <= cap ? bar_homology(g, n) : stable_homology(g, n, seed);
}

void criterion1(CriterionResult& c, const SuiteOptions& o) {
  for (uint64_t q : prime_powers_4_32()) {
    if (o.quick && q > 16) break;
    long long want = q % 2 == 0 ? static_cast<long long>(q + 1) : static_cast<long long>((q + 1) / 2);
    row_eq(c, "bloch." + gf(q), cyc(want), bloch_group(*Ring::gf(q)).bloch.str());
  }
}

void criterion2(CriterionResult& c, const SuiteOptions& o) {
  for (uint64_t q : prime_powers_4_32()) {
    if (o.quick && q > 16) break;
    auto k = k2_presentations(*Ring::gf(q));
    row_eq(c, "k2.ms." + gf(q), "0", k.ms.str());
    row_eq(c, "k2.milnor." + gf(q), "0", k.milnor.str());
    if (q > 5) row_eq(c, "k2.agree." + gf(q), "0", k.simplified.str());
  }
}

void criterion3(CriterionResult& c, const SuiteOptions& o) {
  for (const char* d : {"gf(4)", "gf(5)", "gf(7)", "gf(8)", "gf(9)", "gf(11)", "gf(13)", "zmod(25)", "zmod(49)"}) {
    auto r = Ring::parse(d);
    size_t total = 0, held = 0;
    for (Elem a = 0; a < r->size(); ++a) {
      if (!d3_evaluable(*r, a)) continue;
      ++total;
      held += verify_d3_identity(*r, a).holds;
    }
    row(c, std::string("d3.identity.") + d, "all " + std::to_string(total) + " values of a",
        std::to_string(held) + " of " + std::to_string(total), total > 0 && held == total);
  }
  for (const char* d : {"gf(4)", "gf(5)", "gf(7)"}) {
    if (o.quick && std::string(d) == "gf(7)") break;
    auto r = Ring::parse(d);
    size_t total = 0, held = 0;
    for (Elem a = 0; a < r->size(); ++a) {
      if (!d3_evaluable(*r, a)) continue;
      ++total;
      held += verify_d3_reductions(r, a).all();
    }
    row(c, std::string("d3.reductions.") + d, "all " + std::to_string(total) + " values of a",
        std::to_string(held) + " of " + std::to_string(total), total > 0 && held == total);
  }
}

void criterion4(CriterionResult& c, const SuiteOptions&) {
  const std::string arc_note = "exhaustive search; classical arc bound";
  auto check = [&](unsigned n, uint64_t q, unsigned want, bool at_least, bool conflict) {
    auto m = max_general_position(*Ring::gf(q), n);
    std::string got = std::to_string(m.size) + (m.exhaustive ? "" : " (lower bound)");
    bool pass = m.exhaustive && (at_least ? m.size >= want : m.size == want);
    bool witness = in_general_position(*Ring::gf(q), n, m.witness);
    row(c, "genpos.max.n" + std::to_string(n) + "." + gf(q), (at_least ? ">= " : "") + std::to_string(want), got,
        pass && witness, conflict, conflict ? arc_note : "");
  };
  for (uint64_t q : {2, 3, 4, 5, 7, 8, 9}) check(2, q, static_cast<unsigned>(q + 1), false, false);
  check(3, 2, 4, false, false);
  check(3, 3, 4, false, false);
  check(3, 4, 6, false, false);
  check(3, 5, 6, false, false);
  check(3, 7, 8, false, false);
  check(3, 8, 8, false, true);
  check(3, 9, 8, false, true);
  check(4, 2, 5, false, false);
  check(4, 3, 5, false, false);
  check(4, 4, 5, false, false);
  check(4, 5, 8, false, true);
  check(4, 7, 9, true, true);
  auto f7 = Ring::gf(7);
  auto cfg = f7_quoted_configuration(*f7);
  bool gp = in_general_position(*f7, 4, cfg);
  std::string detail;
  if (auto bad = first_dependent_subset(*f7, 4, cfg)) {
    std::ostringstream os;
    os << "dependent subset";
    for (size_t i : *bad) os << ' ' << i;
    detail = os.str();
  }
  row(c, "genpos.f7.quoted-set", "true", yes(gp), gp, true, detail);
}

void criterion5(CriterionResult& c, const SuiteOptions& o) {
  row_eq(c, "h3.sl2.gf(4)", "Z/30", stable_homology(make_sl2(Ring::gf(4)), 3, o.seed).str());
  row_eq(c, "h3.sl2.gf(8)", "Z/126", stable_homology(make_sl2(Ring::gf(8)), 3, o.seed).str());
  for (uint64_t q : {2, 3, 4, 8, 5, 7, 9, 16}) {
    if (o.quick && q == 16) continue;
    auto r = Ring::gf(q);
    uint64_t p = r->characteristic_prime();
    auto g = make_gl2(r, 70000);
    bool defining = q == 2 || q == 3 || q == 4 || q == 8;
    row_eq(c, "h3.gl2.sylow." + gf(q), defining ? cyc(static_cast<long long>(p)) : "0",
           stable_element_homology(g, p, 3, o.seed).group.str());
  }
}

void criterion6(CriterionResult& c, const SuiteOptions&) {
  row_eq(c, "coinv.h3.gf(3)", "Z/3", additive_homology_coinvariants(Ring::gf(3), 3).coinvariants.str());
  row_eq(c, "coinv.h2.gf(4)", "Z/2", additive_homology_coinvariants(Ring::gf(4), 2).coinvariants.str());
  row_eq(c, "coinv.h3.gf(4)", "Z/2", additive_homology_coinvariants(Ring::gf(4), 3).coinvariants.str());
  row_eq(c, "coinv.h3.gf(8)", "Z/2", additive_homology_coinvariants(Ring::gf(8), 3).coinvariants.str());
  row_eq(c, "coinv.antisym.gf(8)", "0", antisymmetric_tensor_coinvariants(Ring::gf(8)).coinvariants.str());
}

void criterion7(CriterionResult& c, const SuiteOptions& o) {
  for (uint64_t q : {2, 3, 4, 5}) {
    auto g = make_gl2(Ring::gf(q));
    row_eq(c, "h2.gl2." + gf(q), q == 4 ? "Z/2" : "0", homology_any(g, 2, o.seed).str());
  }
}

void exactness_row(CriterionResult& c, const std::string& claim, const ConfigComplexSpec& s) {
  auto rep = complex_exactness(s);
  std::string want = "exact in " + std::to_string(s.lo) + ".." + std::to_string(s.hi);
  std::ostringstream got;
  bool ok = rep.boundary_squares_to_zero && rep.certified_through >= s.hi && !rep.degrees.empty();
  std::vector<int> bad;
  for (const auto& d : rep.degrees)
    if (!d.exact) bad.push_back(d.degree);
  ok = ok && bad.empty();
  if (ok) {
    got << want;
  } else {
    got << "certified through " << rep.certified_through;
    for (int b : bad) got << ", homology in degree " << b;
  }
  row(c, claim, want, got.str(), ok, false, rep.note);
}

void criterion8(CriterionResult& c, const SuiteOptions&) {
  for (uint64_t q : {2, 3, 4, 5})
    exactness_row(c, "exact.lines." + gf(q),
                  ConfigComplexSpec{Ring::gf(q), 2, ComplexFlavor::Lines, 1, static_cast<int>(q) - 1, {}});
  // The full range -1 <= i < |P^2(F2)| - 1 fits in the default budget.
  exactness_row(c, "exact.hat-lines.gf(2)^3", ConfigComplexSpec{Ring::gf(2), 3, ComplexFlavor::HatLines, -1, 5, {}});
  for (uint64_t q : {3, 4, 5}) {
    auto r = Ring::gf(q);
    int c2 = static_cast<int>(c2_exact(*r).value);
    int hi = (c2 - 3) / 2;
    exactness_row(c, "exact.vectors.empty-s." + gf(q), ConfigComplexSpec{r, 2, ComplexFlavor::Vectors, -1, hi, {}});
  }
}

void criterion9(CriterionResult& c, const SuiteOptions&) {
  for (uint64_t q : {4, 5, 7, 8, 9, 11, 13, 16}) {
    AbGroup b;
    bool ok = bw_order_check(q, &b);
    row(c, "bw.order." + gf(q), "true", yes(ok), ok, false, "B = " + b.str());
  }
}

// ---- property suites ----

bool snf_reconstructs(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m, true);
  IntMatrix d = s.u_matrix() * m * s.v_matrix();
  for (size_t col = 0; col < d.cols(); ++col)
    for (size_t r = 0; r < d.rows(); ++r) {
      Integer want = (r == col && r < s.rank) ? s.diagonal[r] : Integer(0);
      if (!(d.get(r, col) == want)) return false;
    }
  for (size_t k = 0; k + 1 < s.rank; ++k)
    if (!Integer::divides(s.diagonal[k], s.diagonal[k + 1])) return false;
  for (size_t k = 0; k < s.rank; ++k)
    if (s.diagonal[k].sign() <= 0) return false;
  return true;
}

void abelian_types(uint64_t bound, std::vector<uint64_t>& cur, uint64_t prod,
                   std::vector<std::vector<uint64_t>>& out) {
  if (!cur.empty()) out.push_back(cur);
  // factors listed so that each divides the next
  uint64_t start = cur.empty() ? 2 : cur.back();
  for (uint64_t d = start; prod * d <= bound; d += (cur.empty() ? 1 : cur.back())) {
    cur.push_back(d);
    abelian_types(bound, cur, prod * d, out);
    cur.pop_back();
  }
}

std::vector<RVec> random_vectors(const Ring& r, unsigned n, size_t count, std::mt19937& rng) {
  std::uniform_int_distribution<Elem> el(0, static_cast<Elem>(r.size() - 1));
  std::vector<RVec> out(count, RVec(n));
  for (auto& v : out)
    for (auto& x : v) x = el(rng);
  return out;
}

void criterion10(CriterionResult& c, const SuiteOptions& o) {
  std::mt19937 rng(o.seed);
  std::mt19937_64 rng64(o.seed);

  {
    size_t ok = 0, total = 200;
    for (size_t t = 0; t < total; ++t) {
      size_t r = rng64() % 30 + 1, k = rng64() % 30 + 1;
      std::vector<std::vector<long long>> d(r, std::vector<long long>(k));
      for (auto& rowv : d)
        for (auto& x : rowv)
          if (rng64() % 4 == 0) x = static_cast<long long>(rng64() % 61) - 30;
      ok += snf_reconstructs(IntMatrix::from_dense(d));
    }
    row(c, "prop.snf.reconstruction", "200 of 200", std::to_string(ok) + " of 200", ok == total);
  }

  const char* groups[] = {"sl2(gf(2))", "sl2(gf(3))", "b2(gf(3))", "gm2(gf(3))", "abelian(2,4)", "cyclic(6)"};
  {
    size_t bad = 0, checked = 0;
    for (const char* s : groups) {
      if (o.quick && std::string(s) == "sl2(gf(3))") continue;
      auto g = parse_group(s);
      int top = g.order() <= default_budget().bar_order_deg3 ? 3 : 2;
      for (int n = 1; n <= top; ++n) {
        ++checked;
        if ((bar_boundary_matrix(g, n) * bar_boundary_matrix(g, n + 1)).nnz() != 0) ++bad;
      }
    }
    for (const char* d : {"gf(3)", "gf(4)", "zmod(4)"}) {
      auto cc = build_config_complex(ConfigComplexSpec{Ring::parse(d), 2, ComplexFlavor::Lines, -1, 2, {}}, 3);
      for (int l = 1; l <= 3; ++l) {
        ++checked;
        if ((cc.boundary(l - 1) * cc.boundary(l)).nnz() != 0) ++bad;
      }
    }
    row(c, "prop.boundary-squared", "0 nonzero products", std::to_string(bad) + " nonzero of " + std::to_string(checked),
        bad == 0);
  }

  {
    size_t bad = 0;
    for (const char* s : groups) {
      if (o.quick && std::string(s) == "sl2(gf(3))") continue;
      auto g = parse_group(s);
      Integer order(static_cast<long long>(g.order()));
      for (int n = 1; n <= 3; ++n)
        for (const auto& d : homology_any(g, n, o.seed).torsion)
          if (!Integer::mod(order, d).is_zero()) ++bad;
    }
    row(c, "prop.order-annihilates", "0 violations", std::to_string(bad) + " violations", bad == 0);
  }

  {
    std::vector<std::vector<uint64_t>> types;
    std::vector<uint64_t> cur;
    abelian_types(o.quick ? 8 : 16, cur, 1, types);
    size_t ok = 0;
    for (const auto& t : types) {
      auto g = FiniteGroup::abelian(t);
      bool same = true;
      for (int n = 1; n <= 3; ++n) same = same && bar_homology(g, n) == abelian_homology_group(t, n);
      ok += same;
    }
    row(c, o.quick ? "prop.kunneth.order<=8" : "prop.kunneth.order<=16", "all " + std::to_string(types.size()) + " groups",
        std::to_string(ok) + " of " + std::to_string(types.size()), ok == types.size());
  }

  {
    const char* small[] = {"sl2(gf(2))", "b2(gf(3))", "abelian(4,2)", "gm2(gf(3))", "sl2(gf(3))", "cyclic(12)"};
    size_t pairs = 0, ok = 0, attempts = 0;
    while (pairs < 20 && attempts < 200) {
      ++attempts;
      auto g = parse_group(small[rng() % 6]);
      std::uniform_int_distribution<uint32_t> el(1, static_cast<uint32_t>(g.order() - 1));
      auto h = g.closure({el(rng)});
      if (h.size() == g.order()) continue;
      int n = 1 + static_cast<int>(rng() % 2);
      BarHomology hg(g, n);
      auto sub = g.subgroup(h);
      long long index = static_cast<long long>(g.order() / h.size());
      bool good = true;
      for (const auto& z : hg.generators()) {
        BarChain back = to_parent(sub, to_sub(sub, transfer(g, h, z)));
        good = good && reduce_mod(hg.class_of(back), hg.moduli()) == reduce_mod(hg.class_of(z * index), hg.moduli());
      }
      ++pairs;
      ok += good;
    }
    row(c, "prop.cor-res", "20 of 20", std::to_string(ok) + " of " + std::to_string(pairs), pairs == 20 && ok == 20);
  }

  {
    size_t trials = 0, bad = 0;
    for (const char* d : {"gf(3)", "gf(4)", "gf(5)", "gf(7)", "zmod(9)", "zmod(25)", "truncpoly(gf(4),2)"}) {
      auto r = Ring::parse(d);
      std::uniform_int_distribution<Elem> el(0, static_cast<Elem>(r->size() - 1));
      std::uniform_int_distribution<size_t> un(0, r->units().size() - 1);
      for (int i = 0; i < 50; ++i) {
        unsigned n = 2 + i % 2;
        auto vs = random_vectors(*r, n, 2, rng), S = random_vectors(*r, n, 2, rng);
        bool base = in_general_position(*r, n, vs, S);
        // g = product of random elementary and unit-diagonal matrices
        std::vector<RVec> m(n, RVec(n, 0));
        for (unsigned k = 0; k < n; ++k) m[k][k] = r->one();
        for (int step = 0; step < 12; ++step) {
          unsigned a = static_cast<unsigned>(rng() % n), b = static_cast<unsigned>(rng() % n);
          Elem f = a == b ? r->units()[un(rng)] : el(rng);
          for (unsigned k = 0; k < n; ++k) m[a][k] = a == b ? r->mul(f, m[a][k]) : r->add(m[a][k], r->mul(f, m[b][k]));
        }
        auto apply = [&](const std::vector<RVec>& xs) {
          std::vector<RVec> out;
          for (const auto& v : xs) {
            RVec w(n, 0);
            for (unsigned a = 0; a < n; ++a)
              for (unsigned b = 0; b < n; ++b) w[a] = r->add(w[a], r->mul(m[a][b], v[b]));
            out.push_back(w);
          }
          return out;
        };
        bad += in_general_position(*r, n, apply(vs), apply(S)) != base;
        Elem u = r->units()[un(rng)];
        for (auto& x : vs[0]) x = r->mul(u, x);
        bad += in_general_position(*r, n, vs, S) != base;
        trials += 2;
      }
    }
    row(c, "prop.genpos.invariance", "0 disagreements", std::to_string(bad) + " of " + std::to_string(trials), bad == 0);
  }

  {
    size_t trials = 0, bad = 0;
    for (const char* d : {"gf(2)", "gf(3)", "gf(4)", "gf(5)", "zmod(4)", "zmod(9)", "truncpoly(gf(2),2)"}) {
      auto r = Ring::parse(d);
      for (int i = 0; i < (o.quick ? 200 : 1000); ++i) {
        unsigned n = 2 + i % 2;
        auto vs = random_vectors(*r, n, 1 + i % 2, rng), S = random_vectors(*r, n, i % 3, rng);
        bad += in_general_position(*r, n, vs, S, GPDecider::Oracle) != in_general_position(*r, n, vs, S);
        ++trials;
      }
    }
    row(c, "prop.genpos.oracle", "0 disagreements", std::to_string(bad) + " of " + std::to_string(trials), bad == 0);
  }
}

}  // namespace

std::vector<int> suite_criteria() {
  std::vector<int> ids;
  for (const auto& s : kSpecs) ids.push_back(s.id);
  return ids;
}

std::string criterion_title(int id) { return spec_of(id).title; }

CriterionResult run_criterion(int id, const SuiteOptions& opts) {
  const Spec& s = spec_of(id);
  CriterionResult c;
  c.id = id;
  c.title = s.title;
  c.limit_s = s.limit_s;
  auto t0 = std::chrono::steady_clock::now();
  using Fn = void (*)(CriterionResult&, const SuiteOptions&);
  static const Fn fns[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                           criterion6, criterion7, criterion8, criterion9, criterion10};
  try {
    fns[id - 1](c, opts);
  } catch (const BudgetExceeded& e) {
    row(c, "budget", "within budget", std::string("budget exhausted: ") + e.what(), false);
  }
  c.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

}  // namespace bf
