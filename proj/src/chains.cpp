#include "bloch_forge/chains.hpp"

#include <sstream>

#include "bloch_forge/linalg.hpp"

namespace bf {

extern const char* const kD3TemplateText;

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Splits at top-level occurrences of sep (outside brackets).
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

IntVector sub(const IntVector& x, const IntVector& y) {
  IntVector out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
  return out;
}

std::string where(int line) { return line ? " (template line " + std::to_string(line) + ")" : ""; }

}  // namespace

TemplateSet parse_templates(const std::string& text) {
  TemplateSet out;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw TemplateError("malformed section header" + where(line));
      section = s.substr(1, s.size() - 2);
      out[section].name = section;
      continue;
    }
    if (section.empty()) throw TemplateError("symbol outside a section" + where(line));
    size_t sp = s.find_first_of(" \t");
    if (sp == std::string::npos) throw TemplateError("missing coefficient" + where(line));
    std::string coef = s.substr(0, sp);
    TemplateTerm t;
    t.line = line;
    if (coef == "+") t.coef = 1;
    else if (coef == "-") t.coef = -1;
    else {
      try {
        t.coef = std::stoll(coef);
      } catch (const std::exception&) {
        throw TemplateError("bad coefficient '" + coef + "'" + where(line));
      }
    }
    t.matrices = split_top(s.substr(sp + 1), '|');
    ChainTemplate& ct = out[section];
    int deg = static_cast<int>(t.matrices.size());
    if (ct.terms.empty()) ct.degree = deg;
    else if (ct.degree != deg) throw TemplateError("symbols of different degrees in [" + section + "]" + where(line));
    ct.terms.push_back(std::move(t));
  }
  return out;
}

const std::string& builtin_template_text() {
  static const std::string text(kD3TemplateText);
  return text;
}

const TemplateSet& builtin_templates() {
  static const TemplateSet t = parse_templates(builtin_template_text());
  return t;
}

Mat2 eval_template_matrix(const Ring& r, const std::string& m, Elem a, int line) {
  std::string s = trim(m);
  if (s.empty()) throw TemplateError("empty matrix" + where(line));
  char close = s.back();
  char open = close == '}' ? '{' : close == ')' ? '(' : 0;
  if (!open) throw TemplateError("matrix must end with } or )" + where(line));
  int depth = 0;
  size_t pos = std::string::npos;
  for (size_t i = s.size(); i-- > 0;) {
    if (s[i] == ')' || s[i] == '}') ++depth;
    if (s[i] == '(' || s[i] == '{') --depth;
    if (depth == 0) {
      pos = i;
      break;
    }
  }
  if (pos == std::string::npos || s[pos] != open) throw TemplateError("unbalanced matrix '" + s + "'" + where(line));
  std::string prefix = trim(s.substr(0, pos));
  std::vector<std::string> entries = split_top(s.substr(pos + 1, s.size() - pos - 2), ',');
  const std::map<std::string, Elem> vars{{"a", a}};
  auto ev = [&](const std::string& e) {
    try {
      return r.eval(e, vars);
    } catch (const std::exception& ex) {
      throw TemplateError("cannot evaluate '" + e + "': " + ex.what() + where(line));
    }
  };
  Mat2 out;
  if (open == '{') {
    if (entries.size() != 3) throw TemplateError("{x, y, z} needs three entries" + where(line));
    out = {ev(entries[0]), ev(entries[1]), r.zero(), ev(entries[2])};
  } else {
    if (entries.size() != 2) throw TemplateError("(x, z) needs two entries" + where(line));
    out = mat_diag(r, ev(entries[0]), ev(entries[1]));
  }
  if (!prefix.empty()) {
    if (prefix.back() != '*') throw TemplateError("scalar prefix must end with *" + where(line));
    Elem c = ev(prefix.substr(0, prefix.size() - 1));
    out = mat_mul(r, mat_diag(r, c, c), out);
  }
  if (!r.is_unit(out[0]) || !r.is_unit(out[3]))
    throw TemplateError("matrix " + mat_str(r, out) + " is not invertible upper triangular" + where(line));
  return out;
}

void MatChain::add(const Ring& r, const std::vector<Mat2>& t, long long c) {
  if (c == 0) return;
  Mat2 id = mat_identity(r);
  for (const auto& m : t)
    if (m == id) return;
  if (terms.empty()) degree = static_cast<int>(t.size());
  auto [it, fresh] = terms.emplace(t, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

void MatChain::add(const Ring& r, const MatChain& o, long long c) {
  for (const auto& [t, v] : o.terms) add(r, t, v * c);
}

MatChain evaluate_template(const Ring& r, const ChainTemplate& t, Elem a) {
  MatChain out;
  out.degree = t.degree;
  for (const auto& term : t.terms) {
    std::vector<Mat2> ms;
    for (const auto& m : term.matrices) ms.push_back(eval_template_matrix(r, m, a, term.line));
    out.add(r, ms, term.coef);
  }
  return out;
}

MatChain mat_boundary(const Ring& r, const MatChain& c) {
  MatChain out;
  out.degree = c.degree - 1;
  if (c.degree < 1) throw std::invalid_argument("boundary of a degree 0 chain");
  int n = c.degree;
  for (const auto& [t, v] : c.terms) {
    out.add(r, std::vector<Mat2>(t.begin() + 1, t.end()), v);
    for (int i = 1; i < n; ++i) {
      std::vector<Mat2> h;
      for (int j = 0; j < n; ++j) {
        if (j == i - 1) {
          h.push_back(mat_mul(r, t[j], t[j + 1]));
          ++j;
        } else {
          h.push_back(t[j]);
        }
      }
      out.add(r, h, i % 2 ? -v : v);
    }
    out.add(r, std::vector<Mat2>(t.begin(), t.end() - 1), n % 2 ? -v : v);
  }
  return out;
}

MatChain evaluate_shuffles(const Ring& r, const ChainTemplate& t, Elem a) {
  MatChain out;
  out.degree = 2;
  for (const auto& term : t.terms) {
    if (term.matrices.size() != 2) throw TemplateError("shuffle pairs need two matrices" + where(term.line));
    Mat2 g = eval_template_matrix(r, term.matrices[0], a, term.line);
    Mat2 h = eval_template_matrix(r, term.matrices[1], a, term.line);
    if (mat_mul(r, g, h) != mat_mul(r, h, g)) throw TemplateError("shuffle entries do not commute" + where(term.line));
    out.add(r, {g, h}, term.coef);
    out.add(r, {h, g}, -term.coef);
  }
  return out;
}

BarChain to_bar_chain(const FiniteGroup& g, const MatChain& c) {
  BarChain out(c.degree);
  for (const auto& [t, v] : c.terms) {
    BarTuple b;
    for (const auto& m : t) {
      auto idx = g.find(m);
      if (!idx) throw std::invalid_argument("matrix " + mat_str(*g.ring(), m) + " is not in the group");
      b.push_back(*idx);
    }
    out.add(b, v);
  }
  return out;
}

bool d3_evaluable(const Ring& r, Elem a) { return r.is_unit(a) && r.is_unit(r.sub(r.one(), a)); }

namespace {

const ChainTemplate& need(const TemplateSet& t, const std::string& name) {
  auto it = t.find(name);
  if (it == t.end()) throw TemplateError("template section [" + name + "] is missing");
  return it->second;
}

}  // namespace

D3Chains build_d3_chains(const Ring& r, Elem a, const TemplateSet& t) {
  if (!d3_evaluable(r, a)) throw std::invalid_argument("a and 1 - a must be units");
  D3Chains d;
  const char* names[4] = {"X", "Y", "Z", "W"};
  MatChain* dst[4] = {&d.X, &d.Y, &d.Z, &d.W};
  for (int i = 0; i < 4; ++i) {
    const ChainTemplate& ct = need(t, names[i]);
    d.raw_terms[i] = ct.terms.size();
    *dst[i] = evaluate_template(r, ct, a);
  }
  return d;
}

D3IdentityReport verify_d3_identity(const Ring& r, Elem a, const TemplateSet& t) {
  D3Chains d = build_d3_chains(r, a, t);
  MatChain res;
  res.degree = 2;
  res.add(r, d.X, 1);
  res.add(r, d.Y, -1);
  res.add(r, d.Z, 1);
  res.add(r, mat_boundary(r, d.W), -1);
  D3IdentityReport rep;
  rep.residual_terms = res.size();
  rep.holds = res.terms.empty();
  return rep;
}

D3ReductionReport verify_d3_reductions(const RingPtr& rp, Elem a, const TemplateSet& t) {
  const Ring& r = *rp;
  D3ReductionReport rep;
  D3Chains d = build_d3_chains(r, a, t);

  MatChain db = mat_boundary(r, evaluate_template(r, need(t, "D"), a));
  rep.boundary_expansion = db == evaluate_template(r, need(t, "DB"), a);

  FiniteGroup t2 = make_t2(rp);
  BarChain y = to_bar_chain(t2, d.Y);
  rep.y_is_cycle = bar_boundary(t2, y).is_zero();
  if (rep.y_is_cycle) {
    BarHomology h(t2, 2);
    IntVector cy = h.class_of(y);
    IntVector cs = h.class_of(to_bar_chain(t2, evaluate_shuffles(r, need(t, "Y_SHUFFLES"), a)));
    IntVector ct = h.class_of(to_bar_chain(t2, evaluate_shuffles(r, need(t, "Y_TARGET"), a)));
    auto mods = h.moduli();
    IntMatrix rel(mods.size(), 0);
    for (uint32_t i = 0; i < mods.size(); ++i) rel.append_column({{i, mods[i]}});
    rep.y_equals_shuffles = Quotient(rel).is_zero(sub(cy, cs));
    // σ swaps the diagonal entries.
    auto sigma = [&](uint32_t x) {
      const Mat2& m = t2.matrix(x);
      return *t2.find(mat_diag(r, m[3], m[0]));
    };
    auto gens = h.generators();
    for (uint32_t i = 0; i < gens.size(); ++i) {
      IntVector col = h.class_of(gens[i].map(sigma));
      col[i] -= Integer(1);
      rel.append_column(sparse_of(col));
    }
    rep.y_equals_target = Quotient(rel).is_zero(sub(cy, ct));
  }

  FiniteGroup nc = make_n2_center(rp);
  BarChain z = to_bar_chain(nc, d.Z);
  rep.z_is_cycle = bar_boundary(nc, z).is_zero();
  if (rep.z_is_cycle) {
    BarHomology h(nc, 2);
    IntVector diff = sub(h.class_of(z), h.class_of(to_bar_chain(nc, evaluate_shuffles(r, need(t, "Z_SHUFFLES"), a))));
    auto mods = h.moduli();
    IntMatrix rel(mods.size(), 0);
    for (uint32_t i = 0; i < mods.size(); ++i) rel.append_column({{i, mods[i]}});
    rep.z_equals_shuffles = Quotient(rel).is_zero(diff);
  }
  return rep;
}

BarChain rho_s(const FiniteGroup& g, const BarChain& c, uint32_t s) {
  if (c.degree != 2 && !c.is_zero()) throw std::invalid_argument("ρ_s expects a degree 2 chain");
  BarChain out(3);
  for (const auto& [t, v] : c.terms) {
    uint32_t g1 = t[0], g2 = t[1];
    out.add(BarTuple{s, g.conj(s, g1), g.conj(s, g2)}, v);
    out.add(BarTuple{g1, s, g.conj(s, g2)}, -v);
    out.add(BarTuple{g1, g2, s}, v);
  }
  return out;
}

RhoCycleReport rho_cycle_check(const RingPtr& rp, Elem a) {
  const Ring& r = *rp;
  RhoCycleReport rep;
  FiniteGroup gm = make_gm2(rp);
  uint32_t x = *gm.find(mat_diag(r, a, r.one()));
  uint32_t y = *gm.find(mat_diag(r, r.one(), a));
  uint32_t s = *gm.find(Mat2{r.zero(), r.one(), r.one(), r.zero()});
  BarChain h = shuffle_cycle(gm, {x, y});
  rep.h_is_cycle = bar_boundary(gm, h).is_zero();
  BarChain diff = conjugate_chain(gm, s, h) - h;
  check_bar_budget(gm.order(), 3);
  LatticeSolver solver(bar_boundary_matrix(gm, 3));
  auto sol = solver.solve(chain_vector(diff, gm.order()));
  rep.solvable = sol.has_value();
  if (!sol) return rep;
  BarChain b = vector_chain(*sol, 3, gm.order());
  rep.is_cycle = bar_boundary(gm, b - rho_s(gm, h, s)).is_zero();
  return rep;
}

}  // namespace bf
