// bloch-forge: command line front end.  Reports are JSON lines (or a plain
// table with --format table).  Exit codes: 0 ok, 1 claim mismatch,
// 2 budget exhausted, 3 bad input.
#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bloch_forge/bloch.hpp"
#include "bloch_forge/budget.hpp"
#include "bloch_forge/chains.hpp"
#include "bloch_forge/coinvariants.hpp"
#include "bloch_forge/complexes.hpp"
#include "bloch_forge/genpos.hpp"
#include "bloch_forge/homology.hpp"
#include "bloch_forge/suite.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;
using namespace bf;

namespace {

constexpr const char* kSchema = "bloch-forge.report/1";
enum Exit { kOk = 0, kMismatch = 1, kBudget = 2, kInput = 3 };

struct Globals {
  std::string format = "json";
  unsigned seed = 1;
  size_t budget_cols = 0;
  std::string dump_matrix;
  std::string command;
};
Globals G;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

json group_json(const AbGroup& g) {
  json f = json::array();
  for (const auto& d : g.torsion) f.push_back(d.str());
  return {{"text", g.str()}, {"free_rank", g.free_rank}, {"invariant_factors", f}};
}

json vectors_json(const Ring& r, const std::vector<RVec>& vs) {
  json out = json::array();
  for (const auto& v : vs) {
    json row = json::array();
    for (Elem x : v) row.push_back(r.str(x));
    out.push_back(row);
  }
  return out;
}

void render_table(const json& j, const std::string& indent = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    if (v.is_object() && indent.empty()) {
      std::cout << indent << it.key() << ":\n";
      render_table(v, indent + "  ");
    } else {
      std::cout << indent << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

void emit(json j) {
  json out = {{"schema", kSchema}, {"command", G.command}};
  for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = it.value();
  if (G.format == "table") {
    render_table(out);
    std::cout << "\n";
  } else {
    std::cout << out.dump() << "\n";
  }
  std::cout.flush();
}

// Compares a computed group against --expect; returns the exit code.
int expect_group(json& rep, const std::string& expected, const AbGroup& got) {
  if (expected.empty()) return kOk;
  bool ok = expected == got.str();
  rep["expected"] = expected;
  rep["status"] = ok ? "pass" : "fail";
  if (!ok) rep["diff"] = {{"expected", expected}, {"computed", got.str()}};
  return ok ? kOk : kMismatch;
}

std::vector<RVec> parse_vectors(const Ring& r, const std::string& s) {
  // "1,0;1,1" -> two vectors
  std::vector<RVec> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.find_first_not_of(" ") == std::string::npos) continue;
    RVec v;
    std::stringstream is(item);
    std::string x;
    while (std::getline(is, x, ',')) v.push_back(r.parse_element(x));
    out.push_back(v);
  }
  return out;
}

void dump(const IntMatrix& m) {
  if (G.dump_matrix.empty()) return;
  std::ofstream os(G.dump_matrix);
  if (!os) throw std::invalid_argument("cannot write " + G.dump_matrix);
  write_matrix_market(os, m);
}

// ---- subcommands ----

int cmd_ring(const std::string& desc) {
  auto t0 = Clock::now();
  auto r = Ring::parse(desc);
  const auto& u = r->units_group();
  json f = json::array();
  for (auto d : u.factors) f.push_back(d);
  emit({{"status", "ok"},
        {"ring", r->name()},
        {"size", r->size()},
        {"characteristic_prime", r->characteristic_prime()},
        {"is_field", r->is_field()},
        {"residue_field_size", r->residue_size()},
        {"units", {{"order", u.order()}, {"invariant_factors", f}}},
        {"elapsed_ms", ms_since(t0)}});
  return kOk;
}

int cmd_bloch(const std::string& desc, const std::string& expected) {
  auto t0 = Clock::now();
  auto r = Ring::parse(desc);
  auto b = bloch_group(*r);
  json rep = {{"status", "ok"},
              {"claim", "bloch." + r->name()},
              {"ring", r->name()},
              {"generators", b.generators},
              {"relations", b.relations},
              {"group", b.bloch.str()},
              {"result",
               {{"bloch", group_json(b.bloch)},
                {"pre_bloch", group_json(b.pre_bloch)},
                {"lambda_image", group_json(b.image)},
                {"tensor_sigma", group_json(b.tensor_sigma)}}}};
  int code = expect_group(rep, expected, b.bloch);
  rep["elapsed_ms"] = ms_since(t0);
  emit(rep);
  return code;
}

int cmd_k2(const std::string& desc) {
  auto t0 = Clock::now();
  auto r = Ring::parse(desc);
  auto k = k2_presentations(*r);
  bool agree = k.ms == k.milnor && k.milnor == k.simplified;
  emit({{"status", "ok"},
        {"claim", "k2." + r->name()},
        {"ring", r->name()},
        {"group", k.milnor.str()},
        {"result",
         {{"ms", group_json(k.ms)},
          {"milnor", group_json(k.milnor)},
          {"simplified", group_json(k.simplified)},
          {"presentations_agree", agree},
          {"residue_field_size", r->residue_size()}}},
        {"elapsed_ms", ms_since(t0)}});
  return kOk;
}

int cmd_bw(uint64_t q) {
  auto t0 = Clock::now();
  AbGroup b;
  bool ok = bw_order_check(q, &b);
  // m = q - 1 is the order of the roots of unity in F_q
  auto t = tor_and_tilde(static_cast<long long>(q - 1));
  emit({{"status", ok ? "pass" : "fail"},
        {"claim", "bw.order.gf(" + std::to_string(q) + ")"},
        {"ring", "gf(" + std::to_string(q) + ")"},
        {"result",
         {{"bloch", group_json(b)}, {"tor_tilde", group_json(t.tilde)}, {"k3_ind_order", std::to_string(q * q - 1)}}},
        {"elapsed_ms", ms_since(t0)}});
  return ok ? kOk : kMismatch;
}

int cmd_genpos(const std::string& desc, unsigned n, bool exact_c2, uint64_t budget, const std::string& vectors,
               const std::string& set, bool oracle) {
  auto t0 = Clock::now();
  auto r = Ring::parse(desc);
  json rep = {{"status", "ok"}, {"ring", r->name()}, {"n", n}};
  int code = kOk;
  if (!vectors.empty()) {
    auto vs = parse_vectors(*r, vectors);
    auto S = parse_vectors(*r, set);
    bool gp = in_general_position(*r, n, vs, S, oracle ? GPDecider::Oracle : GPDecider::Fast);
    rep["result"] = {{"in_general_position", gp}, {"decider", oracle ? "oracle" : "fast"}};
    if (S.empty() && !gp)
      if (auto bad = first_dependent_subset(*r, n, vs)) rep["result"]["dependent_subset"] = *bad;
  } else {
    auto m = max_general_position(*r, n, budget ? budget : default_budget().search_nodes);
    rep["claim"] = "genpos.max.n" + std::to_string(n) + "." + r->name();
    rep["result"] = {{"size", m.size},
                     {"exhaustive", m.exhaustive},
                     {"nodes", m.nodes},
                     {"witness", vectors_json(*r, m.witness)}};
    if (!m.exhaustive) {
      rep["status"] = "budget";
      rep["partial"] = true;
      code = kBudget;
    }
    if (exact_c2) {
      if (n != 2) throw std::invalid_argument("--exact-c2 needs --n 2");
      auto c = c2_exact(*r);
      rep["result"]["c2"] = {{"value", c.value}, {"saturating", vectors_json(*r, c.saturating)}, {"sets_checked", c.sets_checked}};
    }
  }
  rep["elapsed_ms"] = ms_since(t0);
  emit(rep);
  return code;
}

int cmd_homology(const std::string& spec, int degree, const std::string& method, uint64_t prime,
                 const std::string& expected) {
  auto t0 = Clock::now();
  auto g = parse_group(spec, default_budget().max_group_order);
  json rep = {{"status", "ok"}, {"group_spec", spec}, {"group_order", g.order()}, {"degree", degree}, {"method", method}};
  AbGroup h;
  if (method == "bar") {
    h = bar_homology(g, degree);
    if (prime) h = h.primary_part(Integer(static_cast<long long>(prime)));
    if (!G.dump_matrix.empty()) dump(bar_boundary_matrix(g, degree + 1));
  } else if (method == "stable") {
    if (prime) {
      auto s = stable_element_homology(g, prime, degree, G.seed);
      h = s.group;
      rep["sylow"] = {{"order", s.sylow_order}, {"homology", group_json(s.sylow_homology)}, {"double_cosets", s.double_cosets}};
    } else {
      h = stable_homology(g, degree, G.seed);
    }
  } else {
    throw std::invalid_argument("unknown method '" + method + "'");
  }
  if (prime) rep["prime"] = prime;
  rep["group"] = h.str();
  rep["result"] = group_json(h);
  int code = expect_group(rep, expected, h);
  rep["elapsed_ms"] = ms_since(t0);
  emit(rep);
  return code;
}

int cmd_coinv(const std::string& desc, int degree, bool antisym) {
  auto t0 = Clock::now();
  auto r = Ring::parse(desc);
  json rep = {{"status", "ok"}, {"ring", r->name()}};
  if (antisym) {
    auto t = antisymmetric_tensor_coinvariants(r);
    rep["result"] = {{"anti_invariants", group_json(t.anti_invariants)}, {"coinvariants", group_json(t.coinvariants)}};
    rep["group"] = t.coinvariants.str();
  } else {
    auto c = additive_homology_coinvariants(r, degree);
    rep["degree"] = degree;
    rep["result"] = {{"homology", group_json(c.homology)}, {"coinvariants", group_json(c.coinvariants)}};
    rep["group"] = c.coinvariants.str();
  }
  rep["elapsed_ms"] = ms_since(t0);
  emit(rep);
  return kOk;
}

std::pair<int, int> parse_range(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) throw std::invalid_argument("range must look like a..b");
  return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
}

int cmd_exactness(const std::string& flavor, const std::string& desc, const std::string& range, unsigned n,
                  const std::string& set) {
  auto t0 = Clock::now();
  auto r = Ring::parse(desc);
  auto [lo, hi] = parse_range(range);
  ConfigComplexSpec spec{r, n, parse_flavor(flavor), lo, hi, parse_vectors(*r, set)};
  auto rep = complex_exactness(spec);
  if (!G.dump_matrix.empty()) dump(build_config_complex(spec, hi).boundary(hi));
  json degrees = json::array();
  for (const auto& d : rep.degrees)
    degrees.push_back({{"degree", d.degree},
                       {"generators", d.generators},
                       {"rank_boundary_out", d.rank_in},
                       {"rank_boundary_in", d.rank_out},
                       {"homology", group_json(d.homology)},
                       {"exact", d.exact}});
  bool budget = rep.certified_through < hi;
  json out = {{"status", budget ? "budget" : "ok"},
              {"complex", flavor_name(spec.flavor)},
              {"ring", r->name()},
              {"n", n},
              {"range", {lo, hi}},
              {"result",
               {{"all_exact", rep.all_exact()},
                {"boundary_squares_to_zero", rep.boundary_squares_to_zero},
                {"certified_through", rep.certified_through},
                {"degrees", degrees}}}};
  if (!rep.note.empty()) out["note"] = rep.note;
  if (budget) out["partial"] = true;
  out["elapsed_ms"] = ms_since(t0);
  emit(out);
  if (budget) return kBudget;
  return rep.boundary_squares_to_zero ? kOk : kMismatch;
}

int cmd_verify_d3(const std::string& desc, const std::string& a_text, bool reductions, const std::string& templates) {
  auto r = Ring::parse(desc);
  TemplateSet custom;
  if (!templates.empty()) {
    std::ifstream is(templates);
    if (!is) throw std::invalid_argument("cannot read " + templates);
    std::stringstream ss;
    ss << is.rdbuf();
    custom = parse_templates(ss.str());
  }
  const TemplateSet& t = templates.empty() ? builtin_templates() : custom;
  std::vector<Elem> as;
  if (!a_text.empty()) {
    as.push_back(r->parse_element(a_text));
  } else {
    for (Elem a = 0; a < r->size(); ++a)
      if (d3_evaluable(*r, a)) as.push_back(a);
  }
  int code = kOk;
  for (Elem a : as) {
    auto t1 = Clock::now();
    auto id = verify_d3_identity(*r, a, t);
    json res = {{"identity", id.holds}, {"residual_terms", id.residual_terms}};
    bool ok = id.holds;
    if (reductions) {
      auto red = verify_d3_reductions(r, a, t);
      res["reductions"] = {{"boundary_expansion", red.boundary_expansion}, {"y_is_cycle", red.y_is_cycle},
                           {"y_equals_shuffles", red.y_equals_shuffles}, {"y_equals_target", red.y_equals_target},
                           {"z_is_cycle", red.z_is_cycle},          {"z_equals_shuffles", red.z_equals_shuffles}};
      ok = ok && red.all();
    }
    if (!ok) code = kMismatch;
    emit({{"status", ok ? "pass" : "fail"},
          {"claim", "d3." + r->name()},
          {"ring", r->name()},
          {"a", r->str(a)},
          {"result", res},
          {"elapsed_ms", ms_since(t1)}});
  }
  if (as.empty()) throw std::invalid_argument("no a with a and 1-a units");
  return code;
}

int cmd_suite(bool quick, const std::vector<int>& only) {
  SuiteOptions o;
  o.quick = quick;
  o.seed = G.seed;
  int code = kOk;
  for (int id : suite_criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    auto c = run_criterion(id, o);
    for (const auto& r : c.rows) {
      json line = {{"criterion", id},
                   {"claim", r.claim},
                   {"status", r.pass ? "pass" : r.declared_conflict ? "conflict" : "fail"},
                   {"expected", r.expected},
                   {"computed", r.computed}};
      if (!r.note.empty()) line["note"] = r.note;
      emit(line);
    }
    emit({{"criterion", id},
          {"title", c.title},
          {"status", c.pass() ? "pass" : c.only_declared_failures() ? "conflict" : "fail"},
          {"rows", c.rows.size()},
          {"passed", c.passed_rows()},
          {"elapsed_ms", c.elapsed_s * 1000},
          {"limit_ms", c.limit_s * 1000}});
    if (!c.pass() && !c.only_declared_failures()) code = kMismatch;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite computations around Bloch groups, K2 and low degree homology of GL2"};
  app.require_subcommand(1);
  app.add_option("--format", G.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--seed", G.seed, "seed for the Sylow search");
  app.add_option("--budget-cols", G.budget_cols, "column cap for boundary matrices");
  app.add_option("--dump-matrix", G.dump_matrix, "write the relevant boundary matrix (MatrixMarket)");

  std::string ring, group, method = "bar", expected, vectors, set, range, flavor = "lines", a_text, templates, criteria;
  int degree = 2;
  unsigned n = 2;
  uint64_t q = 0, prime = 0, budget = 0;
  bool exact_c2 = false, oracle = false, antisym = false, all = false, reductions = false, quick = false;

  auto add_fmt = [&](CLI::App* s) {
    s->add_option("--format", G.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    s->add_option("--seed", G.seed, "seed for the Sylow search");
    s->add_option("--budget-cols", G.budget_cols, "column cap for boundary matrices");
    s->add_option("--dump-matrix", G.dump_matrix, "write the relevant boundary matrix (MatrixMarket)");
  };

  auto* s_ring = app.add_subcommand("ring", "describe a ring");
  s_ring->add_option("--ring", ring, "ring descriptor")->required();
  auto* s_bloch = app.add_subcommand("bloch", "pre-Bloch and Bloch group");
  s_bloch->add_option("--ring", ring)->required();
  s_bloch->add_option("--expect", expected, "expected group, e.g. Z/4");
  auto* s_k2 = app.add_subcommand("k2", "three presentations of K2");
  s_k2->add_option("--ring", ring)->required();
  auto* s_bw = app.add_subcommand("bw-check", "order check |K3 ind| = |Tor~| |B| for F_q");
  s_bw->add_option("--q", q)->required();
  auto* s_gp = app.add_subcommand("genpos", "general position search and checks");
  s_gp->add_option("--ring", ring)->required();
  s_gp->add_option("--n", n, "rank");
  s_gp->add_flag("--exact-c2", exact_c2, "also compute the saturation threshold (n = 2)");
  s_gp->add_option("--budget", budget, "search node budget");
  s_gp->add_option("--vectors", vectors, "check these vectors instead, e.g. \"1,0;1,1\"");
  s_gp->add_option("--S", set, "fixed set for --vectors");
  s_gp->add_flag("--oracle", oracle, "decide by brute force over coefficients");
  auto* s_h = app.add_subcommand("homology", "integral homology of a finite group");
  s_h->add_option("--group", group)->required();
  s_h->add_option("--degree", degree)->required();
  s_h->add_option("--method", method)->check(CLI::IsMember({"bar", "stable"}));
  s_h->add_option("--prime", prime);
  s_h->add_option("--expect", expected, "expected group");
  auto* s_c = app.add_subcommand("coinv", "unit coinvariants of additive homology");
  s_c->add_option("--ring", ring)->required();
  s_c->add_option("--degree", degree);
  s_c->add_flag("--antisym", antisym, "antisymmetric tensor square instead");
  auto* s_e = app.add_subcommand("exactness", "exactness of a configuration complex");
  s_e->add_option("--complex", flavor, "lines, hat-lines, vectors or frames");
  s_e->add_option("--ring", ring)->required();
  s_e->add_option("--range", range)->required();
  s_e->add_option("--n", n, "rank");
  s_e->add_option("--S", set, "fixed set for vectors, e.g. \"1,0\"");
  auto* s_d3 = app.add_subcommand("verify-d3", "chain identity over B2");
  s_d3->add_option("--ring", ring)->required();
  auto* a_opt = s_d3->add_option("--a", a_text, "a single value of a");
  s_d3->add_flag("--all", all, "every a with a, 1-a units (default)")->excludes(a_opt);
  s_d3->add_flag("--reductions", reductions, "also check the cycle reductions");
  s_d3->add_option("--templates", templates, "template file instead of the built-in one");
  auto* s_suite = app.add_subcommand("paper-suite", "run every acceptance check");
  s_suite->add_flag("--quick", quick, "sub-minute subset");
  s_suite->add_option("--criteria", criteria, "comma separated criterion ids");

  for (auto* s : {s_ring, s_bloch, s_k2, s_bw, s_gp, s_h, s_c, s_e, s_d3, s_suite}) add_fmt(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  for (int i = 1; i < argc; ++i) G.command += (i > 1 ? " " : "") + std::string(argv[i]);
  if (G.budget_cols) default_budget().max_columns = G.budget_cols;

  try {
    if (*s_ring) return cmd_ring(ring);
    if (*s_bloch) return cmd_bloch(ring, expected);
    if (*s_k2) return cmd_k2(ring);
    if (*s_bw) return cmd_bw(q);
    if (*s_gp) return cmd_genpos(ring, n, exact_c2, budget, vectors, set, oracle);
    if (*s_h) return cmd_homology(group, degree, method, prime, expected);
    if (*s_c) return cmd_coinv(ring, degree, antisym);
    if (*s_e) return cmd_exactness(flavor, ring, range, n, set);
    if (*s_d3) return cmd_verify_d3(ring, a_text, reductions, templates);
    if (*s_suite) {
      std::vector<int> only;
      std::stringstream ss(criteria);
      std::string x;
      while (std::getline(ss, x, ','))
        if (!x.empty()) only.push_back(std::stoi(x));
      return cmd_suite(quick, only);
    }
  } catch (const BudgetExceeded& e) {
    emit({{"status", "budget"}, {"partial", true}, {"error", e.what()}});
    return kBudget;
  } catch (const std::exception& e) {
    emit({{"status", "error"}, {"error", e.what()}});
    return kInput;
  }
  return kInput;
}
