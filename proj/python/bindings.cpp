#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bloch_forge/bloch.hpp"
#include "bloch_forge/chains.hpp"
#include "bloch_forge/coinvariants.hpp"
#include "bloch_forge/complexes.hpp"
#include "bloch_forge/genpos.hpp"
#include "bloch_forge/homology.hpp"
#include "bloch_forge/suite.hpp"

namespace py = pybind11;
using namespace bf;

namespace {

py::dict group_dict(const AbGroup& g) {
  py::list f;
  auto to_int = py::module_::import("builtins").attr("int");
  for (const auto& d : g.torsion) f.append(to_int(d.str()));
  py::dict out;
  out["text"] = g.str();
  out["free_rank"] = g.free_rank;
  out["invariant_factors"] = f;
  return out;
}

std::vector<RVec> to_vectors(const Ring& r, const std::vector<std::vector<std::string>>& vs) {
  std::vector<RVec> out;
  for (const auto& v : vs) {
    RVec x;
    for (const auto& e : v) x.push_back(r.parse_element(e));
    out.push_back(x);
  }
  return out;
}

std::vector<std::vector<std::string>> from_vectors(const Ring& r, const std::vector<RVec>& vs) {
  std::vector<std::vector<std::string>> out;
  for (const auto& v : vs) {
    std::vector<std::string> x;
    for (Elem e : v) x.push_back(r.str(e));
    out.push_back(x);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_impl, m) {
  m.doc() = "Exact computations for Bloch groups, K2 and low degree group homology";

  py::register_exception<BudgetExceeded>(m, "BudgetExceeded");

  m.def("ring_info", [](const std::string& desc) {
    auto r = Ring::parse(desc);
    py::dict d;
    d["name"] = r->name();
    d["size"] = r->size();
    d["characteristic_prime"] = r->characteristic_prime();
    d["is_field"] = r->is_field();
    d["residue_field_size"] = r->residue_size();
    d["unit_factors"] = r->units_group().factors;
    return d;
  }, py::arg("ring"));

  m.def("bloch_group", [](const std::string& desc) {
    auto b = bloch_group(*Ring::parse(desc));
    py::dict d;
    d["bloch"] = group_dict(b.bloch);
    d["pre_bloch"] = group_dict(b.pre_bloch);
    d["lambda_image"] = group_dict(b.image);
    d["tensor_sigma"] = group_dict(b.tensor_sigma);
    d["generators"] = b.generators;
    d["relations"] = b.relations;
    return d;
  }, py::arg("ring"));

  m.def("k2_presentations", [](const std::string& desc) {
    auto k = k2_presentations(*Ring::parse(desc));
    py::dict d;
    d["ms"] = group_dict(k.ms);
    d["milnor"] = group_dict(k.milnor);
    d["simplified"] = group_dict(k.simplified);
    return d;
  }, py::arg("ring"));

  m.def("bw_order_check", [](uint64_t q) { return bw_order_check(q); }, py::arg("q"));

  m.def("in_general_position", [](const std::string& desc, unsigned n, const std::vector<std::vector<std::string>>& vs,
                                   const std::vector<std::vector<std::string>>& S, bool oracle) {
    auto r = Ring::parse(desc);
    return in_general_position(*r, n, to_vectors(*r, vs), to_vectors(*r, S), oracle ? GPDecider::Oracle : GPDecider::Fast);
  }, py::arg("ring"), py::arg("n"), py::arg("vectors"), py::arg("S") = std::vector<std::vector<std::string>>{},
     py::arg("oracle") = false);

  m.def("max_general_position", [](const std::string& desc, unsigned n, uint64_t budget) {
    auto r = Ring::parse(desc);
    auto res = max_general_position(*r, n, budget);
    py::dict d;
    d["size"] = res.size;
    d["exhaustive"] = res.exhaustive;
    d["nodes"] = res.nodes;
    d["witness"] = from_vectors(*r, res.witness);
    return d;
  }, py::arg("ring"), py::arg("n"), py::arg("budget") = 50'000'000ull);

  m.def("c2_exact", [](const std::string& desc) { return c2_exact(*Ring::parse(desc)).value; }, py::arg("ring"));

  m.def("homology", [](const std::string& group, int degree, const std::string& method, unsigned seed) {
    auto g = parse_group(group);
    if (method == "bar") return group_dict(bar_homology(g, degree));
    if (method == "stable") return group_dict(stable_homology(g, degree, seed));
    throw std::invalid_argument("method must be bar or stable");
  }, py::arg("group"), py::arg("degree"), py::arg("method") = "bar", py::arg("seed") = 1u);

  m.def("additive_coinvariants", [](const std::string& desc, int degree) {
    auto c = additive_homology_coinvariants(Ring::parse(desc), degree);
    py::dict d;
    d["homology"] = group_dict(c.homology);
    d["coinvariants"] = group_dict(c.coinvariants);
    return d;
  }, py::arg("ring"), py::arg("degree"));

  m.def("complex_exactness", [](const std::string& flavor, const std::string& desc, int lo, int hi, unsigned n) {
    auto rep = complex_exactness(ConfigComplexSpec{Ring::parse(desc), n, parse_flavor(flavor), lo, hi, {}});
    py::list degrees;
    for (const auto& x : rep.degrees) {
      py::dict d;
      d["degree"] = x.degree;
      d["generators"] = x.generators;
      d["exact"] = x.exact;
      d["homology"] = group_dict(x.homology);
      degrees.append(d);
    }
    py::dict out;
    out["all_exact"] = rep.all_exact();
    out["certified_through"] = rep.certified_through;
    out["degrees"] = degrees;
    return out;
  }, py::arg("flavor"), py::arg("ring"), py::arg("lo"), py::arg("hi"), py::arg("n") = 2u);

  m.def("verify_d3_identity", [](const std::string& desc, const std::string& a) {
    auto r = Ring::parse(desc);
    return verify_d3_identity(*r, r->parse_element(a)).holds;
  }, py::arg("ring"), py::arg("a"));

  m.def("run_criterion", [](int id, bool quick) {
    SuiteOptions o;
    o.quick = quick;
    auto c = run_criterion(id, o);
    py::list rows;
    for (const auto& r : c.rows) {
      py::dict d;
      d["claim"] = r.claim;
      d["expected"] = r.expected;
      d["computed"] = r.computed;
      d["pass"] = r.pass;
      d["declared_conflict"] = r.declared_conflict;
      rows.append(d);
    }
    py::dict out;
    out["id"] = c.id;
    out["title"] = c.title;
    out["pass"] = c.pass();
    out["only_declared_failures"] = c.only_declared_failures();
    out["elapsed_s"] = c.elapsed_s;
    out["rows"] = rows;
    return out;
  }, py::arg("criterion"), py::arg("quick") = true);
}
