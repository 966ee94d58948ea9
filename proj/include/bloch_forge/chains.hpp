#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bloch_forge/group.hpp"
#include "bloch_forge/homology.hpp"
#include "bloch_forge/ring.hpp"

namespace bf {

// A symbolic bar symbol: coefficient and matrices written as {x, y, z},
// (x, z) or s*M with entries in the symbol a.
struct TemplateTerm {
  long long coef = 1;
  std::vector<std::string> matrices;
  int line = 0;
};

struct ChainTemplate {
  std::string name;
  int degree = 0;
  std::vector<TemplateTerm> terms;
};

using TemplateSet = std::map<std::string, ChainTemplate>;

TemplateSet parse_templates(const std::string& text);
// The checked-in templates compiled into the library.
const TemplateSet& builtin_templates();
const std::string& builtin_template_text();

// Evaluates one matrix; throws TemplateError naming the line when an entry
// is not defined or the matrix is not in B2.
Mat2 eval_template_matrix(const Ring& r, const std::string& m, Elem a, int line = 0);

struct TemplateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bar chains keyed by matrix tuples; tuples containing the identity are dropped.
struct MatChain {
  int degree = 0;
  std::map<std::vector<Mat2>, long long> terms;

  void add(const Ring& r, const std::vector<Mat2>& t, long long c);
  void add(const Ring& r, const MatChain& o, long long c = 1);
  size_t size() const { return terms.size(); }
  bool operator==(const MatChain& o) const { return terms == o.terms; }
};

MatChain evaluate_template(const Ring& r, const ChainTemplate& t, Elem a);
MatChain mat_boundary(const Ring& r, const MatChain& c);
// c(M1, M2) summed over the template pairs with their coefficients.
MatChain evaluate_shuffles(const Ring& r, const ChainTemplate& t, Elem a);
// Moves a matrix chain into a finite group that contains all its matrices.
BarChain to_bar_chain(const FiniteGroup& g, const MatChain& c);

struct D3Chains {
  MatChain X, Y, Z, W;
  size_t raw_terms[4] = {0, 0, 0, 0};  // template lines of X, Y, Z, W
};

bool d3_evaluable(const Ring& r, Elem a);
D3Chains build_d3_chains(const Ring& r, Elem a, const TemplateSet& t = builtin_templates());

struct D3IdentityReport {
  bool holds = false;
  size_t residual_terms = 0;  // terms of X - Y + Z - ∂W
};
D3IdentityReport verify_d3_identity(const Ring& r, Elem a, const TemplateSet& t = builtin_templates());

struct D3ReductionReport {
  bool boundary_expansion = false;  // ∂D equals the listed four symbols
  bool y_is_cycle = false;
  bool y_equals_shuffles = false;   // in H2(T2)
  bool y_equals_target = false;     // in H2(T2)_σ
  bool z_is_cycle = false;
  bool z_equals_shuffles = false;   // in H2(N2 · center)
  bool all() const {
    return boundary_expansion && y_is_cycle && y_equals_shuffles && y_equals_target && z_is_cycle &&
           z_equals_shuffles;
  }
};
D3ReductionReport verify_d3_reductions(const RingPtr& r, Elem a, const TemplateSet& t = builtin_templates());

// ρ_s([g1|g2]) = [s|s g1 s^-1|s g2 s^-1] - [g1|s|s g2 s^-1] + [g1|g2|s], extended linearly.
BarChain rho_s(const FiniteGroup& g, const BarChain& c, uint32_t s);

struct RhoCycleReport {
  bool h_is_cycle = false;
  bool solvable = false;   // τ(h) - h is a boundary in GM2
  bool is_cycle = false;   // b - ρ_s(h) is a cycle
};
// h = c(diag(a,1), diag(1,a)) in GM2(R), s the antidiagonal swap.
RhoCycleReport rho_cycle_check(const RingPtr& r, Elem a);

}  // namespace bf
