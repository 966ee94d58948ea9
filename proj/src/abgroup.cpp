#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "bloch_forge/linalg.hpp"

namespace bf {

namespace {

std::vector<std::pair<Integer, unsigned>> factor(Integer n) {
  std::vector<std::pair<Integer, unsigned>> out;
  n = n.abs();
  for (Integer p(2); !(p * p > n); p += Integer(p == Integer(2) ? 1 : 2)) {
    unsigned e = 0;
    while (Integer::divides(p, n)) {
      n = Integer::divexact(n, p);
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (!n.is_one() && !n.is_zero()) out.emplace_back(n, 1);
  return out;
}

}  // namespace

std::vector<Integer> canonical_factors(const std::vector<Integer>& factors, size_t* free_rank) {
  std::vector<Integer> l;
  size_t free = 0;
  for (const auto& f : factors) {
    if (f.is_zero()) {
      ++free;
    } else if (!f.is_unit()) {
      l.push_back(f.abs());
    }
  }
  for (size_t i = 0; i < l.size(); ++i) {
    for (size_t j = i + 1; j < l.size(); ++j) {
      if (Integer::divides(l[i], l[j])) continue;
      Integer g = Integer::gcd(l[i], l[j]);
      Integer m = Integer::divexact(l[i], g) * l[j];
      l[i] = g;
      l[j] = m;
    }
  }
  l.erase(std::remove_if(l.begin(), l.end(), [](const Integer& x) { return x.is_one(); }), l.end());
  if (free_rank) *free_rank = free;
  return l;
}

AbGroup AbGroup::from_factors(size_t free_rank, const std::vector<Integer>& factors) {
  AbGroup g;
  size_t extra = 0;
  g.torsion = canonical_factors(factors, &extra);
  g.free_rank = free_rank + extra;
  return g;
}

AbGroup AbGroup::cyclic(const Integer& n) { return from_factors(0, {n}); }

Integer AbGroup::order() const {
  if (!is_finite()) throw std::logic_error("order of an infinite group");
  Integer o(1);
  for (const auto& d : torsion) o *= d;
  return o;
}

AbGroup AbGroup::primary_part(const Integer& p) const {
  std::vector<Integer> f;
  for (const auto& d : torsion) {
    Integer q(1), r = d;
    while (Integer::divides(p, r)) {
      r = Integer::divexact(r, p);
      q *= p;
    }
    f.push_back(q);
  }
  return from_factors(0, f);
}

AbGroup AbGroup::direct_sum(const AbGroup& o) const {
  std::vector<Integer> f = torsion;
  f.insert(f.end(), o.torsion.begin(), o.torsion.end());
  return from_factors(free_rank + o.free_rank, f);
}

std::vector<Integer> AbGroup::elementary_divisors() const {
  std::vector<Integer> out;
  for (const auto& d : torsion) {
    for (const auto& [p, e] : factor(d)) {
      Integer q(1);
      for (unsigned k = 0; k < e; ++k) q *= p;
      out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string AbGroup::str() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank) {
    os << "Z";
    if (free_rank > 1) os << '^' << free_rank;
    first = false;
  }
  for (const auto& d : torsion) {
    if (!first) os << " + ";
    os << "Z/" << d;
    first = false;
  }
  return os.str();
}

AbGroup cokernel(const IntMatrix& m) {
  if (m.cols() > default_budget().max_columns) throw BudgetExceeded("relation matrix has too many columns");
  SmithForm s = smith_normal_form(m, false);
  return AbGroup::from_factors(m.rows() - s.rank, s.diagonal);
}

std::vector<IntVector> kernel_basis(const IntMatrix& m) {
  SnfOptions o;
  o.want_v = true;
  SmithForm s = smith_normal_form(m, o);
  std::vector<IntVector> out;
  for (size_t k = s.rank; k < m.cols(); ++k) {
    IntVector e(m.cols());
    e[k] = 1;
    out.push_back(s.apply_v(e));
  }
  return out;
}

IntMatrix column_span_basis(const IntMatrix& m) {
  SnfOptions o;
  o.want_u = true;
  SmithForm s = smith_normal_form(m, o);
  IntMatrix b(m.rows(), 0);
  for (size_t k = 0; k < s.rank; ++k) {
    IntVector e(m.rows());
    e[k] = s.diagonal[k];
    b.append_column(sparse_of(s.apply_u_inverse(e)));
  }
  return b;
}

LatticeSolver::LatticeSolver(const IntMatrix& m) : cols_(m.cols()) {
  SnfOptions o;
  o.want_u = o.want_v = true;
  snf_ = smith_normal_form(m, o);
}

std::optional<IntVector> LatticeSolver::solve(const IntVector& v) const {
  IntVector w = snf_.apply_u(v);
  IntVector y(cols_);
  for (size_t k = 0; k < w.size(); ++k) {
    if (k < snf_.rank) {
      if (!Integer::divides(snf_.diagonal[k], w[k])) return std::nullopt;
      y[k] = Integer::divexact(w[k], snf_.diagonal[k]);
    } else if (!w[k].is_zero()) {
      return std::nullopt;
    }
  }
  return snf_.apply_v(y);
}

std::optional<IntVector> lattice_coordinates(const IntMatrix& m, const IntVector& v) {
  return LatticeSolver(m).solve(v);
}

Quotient::Quotient(const IntMatrix& relations) : n_(relations.rows()) {
  SnfOptions o;
  o.want_u = true;
  snf_ = smith_normal_form(relations, o);
  std::vector<Integer> tors;
  for (size_t k = 0; k < snf_.rank; ++k) {
    if (!snf_.diagonal[k].is_one()) {
      torsion_pos_.push_back(k);
      tors.push_back(snf_.diagonal[k]);
    }
  }
  free_start_ = snf_.rank;
  group_.free_rank = n_ - snf_.rank;
  group_.torsion = tors;
}

IntVector Quotient::coordinates(const IntVector& x) const {
  IntVector w = snf_.apply_u(x);
  IntVector c;
  c.reserve(torsion_pos_.size() + n_ - free_start_);
  for (size_t k : torsion_pos_) c.push_back(Integer::mod(w[k], snf_.diagonal[k]));
  for (size_t k = free_start_; k < n_; ++k) c.push_back(w[k]);
  return c;
}

bool Quotient::is_zero(const IntVector& x) const {
  for (const auto& v : coordinates(x)) {
    if (!v.is_zero()) return false;
  }
  return true;
}

IntVector Quotient::element(const IntVector& coords) const {
  if (coords.size() != torsion_pos_.size() + n_ - free_start_) throw std::invalid_argument("coordinate length");
  IntVector w(n_);
  size_t i = 0;
  for (size_t k : torsion_pos_) w[k] = coords[i++];
  for (size_t k = free_start_; k < n_; ++k) w[k] = coords[i++];
  return snf_.apply_u_inverse(w);
}

std::vector<IntVector> Quotient::generators() const {
  size_t m = torsion_pos_.size() + n_ - free_start_;
  std::vector<IntVector> out;
  for (size_t i = 0; i < m; ++i) {
    IntVector e(m);
    e[i] = 1;
    out.push_back(element(e));
  }
  return out;
}

std::vector<Integer> Quotient::moduli() const {
  std::vector<Integer> out;
  for (size_t k : torsion_pos_) out.push_back(snf_.diagonal[k]);
  for (size_t k = free_start_; k < n_; ++k) out.emplace_back(0);
  return out;
}

KernelGroup::KernelGroup(const IntMatrix& src_relations, const IntMatrix& map, const IntMatrix& tgt_relations) {
  size_t n = map.cols();
  if (src_relations.rows() != n || tgt_relations.rows() != map.rows()) {
    throw std::invalid_argument("incompatible shapes for induced kernel");
  }
  IntMatrix a = map;
  a.append_columns(tgt_relations);
  std::vector<IntVector> ker = kernel_basis(a);
  IntMatrix proj(n, 0);
  for (auto& v : ker) {
    v.resize(n);
    proj.append_column(sparse_of(v));
  }
  basis_ = column_span_basis(proj);
  solver_ = std::make_unique<LatticeSolver>(basis_);
  IntMatrix y(basis_.cols(), 0);
  for (size_t c = 0; c < src_relations.cols(); ++c) {
    auto sol = solver_->solve(src_relations.column_dense(c));
    if (!sol) throw std::logic_error("source relations do not lie in the kernel lattice");
    y.append_column(sparse_of(*sol));
  }
  quotient_ = Quotient(y);
}

std::vector<IntVector> KernelGroup::generators() const {
  std::vector<IntVector> out;
  for (const auto& g : quotient_.generators()) out.push_back(basis_.multiply(g));
  return out;
}

IntVector KernelGroup::coordinates(const IntVector& x) const {
  auto sol = solver_->solve(x);
  if (!sol) throw std::invalid_argument("vector is not in the kernel lattice");
  return quotient_.coordinates(*sol);
}

}  // namespace bf
