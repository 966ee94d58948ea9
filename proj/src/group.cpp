#include "bloch_forge/group.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <stdexcept>

#include "bloch_forge/budget.hpp"

namespace bf {

namespace {

const size_t kTableLimit = 2048;

std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Mat2 mat_mul(const Ring& r, const Mat2& a, const Mat2& b) {
  return {r.add(r.mul(a[0], b[0]), r.mul(a[1], b[2])), r.add(r.mul(a[0], b[1]), r.mul(a[1], b[3])),
          r.add(r.mul(a[2], b[0]), r.mul(a[3], b[2])), r.add(r.mul(a[2], b[1]), r.mul(a[3], b[3]))};
}

Elem mat_det(const Ring& r, const Mat2& a) { return r.sub(r.mul(a[0], a[3]), r.mul(a[1], a[2])); }

Mat2 mat_inv(const Ring& r, const Mat2& a) {
  Elem di = r.inv(mat_det(r, a));
  return {r.mul(a[3], di), r.neg(r.mul(a[1], di)), r.neg(r.mul(a[2], di)), r.mul(a[0], di)};
}

Mat2 mat_identity(const Ring& r) { return {r.one(), 0, 0, r.one()}; }
Mat2 mat_diag(const Ring&, Elem x, Elem y) { return {x, 0, 0, y}; }

std::string mat_str(const Ring& r, const Mat2& a) {
  return "[[" + r.str(a[0]) + "," + r.str(a[1]) + "],[" + r.str(a[2]) + "," + r.str(a[3]) + "]]";
}

std::vector<Elem> additive_generators(const Ring& r) {
  const auto& d = r.descriptor();
  switch (d.kind) {
    case RingDescriptor::PrimeField:
    case RingDescriptor::ZMod:
      return {r.one()};
    case RingDescriptor::GaloisField: {
      std::vector<Elem> g;
      Elem x = 1;
      for (unsigned i = 0; i < d.degree; ++i) {
        g.push_back(x);
        x = static_cast<Elem>(x * d.p);
      }
      return g;
    }
    case RingDescriptor::TruncPoly: {
      auto base = Ring::construct(*d.base);
      auto bg = additive_generators(*base);
      std::vector<Elem> g;
      Elem scale = 1;
      for (unsigned j = 0; j < d.nilpotency; ++j) {
        for (Elem b : bg) g.push_back(static_cast<Elem>(b * scale));
        scale = static_cast<Elem>(scale * base->size());
      }
      return g;
    }
  }
  return {};
}

FiniteGroup FiniteGroup::from_matrices(RingPtr ring, const std::vector<Mat2>& gens, size_t cap) {
  if (ring->size() > 65535) throw BudgetExceeded("matrix groups need rings with at most 65535 elements");
  if (!cap) cap = default_budget().max_group_order;
  FiniteGroup g;
  g.ring_ = ring;
  const Ring& r = *ring;
  for (const auto& m : gens) {
    if (!r.is_unit(mat_det(r, m))) throw std::invalid_argument("generator " + mat_str(r, m) + " is not invertible");
  }
  Mat2 id = mat_identity(r);
  g.mats_.push_back(id);
  g.index_.emplace(pack(id), 0);
  for (size_t i = 0; i < g.mats_.size(); ++i) {
    for (const auto& s : gens) {
      Mat2 y = mat_mul(r, g.mats_[i], s);
      if (g.index_.emplace(pack(y), static_cast<uint32_t>(g.mats_.size())).second) {
        g.mats_.push_back(y);
        if (g.mats_.size() > cap) {
          throw BudgetExceeded("group closure exceeds " + std::to_string(cap) + " elements");
        }
      }
    }
  }
  g.n_ = g.mats_.size();
  for (const auto& s : gens) {
    uint32_t k = g.index_.at(pack(s));
    if (k != 0 && std::find(g.gens_.begin(), g.gens_.end(), k) == g.gens_.end()) g.gens_.push_back(k);
  }
  g.finish(kTableLimit);
  return g;
}

void FiniteGroup::finish(size_t table_limit) {
  if (ring_ && n_ <= table_limit && table_.empty()) {
    table_.resize(n_ * n_);
    for (uint32_t a = 0; a < n_; ++a)
      for (uint32_t b = 0; b < n_; ++b) table_[a * n_ + b] = index_.at(pack(mat_mul(*ring_, mats_[a], mats_[b])));
  }
  inv_.assign(n_, 0);
  if (ring_) {
    for (uint32_t a = 0; a < n_; ++a) inv_[a] = index_.at(pack(mat_inv(*ring_, mats_[a])));
  } else {
    for (uint32_t a = 0; a < n_; ++a) {
      for (uint32_t b = 0; b < n_; ++b) {
        if (table_[a * n_ + b] == 0) {
          inv_[a] = b;
          break;
        }
      }
    }
  }
}

FiniteGroup FiniteGroup::from_table(std::vector<uint32_t> table, size_t n) {
  if (table.size() != n * n) throw std::invalid_argument("table size mismatch");
  FiniteGroup g;
  g.n_ = n;
  g.table_ = std::move(table);
  g.finish(0);
  // generators: greedy
  std::vector<uint32_t> cur{0};
  for (uint32_t a = 1; a < n && cur.size() < n; ++a) {
    if (std::binary_search(cur.begin(), cur.end(), a)) continue;
    g.gens_.push_back(a);
    cur = g.closure(g.gens_, n);
  }
  return g;
}

FiniteGroup FiniteGroup::cyclic(uint64_t n) { return abelian({n}); }

FiniteGroup FiniteGroup::abelian(const std::vector<uint64_t>& orders) {
  size_t n = 1;
  for (auto o : orders) {
    if (o == 0) throw std::invalid_argument("cyclic factors must be finite");
    n *= o;
  }
  if (n > kTableLimit * 2) throw BudgetExceeded("abstract abelian group too large");
  auto digits = [&](uint32_t x) {
    std::vector<uint64_t> d(orders.size());
    for (size_t i = 0; i < orders.size(); ++i) {
      d[i] = x % orders[i];
      x = static_cast<uint32_t>(x / orders[i]);
    }
    return d;
  };
  std::vector<uint32_t> table(n * n);
  for (uint32_t a = 0; a < n; ++a) {
    auto da = digits(a);
    for (uint32_t b = 0; b < n; ++b) {
      auto db = digits(b);
      uint64_t v = 0;
      for (size_t i = orders.size(); i-- > 0;) v = v * orders[i] + (da[i] + db[i]) % orders[i];
      table[a * n + b] = static_cast<uint32_t>(v);
    }
  }
  FiniteGroup g;
  g.n_ = n;
  g.table_ = std::move(table);
  g.finish(0);
  uint64_t scale = 1;
  for (auto o : orders) {
    if (o > 1) g.gens_.push_back(static_cast<uint32_t>(scale));
    scale *= o;
  }
  return g;
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  size_t n = a.order() * b.order();
  if (n > kTableLimit * 2) throw BudgetExceeded("direct product too large for a table");
  std::vector<uint32_t> table(n * n);
  size_t nb = b.order();
  for (uint32_t x = 0; x < n; ++x)
    for (uint32_t y = 0; y < n; ++y)
      table[x * n + y] = static_cast<uint32_t>(a.mul(static_cast<uint32_t>(x / nb), static_cast<uint32_t>(y / nb)) * nb +
                                               b.mul(static_cast<uint32_t>(x % nb), static_cast<uint32_t>(y % nb)));
  FiniteGroup g;
  g.n_ = n;
  g.table_ = std::move(table);
  g.finish(0);
  for (auto s : a.gens_) g.gens_.push_back(static_cast<uint32_t>(s * nb));
  for (auto s : b.gens_) g.gens_.push_back(s);
  return g;
}

uint32_t FiniteGroup::mul(uint32_t a, uint32_t b) const {
  if (!table_.empty()) return table_[static_cast<size_t>(a) * n_ + b];
  return index_.at(pack(mat_mul(*ring_, mats_[a], mats_[b])));
}

uint32_t FiniteGroup::pow(uint32_t a, long long e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  uint32_t r = 0;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

uint64_t FiniteGroup::element_order(uint32_t a) const {
  uint64_t k = 1;
  for (uint32_t x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (size_t i = 0; i < gens_.size(); ++i)
    for (size_t j = i + 1; j < gens_.size(); ++j)
      if (mul(gens_[i], gens_[j]) != mul(gens_[j], gens_[i])) return false;
  return true;
}

std::string FiniteGroup::label(uint32_t a) const {
  if (ring_) return mat_str(*ring_, mats_[a]);
  return "g" + std::to_string(a);
}

std::optional<uint32_t> FiniteGroup::find(const Mat2& m) const {
  auto it = index_.find(pack(m));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<uint32_t> FiniteGroup::closure(const std::vector<uint32_t>& gens, size_t cap) const {
  if (!cap) cap = n_;
  std::vector<uint32_t> elems{0};
  std::vector<char> seen(n_, 0);
  seen[0] = 1;
  for (size_t i = 0; i < elems.size(); ++i) {
    for (uint32_t s : gens) {
      uint32_t y = mul(elems[i], s);
      if (!seen[y]) {
        seen[y] = 1;
        elems.push_back(y);
        if (elems.size() > cap) throw BudgetExceeded("subgroup closure exceeds cap");
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

FiniteGroup::Sub FiniteGroup::subgroup(const std::vector<uint32_t>& elements) const {
  Sub s;
  s.embedding = elements;
  if (elements.empty() || elements[0] != 0) throw std::invalid_argument("subgroup list must start with the identity");
  for (uint32_t i = 0; i < elements.size(); ++i) s.lookup.emplace(elements[i], i);
  auto g = std::make_shared<FiniteGroup>();
  g->n_ = elements.size();
  if (ring_) {
    g->ring_ = ring_;
    for (uint32_t i = 0; i < elements.size(); ++i) {
      g->mats_.push_back(mats_[elements[i]]);
      g->index_.emplace(pack(mats_[elements[i]]), i);
    }
  }
  if (g->n_ <= kTableLimit || !ring_) {
    g->table_.resize(g->n_ * g->n_);
    for (uint32_t a = 0; a < g->n_; ++a)
      for (uint32_t b = 0; b < g->n_; ++b) {
        auto it = s.lookup.find(mul(elements[a], elements[b]));
        if (it == s.lookup.end()) throw std::invalid_argument("element list is not closed");
        g->table_[a * g->n_ + b] = it->second;
      }
  }
  g->inv_.resize(g->n_);
  for (uint32_t a = 0; a < g->n_; ++a) g->inv_[a] = s.lookup.at(inv(elements[a]));
  std::vector<uint32_t> cur{0};
  for (uint32_t a = 1; a < g->n_ && cur.size() < g->n_; ++a) {
    if (std::binary_search(cur.begin(), cur.end(), a)) continue;
    g->gens_.push_back(a);
    cur = g->closure(g->gens_);
  }
  s.group = std::move(g);
  return s;
}

bool FiniteGroup::check_axioms(unsigned seed) const {
  auto ok = [&](uint32_t a, uint32_t b, uint32_t c) { return mul(mul(a, b), c) == mul(a, mul(b, c)); };
  for (uint32_t a = 0; a < n_; ++a) {
    if (mul(a, 0) != a || mul(0, a) != a || mul(a, inv_[a]) != 0) return false;
  }
  if (n_ <= 64) {
    for (uint32_t a = 0; a < n_; ++a)
      for (uint32_t b = 0; b < n_; ++b)
        for (uint32_t c = 0; c < n_; ++c)
          if (!ok(a, b, c)) return false;
    return true;
  }
  std::mt19937 rng(seed);
  for (int t = 0; t < 200; ++t) {
    if (!ok(rng() % n_, rng() % n_, rng() % n_)) return false;
  }
  return true;
}

namespace {

Mat2 upper(const Ring& r, Elem x) { return {r.one(), x, 0, r.one()}; }
Mat2 lower(const Ring& r, Elem x) { return {r.one(), 0, x, r.one()}; }

}  // namespace

FiniteGroup make_sl2(const RingPtr& r, size_t cap) {
  std::vector<Mat2> g;
  for (Elem x : additive_generators(*r)) g.push_back(upper(*r, x));
  for (Elem x : additive_generators(*r)) g.push_back(lower(*r, x));
  return FiniteGroup::from_matrices(r, g, cap);
}

FiniteGroup make_gl2(const RingPtr& r, size_t cap) {
  std::vector<Mat2> g;
  for (Elem x : additive_generators(*r)) g.push_back(upper(*r, x));
  for (Elem x : additive_generators(*r)) g.push_back(lower(*r, x));
  for (Elem u : r->units_group().generators) g.push_back(mat_diag(*r, u, r->one()));
  return FiniteGroup::from_matrices(r, g, cap);
}

FiniteGroup make_b2(const RingPtr& r, size_t cap) {
  std::vector<Mat2> g;
  for (Elem x : additive_generators(*r)) g.push_back(upper(*r, x));
  for (Elem u : r->units_group().generators) g.push_back(mat_diag(*r, u, r->one()));
  for (Elem u : r->units_group().generators) g.push_back(mat_diag(*r, r->one(), u));
  return FiniteGroup::from_matrices(r, g, cap);
}

FiniteGroup make_t2(const RingPtr& r, size_t cap) {
  std::vector<Mat2> g;
  for (Elem u : r->units_group().generators) g.push_back(mat_diag(*r, u, r->one()));
  for (Elem u : r->units_group().generators) g.push_back(mat_diag(*r, r->one(), u));
  return FiniteGroup::from_matrices(r, g, cap);
}

FiniteGroup make_gm2(const RingPtr& r, size_t cap) {
  std::vector<Mat2> g;
  for (Elem u : r->units_group().generators) g.push_back(mat_diag(*r, u, r->one()));
  for (Elem u : r->units_group().generators) g.push_back(mat_diag(*r, r->one(), u));
  g.push_back({0, r->one(), r->one(), 0});
  return FiniteGroup::from_matrices(r, g, cap);
}

FiniteGroup make_n2(const RingPtr& r, size_t cap) {
  std::vector<Mat2> g;
  for (Elem x : additive_generators(*r)) g.push_back(upper(*r, x));
  return FiniteGroup::from_matrices(r, g, cap);
}

FiniteGroup make_n2_center(const RingPtr& r, size_t cap) {
  std::vector<Mat2> g;
  for (Elem x : additive_generators(*r)) g.push_back(upper(*r, x));
  for (Elem u : r->units_group().generators) g.push_back(mat_diag(*r, u, u));
  return FiniteGroup::from_matrices(r, g, cap);
}

FiniteGroup parse_group(const std::string& raw, size_t cap) {
  std::string s;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') throw std::invalid_argument("bad group spec '" + raw + "'");
  std::string head = s.substr(0, open);
  std::string arg = s.substr(open + 1, s.size() - open - 2);
  if (head == "cyclic") return FiniteGroup::cyclic(std::stoull(arg));
  if (head == "abelian") {
    std::vector<uint64_t> o;
    for (const auto& a : split_args(arg)) o.push_back(std::stoull(a));
    return FiniteGroup::abelian(o);
  }
  if (head == "product") {
    auto parts = split_args(arg);
    FiniteGroup g = parse_group(parts.at(0), cap);
    for (size_t i = 1; i < parts.size(); ++i) g = FiniteGroup::direct_product(g, parse_group(parts[i], cap));
    return g;
  }
  RingPtr r = Ring::parse(arg);
  if (head == "sl2") return make_sl2(r, cap);
  if (head == "gl2") return make_gl2(r, cap);
  if (head == "b2") return make_b2(r, cap);
  if (head == "t2") return make_t2(r, cap);
  if (head == "gm2") return make_gm2(r, cap);
  if (head == "n2") return make_n2(r, cap);
  throw std::invalid_argument("unknown group family '" + head + "'");
}

}  // namespace bf
