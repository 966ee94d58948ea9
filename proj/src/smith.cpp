#include <algorithm>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "bloch_forge/linalg.hpp"

namespace bf {

namespace {

struct Pivot {
  uint32_t row;
  uint32_t col;
  Integer d;
};

auto row_less = [](const std::pair<uint32_t, Integer>& e, uint32_t r) { return e.first < r; };

// Sparse elimination with Markowitz ordering.  Unit pivots are taken first
// from the sparsest columns; the leftover block is handled with smallest
// magnitude pivots and extended gcd steps.
class Eliminator {
 public:
  Eliminator(const IntMatrix& m, const SnfOptions& opts, SmithForm& out)
      : nr_(m.rows()), nc_(m.cols()), out_(out), log_u_(opts.want_u), log_v_(opts.want_v) {
    fill_cap_ = opts.max_fill ? opts.max_fill : default_budget().max_fill;
    cols_.resize(nc_);
    row_cols_.resize(nr_);
    row_cnt_.assign(nr_, 0);
    row_done_.assign(nr_, 0);
    col_done_.assign(nc_, 0);
    for (size_t c = 0; c < nc_; ++c) {
      cols_[c] = m.column(c);
      for (const auto& e : cols_[c]) {
        row_cols_[e.first].push_back(static_cast<uint32_t>(c));
        ++row_cnt_[e.first];
      }
      live_ += cols_[c].size();
    }
    if (live_ > fill_cap_) throw BudgetExceeded("matrix exceeds the elimination fill budget");
  }

  void run() {
    for (uint32_t c = 0; c < nc_; ++c) {
      if (!cols_[c].empty()) push(c);
    }
    for (;;) {
      unit_phase();
      if (!general_step()) break;
    }
    finish();
  }

 private:
  void push(uint32_t c) { heap_.emplace(static_cast<uint32_t>(cols_[c].size()), c); }

  Integer* find(uint32_t c, uint32_t r) {
    auto& col = cols_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r, row_less);
    if (it != col.end() && it->first == r) return &it->second;
    return nullptr;
  }

  void check_fill() const {
    if (live_ > fill_cap_) throw BudgetExceeded("elimination fill exceeded the budget");
  }

  // Live columns that currently hold an entry in row r, excluding `skip`.
  std::vector<uint32_t> columns_of_row(uint32_t r, uint32_t skip) {
    auto& lst = row_cols_[r];
    std::sort(lst.begin(), lst.end());
    lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
    std::vector<uint32_t> keep;
    keep.reserve(lst.size());
    std::vector<uint32_t> out;
    for (uint32_t c : lst) {
      if (col_done_[c] || !find(c, r)) continue;
      keep.push_back(c);
      if (c != skip) out.push_back(c);
    }
    lst.swap(keep);
    return out;
  }

  // col_t += f * col_s
  void axpy(uint32_t t, const Integer& f, uint32_t s) {
    const auto& a = cols_[t];
    const auto& b = cols_[s];
    buf_.clear();
    buf_.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        buf_.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        Integer v = f * b[j].second;
        uint32_t r = b[j].first;
        ++j;
        if (v.is_zero()) continue;
        buf_.emplace_back(r, std::move(v));
        ++row_cnt_[r];
        row_cols_[r].push_back(t);
        ++live_;
      } else {
        Integer v = a[i].second;
        v.addmul(f, b[j].second);
        uint32_t r = a[i].first;
        ++i;
        ++j;
        if (v.is_zero()) {
          --row_cnt_[r];
          --live_;
        } else {
          buf_.emplace_back(r, std::move(v));
        }
      }
    }
    cols_[t].swap(buf_);
    check_fill();
  }

  void set_entry(uint32_t c, uint32_t r, Integer v) {
    auto& col = cols_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r, row_less);
    bool present = it != col.end() && it->first == r;
    if (v.is_zero()) {
      if (present) {
        col.erase(it);
        --row_cnt_[r];
        --live_;
      }
    } else if (present) {
      it->second = std::move(v);
    } else {
      col.insert(it, {r, std::move(v)});
      ++row_cnt_[r];
      row_cols_[r].push_back(c);
      ++live_;
    }
  }

  uint32_t new_mat(const Integer& a, const Integer& b, const Integer& x, const Integer& y) {
    out_.mats.push_back({a, b, x, y});
    return static_cast<uint32_t>(out_.mats.size() - 1);
  }
  void log_row_add(uint32_t target, const Integer& f, uint32_t source) {
    if (log_u_) out_.row_ops.push_back({ElementaryOp::Add, target, source, f, 0});
  }
  void log_col_add(uint32_t target, const Integer& f, uint32_t source) {
    if (log_v_) out_.col_ops.push_back({ElementaryOp::Add, target, source, f, 0});
  }
  void log_row_mat(uint32_t i, uint32_t j, const Integer& a, const Integer& b, const Integer& x, const Integer& y) {
    if (log_u_) out_.row_ops.push_back({ElementaryOp::Mat2, i, j, Integer(0), new_mat(a, b, x, y)});
  }
  void log_row_neg(uint32_t i) {
    if (log_u_) out_.row_ops.push_back({ElementaryOp::Neg, i, i, Integer(0), 0});
  }

  static Integer nearest_quotient(const Integer& a, const Integer& p) {
    if (p.sign() < 0) return nearest_quotient(-a, -p);
    Integer q = Integer::fdiv(a, p);
    Integer rem = a - q * p;
    if (rem + rem > p) q += Integer(1);
    return q;
  }

  // Euclid style: reduce the pivot row and column by nearest quotients and
  // move the pivot to the smallest remainder until both are clear.
  void eliminate(uint32_t r, uint32_t c) {
    for (;;) {
      bool moved = false;
      Integer p = *find(c, r);
      for (uint32_t t : columns_of_row(r, c)) {
        Integer* pa = find(t, r);
        if (!pa) continue;
        Integer q = nearest_quotient(*pa, p);
        if (!q.is_zero()) {
          Integer f = -q;
          axpy(t, f, c);
          log_col_add(t, f, c);
          push(t);
        }
      }
      uint32_t best = c;
      for (uint32_t t : columns_of_row(r, c)) {
        if (find(t, r)->compare_abs(*find(best, r)) < 0) best = t;
      }
      if (best != c) {
        c = best;
        continue;
      }
      std::vector<uint32_t> others;
      for (const auto& e : cols_[c]) {
        if (e.first != r) others.push_back(e.first);
      }
      uint32_t best_row = r;
      for (uint32_t s : others) {
        Integer b = *find(c, s);
        Integer q = nearest_quotient(b, p);
        if (q.is_zero()) {
          moved = true;
        } else {
          log_row_add(s, -q, r);
          b.submul(q, p);
          set_entry(c, s, b);
          if (!b.is_zero()) moved = true;
        }
        if (!b.is_zero() && (best_row == r || b.compare_abs(*find(c, best_row)) < 0)) best_row = s;
      }
      if (!moved) break;
      r = best_row;
    }
    Integer p = *find(c, r);
    if (p.sign() < 0) log_row_neg(r);
    pivots_.push_back({r, c, p.abs()});
    for (const auto& e : cols_[c]) {
      --row_cnt_[e.first];
      --live_;
    }
    cols_[c].clear();
    cols_[c].shrink_to_fit();
    row_done_[r] = 1;
    col_done_[c] = 1;
    row_cols_[r].clear();
    row_cols_[r].shrink_to_fit();
  }

  void unit_phase() {
    while (!heap_.empty()) {
      auto [n, c] = heap_.top();
      heap_.pop();
      if (col_done_[c] || n == 0 || cols_[c].size() != n) continue;
      uint32_t best = UINT32_MAX;
      uint32_t best_cnt = UINT32_MAX;
      for (const auto& e : cols_[c]) {
        if (!e.second.is_unit()) continue;
        if (row_cnt_[e.first] < best_cnt) {
          best_cnt = row_cnt_[e.first];
          best = e.first;
        }
      }
      if (best == UINT32_MAX) continue;
      eliminate(best, c);
    }
  }

  bool general_step() {
    bool found = false;
    uint32_t br = 0, bc = 0;
    const Integer* bv = nullptr;
    uint64_t bcost = 0;
    for (uint32_t c = 0; c < nc_; ++c) {
      if (col_done_[c] || cols_[c].empty()) continue;
      uint64_t csz = cols_[c].size() - 1;
      for (const auto& e : cols_[c]) {
        uint64_t cost = csz * (row_cnt_[e.first] - 1);
        int cmp = found ? e.second.compare_abs(*bv) : -1;
        if (!found || cmp < 0 || (cmp == 0 && cost < bcost)) {
          found = true;
          br = e.first;
          bc = c;
          bv = &e.second;
          bcost = cost;
        }
      }
    }
    if (!found) return false;
    eliminate(br, bc);
    return true;
  }

  void fixup(Pivot& pi, Pivot& pj) {
    Integer a = pi.d, b = pj.d;
    log_col_add(pi.col, Integer(1), pj.col);
    Integer s, t;
    Integer g = Integer::ext_gcd(a, b, s, t);
    log_row_mat(pi.row, pj.row, s, t, -Integer::divexact(b, g), Integer::divexact(a, g));
    log_col_add(pj.col, -Integer::divexact(t * b, g), pi.col);
    pi.d = g;
    pj.d = Integer::divexact(a, g) * b;
  }

  void finish() {
    std::vector<Pivot> ordered;
    std::vector<Pivot> rest;
    for (auto& p : pivots_) {
      if (p.d.is_one()) {
        ordered.push_back(std::move(p));
      } else {
        rest.push_back(std::move(p));
      }
    }
    for (size_t i = 0; i < rest.size(); ++i) {
      for (size_t j = i + 1; j < rest.size(); ++j) {
        if (!Integer::divides(rest[i].d, rest[j].d)) fixup(rest[i], rest[j]);
      }
    }
    for (auto& p : rest) ordered.push_back(std::move(p));

    out_.rows = nr_;
    out_.cols = nc_;
    out_.rank = ordered.size();
    out_.has_u = log_u_;
    out_.has_v = log_v_;
    std::vector<char> rseen(nr_, 0), cseen(nc_, 0);
    for (const auto& p : ordered) {
      out_.diagonal.push_back(p.d);
      out_.row_order.push_back(p.row);
      out_.col_order.push_back(p.col);
      rseen[p.row] = 1;
      cseen[p.col] = 1;
    }
    for (uint32_t r = 0; r < nr_; ++r) {
      if (!rseen[r]) out_.row_order.push_back(r);
    }
    for (uint32_t c = 0; c < nc_; ++c) {
      if (!cseen[c]) out_.col_order.push_back(c);
    }
  }

  size_t nr_, nc_;
  SmithForm& out_;
  bool log_u_, log_v_;
  size_t fill_cap_ = 0;
  size_t live_ = 0;
  std::vector<SparseVec> cols_;
  std::vector<std::vector<uint32_t>> row_cols_;
  std::vector<uint32_t> row_cnt_;
  std::vector<char> row_done_, col_done_;
  std::vector<Pivot> pivots_;
  SparseVec buf_;
  std::priority_queue<std::pair<uint32_t, uint32_t>, std::vector<std::pair<uint32_t, uint32_t>>, std::greater<>> heap_;
};

void apply_mat(const std::array<Integer, 4>& m, Integer& xi, Integer& xj) {
  Integer ni = m[0] * xi;
  ni.addmul(m[1], xj);
  Integer nj = m[2] * xi;
  nj.addmul(m[3], xj);
  xi = std::move(ni);
  xj = std::move(nj);
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m, const SnfOptions& opts) {
  if (m.rows() >= UINT32_MAX || m.cols() >= UINT32_MAX) throw BudgetExceeded("matrix dimensions too large");
  SmithForm out;
  Eliminator e(m, opts, out);
  e.run();
  return out;
}

SmithForm smith_normal_form(const IntMatrix& m, bool want_transforms) {
  SnfOptions o;
  o.want_u = o.want_v = want_transforms;
  return smith_normal_form(m, o);
}

IntVector SmithForm::apply_u(const IntVector& v) const {
  if (!has_u) throw std::logic_error("row transform was not recorded");
  if (v.size() != rows) throw std::invalid_argument("vector length does not match rows");
  IntVector x = v;
  for (const auto& op : row_ops) {
    switch (op.kind) {
      case ElementaryOp::Add:
        if (!x[op.j].is_zero()) x[op.i].addmul(op.f, x[op.j]);
        break;
      case ElementaryOp::Mat2:
        apply_mat(mats[op.mat], x[op.i], x[op.j]);
        break;
      case ElementaryOp::Neg:
        x[op.i] = -x[op.i];
        break;
    }
  }
  IntVector w(rows);
  for (size_t k = 0; k < rows; ++k) w[k] = std::move(x[row_order[k]]);
  return w;
}

IntVector SmithForm::apply_u_inverse(const IntVector& w) const {
  if (!has_u) throw std::logic_error("row transform was not recorded");
  if (w.size() != rows) throw std::invalid_argument("vector length does not match rows");
  IntVector x(rows);
  for (size_t k = 0; k < rows; ++k) x[row_order[k]] = w[k];
  for (auto it = row_ops.rbegin(); it != row_ops.rend(); ++it) {
    const auto& op = *it;
    switch (op.kind) {
      case ElementaryOp::Add:
        if (!x[op.j].is_zero()) x[op.i].submul(op.f, x[op.j]);
        break;
      case ElementaryOp::Mat2: {
        const auto& m = mats[op.mat];
        std::array<Integer, 4> inv{m[3], -m[1], -m[2], m[0]};
        apply_mat(inv, x[op.i], x[op.j]);
        break;
      }
      case ElementaryOp::Neg:
        x[op.i] = -x[op.i];
        break;
    }
  }
  return x;
}

IntVector SmithForm::apply_v(const IntVector& y) const {
  if (!has_v) throw std::logic_error("column transform was not recorded");
  if (y.size() != cols) throw std::invalid_argument("vector length does not match columns");
  IntVector x(cols);
  for (size_t k = 0; k < cols; ++k) x[col_order[k]] = y[k];
  for (auto it = col_ops.rbegin(); it != col_ops.rend(); ++it) {
    const auto& op = *it;
    switch (op.kind) {
      case ElementaryOp::Add:
        // col_i += f col_j acts on coordinates as x_j += f x_i
        if (!x[op.i].is_zero()) x[op.j].addmul(op.f, x[op.i]);
        break;
      case ElementaryOp::Mat2: {
        const auto& m = mats[op.mat];
        std::array<Integer, 4> t{m[0], m[2], m[1], m[3]};
        apply_mat(t, x[op.i], x[op.j]);
        break;
      }
      case ElementaryOp::Neg:
        x[op.i] = -x[op.i];
        break;
    }
  }
  return x;
}

IntVector SmithForm::apply_v_inverse(const IntVector& xin) const {
  if (!has_v) throw std::logic_error("column transform was not recorded");
  if (xin.size() != cols) throw std::invalid_argument("vector length does not match columns");
  IntVector x = xin;
  for (const auto& op : col_ops) {
    switch (op.kind) {
      case ElementaryOp::Add:
        if (!x[op.i].is_zero()) x[op.j].submul(op.f, x[op.i]);
        break;
      case ElementaryOp::Mat2: {
        const auto& m = mats[op.mat];
        std::array<Integer, 4> t{m[3], -m[2], -m[1], m[0]};
        apply_mat(t, x[op.i], x[op.j]);
        break;
      }
      case ElementaryOp::Neg:
        x[op.i] = -x[op.i];
        break;
    }
  }
  IntVector y(cols);
  for (size_t k = 0; k < cols; ++k) y[k] = std::move(x[col_order[k]]);
  return y;
}

IntMatrix SmithForm::u_matrix() const {
  IntMatrix u(rows, 0);
  for (size_t k = 0; k < rows; ++k) {
    IntVector e(rows);
    e[k] = 1;
    u.append_column(sparse_of(apply_u(e)));
  }
  return u;
}

IntMatrix SmithForm::v_matrix() const {
  IntMatrix v(cols, 0);
  for (size_t k = 0; k < cols; ++k) {
    IntVector e(cols);
    e[k] = 1;
    v.append_column(sparse_of(apply_v(e)));
  }
  return v;
}

size_t rank(const IntMatrix& m) { return smith_normal_form(m, false).rank; }

size_t rank_mod_p(const IntMatrix& m, uint64_t p) {
  if (p < 2) throw std::invalid_argument("modulus must be a prime");
  using Col = std::vector<std::pair<uint32_t, uint64_t>>;
  auto modp = [p](const Integer& x) -> uint64_t {
    if (x.is_small()) {
      int64_t v = x.small() % static_cast<int64_t>(p);
      return static_cast<uint64_t>(v < 0 ? v + static_cast<int64_t>(p) : v);
    }
    return Integer::mod(x, Integer(static_cast<unsigned long long>(p))).to_mpz().get_ui();
  };
  auto mulmod = [p](uint64_t a, uint64_t b) { return static_cast<uint64_t>((__uint128_t)a * b % p); };
  auto powmod = [&](uint64_t a, uint64_t e) {
    uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  };
  std::unordered_map<uint32_t, Col> pivots;
  Col cur, tmp;
  for (size_t c = 0; c < m.cols(); ++c) {
    cur.clear();
    for (const auto& [r, v] : m.column(c)) {
      uint64_t x = modp(v);
      if (x) cur.emplace_back(r, x);
    }
    while (!cur.empty()) {
      auto it = pivots.find(cur.front().first);
      if (it == pivots.end()) {
        uint64_t inv = powmod(cur.front().second, p - 2);
        for (auto& e : cur) e.second = mulmod(e.second, inv);
        pivots.emplace(cur.front().first, cur);
        break;
      }
      uint64_t f = cur.front().second;
      const Col& pc = it->second;
      tmp.clear();
      size_t i = 0, j = 0;
      while (i < cur.size() || j < pc.size()) {
        if (j == pc.size() || (i < cur.size() && cur[i].first < pc[j].first)) {
          tmp.push_back(cur[i++]);
        } else if (i == cur.size() || pc[j].first < cur[i].first) {
          tmp.emplace_back(pc[j].first, (p - mulmod(f, pc[j].second)) % p);
          ++j;
        } else {
          uint64_t v = (cur[i].second + p - mulmod(f, pc[j].second)) % p;
          if (v) tmp.emplace_back(cur[i].first, v);
          ++i;
          ++j;
        }
      }
      cur.swap(tmp);
    }
  }
  return pivots.size();
}

}  // namespace bf
