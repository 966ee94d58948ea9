#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "bloch_forge/linalg.hpp"

namespace bf {

SparseVec normalize_sparse(SparseVec v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  out.reserve(v.size());
  for (auto& e : v) {
    if (!out.empty() && out.back().first == e.first) {
      out.back().second += e.second;
    } else {
      out.push_back(std::move(e));
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& e) { return e.second.is_zero(); }), out.end());
  return out;
}

IntVector dense_of(const SparseVec& v, size_t n) {
  IntVector d(n);
  for (const auto& [r, x] : v) d[r] = x;
  return d;
}

SparseVec sparse_of(const IntVector& v) {
  SparseVec s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) s.emplace_back(static_cast<uint32_t>(i), v[i]);
  }
  return s;
}

IntMatrix IntMatrix::from_dense(const std::vector<std::vector<long long>>& rows) {
  size_t nr = rows.size();
  size_t nc = nr ? rows[0].size() : 0;
  IntMatrix m(nr, nc);
  for (size_t c = 0; c < nc; ++c) {
    for (size_t r = 0; r < nr; ++r) {
      if (rows[r].size() != nc) throw std::invalid_argument("ragged matrix");
      if (rows[r][c] != 0) m.cols_[c].emplace_back(static_cast<uint32_t>(r), Integer(rows[r][c]));
    }
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows) {
  size_t nr = rows.size();
  size_t nc = nr ? rows[0].size() : 0;
  IntMatrix m(nr, nc);
  for (size_t c = 0; c < nc; ++c) {
    for (size_t r = 0; r < nr; ++r) {
      if (!rows[r][c].is_zero()) m.cols_[c].emplace_back(static_cast<uint32_t>(r), rows[r][c]);
    }
  }
  return m;
}

IntMatrix IntMatrix::identity(size_t n) {
  IntMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.cols_[i].emplace_back(static_cast<uint32_t>(i), Integer(1));
  return m;
}

IntMatrix IntMatrix::from_columns(size_t rows, const std::vector<IntVector>& cols) {
  IntMatrix m(rows, 0);
  for (const auto& c : cols) {
    if (c.size() != rows) throw std::invalid_argument("column length mismatch");
    m.cols_.push_back(sparse_of(c));
  }
  return m;
}

size_t IntMatrix::nnz() const {
  size_t n = 0;
  for (const auto& c : cols_) n += c.size();
  return n;
}

Integer IntMatrix::get(size_t r, size_t c) const {
  const auto& col = cols_.at(c);
  auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, size_t row) { return e.first < row; });
  if (it != col.end() && it->first == r) return it->second;
  return Integer(0);
}

void IntMatrix::set(size_t r, size_t c, const Integer& v) {
  if (r >= rows_) throw std::out_of_range("row index");
  auto& col = cols_.at(c);
  auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, size_t row) { return e.first < row; });
  if (it != col.end() && it->first == r) {
    if (v.is_zero()) {
      col.erase(it);
    } else {
      it->second = v;
    }
  } else if (!v.is_zero()) {
    col.insert(it, {static_cast<uint32_t>(r), v});
  }
}

void IntMatrix::add(size_t r, size_t c, const Integer& v) { set(r, c, get(r, c) + v); }

void IntMatrix::set_column(size_t c, SparseVec v) {
  v = normalize_sparse(std::move(v));
  if (!v.empty() && v.back().first >= rows_) throw std::out_of_range("row index in column");
  cols_.at(c) = std::move(v);
}

size_t IntMatrix::append_column(SparseVec v) {
  cols_.emplace_back();
  set_column(cols_.size() - 1, std::move(v));
  return cols_.size() - 1;
}

void IntMatrix::append_columns(const IntMatrix& other) {
  if (other.rows_ != rows_) throw std::invalid_argument("row count mismatch");
  for (const auto& c : other.cols_) cols_.push_back(c);
}

IntVector IntMatrix::multiply(const IntVector& x) const {
  if (x.size() != cols()) throw std::invalid_argument("dimension mismatch in multiply");
  IntVector y(rows_);
  for (size_t c = 0; c < cols_.size(); ++c) {
    if (x[c].is_zero()) continue;
    for (const auto& [r, v] : cols_[c]) y[r].addmul(v, x[c]);
  }
  return y;
}

IntVector IntMatrix::column_dense(size_t c) const { return dense_of(cols_.at(c), rows_); }

std::vector<IntVector> IntMatrix::to_dense() const {
  std::vector<IntVector> d(rows_, IntVector(cols()));
  for (size_t c = 0; c < cols_.size(); ++c) {
    for (const auto& [r, v] : cols_[c]) d[r][c] = v;
  }
  return d;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols(), rows_);
  for (size_t c = 0; c < cols_.size(); ++c) {
    for (const auto& [r, v] : cols_[c]) t.cols_[r].emplace_back(static_cast<uint32_t>(c), v);
  }
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols() != o.rows()) throw std::invalid_argument("dimension mismatch in product");
  IntMatrix p(rows_, o.cols());
  for (size_t c = 0; c < o.cols(); ++c) {
    IntVector acc(rows_);
    for (const auto& [k, b] : o.cols_[c]) {
      for (const auto& [r, a] : cols_[k]) acc[r].addmul(a, b);
    }
    p.cols_[c] = sparse_of(acc);
  }
  return p;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols() != o.cols()) return false;
  for (size_t c = 0; c < cols_.size(); ++c) {
    if (cols_[c].size() != o.cols_[c].size()) return false;
    for (size_t k = 0; k < cols_[c].size(); ++k) {
      if (cols_[c][k].first != o.cols_[c][k].first || cols_[c][k].second != o.cols_[c][k].second) return false;
    }
  }
  return true;
}

void write_matrix_market(std::ostream& os, const IntMatrix& m) {
  os << "%%MatrixMarket matrix coordinate integer general\n";
  os << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  for (size_t c = 0; c < m.cols(); ++c) {
    for (const auto& [r, v] : m.column(c)) os << (r + 1) << ' ' << (c + 1) << ' ' << v << '\n';
  }
}

IntMatrix read_matrix_market(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("%%MatrixMarket matrix coordinate integer general", 0) != 0) {
    throw std::invalid_argument("unsupported MatrixMarket header");
  }
  while (std::getline(is, line) && !line.empty() && line[0] == '%') {
  }
  std::istringstream head(line);
  size_t nr, nc, nz;
  if (!(head >> nr >> nc >> nz)) throw std::invalid_argument("bad MatrixMarket size line");
  std::vector<SparseVec> cols(nc);
  for (size_t k = 0; k < nz; ++k) {
    size_t r, c;
    std::string v;
    if (!(is >> r >> c >> v)) throw std::invalid_argument("truncated MatrixMarket data");
    cols.at(c - 1).emplace_back(static_cast<uint32_t>(r - 1), Integer(v));
  }
  IntMatrix m(nr, nc);
  for (size_t c = 0; c < nc; ++c) m.set_column(c, std::move(cols[c]));
  return m;
}

}  // namespace bf
