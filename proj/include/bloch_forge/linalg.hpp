#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bloch_forge/budget.hpp"
#include "bloch_forge/integer.hpp"

namespace bf {

using IntVector = std::vector<Integer>;
// Sorted by row index, no explicit zeros.
using SparseVec = std::vector<std::pair<uint32_t, Integer>>;

// Sparse integer matrix, stored by columns.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols) {}

  static IntMatrix from_dense(const std::vector<std::vector<long long>>& rows);
  static IntMatrix from_rows(const std::vector<IntVector>& rows);
  static IntMatrix identity(size_t n);
  // Columns given as dense vectors of length `rows`.
  static IntMatrix from_columns(size_t rows, const std::vector<IntVector>& cols);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_.size(); }
  size_t nnz() const;

  Integer get(size_t r, size_t c) const;
  void set(size_t r, size_t c, const Integer& v);
  void add(size_t r, size_t c, const Integer& v);

  const SparseVec& column(size_t c) const { return cols_[c]; }
  // Sorts, merges duplicates and drops zeros.
  void set_column(size_t c, SparseVec v);
  size_t append_column(SparseVec v);
  void append_columns(const IntMatrix& other);
  void resize_rows(size_t rows) { rows_ = rows; }

  IntVector multiply(const IntVector& x) const;
  IntVector column_dense(size_t c) const;
  std::vector<IntVector> to_dense() const;
  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const;

 private:
  size_t rows_ = 0;
  std::vector<SparseVec> cols_;

 public:
  IntMatrix(size_t rows, std::vector<SparseVec> cols) : rows_(rows), cols_(std::move(cols)) {}
};

SparseVec normalize_sparse(SparseVec v);
IntVector dense_of(const SparseVec& v, size_t n);
SparseVec sparse_of(const IntVector& v);

// One elementary operation on rows or columns, recorded for replay.
struct ElementaryOp {
  enum Kind : uint8_t { Add, Mat2, Neg };
  Kind kind;
  uint32_t i;
  uint32_t j;
  // Add: target i += f * source j.  Mat2: coefficients stored in the owner.
  Integer f;
  uint32_t mat = 0;
};

// Smith normal form D = U * M * V with U, V unimodular.  The transforms are
// kept as operation logs; coordinates are in pivot order: position k < rank
// corresponds to (pivot_rows[k], pivot_cols[k]) with value diagonal[k].
class SmithForm {
 public:
  size_t rows = 0;
  size_t cols = 0;
  size_t rank = 0;
  std::vector<Integer> diagonal;     // positive, d_1 | d_2 | ...
  std::vector<uint32_t> row_order;   // pivot rows first, then the rest ascending
  std::vector<uint32_t> col_order;   // pivot columns first, then the rest ascending
  bool has_u = false;
  bool has_v = false;

  IntVector apply_u(const IntVector& v) const;
  IntVector apply_u_inverse(const IntVector& w) const;
  IntVector apply_v(const IntVector& y) const;
  IntVector apply_v_inverse(const IntVector& x) const;
  IntMatrix u_matrix() const;
  IntMatrix v_matrix() const;
  size_t log_size() const { return row_ops.size() + col_ops.size(); }

  std::vector<ElementaryOp> row_ops;
  std::vector<ElementaryOp> col_ops;
  std::vector<std::array<Integer, 4>> mats;
};

struct SnfOptions {
  bool want_u = false;
  bool want_v = false;
  size_t max_fill = 0;  // 0: take the process default
};

SmithForm smith_normal_form(const IntMatrix& m, bool want_transforms = false);
SmithForm smith_normal_form(const IntMatrix& m, const SnfOptions& opts);

// Finitely generated abelian group Z^free + Z/d_1 + ... with d_i | d_{i+1}, d_i >= 2.
struct AbGroup {
  size_t free_rank = 0;
  std::vector<Integer> torsion;

  static AbGroup from_factors(size_t free_rank, const std::vector<Integer>& factors);
  static AbGroup cyclic(const Integer& n);
  static AbGroup trivial() { return {}; }

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool is_finite() const { return free_rank == 0; }
  Integer order() const;  // requires finite
  AbGroup primary_part(const Integer& p) const;
  AbGroup direct_sum(const AbGroup& o) const;
  // Prime power factors in ascending order, e.g. Z/12 -> 3, 4.
  std::vector<Integer> elementary_divisors() const;
  std::string str() const;
  bool operator==(const AbGroup& o) const { return free_rank == o.free_rank && torsion == o.torsion; }
  bool operator!=(const AbGroup& o) const { return !(*this == o); }
};

AbGroup cokernel(const IntMatrix& m);
std::vector<IntVector> kernel_basis(const IntMatrix& m);
std::optional<IntVector> lattice_coordinates(const IntMatrix& m, const IntVector& v);
size_t rank(const IntMatrix& m);
size_t rank_mod_p(const IntMatrix& m, uint64_t p);
// Basis of the lattice spanned by the columns.
IntMatrix column_span_basis(const IntMatrix& m);

// Repeated exact solves M x = v against a fixed matrix.
class LatticeSolver {
 public:
  explicit LatticeSolver(const IntMatrix& m);
  std::optional<IntVector> solve(const IntVector& v) const;
  const SmithForm& snf() const { return snf_; }

 private:
  size_t cols_;
  SmithForm snf_;
};

// Z^n modulo the column span of a relation matrix, with normal-form coordinates:
// one coordinate per torsion factor (reduced mod d_i) followed by the free ones.
class Quotient {
 public:
  Quotient() = default;
  explicit Quotient(const IntMatrix& relations);

  const AbGroup& group() const { return group_; }
  size_t ambient_rank() const { return n_; }
  IntVector coordinates(const IntVector& x) const;
  bool is_zero(const IntVector& x) const;
  // A representative in Z^n of the element with the given coordinates.
  IntVector element(const IntVector& coords) const;
  std::vector<IntVector> generators() const;
  // Moduli per coordinate, 0 for free coordinates.
  std::vector<Integer> moduli() const;

 private:
  size_t n_ = 0;
  AbGroup group_;
  SmithForm snf_;
  std::vector<size_t> torsion_pos_;
  size_t free_start_ = 0;
};

// { x in Z^n : map * x in colspan(tgt) } / colspan(src), with coordinates.
// Models the kernel of the map induced between the quotients by src and tgt.
class KernelGroup {
 public:
  KernelGroup(const IntMatrix& src_relations, const IntMatrix& map, const IntMatrix& tgt_relations);
  const AbGroup& group() const { return quotient_.group(); }
  const IntMatrix& lattice_basis() const { return basis_; }
  std::vector<IntVector> generators() const;
  IntVector coordinates(const IntVector& x) const;

 private:
  IntMatrix basis_;
  std::unique_ptr<LatticeSolver> solver_;
  Quotient quotient_;
};

// Canonical invariant factors of an arbitrary list; zeros count as free summands.
std::vector<Integer> canonical_factors(const std::vector<Integer>& factors, size_t* free_rank = nullptr);

void write_matrix_market(std::ostream& os, const IntMatrix& m);
IntMatrix read_matrix_market(std::istream& is);

}  // namespace bf
