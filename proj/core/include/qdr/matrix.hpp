#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qdr/scalar.hpp"

namespace qdr {

struct dimension_mismatch : std::runtime_error {
  dimension_mismatch() : std::runtime_error("matrix dimensions do not match") {}
};

// Dense matrix over one fixed field, row-major.
class Mat {
 public:
  Mat() : field_(Field::rationals()), rows_(0), cols_(0) {}
  Mat(Field f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar(f)) {}

  static Mat identity(Field f, std::size_t n);
  static Mat from_rows(Field f, const std::vector<std::vector<long>>& rows);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(const Scalar& c) const;
  Mat transpose() const;

  Mat col(std::size_t j) const;
  Mat cols_slice(const std::vector<std::size_t>& idx) const;
  static Mat hstack(const Mat& a, const Mat& b);
  static Mat vstack(const Mat& a, const Mat& b);

  bool is_zero() const;
  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }

  // Square matrix inverse; nullopt when singular.
  std::optional<Mat> inverse() const;

  std::string str() const;

 private:
  void check_binop(const Mat& o) const {
    if (field_ != o.field_) throw field_mismatch();
  }

  Field field_;
  std::size_t rows_, cols_;
  std::vector<Scalar> data_;
};

struct RrefResult {
  Mat reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

// Reduced row echelon form with leading ones.
RrefResult rref(const Mat& m);

std::size_t rank(const Mat& m);

// Columns form a basis of the null space {x : m x = 0}; cols() == m.cols() - rank.
Mat kernel_basis(const Mat& m);

struct AffineSolution {
  Mat particular;   // one solution of a x = b
  Mat homogeneous;  // kernel_basis(a)
};

// Solves a x = b for a single right-hand column; nullopt when inconsistent.
std::optional<AffineSolution> solve_affine(const Mat& a, const Mat& b);

// Solves a X = B column by column; nullopt when any column is inconsistent.
std::optional<Mat> solve_matrix(const Mat& a, const Mat& b);

// Incrementally maintained row echelon basis of a subspace of k^n.
// Rows are fully reduced against each other; pivot choice is largest index
// when `pivot_high` is set (used for path-algebra leading terms), lowest
// otherwise. The resulting basis is canonical for a fixed insertion policy.
class RowSpace {
 public:
  using SparseRow = std::vector<std::pair<std::size_t, Scalar>>;  // sorted by index

  RowSpace(Field f, std::size_t ambient, bool pivot_high = false)
      : field_(f), ambient_(ambient), pivot_high_(pivot_high) {}

  Field field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }

  // Reduces `row` against the basis; inserts the residual when nonzero.
  // Returns true when the dimension grew.
  bool insert(SparseRow row);
  bool insert_dense(const std::vector<Scalar>& row);

  // Residual of `row` after reduction (empty when contained).
  SparseRow reduce(SparseRow row) const;
  // Eliminates every pivot coordinate, not only leading ones; the residual
  // is supported on non-pivot coordinates and represents the same class
  // modulo the row space.
  SparseRow reduce_all(SparseRow row) const;
  bool contains(const SparseRow& row) const { return reduce(row).empty(); }
  bool contains_dense(const std::vector<Scalar>& row) const;

  bool has_pivot(std::size_t col) const { return rows_.count(col) > 0; }
  const std::map<std::size_t, SparseRow>& rows() const { return rows_; }

  // Dense dim() x ambient() basis matrix, rows ordered by pivot.
  Mat basis_matrix() const;

  static SparseRow to_sparse(const std::vector<Scalar>& dense);

 private:
  std::size_t pivot_of(const SparseRow& row) const {
    return pivot_high_ ? row.back().first : row.front().first;
  }

  Field field_;
  std::size_t ambient_;
  bool pivot_high_;
  std::map<std::size_t, SparseRow> rows_;  // pivot -> normalized row
};

}  // namespace qdr
