#include "qdr/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace qdr {

Mat Mat::identity(Field f, std::size_t n) {
  Mat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
  return m;
}

Mat Mat::from_rows(Field f, const std::vector<std::vector<long>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows[0].size();
  Mat m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw dimension_mismatch();
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Scalar::from_int(f, rows[i][j]);
  }
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  check_binop(o);
  if (cols_ != o.rows_) throw dimension_mismatch();
  Mat r(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& x = at(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Scalar& y = o.at(k, j);
        if (!y.is_zero()) r.at(i, j) += x * y;
      }
    }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  check_binop(o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw dimension_mismatch();
  Mat r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  check_binop(o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw dimension_mismatch();
  Mat r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

Mat Mat::scaled(const Scalar& c) const {
  Mat r = *this;
  for (auto& x : r.data_) x *= c;
  return r;
}

Mat Mat::transpose() const {
  Mat r(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Mat Mat::col(std::size_t j) const {
  Mat r(field_, rows_, 1);
  for (std::size_t i = 0; i < rows_; ++i) r.at(i, 0) = at(i, j);
  return r;
}

Mat Mat::cols_slice(const std::vector<std::size_t>& idx) const {
  Mat r(field_, rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) r.at(i, j) = at(i, idx[j]);
  return r;
}

Mat Mat::hstack(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw dimension_mismatch();
  Mat r(a.field(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
  }
  return r;
}

Mat Mat::vstack(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) throw dimension_mismatch();
  Mat r(a.field(), a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r.at(a.rows() + i, j) = b.at(i, j);
  return r;
}

bool Mat::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool Mat::operator==(const Mat& o) const {
  return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::optional<Mat> Mat::inverse() const {
  if (rows_ != cols_) throw dimension_mismatch();
  RrefResult r = rref(hstack(*this, identity(field_, rows_)));
  if (r.rank != rows_ || (rows_ > 0 && r.pivot_cols.back() >= rows_)) return std::nullopt;
  std::vector<std::size_t> right(rows_);
  for (std::size_t j = 0; j < rows_; ++j) right[j] = rows_ + j;
  return r.reduced.cols_slice(right);
}

std::string Mat::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).str();
  }
  os << "]";
  return os.str();
}

RrefResult rref(const Mat& m) {
  RrefResult res{m, 0, {}};
  Mat& a = res.reduced;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a.at(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(p, j), a.at(r, j));
    Scalar inv = a.at(r, c).inverse();
    for (std::size_t j = c; j < a.cols(); ++j) a.at(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a.at(i, c).is_zero()) continue;
      Scalar f = a.at(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a.at(i, j) -= f * a.at(r, j);
    }
    res.pivot_cols.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

std::size_t rank(const Mat& m) { return rref(m).rank; }

Mat kernel_basis(const Mat& m) {
  RrefResult r = rref(m);
  std::vector<std::size_t> free_cols;
  {
    std::size_t pi = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (pi < r.pivot_cols.size() && r.pivot_cols[pi] == c)
        ++pi;
      else
        free_cols.push_back(c);
    }
  }
  Mat k(m.field(), m.cols(), free_cols.size());
  for (std::size_t fj = 0; fj < free_cols.size(); ++fj) {
    std::size_t c = free_cols[fj];
    k.at(c, fj) = Scalar::one(m.field());
    for (std::size_t i = 0; i < r.rank; ++i)
      k.at(r.pivot_cols[i], fj) = -r.reduced.at(i, c);
  }
  return k;
}

std::optional<AffineSolution> solve_affine(const Mat& a, const Mat& b) {
  if (b.cols() != 1 || a.rows() != b.rows()) throw dimension_mismatch();
  RrefResult r = rref(Mat::hstack(a, b));
  if (!r.pivot_cols.empty() && r.pivot_cols.back() == a.cols()) return std::nullopt;
  Mat x(a.field(), a.cols(), 1);
  for (std::size_t i = 0; i < r.rank; ++i) x.at(r.pivot_cols[i], 0) = r.reduced.at(i, a.cols());
  return AffineSolution{x, kernel_basis(a)};
}

std::optional<Mat> solve_matrix(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw dimension_mismatch();
  RrefResult r = rref(Mat::hstack(a, b));
  for (std::size_t p : r.pivot_cols)
    if (p >= a.cols()) return std::nullopt;
  Mat x(a.field(), a.cols(), b.cols());
  for (std::size_t i = 0; i < r.rank; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      x.at(r.pivot_cols[i], j) = r.reduced.at(i, a.cols() + j);
  return x;
}

bool RowSpace::insert(SparseRow row) {
  row = reduce(std::move(row));
  if (row.empty()) return false;
  std::size_t pv = pivot_of(row);
  Scalar inv = (pivot_high_ ? row.back().second : row.front().second).inverse();
  for (auto& [i, x] : row) x *= inv;
  // Full reduction: eliminate the new pivot from the stored rows.
  for (auto& [opv, orow] : rows_) {
    Scalar coeff(field_);
    for (auto& [i, x] : orow)
      if (i == pv) {
        coeff = x;
        break;
      }
    if (coeff.is_zero()) continue;
    SparseRow out;
    out.reserve(orow.size() + row.size());
    auto it = orow.begin();
    auto jt = row.begin();
    while (it != orow.end() || jt != row.end()) {
      if (jt == row.end() || (it != orow.end() && it->first < jt->first)) {
        out.push_back(*it++);
      } else if (it == orow.end() || jt->first < it->first) {
        out.emplace_back(jt->first, -(coeff * jt->second));
        ++jt;
      } else {
        Scalar v = it->second - coeff * jt->second;
        if (!v.is_zero()) out.emplace_back(it->first, v);
        ++it;
        ++jt;
      }
    }
    orow = std::move(out);
  }
  rows_.emplace(pv, std::move(row));
  return true;
}

bool RowSpace::insert_dense(const std::vector<Scalar>& row) { return insert(to_sparse(row)); }

RowSpace::SparseRow RowSpace::reduce(SparseRow row) const {
  while (!row.empty()) {
    std::size_t pv = pivot_of(row);
    auto it = rows_.find(pv);
    if (it == rows_.end()) return row;
    Scalar coeff = pivot_high_ ? row.back().second : row.front().second;
    const SparseRow& basis = it->second;
    SparseRow out;
    out.reserve(row.size() + basis.size());
    auto a = row.begin();
    auto b = basis.begin();
    while (a != row.end() || b != basis.end()) {
      if (b == basis.end() || (a != row.end() && a->first < b->first)) {
        out.push_back(*a++);
      } else if (a == row.end() || b->first < a->first) {
        out.emplace_back(b->first, -(coeff * b->second));
        ++b;
      } else {
        Scalar v = a->second - coeff * b->second;
        if (!v.is_zero()) out.emplace_back(a->first, v);
        ++a;
        ++b;
      }
    }
    row = std::move(out);
  }
  return row;
}

RowSpace::SparseRow RowSpace::reduce_all(SparseRow row) const {
  bool again = true;
  while (again) {
    again = false;
    for (const auto& [i, x] : row) {
      auto it = rows_.find(i);
      if (it == rows_.end()) continue;
      Scalar coeff = x;
      const SparseRow& basis = it->second;
      SparseRow out;
      out.reserve(row.size() + basis.size());
      auto a = row.begin();
      auto b = basis.begin();
      while (a != row.end() || b != basis.end()) {
        if (b == basis.end() || (a != row.end() && a->first < b->first)) {
          out.push_back(*a++);
        } else if (a == row.end() || b->first < a->first) {
          out.emplace_back(b->first, -(coeff * b->second));
          ++b;
        } else {
          Scalar v = a->second - coeff * b->second;
          if (!v.is_zero()) out.emplace_back(a->first, v);
          ++a;
          ++b;
        }
      }
      row = std::move(out);
      again = true;
      break;
    }
  }
  return row;
}

bool RowSpace::contains_dense(const std::vector<Scalar>& row) const {
  return contains(to_sparse(row));
}

Mat RowSpace::basis_matrix() const {
  Mat m(field_, rows_.size(), ambient_);
  std::size_t i = 0;
  for (const auto& [pv, row] : rows_) {
    for (const auto& [j, x] : row) m.at(i, j) = x;
    ++i;
  }
  return m;
}

RowSpace::SparseRow RowSpace::to_sparse(const std::vector<Scalar>& dense) {
  SparseRow r;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (!dense[i].is_zero()) r.emplace_back(i, dense[i]);
  return r;
}

}  // namespace qdr
