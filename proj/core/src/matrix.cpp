#include "mldforge/matrix.hpp"

#include <sstream>

#include "mldforge/errors.hpp"

namespace mldforge {

Matrix::Matrix(const std::vector<std::vector<CycloScalar>>& rows) {
  rows_ = rows.size();
  cols_ = rows.empty() ? 0 : rows.front().size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::InvalidInput, "ragged matrix");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = CycloScalar(1);
  return m;
}

Matrix Matrix::diagonal(const Vector& entries) {
  Matrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns, std::size_t rows) {
  Matrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  return m;
}

bool Matrix::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r != c && !(*this)(r, c).is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_ || !is_diagonal()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    if (!(*this)(i, i).is_one()) return false;
  return true;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw Error(ErrorKind::InternalError, "matrix shape mismatch");
  Matrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const CycloScalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const CycloScalar& b = o(k, j);
        if (!b.is_zero()) r(i, j) += a * b;
      }
    }
  return r;
}

Vector Matrix::operator*(const Vector& v) const {
  if (cols_ != v.size()) throw Error(ErrorKind::InternalError, "matrix/vector shape mismatch");
  Vector r(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      if (!(*this)(i, k).is_zero() && !v[k].is_zero()) r[i] += (*this)(i, k) * v[k];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

Matrix Matrix::scaled(const CycloScalar& s) const {
  Matrix r = *this;
  for (auto& x : r.data_) x *= s;
  return r;
}

Matrix Matrix::transposed() const {
  Matrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

int compare(const Matrix& a, const Matrix& b) {
  for (std::size_t i = 0; i < a.data_.size() && i < b.data_.size(); ++i) {
    int c = compare(a.data_[i], b.data_[i]);
    if (c) return c;
  }
  return a.data_.size() < b.data_.size() ? -1 : (a.data_.size() > b.data_.size() ? 1 : 0);
}

std::vector<std::size_t> row_reduce(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    CycloScalar inv = m(row, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j)
      if (!m(row, j).is_zero()) m(row, j) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      CycloScalar f = m(r, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (!m(row, j).is_zero()) m(r, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t Matrix::rank() const {
  Matrix copy = *this;
  return row_reduce(copy).size();
}

std::vector<Vector> Matrix::kernel() const {
  Matrix copy = *this;
  auto pivots = row_reduce(copy);
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols_);
    v[free] = CycloScalar(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -copy(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw Error(ErrorKind::InternalError, "inverse of non-square matrix");
  Matrix aug(rows_, 2 * cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
    aug(i, cols_ + i) = CycloScalar(1);
  }
  auto pivots = row_reduce(aug);
  if (pivots.size() < rows_ || pivots.back() >= cols_)
    throw Error(ErrorKind::DivisionByZero, "singular matrix");
  Matrix inv(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) inv(i, j) = aug(i, cols_ + j);
  return inv;
}

unsigned Matrix::field_order() const {
  unsigned m = 1;
  for (const auto& x : data_)
    if (!x.is_rational()) m = lcm_order(m, x.order());
  return m;
}

Matrix Matrix::embed(unsigned order) const {
  Matrix r = *this;
  for (auto& x : r.data_)
    if (!x.is_rational()) x = x.embed(order);
  return r;
}

std::string Matrix::key(unsigned display_order) const {
  std::string k;
  for (const auto& x : data_) {
    k += x.str(x.is_rational() ? 0 : display_order);
    k += '|';
  }
  return k;
}

std::string Matrix::str(unsigned display_order) const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ", ";
      const auto& x = (*this)(i, j);
      os << x.str(x.is_rational() ? 0 : (display_order ? display_order : x.order()));
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace mldforge
