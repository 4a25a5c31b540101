#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "mldforge/cyclo.hpp"

namespace mldforge {

using Vector = std::vector<CycloScalar>;

// Dense matrix over Q(zeta_m), row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  explicit Matrix(const std::vector<std::vector<CycloScalar>>& rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vector& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  CycloScalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const CycloScalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector column(std::size_t c) const;
  static Matrix from_columns(const std::vector<Vector>& columns, std::size_t rows);

  bool is_diagonal() const;
  bool is_identity() const;

  Matrix operator*(const Matrix& o) const;
  Vector operator*(const Vector& v) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const CycloScalar& s) const;
  Matrix transposed() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

  // Lexicographic comparison of the canonical entries, row-major.
  friend int compare(const Matrix& a, const Matrix& b);

  std::size_t rank() const;
  // Basis of the right kernel {v : A v = 0}, one vector per free column of
  // the reduced row echelon form, in increasing free-column order.
  std::vector<Vector> kernel() const;
  // Throws DivisionByZero when singular.
  Matrix inverse() const;

  // Lowest common cyclotomic order of the entries.
  unsigned field_order() const;
  Matrix embed(unsigned order) const;

  std::string key(unsigned display_order) const;
  std::string str(unsigned display_order = 0) const;
  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) { return os << m.str(); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<CycloScalar> data_;
};

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(Matrix& m);

}  // namespace mldforge
