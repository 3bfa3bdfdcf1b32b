#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace cubecalc {

// Exact scalar used for every matrix entry. Integer matrices are rationals
// with denominator one.
using Scalar = mpq_class;

std::string format_scalar(const Scalar& x);
// Accepts "p", "-p" or "p/q" (q != 0). Throws InputError otherwise.
Scalar parse_scalar(const std::string& text);

// Immutable-by-convention sparse matrix in row-major form. Rows keep their
// entries sorted by column and never store zeros.
class Matrix {
 public:
  struct Entry {
    std::size_t col;
    Scalar value;
  };
  using Row = std::vector<Entry>;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);
  static Matrix from_dense(const std::vector<std::vector<Scalar>>& dense,
                           std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;
  bool is_zero() const;
  bool is_integral() const;

  const Row& row(std::size_t i) const { return data_[i]; }
  Scalar at(std::size_t i, std::size_t j) const;

  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix operator-() const;
  Matrix scaled(const Scalar& c) const;
  Matrix transpose() const;

  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;
  std::vector<std::vector<Scalar>> to_dense() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  friend class MatrixBuilder;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Row> data_;
};

// Collects (row, col, value) contributions; duplicates are summed and zeros
// dropped on build().
class MatrixBuilder {
 public:
  MatrixBuilder(std::size_t rows, std::size_t cols);

  void add(std::size_t row, std::size_t col, const Scalar& value);
  // Adds `scale * block` with its top-left corner at (row0, col0).
  void add_block(std::size_t row0, std::size_t col0, const Matrix& block,
                 const Scalar& scale = 1);

  Matrix build() &&;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::vector<Matrix::Entry>> pending_;
};

Matrix kronecker(const Matrix& a, const Matrix& b);

}  // namespace cubecalc
