#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

#include "grpd/scalar.hpp"

namespace grpd {

/// Dense row-major matrix over Q(i). A value type: every operation below
/// returns a fresh matrix and never mutates its operands.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries);
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool is_square() const { return rows_ == cols_; }
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_identity() const;

  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  [[nodiscard]] const std::vector<Scalar>& entries() const { return data_; }

  [[nodiscard]] Matrix column(std::size_t c) const;
  [[nodiscard]] Matrix row(std::size_t r) const;
  /// Rows [r0, r0+nr) x columns [c0, c0+nc).
  [[nodiscard]] Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  [[nodiscard]] Matrix transpose() const;
  [[nodiscard]] Scalar trace() const;

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(const Scalar& s, const Matrix& a);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

/// Kronecker product; rows and columns are indexed (i_a * rows_b + i_b).
Matrix kron(const Matrix& a, const Matrix& b);

Matrix hstack(const std::vector<Matrix>& parts);
Matrix vstack(const std::vector<Matrix>& parts);
Matrix block_diagonal(const std::vector<Matrix>& blocks);

/// Reduced row echelon form together with its pivot columns. The result is
/// canonical; the pivot row choice only affects intermediate sizes.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

Echelon rref(const Matrix& a);

std::size_t rank(const Matrix& a);

/// Basis of the right null space, one column per basis vector
/// (cols(a) x (cols(a) - rank(a))). Each basis vector has a 1 in one free
/// column and 0 in the others.
Matrix kernel_basis(const Matrix& a);

/// Column-reduced echelon basis of the column space (rows(a) x rank(a)).
Matrix column_space_basis(const Matrix& a);

/// Throws SingularMatrixError when `a` is not invertible.
Matrix invert(const Matrix& a);

bool is_invertible(const Matrix& a);

/// Splits the columns of `a` into separate column vectors.
std::vector<Matrix> columns_of(const Matrix& a);

}  // namespace grpd
