#include "grpd/matrix.hpp"

#include <ostream>
#include <sstream>
#include <utility>

#include "grpd/error.hpp"

namespace grpd {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("matrix entry count " + std::to_string(data_.size()) + " != " +
                         std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = 1;
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& s : data_) {
    if (!s.is_zero()) return false;
  }
  return true;
}

bool Matrix::is_identity() const { return is_square() && *this == identity(rows_); }

Matrix Matrix::column(std::size_t c) const { return block(0, c, rows_, 1); }

Matrix Matrix::row(std::size_t r) const { return block(r, 0, 1, cols_); }

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
  Matrix out(nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

Scalar Matrix::trace() const {
  if (!is_square()) throw DimensionError("trace of a non-square matrix");
  Scalar t;
  for (std::size_t k = 0; k < rows_; ++k) t += (*this)(k, k);
  return t;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ",[" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << (*this)(r, c);
    os << "]";
  }
  os << "]";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) { return os << m.to_string(); }

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Scalar& bkj = b(k, j);
        if (bkj.is_zero()) continue;
        out(i, j) += aik * bkj;
      }
    }
  }
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul(a, b); }

Matrix operator*(const Scalar& s, const Matrix& a) {
  std::vector<Scalar> e = a.entries();
  for (auto& x : e) x *= s;
  return {a.rows(), a.cols(), std::move(e)};
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix sum shape mismatch");
  std::vector<Scalar> e = a.entries();
  for (std::size_t k = 0; k < e.size(); ++k) e[k] += b.entries()[k];
  return {a.rows(), a.cols(), std::move(e)};
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix difference shape mismatch");
  std::vector<Scalar> e = a.entries();
  for (std::size_t k = 0; k < e.size(); ++k) e[k] -= b.entries()[k];
  return {a.rows(), a.cols(), std::move(e)};
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar) {
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Scalar& x = a(ar, ac);
      if (x.is_zero()) continue;
      for (std::size_t br = 0; br < b.rows(); ++br) {
        for (std::size_t bc = 0; bc < b.cols(); ++bc) {
          if (b(br, bc).is_zero()) continue;
          out(ar * b.rows() + br, ac * b.cols() + bc) = x * b(br, bc);
        }
      }
    }
  }
  return out;
}

Matrix hstack(const std::vector<Matrix>& parts) {
  if (parts.empty()) return {};
  std::size_t rows = parts.front().rows();
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw DimensionError("hstack row mismatch");
    cols += p.cols();
  }
  Matrix out(rows, cols);
  std::size_t c0 = 0;
  for (const auto& p : parts) {
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < p.cols(); ++c) out(r, c0 + c) = p(r, c);
    }
    c0 += p.cols();
  }
  return out;
}

Matrix vstack(const std::vector<Matrix>& parts) {
  if (parts.empty()) return {};
  std::size_t cols = parts.front().cols();
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw DimensionError("vstack column mismatch");
    rows += p.rows();
  }
  Matrix out(rows, cols);
  std::size_t r0 = 0;
  for (const auto& p : parts) {
    for (std::size_t r = 0; r < p.rows(); ++r) {
      for (std::size_t c = 0; c < cols; ++c) out(r0 + r, c) = p(r, c);
    }
    r0 += p.rows();
  }
  return out;
}

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix out(rows, cols);
  std::size_t r0 = 0;
  std::size_t c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r) {
      for (std::size_t c = 0; c < b.cols(); ++c) out(r0 + r, c0 + c) = b(r, c);
    }
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

Echelon rref(const Matrix& a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::vector<Scalar>> m(rows, std::vector<Scalar>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m[r][c] = a(r, c);
  }

  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t c = 0; c < cols && next < rows; ++c) {
    std::size_t best = rows;
    std::size_t best_size = 0;
    for (std::size_t r = next; r < rows; ++r) {
      if (m[r][c].is_zero()) continue;
      std::size_t size = m[r][c].bit_size();
      if (best == rows || size < best_size) {
        best = r;
        best_size = size;
      }
    }
    if (best == rows) continue;
    std::swap(m[next], m[best]);

    if (!m[next][c].is_one()) {
      Scalar inv = m[next][c].inverse();
      for (std::size_t k = c; k < cols; ++k) {
        if (!m[next][k].is_zero()) m[next][k] *= inv;
      }
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == next || m[r][c].is_zero()) continue;
      Scalar factor = m[r][c];
      for (std::size_t k = c; k < cols; ++k) {
        if (!m[next][k].is_zero()) m[r][k] -= factor * m[next][k];
      }
    }
    pivots.push_back(c);
    ++next;
  }

  Matrix reduced(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) reduced(r, c) = std::move(m[r][c]);
  }
  return {std::move(reduced), std::move(pivots)};
}

std::size_t rank(const Matrix& a) { return rref(a).pivots.size(); }

Matrix kernel_basis(const Matrix& a) {
  const Echelon e = rref(a);
  const std::size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;

  std::vector<Matrix> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Matrix v(n, 1);
    v(f, 0) = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
      const Scalar& x = e.reduced(i, f);
      if (!x.is_zero()) v(e.pivots[i], 0) = -x;
    }
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return Matrix(n, 0);
  return hstack(basis);
}

Matrix column_space_basis(const Matrix& a) {
  const Echelon e = rref(a.transpose());
  return e.reduced.block(0, 0, e.pivots.size(), a.rows()).transpose();
}

Matrix invert(const Matrix& a) {
  if (!a.is_square()) throw DimensionError("invert: matrix is not square");
  const std::size_t n = a.rows();
  const Echelon e = rref(hstack({a, Matrix::identity(n)}));
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) {
    throw SingularMatrixError("invert: matrix is singular");
  }
  return e.reduced.block(0, n, n, n);
}

bool is_invertible(const Matrix& a) { return a.is_square() && rank(a) == a.rows(); }

std::vector<Matrix> columns_of(const Matrix& a) {
  std::vector<Matrix> out;
  out.reserve(a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) out.push_back(a.column(c));
  return out;
}

}  // namespace grpd
