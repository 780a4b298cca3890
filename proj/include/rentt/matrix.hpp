#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rentt {

/// Dense row-major matrix of doubles. Small and deliberately boring;
/// everything in this library is a chain of modest dense products.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<double>& data() const { return data_; }

  bool operator==(const Matrix&) const = default;

  Matrix operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const double a = (*this)(i, k);
        if (a == 0.0) continue;
        const double* rrow = &rhs.data_[k * rhs.cols_];
        double* orow = &out.data_[i * rhs.cols_];
        for (std::size_t j = 0; j < rhs.cols_; ++j) orow[j] += a * rrow[j];
      }
    }
    return out;
  }

  std::vector<double> operator*(const std::vector<double>& x) const {
    if (cols_ != x.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<double> out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = row_dot(i, x);
    return out;
  }

  double row_dot(std::size_t r, const std::vector<double>& x) const {
    const double* row = &data_[r * cols_];
    double acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * x[j];
    return acc;
  }

  /// Rows [r0, r0+n) as a new matrix.
  Matrix row_block(std::size_t r0, std::size_t n) const {
    Matrix out(n, cols_);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(r0 + i, j);
    return out;
  }

  /// Stacks `this` on top of `below` (column counts must match).
  Matrix vstack(const Matrix& below) const {
    if (cols_ != below.cols_ && rows_ != 0 && below.rows_ != 0)
      throw std::invalid_argument("vstack column mismatch");
    Matrix out(rows_ + below.rows_, rows_ ? cols_ : below.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    for (std::size_t i = 0; i < below.rows_; ++i)
      for (std::size_t j = 0; j < below.cols_; ++j) out(rows_ + i, j) = below(i, j);
    return out;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

}  // namespace rentt
