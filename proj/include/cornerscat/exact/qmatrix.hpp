#pragma once

#include <cornerscat/exact/big_rational.hpp>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace cornerscat::exact {

using QVector = std::vector<BigRational>;

/// Dense row-major matrix of exact rationals.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  QMatrix(std::initializer_list<std::initializer_list<BigRational>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("QMatrix: ragged initializer");
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }

  static QMatrix identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool empty() const { return rows_ == 0 || cols_ == 0; }

  BigRational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const BigRational& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  [[nodiscard]] const std::vector<BigRational>& entries() const { return entries_; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  /// Appends a row; the matrix must be empty or have matching width.
  void append_row(const QVector& row) {
    if (rows_ == 0 && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) throw std::invalid_argument("QMatrix: row width mismatch");
    entries_.insert(entries_.end(), row.begin(), row.end());
    ++rows_;
  }

  /// [this | column]
  [[nodiscard]] QMatrix augmented(const QVector& column) const {
    if (column.size() != rows_) throw std::invalid_argument("QMatrix: augment height mismatch");
    QMatrix out(rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
      out(i, cols_) = column[i];
    }
    return out;
  }

  [[nodiscard]] QVector row(std::size_t i) const {
    return QVector(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigRational> entries_;
};

inline QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("QMatrix: product shape mismatch");
  QMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j).raw() += a(i, k).raw() * b(k, j).raw();
    }
  return c;
}

inline QVector operator*(const QMatrix& a, const QVector& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("QMatrix: matrix-vector shape mismatch");
  QVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero() && !x[j].is_zero()) y[i].raw() += a(i, j).raw() * x[j].raw();
  return y;
}

inline bool is_zero_vector(const QVector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace cornerscat::exact
