#pragma once

// Exact elimination on QMatrix: reduced row-echelon form, rank, nullspace
// and determinant. Nothing here rounds.

#include <cornerscat/exact/qmatrix.hpp>

#include <stdexcept>
#include <vector>

namespace cornerscat::exact {

struct NonSquare : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RrefResult {
  QMatrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination. The pivot for each column is the first nonzero
/// entry at or below the current pivot row; row operations only touch the
/// nonzero entries of the pivot row, so sparse inputs stay cheap.
inline RrefResult rref(QMatrix m) {
  RrefResult out;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  std::vector<std::size_t> support;
  mpq_class factor;
  mpq_class scratch;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    m.swap_rows(r, p);

    const mpq_class inv = 1 / m(r, c).raw();
    support.clear();
    for (std::size_t j = c; j < cols; ++j) {
      if (!m(r, j).is_zero()) {
        m(r, j).raw() *= inv;
        support.push_back(j);
      }
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      factor = m(i, c).raw();
      for (std::size_t j : support) {
        scratch = factor * m(r, j).raw();
        m(i, j).raw() -= scratch;
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const QMatrix& m) { return rref(m).rank; }

/// Basis of ker(m) read off the reduced form: one vector per free column.
inline std::vector<QVector> nullspace_basis(const RrefResult& red, std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (auto p : red.pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVector v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < red.pivots.size(); ++i) {
      const auto& e = red.reduced(i, f);
      if (!e.is_zero()) v[red.pivots[i]] = -e;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::vector<QVector> nullspace_basis(const QMatrix& m) { return nullspace_basis(rref(m), m.cols()); }

/// Fraction-free (Bareiss) determinant. Each row is first scaled to integers
/// by the lcm of its denominators; the scaling is divided out at the end.
inline BigRational determinant(const QMatrix& m) {
  if (m.rows() != m.cols()) throw NonSquare("determinant: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return BigRational(1);

  std::vector<mpz_class> a(n * n);
  mpz_class scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).raw().get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j).raw().get_num() * (l / m(i, j).raw().get_den());
    scale *= l;
  }

  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p * n + k] == 0) ++p;
    if (p == n) return BigRational(0);
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
        mpz_divexact(a[i * n + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * n + k] = 0;
    }
    prev = a[k * n + k];
  }
  mpz_class det = a[n * n - 1];
  if (sign < 0) det = -det;
  return BigRational(det, scale);
}

}  // namespace cornerscat::exact
