#include <cornerscat/exact/elimination.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace cornerscat::exact;

namespace {

// Independent determinant: Laplace expansion along the first row.
BigRational cofactor_det(const QMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return BigRational(1);
  if (n == 1) return m(0, 0);
  BigRational acc;
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c).is_zero()) continue;
    QMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, jj = 0; j < n; ++j)
        if (j != c) minor(i - 1, jj++) = m(i, j);
    BigRational term = m(0, c) * cofactor_det(minor);
    if (c % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

QMatrix hilbert(std::size_t n) {
  QMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = BigRational(1, static_cast<long>(i + j + 1));
  return h;
}

QMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int zero_percent = 20) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
  std::uniform_int_distribution<int> pct(0, 99);
  QMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (pct(rng) >= zero_percent) m(i, j) = BigRational(num(rng), den(rng));
  return m;
}

// Low rank by construction: (rows x k) * (k x cols).
QMatrix random_low_rank(std::mt19937& rng, std::size_t rows, std::size_t cols, std::size_t k) {
  return random_matrix(rng, rows, k, 0) * random_matrix(rng, k, cols, 0);
}

}  // namespace

TEST(BigRational, CanonicalForm) {
  BigRational x(6, -4);
  EXPECT_EQ(x.numerator(), -3);
  EXPECT_EQ(x.denominator(), 2);
  EXPECT_EQ(BigRational::parse("10/-4"), BigRational(-5, 2));
  EXPECT_EQ((BigRational(1, 3) + BigRational(1, 6)).to_string(), "1/2");
  EXPECT_THROW(BigRational(1, 0), std::domain_error);
  EXPECT_THROW(BigRational(1) / BigRational(0), std::domain_error);
  EXPECT_THROW(BigRational::parse("x/2"), std::invalid_argument);
  EXPECT_LT(BigRational(-1, 2), BigRational(1, 3));
}

TEST(BigRational, StaysCanonicalUnderArithmetic) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 40);
  for (int t = 0; t < 500; ++t) {
    BigRational a(num(rng), den(rng)), b(num(rng), den(rng));
    for (const BigRational& r : {a + b, a - b, a * b}) {
      EXPECT_GT(r.denominator(), 0);
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), r.numerator().get_mpz_t(), r.denominator().get_mpz_t());
      EXPECT_EQ(g, r.is_zero() ? r.denominator() : mpz_class(1));
    }
  }
}

TEST(Rref, Identity) {
  auto r = rref(QMatrix::identity(3));
  EXPECT_EQ(r.rank, 3u);
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(r.reduced, QMatrix::identity(3));
}

TEST(Rref, ProportionalRows) {
  QMatrix m{{1, 2}, {2, 4}};
  auto r = rref(m);
  EXPECT_EQ(r.rank, 1u);
  EXPECT_EQ(r.pivots, std::vector<std::size_t>{0});
  EXPECT_EQ(r.reduced, (QMatrix{{1, 2}, {0, 0}}));
}

TEST(Rref, EmptyMatrix) {
  EXPECT_EQ(rref(QMatrix()).rank, 0u);
  EXPECT_EQ(rref(QMatrix(0, 4)).rank, 0u);
  EXPECT_EQ(nullspace_basis(QMatrix(0, 3)).size(), 3u);
}

TEST(Rref, ReducedFormShape) {
  std::mt19937 rng(3);
  for (int t = 0; t < 30; ++t) {
    auto r = rref(random_low_rank(rng, 5, 7, 3));
    EXPECT_EQ(r.rank, 3u);
    for (std::size_t i = 0; i < r.rank; ++i) {
      const std::size_t p = r.pivots[i];
      EXPECT_EQ(r.reduced(i, p), BigRational(1));
      for (std::size_t k = 0; k < r.reduced.rows(); ++k)
        if (k != i) {
          EXPECT_TRUE(r.reduced(k, p).is_zero());
        }
      for (std::size_t c = 0; c < p; ++c) EXPECT_TRUE(r.reduced(i, c).is_zero());
      if (i > 0) {
        EXPECT_GT(p, r.pivots[i - 1]);
      }
    }
    for (std::size_t i = r.rank; i < r.reduced.rows(); ++i)
      for (std::size_t c = 0; c < r.reduced.cols(); ++c) EXPECT_TRUE(r.reduced(i, c).is_zero());
  }
}

TEST(Hilbert, OracleValue) {
  const auto h = hilbert(5);
  const BigRational expected(1L, 266716800000L);
  EXPECT_EQ(cofactor_det(h), expected);
  EXPECT_EQ(determinant(h), expected);
  EXPECT_EQ(rank(h), 5u);
}

TEST(Nullspace, Examples) {
  EXPECT_TRUE(nullspace_basis(QMatrix::identity(2)).empty());
  auto basis = nullspace_basis(QMatrix{{1, 2}, {2, 4}});
  ASSERT_EQ(basis.size(), 1u);
  EXPECT_EQ(basis[0][0] * BigRational(1), BigRational(-2) * basis[0][1]);
  EXPECT_FALSE(basis[0][1].is_zero());
}

TEST(Determinant, Examples) {
  EXPECT_EQ(determinant(QMatrix::identity(4)), BigRational(1));
  EXPECT_EQ(determinant(QMatrix{{0, 1}, {1, 0}}), BigRational(-1));
  EXPECT_EQ(determinant(QMatrix{{1, 2}, {2, 4}}), BigRational(0));
  EXPECT_THROW(determinant(QMatrix(2, 3)), NonSquare);
}

TEST(Properties, NullspaceVectorsAreAnnihilated) {
  std::mt19937 rng(17);
  for (int t = 0; t < 60; ++t) {
    const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 7;
    const QMatrix m = t % 2 ? random_matrix(rng, rows, cols, 40)
                            : random_low_rank(rng, rows, cols, 1 + rng() % std::min(rows, cols));
    const auto red = rref(m);
    const auto basis = nullspace_basis(red, cols);
    EXPECT_EQ(red.rank + basis.size(), cols);
    for (const auto& v : basis) EXPECT_TRUE(is_zero_vector(m * v));
    // Basis vectors are independent: stacking them gives full rank.
    QMatrix stack(0, cols);
    for (const auto& v : basis) stack.append_row(v);
    if (!basis.empty()) {
      EXPECT_EQ(rank(stack), basis.size());
    }
  }
}

TEST(Properties, DeterminantNonzeroIffFullRank) {
  std::mt19937 rng(23);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + rng() % 5;
    const QMatrix m = t % 3 == 0 ? random_low_rank(rng, n, n, std::max<std::size_t>(1, n - 1))
                                 : random_matrix(rng, n, n, 35);
    const BigRational d = determinant(m);
    EXPECT_EQ(d, cofactor_det(m));
    EXPECT_EQ(!d.is_zero(), rank(m) == n);
  }
}

TEST(Properties, DeterminantIsMultiplicative) {
  std::mt19937 rng(29);
  for (int t = 0; t < 40; ++t) {
    const QMatrix a = random_matrix(rng, 4, 4, 10), b = random_matrix(rng, 4, 4, 10);
    EXPECT_EQ(determinant(a * b), determinant(a) * determinant(b));
  }
}
