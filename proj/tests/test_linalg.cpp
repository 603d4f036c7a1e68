#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "vbent/errors.hpp"
#include "vbent/linalg.hpp"

using namespace vbent;

namespace {

using EMat = Eigen::MatrixXcd;

CMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = {g(rng), g(rng)};
  return m;
}

CMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  const CMatrix a = random_matrix(n, n, rng);
  return a + a.adjoint();
}

EMat to_eigen(const CMatrix& m) {
  EMat e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

}  // namespace

TEST(Linalg, HermitianEigMatchesEigen) {
  std::mt19937_64 rng(11);
  for (std::size_t n : {1u, 2u, 4u, 7u, 20u, 35u}) {
    const CMatrix a = random_hermitian(n, rng);
    const Spectrum s = hermitian_eig(a);
    Eigen::SelfAdjointEigenSolver<EMat> ref(to_eigen(a));
    ASSERT_EQ(s.values.size(), n);
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(s.values[k], ref.eigenvalues()(k), 1e-10 * (1 + n));
    for (std::size_t k = 0; k < n; ++k) {
      const CVector v = s.vectors.column(k);
      const CVector av = a * v;
      for (std::size_t i = 0; i < n; ++i) EXPECT_LT(std::abs(av[i] - s.values[k] * v[i]), 1e-9);
      EXPECT_NEAR(norm(v), 1.0, 1e-12);
    }
  }
}

TEST(Linalg, HermitianEigDegenerate) {
  const std::vector<double> d = {1.0, 1.0, 1.0, -2.0};
  const Spectrum s = hermitian_eig(CMatrix::diagonal(d));
  EXPECT_NEAR(s.values[0], -2.0, 1e-14);
  EXPECT_NEAR(s.values[3], 1.0, 1e-14);
}

TEST(Linalg, NonHermitianRejected) {
  CMatrix a(2, 2);
  a(0, 1) = 1.0;
  EXPECT_THROW(hermitian_eig(a), NotHermitian);
}

TEST(Linalg, SingularValuesMatchEigen) {
  std::mt19937_64 rng(5);
  const CMatrix a = random_matrix(9, 4, rng);
  const auto sv = singular_values(a);
  Eigen::JacobiSVD<EMat> ref(to_eigen(a));
  ASSERT_EQ(sv.size(), 4u);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(sv[k], ref.singularValues()(k), 1e-10);
}

TEST(Linalg, RankOfProduct) {
  std::mt19937_64 rng(3);
  const CMatrix a = random_matrix(10, 3, rng) * random_matrix(3, 6, rng);
  EXPECT_EQ(matrix_rank(a), 3u);
  EXPECT_EQ(matrix_rank(CMatrix(4, 4)), 0u);
  EXPECT_EQ(matrix_rank(CMatrix::identity(5)), 5u);
}

TEST(Linalg, LeastSquaresMatchesEigen) {
  std::mt19937_64 rng(8);
  const CMatrix a = random_matrix(12, 5, rng);
  const CMatrix bm = random_matrix(12, 1, rng);
  const CVector b = bm.column(0);
  const CVector x = least_squares(a, b);
  Eigen::VectorXcd eb(12);
  for (int i = 0; i < 12; ++i) eb(i) = b[i];
  const Eigen::VectorXcd ref = to_eigen(a).colPivHouseholderQr().solve(eb);
  for (int k = 0; k < 5; ++k) EXPECT_LT(std::abs(x[k] - ref(k)), 1e-10);
}

TEST(Linalg, LeastSquaresRankDeficientThrows) {
  CMatrix a(3, 2);
  a(0, 0) = a(0, 1) = 1.0;
  a(1, 0) = a(1, 1) = 2.0;
  const CVector b = {1.0, 2.0, 0.0};
  EXPECT_THROW(least_squares(a, b), Error);
}

TEST(Linalg, OrthonormalSet) {
  OrthonormalSet s(3);
  EXPECT_TRUE(s.try_add(CVector{1.0, 1.0, 0.0}));
  EXPECT_TRUE(s.try_add(CVector{0.0, 1.0, 0.0}));
  EXPECT_FALSE(s.try_add(CVector{2.0, -3.0, 0.0}));
  EXPECT_EQ(s.size(), 2u);
  const CVector p = s.project(CVector{1.0, 2.0, 3.0});
  EXPECT_NEAR(std::abs(p[0] - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(p[1] - 2.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(p[2]), 0.0, 1e-14);
  EXPECT_NEAR(norm(s.residual(CVector{1.0, 2.0, 3.0})), 3.0, 1e-14);
}

TEST(Linalg, KronEntries) {
  std::mt19937_64 rng(1);
  const CMatrix a = random_matrix(2, 3, rng), b = random_matrix(3, 2, rng);
  const CMatrix k = kron(a, b);
  ASSERT_EQ(k.rows(), 6u);
  ASSERT_EQ(k.cols(), 6u);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(k(i, j), a(i / 3, j / 2) * b(i % 3, j % 2));
}

TEST(Linalg, CholeskyMatchesEigen) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  const std::size_t n = 6;
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = g(rng);
  const Eigen::MatrixXd spd = m * m.transpose() + Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd r(n);
  for (std::size_t i = 0; i < n; ++i) r(i) = g(rng);
  std::vector<double> s(n * n), rv(n);
  for (std::size_t i = 0; i < n; ++i) {
    rv[i] = r(i);
    for (std::size_t j = 0; j < n; ++j) s[i * n + j] = spd(i, j);
  }
  ASSERT_TRUE(cholesky_solve(s, rv, n));
  const Eigen::VectorXd ref = spd.llt().solve(r);
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(rv[i], ref(i), 1e-10);

  std::vector<double> bad = {1.0, 2.0, 2.0, 1.0}, rb = {1.0, 1.0};
  EXPECT_FALSE(cholesky_solve(bad, rb, 2));
}

TEST(Linalg, MatrixArithmetic) {
  std::mt19937_64 rng(9);
  const CMatrix a = random_matrix(3, 4, rng), b = random_matrix(4, 2, rng);
  const EMat ref = to_eigen(a) * to_eigen(b);
  const CMatrix p = a * b;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_LT(std::abs(p(i, j) - ref(i, j)), 1e-12);
  EXPECT_LT((a.adjoint().adjoint() - a).max_abs(), 1e-15);
  EXPECT_NEAR(CMatrix::identity(4).trace().real(), 4.0, 0.0);
}
