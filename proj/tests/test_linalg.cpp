#include "sketchsdp/linalg.hpp"
#include "sketchsdp/random.hpp"

#include <gtest/gtest.h>

#include <Eigen/SVD>

#include <random>

using namespace sketchsdp;

namespace {

Matrix random_matrix(Rng& rng, Index r, Index c) {
  std::normal_distribution<double> g;
  Matrix m(r, c);
  for (Index i = 0; i < r; ++i) {
    for (Index j = 0; j < c; ++j) m(i, j) = g(rng);
  }
  return m;
}

Matrix random_symmetric(Rng& rng, Index n) {
  const Matrix a = random_matrix(rng, n, n);
  return 0.5 * (a + a.transpose());
}

}  // namespace

TEST(SpectralNorm, Examples) {
  EXPECT_EQ(linalg::spectral_norm(Matrix::Zero(3, 4)), 0.0);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3;
  d(1, 1) = 1;
  EXPECT_NEAR(linalg::spectral_norm(d), 3.0, 1e-12);
  Matrix shift = Matrix::Zero(2, 2);
  shift(0, 1) = 2;
  EXPECT_NEAR(linalg::spectral_norm(shift), 2.0, 1e-12);
  EXPECT_EQ(linalg::spectral_norm_power(Matrix::Zero(70, 5)), 0.0);
}

TEST(SpectralNorm, AgreesWithSvdProperty) {
  Rng rng(17);
  for (Index n : {3, 20, 64, 65, 120, 200}) {
    for (Index c : {Index{1}, Index{7}, n}) {
      const Matrix m = random_matrix(rng, n, c);
      const double exact = Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
      EXPECT_NEAR(linalg::spectral_norm(m), exact, 1e-6 * exact) << n << "x" << c;
      EXPECT_NEAR(linalg::spectral_norm_power(m), exact, 1e-6 * exact) << n << "x" << c;
    }
  }
}

TEST(SymmetricEigen, ReconstructsProperty) {
  Rng rng(5);
  for (Index n : {1, 5, 47, 48, 100, 160}) {
    const Matrix a = random_symmetric(rng, n);
    const auto e = linalg::symmetric_eigen(a);
    const Matrix back = e.vectors * e.values.asDiagonal() * e.vectors.transpose();
    EXPECT_LE((back - a).norm(), 1e-9 * std::max(1.0, a.norm())) << n;
    EXPECT_LE((e.vectors.transpose() * e.vectors - Matrix::Identity(n, n)).norm(), 1e-9) << n;
    for (Index i = 1; i < n; ++i) EXPECT_LE(e.values(i - 1), e.values(i));
  }
}

TEST(SymmetricEigen, RejectsNonFinite) {
  Matrix a = Matrix::Identity(3, 3);
  a(1, 1) = std::numeric_limits<double>::infinity();
  EXPECT_ANY_THROW(linalg::symmetric_eigen(a));
}

TEST(SymmetricEigen, AboveThreshold) {
  Matrix a = Matrix::Zero(3, 3);
  a.diagonal() << -1, 2, 5;
  const auto e = linalg::eigen_above(a, 0.0);
  ASSERT_EQ(e.values.size(), 2);
  EXPECT_NEAR(e.values(0), 2.0, 1e-12);
  EXPECT_NEAR(e.values(1), 5.0, 1e-12);
  EXPECT_EQ(e.vectors.cols(), 2);
}

TEST(ProjectPsd, NearestPsdProperty) {
  Rng rng(23);
  for (Index n : {2, 10, 60, 130}) {
    const Matrix a = random_symmetric(rng, n);
    const Matrix p = linalg::project_psd(a);
    EXPECT_GE(linalg::min_eigenvalue(p), -1e-10 * std::max(1.0, a.norm()));
    // The residual a - p is negative semidefinite and orthogonal to p.
    const Matrix r = a - p;
    EXPECT_LE(Eigen::SelfAdjointEigenSolver<Matrix>(r).eigenvalues().maxCoeff(), 1e-9 * a.norm());
    EXPECT_NEAR((r.cwiseProduct(p)).sum(), 0.0, 1e-8 * a.squaredNorm());
  }
  const Matrix psd = Matrix::Identity(4, 4) * 2.0;
  EXPECT_LE((linalg::project_psd(psd) - psd).norm(), 1e-12);
}

TEST(LapackCheck, IsStable) {
  // Whatever the backend verdict, it is cached and consistent.
  EXPECT_EQ(linalg::lapack_usable(), linalg::lapack_usable());
}
