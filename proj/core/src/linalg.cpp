#include "sketchsdp/linalg.hpp"

#include "sketchsdp/error.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace sketchsdp::linalg {
namespace {

// Below this size Eigen's solver beats the LAPACK call overhead.
constexpr Index kLapackMin = 48;

bool lapack_dsyevd(Matrix& a, Vector& w) {
  const auto n = static_cast<lapack_int>(a.rows());
  w.resize(a.rows());
  return LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, w.data()) == 0;
}

// Decomposes a fixed matrix with known spectrum and checks the result.
bool lapack_self_check() {
  const Index n = 160;
  Matrix q = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) q(i, j) = std::sin(0.37 * static_cast<double>(i + 1) * static_cast<double>(j + 2));
  }
  const Eigen::HouseholderQR<Matrix> qr(q);
  const Matrix basis = qr.householderQ();
  Vector spectrum(n);
  for (Index i = 0; i < n; ++i) spectrum(i) = static_cast<double>(i) - 0.5 * static_cast<double>(n);
  Matrix a = basis * spectrum.asDiagonal() * basis.transpose();
  a = (0.5 * (a + a.transpose())).eval();
  Matrix v = a;
  Vector w;
  if (!lapack_dsyevd(v, w)) return false;
  const double scale = a.norm();
  const double recon = (v * w.asDiagonal() * v.transpose() - a).norm();
  const double orth = (v.transpose() * v - Matrix::Identity(n, n)).norm();
  return recon <= 1e-9 * scale && orth <= 1e-9 && (w - spectrum).cwiseAbs().maxCoeff() <= 1e-9 * scale;
}

}  // namespace

bool lapack_usable() {
  static const bool ok = lapack_self_check();
  return ok;
}

SymmetricEigen symmetric_eigen(const Matrix& m) {
  const Index n = m.rows();
  if (!m.allFinite()) throw Error("eigendecomposition of non-finite matrix");
  if (n >= kLapackMin && lapack_usable()) {
    Matrix a = m;
    Vector w;
    if (!lapack_dsyevd(a, w)) throw Error("eigendecomposition failed");
    return {std::move(w), std::move(a)};
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

SymmetricEigen eigen_above(const Matrix& m, double lower) {
  auto full = symmetric_eigen(m);
  const Index n = full.values.size();
  Index first = 0;
  while (first < n && !(full.values(first) > lower)) ++first;
  return {full.values.tail(n - first), full.vectors.rightCols(n - first)};
}

Matrix project_psd(const Matrix& m) {
  const auto pos = eigen_above(m, 0.0);
  if (pos.values.size() == 0) return Matrix::Zero(m.rows(), m.cols());
  Matrix scaled = pos.vectors * pos.values.asDiagonal();
  Matrix out = scaled * pos.vectors.transpose();
  return 0.5 * (out + out.transpose());
}

double min_eigenvalue(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  return symmetric_eigen(m).values(0);
}

double spectral_norm_power(const Matrix& m, int max_iter, double rel_tol) {
  if (m.size() == 0) return 0.0;
  Vector v(m.cols());
  // Fixed, non-symmetric start so no singular vector is orthogonal to it by
  // construction.
  for (Index i = 0; i < v.size(); ++i) v(i) = 1.0 + 0.01 * static_cast<double>(i % 7);
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Vector mv = m * v;
    Vector w = m.transpose() * mv;
    const double next = v.dot(w);
    const double wn = w.norm();
    if (wn == 0.0) return 0.0;
    v = w / wn;
    if (std::abs(next - lambda) <= rel_tol * std::abs(next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(std::max(0.0, (m * v).squaredNorm()));
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (!m.allFinite()) throw Error("spectral norm of non-finite matrix");
  const Index small = std::min(m.rows(), m.cols());
  if (small <= kExactLimit) {
    const Matrix gram = m.rows() <= m.cols() ? Matrix(m * m.transpose()) : Matrix(m.transpose() * m);
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues()(es.eigenvalues().size() - 1)));
  }
  return spectral_norm_power(m);
}

}  // namespace sketchsdp::linalg
