#pragma once

#include "sketchsdp/core.hpp"

namespace sketchsdp::linalg {

struct SymmetricEigen {
  Vector values;   // ascending
  Matrix vectors;  // columns
};

/// Whether LAPACK passed a one-time accuracy check in this process; when it
/// did not, every decomposition uses Eigen's own solver instead.
bool lapack_usable();

/// Full eigendecomposition of a symmetric matrix (lower triangle is read).
SymmetricEigen symmetric_eigen(const Matrix& m);

/// Eigenpairs with eigenvalue strictly greater than `lower`.
SymmetricEigen eigen_above(const Matrix& m, double lower);

/// Frobenius-nearest positive semidefinite matrix: eigenvalues clipped at 0.
Matrix project_psd(const Matrix& m);

double min_eigenvalue(const Matrix& m);

/// Largest singular value. Dimensions up to `kExactLimit` use a dense
/// eigendecomposition of the smaller Gram matrix; larger inputs use power
/// iteration on M^T M from a fixed start vector.
double spectral_norm(const Matrix& m);
inline constexpr Index kExactLimit = 64;

/// Power-iteration path of spectral_norm, exposed for testing.
double spectral_norm_power(const Matrix& m, int max_iter = 5000, double rel_tol = 1e-13);

}  // namespace sketchsdp::linalg
