#pragma once

// The k-means semidefinite relaxation
//
//   minimize (1/2s) tr(D Z)  s.t.  tr Z = k,  Z 1 = 1,  Z >= 0,  Z psd,
//
// its dual
//
//   maximize (1/2s) b^T y  s.t.  A*(y) + P + S = D,  P >= 0,  S psd,
//
// with A(Z) = (tr Z; Z 1), b = (k; 1), A*(y) = y_0 I + (1 y_{1:s}^T + y_{1:s} 1^T)/2.

#include "sketchsdp/core.hpp"

#include <optional>

namespace sketchsdp {

struct SdpProblem {
  DistanceMatrix distances;
  int k;

  Index size() const noexcept { return distances.size(); }
};

/// Distance matrix of `y` (optionally clamped at `cap`) paired with k.
SdpProblem build_problem(const Dataset& y, int k, std::optional<double> cap = std::nullopt);

struct SolverConfig {
  double tol_primal = 1e-6;
  double tol_dual = 1e-6;
  double tol_gap = 1e-7;
  int max_iter = 20000;
  std::optional<Partition> warm_start;
  double step_parameter = 1.0;
  int adapt_interval = 50;  // residual balancing period; 0 disables
  bool lp_polish = true;
  Index lp_polish_max_size = 200;
};

enum class SolveStatus {
  converged,
  max_iter,
  repaired_only,  // iteration cap hit far from convergence; only the certificate is meaningful
};

const char* to_string(SolveStatus status);

struct Residuals {
  double primal = 0.0;  // relative distance of Z to the psd and nonnegative copies
  double dual = 0.0;    // relative norm of C - A*(y) - P - S in solver scaling
  double gap = 0.0;     // relative primal/dual objective gap
};

struct SdpSolution {
  Matrix z;
  double primal_value = 0.0;  // (1/2s) tr(D Z)
  Vector y;
  Matrix p;
  Matrix s;
  double certified_lower_bound = 0.0;
  SolveStatus status = SolveStatus::converged;
  int iterations = 0;
  Residuals residuals;
  bool polished = false;
};

/// A(Z) = (tr Z; Z 1).
Vector apply_constraints(const Matrix& z);
/// A*(y) for y of length s + 1.
Matrix apply_adjoint(const Vector& y);
/// b = (k; 1, ..., 1).
Vector constraint_rhs(Index s, int k);

struct RepairOptions {
  bool lp_polish = true;
  Index lp_polish_max_size = 200;
};

struct DualCertificate {
  Vector y;
  Matrix p;
  Matrix s;
  double lower_bound = 0.0;  // valid for every feasible Z, rounding included
  bool polished = false;     // LP polish produced the reported bound
};

/// Turns any (y0, S0) into an exactly dual-feasible certificate: S0 is
/// clipped to the psd cone, then y is shifted row by row until
/// P = D - A*(y) - S is entrywise nonnegative. When enabled and s is small
/// enough, an LP over y with S fixed is solved as well and the better bound
/// is kept. The reported bound also absorbs floating-point residue: any
/// negative eigenvalue left in S, negative entry in P, or mismatch in
/// A*(y) + P + S = D is charged against b^T y using tr Z = k and sum Z = s.
DualCertificate repair_dual(const SdpProblem& problem, const Vector& y0, const Matrix& s0,
                            const RepairOptions& options = {});

/// Operator-splitting solve followed by dual repair. Throws SolverDiverged on
/// non-finite iterates.
SdpSolution solve(const SdpProblem& problem, const SolverConfig& config = {});

/// Solves at the loose tolerances in `config`; if that took fewer than
/// `few_iterations` iterations, continues from the final iterate to
/// `tol_high` on all three residuals.
SdpSolution solve_two_stage(const SdpProblem& problem, const SolverConfig& config, double tol_high,
                            int few_iterations = 500);

struct Rounding {
  Partition partition;
  bool exact;  // Z was within Frobenius 1e-3 of the returned Z_Gamma
};

/// Partition read off an (approximate) solution Z for the points `y`.
/// Thresholding entries at 1/(2s) finds Gamma when Z is near a partition
/// matrix; otherwise rows of the top-k spectral embedding of Z are clustered
/// with Lloyd from a farthest-point start.
Rounding round_solution(const Matrix& z, const Dataset& y, int k);

}  // namespace sketchsdp
