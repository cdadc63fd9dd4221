#pragma once

// Dense revised simplex for small standard-form LPs with sparse columns:
//   minimize c^T x  subject to  A x = b,  x >= 0.

#include "sketchsdp/core.hpp"

#include <utility>
#include <vector>

namespace sketchsdp::lp {

using SparseColumn = std::vector<std::pair<Index, double>>;

struct StandardFormLp {
  Index rows = 0;
  std::vector<SparseColumn> columns;
  Vector cost;
  Vector rhs;
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit, numerical_failure };

struct LpOptions {
  int max_iterations = 50000;
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  int refactor_interval = 64;
};

struct LpResult {
  LpStatus status = LpStatus::numerical_failure;
  Vector x;      // structural primal values
  Vector duals;  // row prices y with c - A^T y >= 0 at optimality
  double objective = 0.0;
  int iterations = 0;
};

/// Two-phase revised simplex with an explicit basis inverse, Dantzig pricing,
/// and Bland's rule after a run of degenerate pivots.
LpResult solve(const StandardFormLp& problem, const LpOptions& options = {});

}  // namespace sketchsdp::lp
