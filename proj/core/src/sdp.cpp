#include "sketchsdp/sdp.hpp"

#include "sketchsdp/error.hpp"
#include "sketchsdp/kmeans.hpp"
#include "sketchsdp/linalg.hpp"
#include "sketchsdp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sketchsdp {
namespace {

// Feasible point alpha*11^T + beta*I; also the affine projection of
// (k/s) 11^T.
Matrix default_start(Index s, int k) {
  if (s == 1) return Matrix::Ones(1, 1);
  const double sd = static_cast<double>(s);
  const double beta = (k - 1.0) / (sd - 1.0);
  const double alpha = (sd - k) / (sd - 1.0) / sd;
  Matrix z = Matrix::Constant(s, s, alpha);
  z.diagonal().array() += beta;
  return z;
}

// Orthogonal projection onto {Z symmetric : A(Z) = b}, using a cached
// factorization of A A*.
class AffineProjector {
 public:
  AffineProjector(Index s, int k) : b_(constraint_rhs(s, k)) {
    const double sd = static_cast<double>(s);
    Matrix m(s + 1, s + 1);
    m(0, 0) = sd;
    m.block(0, 1, 1, s).setOnes();
    m.block(1, 0, s, 1).setOnes();
    m.block(1, 1, s, s) = Matrix::Constant(s, s, 0.5);
    m.block(1, 1, s, s).diagonal().array() += 0.5 * sd;
    llt_.compute(m);
  }

  /// Multiplier of the projection: lambda = (A A*)^{-1} (A(G) - b).
  Vector multiplier(const Matrix& g) const { return llt_.solve(apply_constraints(g) - b_); }

  Matrix project(const Matrix& g) const { return g - apply_adjoint(multiplier(g)); }

  /// Least-squares y with A*(y) closest to `m`.
  Vector fit(const Matrix& m) const { return llt_.solve(apply_constraints(m)); }

  const Vector& rhs() const { return b_; }

 private:
  Vector b_;
  Eigen::LLT<Matrix> llt_;
};

struct AdmmState {
  Matrix z;  // affine copy
  Matrix x;  // psd copy
  Matrix w;  // nonnegative copy
  Matrix u;  // scaled multiplier for Z = X
  Matrix v;  // scaled multiplier for Z = W
  double rho = 1.0;
  int iterations = 0;
};

struct DualEstimate {
  Vector y;
  Matrix s;
  Residuals residuals;
};

double frob(const Matrix& m) { return m.norm(); }

DualEstimate estimate(const Matrix& c, const AdmmState& st, const AffineProjector& proj) {
  const Matrix s = -st.rho * st.u;
  const Matrix p = -st.rho * st.v;
  Vector y = proj.fit(c - p - s);
  const Matrix dual_res = c - apply_adjoint(y) - p - s;
  const double pobj = c.cwiseProduct(st.z).sum();
  const double dobj = proj.rhs().dot(y);
  Residuals r;
  const double scale = std::max({1.0, frob(st.z), frob(st.x), frob(st.w)});
  r.primal = std::sqrt((st.z - st.x).squaredNorm() + (st.z - st.w).squaredNorm()) / scale;
  r.dual = frob(dual_res) / (1.0 + frob(c));
  r.gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
  return {std::move(y), s, r};
}

// Alternating projections between the affine set and the nonnegative orthant
// to clean up the returned primal iterate.
Matrix cleanup_primal(Matrix z, const AffineProjector& proj) {
  for (int it = 0; it < 200; ++it) {
    const double neg = std::min(0.0, z.minCoeff());
    if (neg >= -1e-13) break;
    z = proj.project(z.cwiseMax(0.0));
  }
  return z.cwiseMax(0.0);
}

void run_admm(const Matrix& c, const AffineProjector& proj, const SolverConfig& cfg, AdmmState& st,
              DualEstimate& est, bool& converged) {
  converged = false;
  const double rho_min = 1e-6;
  const double rho_max = 1e6;
  for (int it = 0; it < cfg.max_iter; ++it) {
    const Matrix g = 0.5 * (st.x - st.u + st.w - st.v) - c / (2.0 * st.rho);
    st.z = proj.project(g);
    st.z = (0.5 * (st.z + st.z.transpose())).eval();
    if (!st.z.allFinite()) throw SolverDiverged();
    st.x = linalg::project_psd(st.z + st.u);
    st.w = (st.z + st.v).cwiseMax(0.0);
    st.u += st.z - st.x;
    st.v += st.z - st.w;
    ++st.iterations;
    if (!st.x.allFinite() || !st.u.allFinite() || !st.v.allFinite()) throw SolverDiverged();

    est = estimate(c, st, proj);
    if (est.residuals.primal <= cfg.tol_primal && est.residuals.dual <= cfg.tol_dual &&
        est.residuals.gap <= cfg.tol_gap) {
      converged = true;
      return;
    }
    if (cfg.adapt_interval > 0 && (it + 1) % cfg.adapt_interval == 0) {
      const double rp = est.residuals.primal;
      const double rd = est.residuals.dual;
      if (rp > 10.0 * rd && st.rho < rho_max) {
        st.rho *= 2.0;
        st.u /= 2.0;
        st.v /= 2.0;
      } else if (rd > 10.0 * rp && st.rho > rho_min) {
        st.rho /= 2.0;
        st.u *= 2.0;
        st.v *= 2.0;
      }
    }
  }
}

void validate(const SdpProblem& problem) {
  const Index s = problem.size();
  if (problem.k < 1 || problem.k > s) throw Error("SDP needs 1 <= k <= s");
}

SdpSolution finish(const SdpProblem& problem, const SolverConfig& cfg, const AdmmState& st,
                   const DualEstimate& est, double scale, bool converged, const AffineProjector& proj) {
  const Matrix& d = problem.distances.matrix();
  const Index s = problem.size();
  SdpSolution sol;
  sol.z = cleanup_primal(st.z, proj);
  sol.primal_value = d.cwiseProduct(sol.z).sum() / (2.0 * static_cast<double>(s));
  sol.iterations = st.iterations;
  sol.residuals = est.residuals;
  if (converged) {
    sol.status = SolveStatus::converged;
  } else if (est.residuals.primal > 100.0 * cfg.tol_primal || est.residuals.dual > 100.0 * cfg.tol_dual) {
    sol.status = SolveStatus::repaired_only;
  } else {
    sol.status = SolveStatus::max_iter;
  }
  const auto cert = repair_dual(problem, scale * est.y, scale * est.s,
                                RepairOptions{cfg.lp_polish, cfg.lp_polish_max_size});
  sol.y = cert.y;
  sol.p = cert.p;
  sol.s = cert.s;
  sol.certified_lower_bound = cert.lower_bound;
  sol.polished = cert.polished;
  return sol;
}

SdpSolution solve_impl(const SdpProblem& problem, const SolverConfig& cfg, AdmmState* resume,
                       AdmmState* out_state) {
  validate(problem);
  if (!(cfg.tol_primal > 0 && cfg.tol_dual > 0 && cfg.tol_gap > 0)) {
    throw Error("solver tolerances must be positive");
  }
  if (!(cfg.step_parameter > 0)) throw Error("step parameter must be positive");
  const Index s = problem.size();
  const int k = problem.k;
  const Matrix& d = problem.distances.matrix();
  if (!d.allFinite()) throw SolverDiverged();
  const double scale = d.cwiseAbs().maxCoeff();
  const AffineProjector proj(s, k);

  AdmmState st;
  if (resume != nullptr) {
    st = *resume;
  } else {
    if (cfg.warm_start) {
      if (cfg.warm_start->n() != s || cfg.warm_start->k() != k) {
        throw Error("warm start partition does not match the problem");
      }
      st.z = partition_matrix(*cfg.warm_start);
    } else {
      st.z = default_start(s, k);
    }
    st.x = st.z;
    st.w = st.z;
    st.u = Matrix::Zero(s, s);
    st.v = Matrix::Zero(s, s);
    st.rho = cfg.step_parameter;
  }

  DualEstimate est{Vector::Zero(s + 1), Matrix::Zero(s, s), {}};
  bool converged = false;
  if (scale == 0.0 || k == s) {
    // D = 0: every feasible Z is optimal and (y, P, S) = 0 certifies 0.
    // k = s: Z = I is the only feasible point.
    st.z = k == s ? Matrix(Matrix::Identity(s, s)) : st.z;
    converged = true;
  } else {
    const Matrix c = d / scale;
    run_admm(c, proj, cfg, st, est, converged);
  }
  if (out_state != nullptr) *out_state = st;
  SdpSolution sol = finish(problem, cfg, st, est, scale == 0.0 ? 1.0 : scale, converged, proj);
  return sol;
}

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged:
      return "converged";
    case SolveStatus::max_iter:
      return "max_iter";
    case SolveStatus::repaired_only:
      return "repaired_only";
  }
  return "unknown";
}

SdpProblem build_problem(const Dataset& y, int k, std::optional<double> cap) {
  if (k > y.n()) throw Error("SDP needs k <= s");
  if (k < 1) throw Error("SDP needs k >= 1");
  return SdpProblem{distance_matrix(y, cap), k};
}

Vector apply_constraints(const Matrix& z) {
  Vector out(z.rows() + 1);
  out(0) = z.trace();
  out.tail(z.rows()) = z.rowwise().sum();
  return out;
}

Matrix apply_adjoint(const Vector& y) {
  const Index s = y.size() - 1;
  const auto tail = y.tail(s);
  Matrix m = 0.5 * (tail.replicate(1, s) + tail.transpose().replicate(s, 1));
  m.diagonal().array() += y(0);
  return m;
}

Vector constraint_rhs(Index s, int k) {
  Vector b = Vector::Ones(s + 1);
  b(0) = k;
  return b;
}

namespace {

struct RepairedPoint {
  Vector y;
  Matrix p;
  double bound;
};

// Row-shift repair of y against fixed psd S, then the rounding-aware bound.
RepairedPoint shift_and_certify(const Matrix& d, const Matrix& s_psd, double s_min_eig, Vector y, int k) {
  const Index s = d.rows();
  const Matrix p_tilde = d - apply_adjoint(y) - s_psd;
  for (Index i = 0; i < s; ++i) {
    const double delta = std::max(0.0, -p_tilde.row(i).minCoeff());
    y(1 + i) -= 2.0 * delta;
  }
  Matrix p = d - apply_adjoint(y) - s_psd;
  const double residue = (d - apply_adjoint(y) - p - s_psd).cwiseAbs().maxCoeff();
  const double neg_p = std::max(0.0, -p.minCoeff());
  const double neg_s = std::max(0.0, -s_min_eig);
  const double sd = static_cast<double>(s);
  const Vector b = constraint_rhs(s, k);
  const double raw = b.dot(y);
  // Forward-error allowance for b^T y, the eigenvalue clip and the entries of
  // P. Zero when y and S vanish, since P = D is then exact.
  double rounding = 0.0;
  if (!y.isZero(0.0) || !s_psd.isZero(0.0)) {
    const Matrix a = apply_adjoint(y);
    const double entry = (d.cwiseAbs() + a.cwiseAbs() + s_psd.cwiseAbs()).maxCoeff();
    const double magnitude = b.cwiseProduct(y).cwiseAbs().sum() + k * s_psd.norm() + sd * entry;
    rounding = 4.0 * (sd + 2.0) * std::numeric_limits<double>::epsilon() * magnitude;
  }
  const double bound = (raw - k * neg_s - sd * (neg_p + residue) - rounding) / (2.0 * sd);
  return {std::move(y), std::move(p), bound};
}

std::optional<Vector> lp_polish(const Matrix& d, const Matrix& s_psd, int k) {
  const Index s = d.rows();
  const Matrix cost_matrix = d - s_psd;
  const double cost_scale = std::max(1.0, cost_matrix.cwiseAbs().maxCoeff());
  lp::StandardFormLp lp;
  lp.rows = s + 1;
  lp.rhs = constraint_rhs(s, k);
  std::vector<double> costs;
  for (Index j = 0; j < s; ++j) {
    for (Index i = 0; i <= j; ++i) {
      if (i == j) {
        lp.columns.push_back({{0, 1.0}, {1 + i, 1.0}});
      } else {
        lp.columns.push_back({{1 + i, 0.5}, {1 + j, 0.5}});
      }
      costs.push_back(cost_matrix(i, j) / cost_scale);
    }
  }
  lp.cost = Eigen::Map<Vector>(costs.data(), static_cast<Index>(costs.size()));
  const auto res = lp::solve(lp);
  if (res.status != lp::LpStatus::optimal || !res.duals.allFinite()) return std::nullopt;
  return Vector(res.duals * cost_scale);
}

}  // namespace

DualCertificate repair_dual(const SdpProblem& problem, const Vector& y0, const Matrix& s0,
                            const RepairOptions& options) {
  const Index s = problem.size();
  if (y0.size() != s + 1 || s0.rows() != s || s0.cols() != s) {
    throw Error("dual repair input has wrong dimensions");
  }
  if (!y0.allFinite() || !s0.allFinite()) throw Error("dual repair input is not finite");
  const Matrix& d = problem.distances.matrix();
  const Matrix s_sym = 0.5 * (s0 + s0.transpose());
  const Matrix s_psd = linalg::project_psd(s_sym);
  const double s_min = s_psd.isZero(0.0) ? 0.0 : linalg::min_eigenvalue(s_psd);

  auto best = shift_and_certify(d, s_psd, s_min, y0, problem.k);
  bool polished = false;
  if (options.lp_polish && s <= options.lp_polish_max_size) {
    if (auto y_lp = lp_polish(d, s_psd, problem.k)) {
      auto cand = shift_and_certify(d, s_psd, s_min, *y_lp, problem.k);
      if (cand.bound > best.bound) {
        best = std::move(cand);
        polished = true;
      }
    }
  }
  return DualCertificate{std::move(best.y), std::move(best.p), s_psd, best.bound, polished};
}

SdpSolution solve(const SdpProblem& problem, const SolverConfig& config) {
  return solve_impl(problem, config, nullptr, nullptr);
}

SdpSolution solve_two_stage(const SdpProblem& problem, const SolverConfig& config, double tol_high,
                            int few_iterations) {
  AdmmState state;
  SolverConfig low = config;
  low.lp_polish = false;
  SdpSolution first = solve_impl(problem, low, nullptr, &state);
  if (first.iterations >= few_iterations || state.u.size() == 0 ||
      first.status != SolveStatus::converged || problem.distances.matrix().isZero(0.0) ||
      problem.k == problem.size()) {
    if (config.lp_polish) return solve_impl(problem, config, &state, nullptr);
    return first;
  }
  SolverConfig high = config;
  high.tol_primal = std::min(config.tol_primal, tol_high);
  high.tol_dual = std::min(config.tol_dual, tol_high);
  high.tol_gap = std::min(config.tol_gap, tol_high);
  high.max_iter = std::max(0, config.max_iter - first.iterations);
  return solve_impl(problem, high, &state, nullptr);
}

Rounding round_solution(const Matrix& z, const Dataset& y, int k) {
  const Index s = z.rows();
  if (z.cols() != s || y.n() != s) throw Error("rounding input size mismatch");
  if (k < 1 || k > s) throw Error("rounding needs 1 <= k <= s");

  // Connected components of {Z_ij > 1/(2s)}.
  std::vector<Index> parent(static_cast<std::size_t>(s));
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  };
  const double threshold = 1.0 / (2.0 * static_cast<double>(s));
  for (Index j = 0; j < s; ++j) {
    for (Index i = 0; i < j; ++i) {
      if (z(i, j) > threshold) parent[static_cast<std::size_t>(find(i))] = find(j);
    }
  }
  std::vector<int> roots(static_cast<std::size_t>(s));
  for (Index i = 0; i < s; ++i) roots[static_cast<std::size_t>(i)] = static_cast<int>(find(i));
  const Partition components = Partition::from_labels(roots);
  if (components.k() == k && (z - partition_matrix(components)).norm() <= 1e-3) {
    return {components, true};
  }

  const auto eig = linalg::symmetric_eigen(0.5 * (z + z.transpose()));
  PointMatrix embedding(s, k);
  for (int j = 0; j < k; ++j) {
    const Index col = s - 1 - j;
    embedding.col(j) = eig.vectors.col(col) * std::sqrt(std::max(0.0, eig.values(col)));
  }
  const Dataset emb(std::move(embedding));
  const auto init = deterministic_kmeanspp(emb, k);
  const auto km = lloyd(emb, k, rows_of(emb, init));
  return {km.partition, false};
}

}  // namespace sketchsdp
