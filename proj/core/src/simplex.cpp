#include "sketchsdp/simplex.hpp"

#include "sketchsdp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sketchsdp::lp {
namespace {

constexpr int kDegenerateRunBeforeBland = 50;
constexpr double kPivotTol = 1e-11;

class RevisedSimplex {
 public:
  RevisedSimplex(const StandardFormLp& lp, const LpOptions& opt) : lp_(lp), opt_(opt) {
    m_ = lp.rows;
    n_ = static_cast<Index>(lp.columns.size());
    sign_ = Vector::Ones(m_);
    rhs_ = lp.rhs;
    for (Index r = 0; r < m_; ++r) {
      if (rhs_(r) < 0) {
        sign_(r) = -1.0;
        rhs_(r) = -rhs_(r);
      }
    }
    basis_.resize(static_cast<std::size_t>(m_));
    in_basis_.assign(static_cast<std::size_t>(n_ + m_), -1);
    for (Index r = 0; r < m_; ++r) {
      basis_[static_cast<std::size_t>(r)] = n_ + r;  // artificial for row r
      in_basis_[static_cast<std::size_t>(n_ + r)] = static_cast<int>(r);
    }
    binv_ = Matrix::Identity(m_, m_);
    xb_ = rhs_;
  }

  LpResult run() {
    LpResult res;
    // Phase I: minimize the sum of artificials.
    Vector phase1 = Vector::Zero(n_ + m_);
    phase1.tail(m_).setOnes();
    auto st = iterate(phase1, true, res.iterations);
    if (st != LpStatus::optimal) {
      res.status = st;
      return res;
    }
    double infeas = 0.0;
    for (Index r = 0; r < m_; ++r) {
      if (basis_[static_cast<std::size_t>(r)] >= n_) infeas += xb_(r);
    }
    if (infeas > opt_.feasibility_tol * std::max(1.0, rhs_.lpNorm<Eigen::Infinity>()) * static_cast<double>(m_)) {
      res.status = LpStatus::infeasible;
      return res;
    }
    drive_out_artificials();

    Vector phase2 = Vector::Zero(n_ + m_);
    phase2.head(n_) = lp_.cost;
    st = iterate(phase2, false, res.iterations);
    res.status = st;
    if (st != LpStatus::optimal) return res;

    res.x = Vector::Zero(n_);
    for (Index r = 0; r < m_; ++r) {
      const Index j = basis_[static_cast<std::size_t>(r)];
      if (j < n_) res.x(j) = std::max(0.0, xb_(r));
    }
    res.duals = prices(phase2).cwiseProduct(sign_);
    res.objective = lp_.cost.dot(res.x);
    return res;
  }

 private:
  double column_coeff_dot(Index j, const Vector& y) const {
    if (j >= n_) return y(j - n_);
    double v = 0.0;
    for (const auto& [r, a] : lp_.columns[static_cast<std::size_t>(j)]) v += sign_(r) * a * y(r);
    return v;
  }

  Vector ftran(Index j) const {
    if (j >= n_) return binv_.col(j - n_);
    Vector out = Vector::Zero(m_);
    for (const auto& [r, a] : lp_.columns[static_cast<std::size_t>(j)]) out += (sign_(r) * a) * binv_.col(r);
    return out;
  }

  Vector prices(const Vector& cost) const {
    Vector cb(m_);
    for (Index r = 0; r < m_; ++r) cb(r) = cost(basis_[static_cast<std::size_t>(r)]);
    return binv_.transpose() * cb;
  }

  void refactor() {
    Matrix b = Matrix::Zero(m_, m_);
    for (Index r = 0; r < m_; ++r) {
      const Index j = basis_[static_cast<std::size_t>(r)];
      if (j >= n_) {
        b(j - n_, r) = 1.0;
      } else {
        for (const auto& [row, a] : lp_.columns[static_cast<std::size_t>(j)]) b(row, r) = sign_(row) * a;
      }
    }
    Eigen::PartialPivLU<Matrix> lu(b);
    binv_ = lu.inverse();
    xb_ = binv_ * rhs_;
    if (!binv_.allFinite()) throw Error("simplex basis became singular");
  }

  void pivot(Index leave_row, Index enter, const Vector& alpha) {
    const double piv = alpha(leave_row);
    binv_.row(leave_row) /= piv;
    xb_(leave_row) /= piv;
    for (Index r = 0; r < m_; ++r) {
      if (r == leave_row || alpha(r) == 0.0) continue;
      binv_.row(r) -= alpha(r) * binv_.row(leave_row);
      xb_(r) -= alpha(r) * xb_(leave_row);
    }
    const Index old = basis_[static_cast<std::size_t>(leave_row)];
    in_basis_[static_cast<std::size_t>(old)] = -1;
    basis_[static_cast<std::size_t>(leave_row)] = enter;
    in_basis_[static_cast<std::size_t>(enter)] = static_cast<int>(leave_row);
    ++since_refactor_;
    if (since_refactor_ >= opt_.refactor_interval) {
      refactor();
      since_refactor_ = 0;
    }
  }

  LpStatus iterate(const Vector& cost, bool phase_one, int& iterations) {
    const Index candidates = phase_one ? n_ + m_ : n_;
    const double cost_scale = std::max(1.0, cost.lpNorm<Eigen::Infinity>());
    int degenerate_run = 0;
    while (true) {
      if (iterations >= opt_.max_iterations) return LpStatus::iteration_limit;
      const Vector y = prices(cost);
      const bool bland = degenerate_run >= kDegenerateRunBeforeBland;
      Index enter = -1;
      double best = -opt_.optimality_tol * cost_scale;
      for (Index j = 0; j < candidates; ++j) {
        if (in_basis_[static_cast<std::size_t>(j)] >= 0) continue;
        const double d = cost(j) - column_coeff_dot(j, y);
        if (d < best) {
          enter = j;
          if (bland) break;
          best = d;
        }
      }
      if (enter < 0) return LpStatus::optimal;

      const Vector alpha = ftran(enter);
      // Harris-style ratio test: relaxed bound first, then the largest pivot
      // among rows within it.
      double theta_max = std::numeric_limits<double>::infinity();
      for (Index r = 0; r < m_; ++r) {
        if (alpha(r) > kPivotTol) {
          theta_max = std::min(theta_max, (std::max(xb_(r), 0.0) + opt_.feasibility_tol) / alpha(r));
        }
      }
      if (!std::isfinite(theta_max)) return LpStatus::unbounded;
      Index leave = -1;
      double leave_alpha = 0.0;
      for (Index r = 0; r < m_; ++r) {
        if (alpha(r) <= kPivotTol) continue;
        if (std::max(xb_(r), 0.0) / alpha(r) > theta_max) continue;
        const bool better = bland ? (leave < 0 || basis_[static_cast<std::size_t>(r)] <
                                                      basis_[static_cast<std::size_t>(leave)])
                                  : alpha(r) > leave_alpha;
        if (better) {
          leave = r;
          leave_alpha = alpha(r);
        }
      }
      if (leave < 0) return LpStatus::numerical_failure;
      const double step = std::max(xb_(leave), 0.0) / alpha(leave);
      degenerate_run = step <= opt_.feasibility_tol ? degenerate_run + 1 : 0;
      pivot(leave, enter, alpha);
      for (Index r = 0; r < m_; ++r) {
        if (xb_(r) < 0.0 && xb_(r) > -opt_.feasibility_tol) xb_(r) = 0.0;
      }
      ++iterations;
    }
  }

  void drive_out_artificials() {
    for (Index r = 0; r < m_; ++r) {
      if (basis_[static_cast<std::size_t>(r)] < n_) continue;
      const Vector row = binv_.row(r);
      for (Index j = 0; j < n_; ++j) {
        if (in_basis_[static_cast<std::size_t>(j)] >= 0) continue;
        double a = 0.0;
        for (const auto& [rr, v] : lp_.columns[static_cast<std::size_t>(j)]) a += sign_(rr) * v * row(rr);
        if (std::abs(a) > 1e-7) {
          pivot(r, j, ftran(j));
          break;
        }
      }
      // A row with no usable structural column is redundant; its artificial
      // stays basic at level zero.
    }
  }

  const StandardFormLp& lp_;
  LpOptions opt_;
  Index m_ = 0;
  Index n_ = 0;
  Vector sign_;
  Vector rhs_;
  std::vector<Index> basis_;
  std::vector<int> in_basis_;
  Matrix binv_;
  Vector xb_;
  int since_refactor_ = 0;
};

}  // namespace

LpResult solve(const StandardFormLp& problem, const LpOptions& options) {
  if (problem.rhs.size() != problem.rows || problem.cost.size() != static_cast<Index>(problem.columns.size())) {
    throw Error("inconsistent LP dimensions");
  }
  try {
    RevisedSimplex s(problem, options);
    return s.run();
  } catch (const Error&) {
    LpResult r;
    r.status = LpStatus::numerical_failure;
    return r;
  }
}

}  // namespace sketchsdp::lp
