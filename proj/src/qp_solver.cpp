// Copyright 2026 The comfort_avoid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "comfort_avoid/qp_solver.hpp"

#include "comfort_avoid/error.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace comfort_avoid
{

namespace
{

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Cholesky factor of the (possibly ridge-regularized) Hessian.
Eigen::LLT<MatrixXd> factor_hessian(const MatrixXd & h)
{
  Eigen::LLT<MatrixXd> llt(h);
  if (llt.info() == Eigen::Success) {
    return llt;
  }
  const double n = static_cast<double>(h.rows());
  const double ridge = 1e-10 * h.trace() / n;
  if (ridge > 0.0) {
    llt.compute(h + ridge * MatrixXd::Identity(h.rows(), h.cols()));
    if (llt.info() == Eigen::Success) {
      return llt;
    }
  }
  throw RuntimeError("QP Hessian is not positive definite after regularization");
}

struct EqpResult
{
  VectorXd x;
  VectorXd lambda;  // one per working-set row
};

// Minimizer of the objective with the working-set rows held as equalities.
EqpResult solve_equality_qp(
  const Eigen::LLT<MatrixXd> & hfac, const VectorXd & f, const MatrixXd & a, const VectorXd & b,
  const std::vector<int> & working)
{
  const VectorXd hinv_f = hfac.solve(f);
  if (working.empty()) {
    return {-hinv_f, VectorXd()};
  }
  const auto k = static_cast<Eigen::Index>(working.size());
  MatrixXd aw(k, a.cols());
  VectorXd bw(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    aw.row(i) = a.row(working[static_cast<std::size_t>(i)]);
    bw(i) = b(working[static_cast<std::size_t>(i)]);
  }
  const MatrixXd hinv_at = hfac.solve(aw.transpose());
  const MatrixXd schur = aw * hinv_at;
  const Eigen::LDLT<MatrixXd> sfac(schur);
  if (sfac.info() != Eigen::Success || sfac.vectorD().minCoeff() <= 0.0) {
    throw RuntimeError("working-set constraints became linearly dependent");
  }
  VectorXd lambda = -sfac.solve(bw + aw * hinv_f);
  VectorXd x = -hinv_f - hinv_at * lambda;
  return {std::move(x), std::move(lambda)};
}

double quad_objective(const MatrixXd & h, const VectorXd & f, const VectorXd & x)
{
  return 0.5 * x.dot(h * x) + f.dot(x);
}

struct CoreResult
{
  VectorXd x;
  std::vector<int> working;
  VectorXd multipliers;
  QpStatus status;
  int iterations;
};

// Active-set iterations from a feasible start. `h` must already be symmetric.
CoreResult active_set_core(
  const MatrixXd & h, const VectorXd & f, const MatrixXd & a, const VectorXd & b, VectorXd x,
  double tol, int max_iter, const std::function<void(const QpIterate &)> & trace)
{
  const auto hfac = factor_hessian(h);
  const auto m = a.rows();
  std::vector<int> working;
  std::vector<char> in_working(static_cast<std::size_t>(m), 0);

  double best_objective = quad_objective(h, f, x);
  int stalled = 0;
  const int stall_limit = 3 * static_cast<int>(std::max<Eigen::Index>(m, 1));

  // Steps solve the equality problem in the step variable with the working
  // rows homogeneous, so the iterate never drifts off its face.
  const VectorXd zero_rhs = VectorXd::Zero(m);
  for (int it = 1; it <= max_iter; ++it) {
    const VectorXd g = h * x + f;
    const auto eqp = solve_equality_qp(hfac, g, a, zero_rhs, working);
    const VectorXd & p = eqp.x;
    const double step_tol = 1e-12 * (1.0 + x.cwiseAbs().maxCoeff());

    const bool vertex = static_cast<Eigen::Index>(working.size()) >= x.size();
    if (vertex || p.cwiseAbs().maxCoeff() <= step_tol) {
      int drop = -1;
      const bool bland = stalled >= stall_limit;
      for (std::size_t i = 0; i < working.size(); ++i) {
        const double li = eqp.lambda(static_cast<Eigen::Index>(i));
        if (li >= -tol) {
          continue;
        }
        if (drop < 0) {
          drop = static_cast<int>(i);
        } else if (bland ? working[i] < working[static_cast<std::size_t>(drop)]
                         : li < eqp.lambda(drop)) {
          drop = static_cast<int>(i);
        }
      }
      if (drop < 0) {
        VectorXd multipliers = VectorXd::Zero(m);
        for (std::size_t i = 0; i < working.size(); ++i) {
          multipliers(working[i]) = std::max(0.0, eqp.lambda(static_cast<Eigen::Index>(i)));
        }
        if (trace) {
          trace(QpIterate{it, x, working, quad_objective(h, f, x)});
        }
        return {x, working, multipliers, QpStatus::kOptimal, it};
      }
      in_working[static_cast<std::size_t>(working[static_cast<std::size_t>(drop)])] = 0;
      working.erase(working.begin() + drop);
    } else {
      double alpha = 1.0;
      int blocking = -1;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (in_working[static_cast<std::size_t>(i)]) {
          continue;
        }
        const double ap = a.row(i).dot(p);
        // Rows spanned by the working set have a.p = 0 up to round-off.
        if (ap <= 1e-10 * a.row(i).norm() * p.norm()) {
          continue;
        }
        const double slack = std::max(0.0, b(i) - a.row(i).dot(x));
        const double ratio = slack / ap;
        if (ratio < alpha) {
          alpha = ratio;
          blocking = static_cast<int>(i);
        }
      }
      x += alpha * p;
      if (blocking >= 0) {
        working.push_back(blocking);
        in_working[static_cast<std::size_t>(blocking)] = 1;
      }
    }

    const double obj = quad_objective(h, f, x);
    if (obj < best_objective - 1e-14 * (1.0 + std::abs(best_objective))) {
      best_objective = obj;
      stalled = 0;
    } else {
      ++stalled;
    }
    if (trace) {
      trace(QpIterate{it, x, working, obj});
    }
  }
  return {x, working, VectorXd::Zero(m), QpStatus::kMaxIterations, max_iter};
}

}  // namespace

// ---------------------------------------------------------------------------

QpProblem QpProblem::folded() const
{
  validate();
  const auto n = num_variables();
  QpProblem out;
  out.h = 0.5 * (h + h.transpose());
  out.f = f;
  out.constant = constant;
  const Eigen::Index m0 = a_ineq.rows();
  const Eigen::Index extra = (ub ? n : 0) + (lb ? n : 0);
  out.a_ineq = MatrixXd::Zero(m0 + extra, n);
  out.b_ineq = VectorXd::Zero(m0 + extra);
  if (m0 > 0) {
    out.a_ineq.topRows(m0) = a_ineq;
    out.b_ineq.head(m0) = b_ineq;
  }
  Eigen::Index row = m0;
  if (ub) {
    out.a_ineq.block(row, 0, n, n) = MatrixXd::Identity(n, n);
    out.b_ineq.segment(row, n) = *ub;
    row += n;
  }
  if (lb) {
    out.a_ineq.block(row, 0, n, n) = -MatrixXd::Identity(n, n);
    out.b_ineq.segment(row, n) = -*lb;
  }
  return out;
}

void QpProblem::validate() const
{
  const auto n = num_variables();
  if (n == 0) {
    throw ValidationError("problem has no variables", "qp.f");
  }
  if (h.rows() != n || h.cols() != n) {
    throw ValidationError("Hessian must be n x n", "qp.h");
  }
  if (a_ineq.rows() != b_ineq.size() || (a_ineq.rows() > 0 && a_ineq.cols() != n)) {
    throw ValidationError("constraint matrix must be m x n with m entries in b", "qp.a_ineq");
  }
  if (lb && lb->size() != n) {
    throw ValidationError("lower bound must have n entries", "qp.lb");
  }
  if (ub && ub->size() != n) {
    throw ValidationError("upper bound must have n entries", "qp.ub");
  }
  if (!h.allFinite() || !f.allFinite() || !a_ineq.allFinite() || !b_ineq.allFinite()) {
    throw ValidationError("problem data must be finite", "qp");
  }
}

double QpProblem::objective(const Eigen::VectorXd & x) const
{
  return 0.5 * x.dot(h * x) + f.dot(x) + constant;
}

std::string_view to_string(QpStatus status)
{
  switch (status) {
    case QpStatus::kOptimal: return "optimal";
    case QpStatus::kInfeasible: return "infeasible";
    case QpStatus::kMaxIterations: return "max_iterations";
    case QpStatus::kNumericalFailure: return "numerical_failure";
  }
  return "?";
}

std::optional<Eigen::VectorXd> phase1_feasible_point(
  const Eigen::MatrixXd & a_ineq, const Eigen::VectorXd & b_ineq, double tol)
{
  const auto m = a_ineq.rows();
  const auto n = a_ineq.cols();
  if (b_ineq.size() != m) {
    throw ValidationError("constraint matrix and right-hand side disagree in size", "qp.a_ineq");
  }
  const auto max_violation = [&](const VectorXd & p) {
    return m == 0 ? 0.0 : (a_ineq * p - b_ineq).maxCoeff();
  };
  if (max_violation(VectorXd::Zero(n)) <= tol) {
    return VectorXd::Zero(n);
  }

  // Deepest point of the unit-normalized rows, as an LP in standard form:
  //   a_i x + d <= b_i,  d = 1 - u,  x = xp - xm,  xp, xm, u, s >= 0,
  // minimizing u. The depth cap d <= 1 keeps the LP bounded.
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (a_ineq.row(i).norm() > 0.0) {
      rows.push_back(i);
    } else if (b_ineq(i) < -tol) {
      return std::nullopt;
    }
  }
  const auto k = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index u_col = 2 * n;
  const Eigen::Index rhs = 2 * n + 1 + k;
  MatrixXd t = MatrixXd::Zero(k, rhs + 1);
  for (Eigen::Index r = 0; r < k; ++r) {
    const Eigen::Index i = rows[static_cast<std::size_t>(r)];
    const double norm = a_ineq.row(i).norm();
    t.row(r).head(n) = a_ineq.row(i) / norm;
    t.row(r).segment(n, n) = -a_ineq.row(i) / norm;
    t(r, u_col) = -1.0;
    t(r, u_col + 1 + r) = 1.0;
    t(r, rhs) = b_ineq(i) / norm - 1.0;
  }
  VectorXd cost = VectorXd::Zero(rhs + 1);
  cost(u_col) = 1.0;
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(k));
  for (Eigen::Index r = 0; r < k; ++r) {
    basis[static_cast<std::size_t>(r)] = u_col + 1 + r;
  }

  const auto pivot = [&](Eigen::Index pr, Eigen::Index pc) {
    t.row(pr) /= t(pr, pc);
    for (Eigen::Index r = 0; r < k; ++r) {
      if (r != pr && t(r, pc) != 0.0) {
        t.row(r) -= t(r, pc) * t.row(pr);
      }
    }
    cost -= cost(pc) * t.row(pr).transpose();
    basis[static_cast<std::size_t>(pr)] = pc;
  };

  // Entering u on the most negative row makes the slack basis feasible.
  Eigen::Index worst = 0;
  if (k > 0 && t.col(rhs).minCoeff(&worst) < 0.0) {
    pivot(worst, u_col);
  }

  constexpr double kEps = 1e-12;
  const int max_pivots = 50 * static_cast<int>(k + rhs + 1);
  for (int it = 0; it < max_pivots; ++it) {
    Eigen::Index enter = -1;
    for (Eigen::Index c = 0; c < rhs; ++c) {
      if (cost(c) < -kEps) {
        enter = c;
        break;
      }
    }
    if (enter < 0) {
      break;
    }
    Eigen::Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index r = 0; r < k; ++r) {
      if (t(r, enter) <= kEps) {
        continue;
      }
      const double ratio = t(r, rhs) / t(r, enter);
      if (ratio < best - kEps ||
          (ratio <= best + kEps && leave >= 0 &&
           basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)])) {
        best = std::min(best, ratio);
        leave = r;
      }
    }
    if (leave < 0) {
      break;  // cannot happen while u is bounded below
    }
    pivot(leave, enter);
  }

  VectorXd z = VectorXd::Zero(rhs);
  for (Eigen::Index r = 0; r < k; ++r) {
    z(basis[static_cast<std::size_t>(r)]) = t(r, rhs);
  }
  VectorXd x = z.head(n) - z.segment(n, n);
  if (max_violation(x) <= tol) {
    return x;
  }
  return std::nullopt;
}

QpSolution solve_qp(const QpProblem & problem, const QpOptions & options)
{
  const QpProblem p = problem.folded();
  const auto n = p.num_variables();
  const auto m = p.a_ineq.rows();

  VectorXd start;
  if (options.x0) {
    if (options.x0->size() != n) {
      throw ValidationError("start point must have n entries", "options.x0");
    }
    if (m > 0 && (p.a_ineq * *options.x0 - p.b_ineq).maxCoeff() > options.tol) {
      throw ValidationError("start point is infeasible", "options.x0");
    }
    start = *options.x0;
  } else {
    auto feasible = phase1_feasible_point(p.a_ineq, p.b_ineq, options.tol);
    if (!feasible) {
      QpSolution s;
      s.x = VectorXd::Zero(n);
      s.multipliers = VectorXd::Zero(m);
      s.status = QpStatus::kInfeasible;
      s.objective = p.objective(s.x);
      return s;
    }
    start = std::move(*feasible);
  }

  auto core = active_set_core(p.h, p.f, p.a_ineq, p.b_ineq, std::move(start), options.tol,
                              options.max_iter, options.trace);
  QpSolution s;
  s.x = std::move(core.x);
  s.active_set = std::move(core.working);
  std::sort(s.active_set.begin(), s.active_set.end());
  s.multipliers = std::move(core.multipliers);
  s.status = core.status;
  s.iterations = core.iterations;
  s.objective = p.objective(s.x);
  return s;
}

double KktResiduals::max() const
{
  return std::max({stationarity, primal, dual, complementarity});
}

KktResiduals kkt_residuals(const QpProblem & problem, const QpSolution & s)
{
  const QpProblem p = problem.folded();
  const auto m = p.a_ineq.rows();
  if (s.x.size() != p.num_variables() || s.multipliers.size() != m) {
    throw ValidationError("solution dimensions do not match the problem", "solution");
  }
  KktResiduals r;
  VectorXd grad = p.h * s.x + p.f;
  if (m > 0) {
    grad += p.a_ineq.transpose() * s.multipliers;
    const VectorXd slack = p.a_ineq * s.x - p.b_ineq;
    r.primal = std::max(0.0, slack.maxCoeff());
    r.dual = std::max(0.0, -s.multipliers.minCoeff());
    r.complementarity = s.multipliers.cwiseProduct(slack).cwiseAbs().maxCoeff();
  }
  r.stationarity = grad.cwiseAbs().maxCoeff();
  return r;
}

}  // namespace comfort_avoid
