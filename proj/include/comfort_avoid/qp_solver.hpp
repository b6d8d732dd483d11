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

#ifndef COMFORT_AVOID__QP_SOLVER_HPP_
#define COMFORT_AVOID__QP_SOLVER_HPP_

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace comfort_avoid
{

/// minimize 0.5 x'Hx + f'x + constant  subject to  A x <= b,  lb <= x <= ub.
struct QpProblem
{
  Eigen::MatrixXd h;
  Eigen::VectorXd f;
  Eigen::MatrixXd a_ineq;  // m x n, may have zero rows
  Eigen::VectorXd b_ineq;
  std::optional<Eigen::VectorXd> lb;
  std::optional<Eigen::VectorXd> ub;
  double constant{0.0};

  Eigen::Index num_variables() const { return f.size(); }

  /// Symmetrized copy with the bounds appended to the inequality rows
  /// (a_ineq rows first, then x <= ub, then -x <= -lb).
  QpProblem folded() const;

  /// Throws ValidationError on inconsistent dimensions or non-finite data.
  void validate() const;

  double objective(const Eigen::VectorXd & x) const;
};

enum class QpStatus { kOptimal, kInfeasible, kMaxIterations, kNumericalFailure };

std::string_view to_string(QpStatus status);

/// Multipliers and active-set indices refer to the rows of problem.folded().
struct QpSolution
{
  Eigen::VectorXd x;
  std::vector<int> active_set;
  Eigen::VectorXd multipliers;
  double objective{0.0};
  QpStatus status{QpStatus::kInfeasible};
  int iterations{0};
};

/// Snapshot passed to the optional trace sink once per iteration.
struct QpIterate
{
  int iteration{0};
  const Eigen::VectorXd & x;
  const std::vector<int> & working_set;
  double objective{0.0};
};

struct QpOptions
{
  double tol{1e-9};
  int max_iter{200};
  std::optional<Eigen::VectorXd> x0;  // must be feasible when supplied
  std::function<void(const QpIterate &)> trace;
};

/// Primal active-set method for strictly convex QPs.
///
/// Each iteration solves the equality-constrained subproblem on the working set
/// (range-space KKT solve through the Cholesky factor of H), then either takes
/// the longest step allowed by the blocking constraints or, at a subproblem
/// minimizer, drops the constraint with the most negative multiplier. After
/// 3 m iterations without objective decrease the drop rule switches to the
/// smallest index. H is ridge-regularized once when its factorization fails;
/// a Hessian that is still not positive definite raises RuntimeError.
QpSolution solve_qp(const QpProblem & problem, const QpOptions & options = {});

/// Point with A x <= b + tol, or nullopt when the inequalities are inconsistent.
/// Solves a proximal slack problem in (x, t) with rows A x - t <= b.
std::optional<Eigen::VectorXd> phase1_feasible_point(
  const Eigen::MatrixXd & a_ineq, const Eigen::VectorXd & b_ineq, double tol = 1e-9);

struct KktResiduals
{
  double stationarity{0.0};     // ||H x + f + A' lambda||_inf
  double primal{0.0};           // max(0, max(A x - b))
  double dual{0.0};             // max(0, -min(lambda))
  double complementarity{0.0};  // max |lambda_i (a_i x - b_i)|

  double max() const;
};

/// Residuals of the KKT conditions straight from their definitions.
KktResiduals kkt_residuals(const QpProblem & problem, const QpSolution & solution);

}  // namespace comfort_avoid

#endif  // COMFORT_AVOID__QP_SOLVER_HPP_
