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

#ifndef COMFORT_AVOID__MPC_TRACKER_HPP_
#define COMFORT_AVOID__MPC_TRACKER_HPP_

#include "comfort_avoid/qp_solver.hpp"
#include "comfort_avoid/vehicle_model.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace comfort_avoid
{

struct TrackerBounds
{
  double delta{0.5};              // |delta_f| [rad], hard
  double ddelta_per_step{0.016};  // |delta_u| per tracker step [rad], hard
  double beta{0.1};               // |sideslip| [rad], soft
  double a_lat{4.0};              // |lateral acceleration| [m/s^2], soft
  double yaw_rate{0.5};           // |r| [rad/s], soft
};

struct TrackerConfig
{
  int np{25};
  int nc{5};
  double dt{0.02};
  double q_y{100.0};
  double q_psi{10.0};
  double r_du{5000.0};
  double rho_slack{1000.0};
  TrackerBounds bounds;

  void validate(const std::string & path = "tracker") const;
};

struct PathSample
{
  double x{0.0};
  double y{0.0};
  double psi{0.0};
  double v{0.0};
};

/// Ordered reference samples with cumulative arc length. Queries beyond either
/// end extrapolate along the end heading.
class ReferencePath
{
public:
  ReferencePath() = default;
  explicit ReferencePath(std::vector<PathSample> samples);

  /// Straight path along heading `psi` starting at (x0, y0).
  static ReferencePath straight(double x0, double y0, double psi, double length, double spacing, double v);

  const std::vector<PathSample> & samples() const { return samples_; }
  const std::vector<double> & arc_length() const { return arc_; }
  bool empty() const { return samples_.empty(); }
  std::size_t size() const { return samples_.size(); }

  /// Interpolated sample at arc length s.
  PathSample at(double s) const;

  /// Arc length of the orthogonal projection of (px, py).
  double project(double px, double py) const;

private:
  std::vector<PathSample> samples_;
  std::vector<double> arc_;
};

struct NearestReference
{
  std::size_t index{0};
  double lateral_error{0.0};  // + when the vehicle is left of the path
  double heading_error{0.0};  // wrapped to (-pi, pi]
};

NearestReference nearest_reference(const VehicleState & state, const ReferencePath & path);

/// Condensed tracking QP over z = (delta_u_0 .. delta_u_{nc-1}, epsilon).
///
/// Rows, in order: input magnitude (2 nc), input increment (2 nc), then for each
/// prediction step k = 1..np the soft pairs on sideslip, lateral acceleration and
/// yaw rate (6 np). `constant` carries the cost of the free response, so
/// qp.objective(0) equals the weighted error sum with no steering change.
QpProblem build_tracking_qp(
  const VehicleState & state, const ReferencePath & path, const VehicleParams & params,
  const TrackerConfig & cfg, ControlInput u_prev);

/// A feasible start for a tracking QP: zero increments and the smallest slack
/// that satisfies every softened row.
Eigen::VectorXd tracking_feasible_start(const QpProblem & qp);

struct TrackerDiagnostics
{
  double lateral_error{0.0};
  double heading_error{0.0};
  QpStatus solver_status{QpStatus::kOptimal};
  int solver_iterations{0};
  double epsilon{0.0};
};

struct TrackerOutput
{
  ControlInput u;
  TrackerDiagnostics diag;
};

/// One receding-horizon step: solve the tracking QP and apply the first
/// increment. Holds u_prev when the solver does not report optimal.
TrackerOutput track_step(
  const VehicleState & state, const ReferencePath & path, const VehicleParams & params,
  const TrackerConfig & cfg, ControlInput u_prev);

}  // namespace comfort_avoid

#endif  // COMFORT_AVOID__MPC_TRACKER_HPP_
