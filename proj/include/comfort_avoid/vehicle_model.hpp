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

#ifndef COMFORT_AVOID__VEHICLE_MODEL_HPP_
#define COMFORT_AVOID__VEHICLE_MODEL_HPP_

#include <Eigen/Core>

#include <array>
#include <span>
#include <string>
#include <vector>

namespace comfort_avoid
{

using Matrix6d = Eigen::Matrix<double, 6, 6>;
using Vector6d = Eigen::Matrix<double, 6, 1>;

/// Planar vehicle state. Pose in the global frame, velocities in the body frame.
struct VehicleState
{
  double x{0.0};    // [m]
  double y{0.0};    // [m]
  double psi{0.0};  // heading [rad], kept in (-pi, pi]
  double vx{0.0};   // longitudinal speed [m/s]
  double vy{0.0};   // lateral speed [m/s]
  double r{0.0};    // yaw rate [rad/s]

  static constexpr int kDim = 6;

  Vector6d to_vector() const;
  static VehicleState from_vector(const Vector6d & v);
};

/// Linear single-track model parameters.
struct VehicleParams
{
  double mass{1500.0};         // [kg]
  double yaw_inertia{2500.0};  // [kg m^2]
  double lf{1.2};              // CoG to front axle [m]
  double lr{1.4};              // CoG to rear axle [m]
  double cf{80000.0};          // front cornering stiffness [N/rad]
  double cr{80000.0};          // rear cornering stiffness [N/rad]
  double delta_max{0.5};       // [rad]
  double ddelta_max{0.8};      // [rad/s]
  double half_width{0.9};      // body half width used for clearance checks [m]

  double wheelbase() const { return lf + lr; }

  /// Understeer gradient K = m (lr cr - lf cf) / (cf cr L).
  double understeer_gradient() const;

  /// Throws ValidationError naming `path`.<field> on the first violated invariant.
  void validate(const std::string & path = "vehicle") const;
};

struct ControlInput
{
  double delta_f{0.0};  // front wheel steering angle [rad]
};

/// The five objective indices, in fixed order.
struct FeatureVector
{
  double v_long{0.0};      // [m/s]
  double a_lat{0.0};       // [m/s^2]
  double yaw_rate{0.0};    // [rad/s]
  double a_lat_rate{0.0};  // lateral jerk [m/s^3]
  double yaw_accel{0.0};   // [rad/s^2]

  static constexpr int kDim = 5;

  std::array<double, kDim> to_array() const { return {v_long, a_lat, yaw_rate, a_lat_rate, yaw_accel}; }
  static FeatureVector from_array(const std::array<double, kDim> & a)
  {
    return {a[0], a[1], a[2], a[3], a[4]};
  }
  bool is_finite() const;
};

struct TimedState
{
  VehicleState state;
  double t{0.0};
};

struct Linearization
{
  Matrix6d a;  // d next_state / d state
  Vector6d b;  // d next_state / d delta_f
};

/// Minimum longitudinal speed accepted by the dynamics (1/vx terms).
inline constexpr double kMinSpeed = 0.5;

/// Wraps an angle into (-pi, pi].
double normalize_angle(double angle);

/// Continuous-time state derivative of the single-track model (vx held constant).
Vector6d state_derivative(const VehicleState & state, ControlInput input, const VehicleParams & params);

/// One forward-Euler step of length dt in (0, 0.1].
VehicleState step_dynamic(
  const VehicleState & state, ControlInput input, const VehicleParams & params, double dt);

/// Exact Jacobians of step_dynamic at (state, input).
Linearization linearize(
  const VehicleState & state, ControlInput input, const VehicleParams & params, double dt);

/// Body-frame lateral acceleration vy_dot + vx * r at (state, input).
double lateral_acceleration(const VehicleState & state, ControlInput input, const VehicleParams & params);

/// Sideslip angle atan(vy / vx).
double sideslip(const VehicleState & state);

/// Objective indices for every sample of a uniformly sampled log. Derivatives are
/// central differences in the interior and second-order one-sided at the ends.
std::vector<FeatureVector> compute_features(std::span<const TimedState> log);

}  // namespace comfort_avoid

#endif  // COMFORT_AVOID__VEHICLE_MODEL_HPP_
