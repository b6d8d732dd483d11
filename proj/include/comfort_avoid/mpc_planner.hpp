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

#ifndef COMFORT_AVOID__MPC_PLANNER_HPP_
#define COMFORT_AVOID__MPC_PLANNER_HPP_

#include "comfort_avoid/comfort_model.hpp"
#include "comfort_avoid/mpc_tracker.hpp"
#include "comfort_avoid/potential_field.hpp"
#include "comfort_avoid/vehicle_model.hpp"

#include <array>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace comfort_avoid
{

/// Weights of the four cost terms: tracking, obstacle field, road field, comfort.
struct PlannerWeights
{
  double q_track{1.0};
  double s_obstacle{20.0};
  double l_road{1.0};
  double r_confidence{0.0};
};

struct PlannerConfig
{
  double horizon_t{3.0};  // [s]
  double dt{0.1};         // rollout sample time [s]
  PlannerWeights weights;
  std::vector<double> lateral_offsets{-3.5, -1.75, 0.0, 1.75, 3.5};  // from reference_y [m]
  double transition_length_gain{1.5};
  // Optional list of gains; when non-empty every offset is rolled out once per gain.
  std::vector<double> transition_length_gains;
  double clearance_margin{0.5};  // [m]
  double replan_period{0.2};     // [s]
  double reference_y{0.0};       // lateral position of the reference lane center [m]

  std::vector<double> gains() const;
  int rollout_length() const;

  void validate(const std::string & path = "planner") const;
};

/// Speed-dependent distance to the obstacle by which evasive steering has to
/// start for occupants to stay at ease.
struct PlptsTable
{
  std::vector<std::pair<double, double>> anchors{{10.0, 7.67}, {30.0, 8.65}, {60.0, 15.27}, {80.0, 18.15}};

  void validate(const std::string & path = "plpts") const;
};

/// Piecewise-linear in speed [km/h], clamped outside the anchor range.
double plpts_distance(double speed_kmh, const PlptsTable & table = {});

/// Quintic lateral transition y(s) over longitudinal distance s in [0, length],
/// constant afterwards. Start value/slope/curvature come from the vehicle; the
/// end has zero slope and curvature.
struct LateralProfile
{
  double x0{0.0};
  double length{1.0};
  std::array<double, 6> coeffs{};  // y(s) = sum c_i s^i

  static LateralProfile make(double x0, double y0, double slope0, double curvature0, double target_y, double length);

  double y(double s) const;
  double dy(double s) const;
  double ddy(double s) const;
};

struct CandidatePath
{
  double target_offset{0.0};
  double target_y{0.0};
  double transition_gain{0.0};
  LateralProfile profile;
  std::vector<PathSample> states;       // one per rollout step, starting at the vehicle
  std::vector<FeatureVector> features;  // signed, one per state
  bool feasible{true};
  std::string infeasible_reason;
  double deviation_onset_x{std::numeric_limits<double>::quiet_NaN()};  // NaN if it never deviates
  // True when the vehicle is laterally at rest and this candidate starts a new
  // deviation; only such candidates are held to the PLPTS distance.
  bool initiates_deviation{false};
  double plpts_gap{std::numeric_limits<double>::quiet_NaN()};  // onset to the nearest obstacle ahead

  /// Dense reference for the tracker, sampled every `spacing` metres along x.
  ReferencePath reference(double spacing = 0.25, double extra_length = 20.0) const;
};

struct CostBreakdown
{
  double j_track{0.0};
  double j_obstacle{0.0};
  double j_road{0.0};
  double j_confidence{0.0};
  double j_all{0.0};
};

struct FieldParams
{
  ObstacleFieldParams obstacle;
  RoadFieldParams road;

  void validate(const std::string & path = "fields") const;
};

struct CandidateEvaluation
{
  CandidatePath candidate;
  CostBreakdown cost;
};

struct PlanResult
{
  CandidatePath chosen;
  CostBreakdown cost_breakdown;
  std::vector<ComfortClass> per_point_class;
  bool feasible{true};
  std::vector<CandidateEvaluation> evaluated;
};

/// Distance from (px, py) to the obstacle rectangle grown by `half_width` on each side.
double obstacle_clearance(double px, double py, const Obstacle & obs, double half_width);

std::vector<CandidatePath> generate_candidates(
  const VehicleState & state, const RoadGeometry & road, const PlannerConfig & cfg,
  const PlptsTable & table = {});

CostBreakdown evaluate_cost(
  const CandidatePath & candidate, std::span<const Obstacle> obstacles, const RoadGeometry & road,
  const FieldParams & fields, const ClassifierModel & model, const PlannerConfig & cfg);

PlanResult plan(
  const VehicleState & state, std::span<const Obstacle> obstacles, const RoadGeometry & road,
  const FieldParams & fields, const ClassifierModel & model, const PlannerConfig & cfg,
  const VehicleParams & vehicle, const PlptsTable & table = {});

/// Unit conversions.
inline constexpr double kmh_to_ms(double kmh) { return kmh / 3.6; }
inline constexpr double ms_to_kmh(double ms) { return ms * 3.6; }

}  // namespace comfort_avoid

#endif  // COMFORT_AVOID__MPC_PLANNER_HPP_
