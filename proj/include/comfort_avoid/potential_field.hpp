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

#ifndef COMFORT_AVOID__POTENTIAL_FIELD_HPP_
#define COMFORT_AVOID__POTENTIAL_FIELD_HPP_

#include <span>
#include <string>
#include <vector>

namespace comfort_avoid
{

/// Axis-aligned rectangular obstacle moving along +x at constant speed.
struct Obstacle
{
  double xo{0.0};  // center [m]
  double yo{0.0};  // center [m]
  double half_length{2.25};
  double half_width{0.9};
  double speed{0.0};  // [m/s], 0 for static

  /// Center after `t` seconds of constant-velocity motion.
  Obstacle at_time(double t) const
  {
    Obstacle o = *this;
    o.xo += speed * t;
    return o;
  }

  void validate(const std::string & path) const;
};

/// Straight road along +x with lateral boundaries at y_boundaries.
class RoadGeometry
{
public:
  RoadGeometry() : RoadGeometry(std::vector<double>{-1.75, 1.75, 5.25}) {}
  explicit RoadGeometry(std::vector<double> y_boundaries);

  /// `num_lanes` equal lanes whose lowest boundary sits at `y_min`.
  static RoadGeometry uniform(double lane_width, int num_lanes, double y_min);

  const std::vector<double> & y_boundaries() const { return boundaries_; }
  const std::vector<double> & lane_centers() const { return centers_; }
  int num_lanes() const { return static_cast<int>(centers_.size()); }
  double lane_width(int lane) const { return boundaries_.at(lane + 1) - boundaries_.at(lane); }
  double y_min() const { return boundaries_.front(); }
  double y_max() const { return boundaries_.back(); }
  bool contains(double y) const { return y >= y_min() && y <= y_max(); }

private:
  std::vector<double> boundaries_;
  std::vector<double> centers_;
};

struct ObstacleFieldParams
{
  double weight_s{1.0};
  double sigma_x0{6.0};       // [m]
  double sigma_y{1.2};        // [m]
  double speed_gain_kv{0.6};  // [s]

  void validate(const std::string & path) const;
};

struct RoadFieldParams
{
  double weight_l{1.0};
  double sigma_b{0.8};  // [m]

  void validate(const std::string & path) const;
};

struct FieldGradient
{
  double dx{0.0};
  double dy{0.0};
};

/// Gaussian pressure around an obstacle; the longitudinal spread widens with the
/// relative speed. Value lies in [0, weight_s].
double obstacle_potential(
  double px, double py, double ego_speed, const Obstacle & obs, const ObstacleFieldParams & params);

/// Sum of Gaussian ridges centered on every road boundary.
double road_potential(double py, const RoadGeometry & road, const RoadFieldParams & params);

/// Sum of all obstacle fields plus the road field.
double total_potential(
  double px, double py, double ego_speed, std::span<const Obstacle> obstacles,
  const RoadGeometry & road, const ObstacleFieldParams & oparams, const RoadFieldParams & rparams);

/// Analytic gradient of total_potential.
FieldGradient field_gradient(
  double px, double py, double ego_speed, std::span<const Obstacle> obstacles,
  const RoadGeometry & road, const ObstacleFieldParams & oparams, const RoadFieldParams & rparams);

}  // namespace comfort_avoid

#endif  // COMFORT_AVOID__POTENTIAL_FIELD_HPP_
