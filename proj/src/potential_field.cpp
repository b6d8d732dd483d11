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

#include "comfort_avoid/potential_field.hpp"

#include "comfort_avoid/error.hpp"

#include <cmath>

namespace comfort_avoid
{

namespace
{

void require(bool ok, const std::string & path, const char * what)
{
  if (!ok) {
    throw ValidationError(what, path);
  }
}

double obstacle_sigma_x(double ego_speed, const Obstacle & obs, const ObstacleFieldParams & p)
{
  return p.sigma_x0 + p.speed_gain_kv * std::abs(ego_speed - obs.speed);
}

}  // namespace

void Obstacle::validate(const std::string & path) const
{
  require(std::isfinite(xo), path + ".xo", "must be finite");
  require(std::isfinite(yo), path + ".yo", "must be finite");
  require(half_length > 0.0, path + ".half_length", "must be positive");
  require(half_width > 0.0, path + ".half_width", "must be positive");
  require(speed >= 0.0, path + ".speed", "must be non-negative");
}

RoadGeometry::RoadGeometry(std::vector<double> y_boundaries) : boundaries_(std::move(y_boundaries))
{
  if (boundaries_.size() < 2) {
    throw ValidationError("a road needs at least two boundaries", "road.y_boundaries");
  }
  for (std::size_t i = 0; i < boundaries_.size(); ++i) {
    if (!std::isfinite(boundaries_[i])) {
      throw ValidationError("boundaries must be finite", "road.y_boundaries");
    }
    if (i > 0 && !(boundaries_[i] > boundaries_[i - 1])) {
      throw ValidationError("boundaries must be strictly increasing", "road.y_boundaries");
    }
  }
  centers_.reserve(boundaries_.size() - 1);
  for (std::size_t i = 0; i + 1 < boundaries_.size(); ++i) {
    centers_.push_back(0.5 * (boundaries_[i] + boundaries_[i + 1]));
  }
}

RoadGeometry RoadGeometry::uniform(double lane_width, int num_lanes, double y_min)
{
  if (!(lane_width > 0.0)) {
    throw ValidationError("must be positive", "road.lane_width");
  }
  if (num_lanes < 1) {
    throw ValidationError("must be at least 1", "road.num_lanes");
  }
  std::vector<double> b(static_cast<std::size_t>(num_lanes) + 1);
  for (int i = 0; i <= num_lanes; ++i) {
    b[static_cast<std::size_t>(i)] = y_min + lane_width * i;
  }
  return RoadGeometry(std::move(b));
}

void ObstacleFieldParams::validate(const std::string & path) const
{
  require(weight_s >= 0.0, path + ".weight_s", "must be non-negative");
  require(sigma_x0 > 0.0, path + ".sigma_x0", "must be positive");
  require(sigma_y > 0.0, path + ".sigma_y", "must be positive");
  require(speed_gain_kv >= 0.0, path + ".speed_gain_kv", "must be non-negative");
}

void RoadFieldParams::validate(const std::string & path) const
{
  require(weight_l >= 0.0, path + ".weight_l", "must be non-negative");
  require(sigma_b > 0.0, path + ".sigma_b", "must be positive");
}

double obstacle_potential(
  double px, double py, double ego_speed, const Obstacle & obs, const ObstacleFieldParams & params)
{
  const double sx = obstacle_sigma_x(ego_speed, obs, params);
  const double dx = px - obs.xo;
  const double dy = py - obs.yo;
  const double q = dx * dx / (2.0 * sx * sx) + dy * dy / (2.0 * params.sigma_y * params.sigma_y);
  return params.weight_s * std::exp(-q);
}

double road_potential(double py, const RoadGeometry & road, const RoadFieldParams & params)
{
  const double inv = 1.0 / (2.0 * params.sigma_b * params.sigma_b);
  double sum = 0.0;
  for (double yb : road.y_boundaries()) {
    const double d = py - yb;
    sum += std::exp(-d * d * inv);
  }
  return params.weight_l * sum;
}

double total_potential(
  double px, double py, double ego_speed, std::span<const Obstacle> obstacles,
  const RoadGeometry & road, const ObstacleFieldParams & oparams, const RoadFieldParams & rparams)
{
  double u = road_potential(py, road, rparams);
  for (const auto & obs : obstacles) {
    u += obstacle_potential(px, py, ego_speed, obs, oparams);
  }
  return u;
}

FieldGradient field_gradient(
  double px, double py, double ego_speed, std::span<const Obstacle> obstacles,
  const RoadGeometry & road, const ObstacleFieldParams & oparams, const RoadFieldParams & rparams)
{
  FieldGradient g;
  for (const auto & obs : obstacles) {
    const double sx = obstacle_sigma_x(ego_speed, obs, oparams);
    const double sy = oparams.sigma_y;
    const double u = obstacle_potential(px, py, ego_speed, obs, oparams);
    g.dx -= u * (px - obs.xo) / (sx * sx);
    g.dy -= u * (py - obs.yo) / (sy * sy);
  }
  const double sb2 = rparams.sigma_b * rparams.sigma_b;
  for (double yb : road.y_boundaries()) {
    const double d = py - yb;
    g.dy -= rparams.weight_l * std::exp(-d * d / (2.0 * sb2)) * d / sb2;
  }
  return g;
}

}  // namespace comfort_avoid
