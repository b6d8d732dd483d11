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

#include "comfort_avoid/mpc_planner.hpp"

#include "comfort_avoid/error.hpp"

#include <algorithm>
#include <cmath>

namespace comfort_avoid
{

namespace
{

constexpr double kDeviationThreshold = 0.05;
constexpr double kSteadySlope = 0.02;
constexpr double kSteadyLateralAccel = 0.3;  // [m/s^2]

void require(bool ok, const std::string & path, const char * what)
{
  if (!ok) {
    throw ValidationError(what, path);
  }
}

std::vector<double> time_derivative(const std::vector<double> & f, double dt)
{
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  if (n < 3) {
    return d;
  }
  d.front() = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dt);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    d[i] = (f[i + 1] - f[i - 1]) / (2.0 * dt);
  }
  d.back() = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dt);
  return d;
}

bool nearly_equal(double a, double b)
{
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<double> PlannerConfig::gains() const
{
  return transition_length_gains.empty() ? std::vector<double>{transition_length_gain}
                                         : transition_length_gains;
}

int PlannerConfig::rollout_length() const
{
  return std::max(1, static_cast<int>(std::lround(horizon_t / dt)));
}

void PlannerConfig::validate(const std::string & path) const
{
  require(horizon_t > 0.0, path + ".horizon_t", "must be positive");
  require(dt > 0.0 && dt <= horizon_t, path + ".dt", "must lie in (0, horizon_t]");
  require(weights.q_track >= 0.0, path + ".weights.q_track", "must be non-negative");
  require(weights.s_obstacle >= 0.0, path + ".weights.s_obstacle", "must be non-negative");
  require(weights.l_road >= 0.0, path + ".weights.l_road", "must be non-negative");
  require(weights.r_confidence >= 0.0, path + ".weights.r_confidence", "must be non-negative");
  require(!lateral_offsets.empty(), path + ".lateral_offsets", "must not be empty");
  require(
    std::find(lateral_offsets.begin(), lateral_offsets.end(), 0.0) != lateral_offsets.end(),
    path + ".lateral_offsets", "must include 0");
  require(transition_length_gain > 0.0, path + ".transition_length_gain", "must be positive");
  for (double g : transition_length_gains) {
    require(g > 0.0, path + ".transition_length_gains", "must all be positive");
  }
  require(clearance_margin >= 0.0, path + ".clearance_margin", "must be non-negative");
  require(replan_period > 0.0, path + ".replan_period", "must be positive");
  require(std::isfinite(reference_y), path + ".reference_y", "must be finite");
}

void FieldParams::validate(const std::string & path) const
{
  obstacle.validate(path + ".obstacle");
  road.validate(path + ".road");
}

void PlptsTable::validate(const std::string & path) const
{
  require(!anchors.empty(), path + ".anchors", "must not be empty");
  for (std::size_t i = 1; i < anchors.size(); ++i) {
    require(anchors[i].first > anchors[i - 1].first, path + ".anchors", "speeds must be strictly increasing");
    require(
      anchors[i].second > anchors[i - 1].second, path + ".anchors", "distances must be strictly increasing");
  }
}

double plpts_distance(double speed_kmh, const PlptsTable & table)
{
  if (!(speed_kmh > 0.0)) {
    throw ValidationError("speed must be positive", "speed_kmh");
  }
  table.validate();
  const auto & a = table.anchors;
  if (speed_kmh <= a.front().first) {
    return a.front().second;
  }
  if (speed_kmh >= a.back().first) {
    return a.back().second;
  }
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (speed_kmh <= a[i].first) {
      const double w = (speed_kmh - a[i - 1].first) / (a[i].first - a[i - 1].first);
      return a[i - 1].second + w * (a[i].second - a[i - 1].second);
    }
  }
  return a.back().second;
}

// ---------------------------------------------------------------------------

LateralProfile LateralProfile::make(
  double x0, double y0, double slope0, double curvature0, double target_y, double length)
{
  if (!(length > 0.0)) {
    throw ValidationError("transition length must be positive", "planner.transition_length");
  }
  LateralProfile p;
  p.x0 = x0;
  p.length = length;
  const double c0 = y0;
  const double c1 = slope0;
  const double c2 = 0.5 * curvature0 * std::pow(1.0 + slope0 * slope0, 1.5);
  const double l = length;
  const double h = target_y - c0 - c1 * l - c2 * l * l;  // remaining offset
  const double g = -c1 - 2.0 * c2 * l;                    // remaining slope
  const double k = -2.0 * c2;                             // remaining second derivative
  p.coeffs = {
    c0,
    c1,
    c2,
    (10.0 * h - 4.0 * g * l + 0.5 * k * l * l) / (l * l * l),
    (-15.0 * h + 7.0 * g * l - k * l * l) / (l * l * l * l),
    (6.0 * h - 3.0 * g * l + 0.5 * k * l * l) / (l * l * l * l * l),
  };
  return p;
}

double LateralProfile::y(double s) const
{
  const double t = std::clamp(s, 0.0, length);
  const auto & c = coeffs;
  return c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * (c[4] + t * c[5]))));
}

double LateralProfile::dy(double s) const
{
  if (s >= length) {
    return 0.0;
  }
  const double t = std::max(s, 0.0);
  const auto & c = coeffs;
  return c[1] + t * (2.0 * c[2] + t * (3.0 * c[3] + t * (4.0 * c[4] + t * 5.0 * c[5])));
}

double LateralProfile::ddy(double s) const
{
  if (s >= length) {
    return 0.0;
  }
  const double t = std::max(s, 0.0);
  const auto & c = coeffs;
  return 2.0 * c[2] + t * (6.0 * c[3] + t * (12.0 * c[4] + t * 20.0 * c[5]));
}

ReferencePath CandidatePath::reference(double spacing, double extra_length) const
{
  const double v = states.empty() ? 0.0 : states.front().v;
  const double span = (states.empty() ? 0.0 : states.back().x - profile.x0) + extra_length;
  const int n = std::max(2, static_cast<int>(std::ceil(span / spacing)) + 1);
  std::vector<PathSample> samples(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double s = spacing * i;
    samples[static_cast<std::size_t>(i)] = {profile.x0 + s, profile.y(s), std::atan(profile.dy(s)), v};
  }
  return ReferencePath(std::move(samples));
}

double obstacle_clearance(double px, double py, const Obstacle & obs, double half_width)
{
  const double ex = std::max(0.0, std::abs(px - obs.xo) - (obs.half_length + half_width));
  const double ey = std::max(0.0, std::abs(py - obs.yo) - (obs.half_width + half_width));
  return std::hypot(ex, ey);
}

std::vector<CandidatePath> generate_candidates(
  const VehicleState & state, const RoadGeometry & road, const PlannerConfig & cfg, const PlptsTable & table)
{
  cfg.validate();
  if (!road.contains(state.y)) {
    throw ValidationError("vehicle is outside the road", "state.y");
  }
  const double v = state.vx;
  const double length_base = plpts_distance(ms_to_kmh(v), table);
  const int n = cfg.rollout_length();

  // The road runs along +x, so the heading is the path slope angle.
  const double slope0 = std::tan(std::clamp(state.psi, -1.2, 1.2));
  const double curvature0 = v > 0.0 ? state.r / v : 0.0;
  // A vehicle that is already moving sideways continues a manoeuvre started earlier.
  const bool steady = std::abs(slope0) < kSteadySlope && std::abs(v * state.r) < kSteadyLateralAccel;

  std::vector<CandidatePath> out;
  for (double gain : cfg.gains()) {
    for (double offset : cfg.lateral_offsets) {
      const double target = cfg.reference_y + offset;
      if (!road.contains(target)) {
        continue;
      }
      CandidatePath c;
      c.target_offset = offset;
      c.target_y = target;
      c.transition_gain = gain;
      c.profile = LateralProfile::make(state.x, state.y, slope0, curvature0, target, gain * length_base);

      c.states.resize(static_cast<std::size_t>(n));
      std::vector<double> a_lat(static_cast<std::size_t>(n));
      std::vector<double> yaw_rate(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) {
        const double s = v * cfg.dt * k;
        const double d1 = c.profile.dy(s);
        const double curvature = c.profile.ddy(s) / std::pow(1.0 + d1 * d1, 1.5);
        c.states[static_cast<std::size_t>(k)] = {state.x + s, c.profile.y(s), std::atan(d1), v};
        a_lat[static_cast<std::size_t>(k)] = v * v * curvature;
        yaw_rate[static_cast<std::size_t>(k)] = v * curvature;
      }
      const auto jerk = time_derivative(a_lat, cfg.dt);
      const auto yaw_accel = time_derivative(yaw_rate, cfg.dt);
      c.features.resize(static_cast<std::size_t>(n));
      for (std::size_t k = 0; k < c.states.size(); ++k) {
        c.features[k] = {v, a_lat[k], yaw_rate[k], jerk[k], yaw_accel[k]};
      }
      for (const auto & s : c.states) {
        if (std::abs(s.y - state.y) > kDeviationThreshold) {
          c.deviation_onset_x = s.x;
          c.initiates_deviation = steady;
          break;
        }
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

CostBreakdown evaluate_cost(
  const CandidatePath & candidate, std::span<const Obstacle> obstacles, const RoadGeometry & road,
  const FieldParams & fields, const ClassifierModel & model, const PlannerConfig & cfg)
{
  // The cost weights multiply the field integrals; the fields themselves are unit-weight.
  ObstacleFieldParams oparams = fields.obstacle;
  oparams.weight_s = 1.0;
  RoadFieldParams rparams = fields.road;
  rparams.weight_l = 1.0;

  CostBreakdown c;
  const double dt = cfg.dt;
  for (std::size_t k = 0; k < candidate.states.size(); ++k) {
    const PathSample & p = candidate.states[k];
    const double t = dt * static_cast<double>(k);
    const double dev = p.y - cfg.reference_y;
    c.j_track += dev * dev * dt;
    for (const auto & obs : obstacles) {
      c.j_obstacle += obstacle_potential(p.x, p.y, p.v, obs.at_time(t), oparams) * dt;
    }
    c.j_road += road_potential(p.y, road, rparams) * dt;
    c.j_confidence += (1.0 - confidence_score(model, comfort_input(candidate.features[k]))) * dt;
  }
  const auto & w = cfg.weights;
  c.j_all = w.q_track * c.j_track + w.s_obstacle * c.j_obstacle + w.l_road * c.j_road +
            w.r_confidence * c.j_confidence;
  return c;
}

PlanResult plan(
  const VehicleState & state, std::span<const Obstacle> obstacles, const RoadGeometry & road,
  const FieldParams & fields, const ClassifierModel & model, const PlannerConfig & cfg,
  const VehicleParams & vehicle, const PlptsTable & table)
{
  auto candidates = generate_candidates(state, road, cfg, table);
  if (candidates.empty()) {
    throw ValidationError("no candidate stays on the road", "planner.lateral_offsets");
  }
  const double plpts = plpts_distance(ms_to_kmh(state.vx), table);

  PlanResult result;
  result.evaluated.reserve(candidates.size());
  for (auto & c : candidates) {
    // Collision: every rollout point keeps the margin to every (moving) obstacle.
    for (std::size_t k = 0; k < c.states.size() && c.feasible; ++k) {
      const double t = cfg.dt * static_cast<double>(k);
      for (const auto & obs : obstacles) {
        if (obstacle_clearance(c.states[k].x, c.states[k].y, obs.at_time(t), vehicle.half_width) <=
            cfg.clearance_margin) {
          c.feasible = false;
          c.infeasible_reason = "collision";
          break;
        }
      }
    }
    // Steering has to start no later than the psychological last point to steer.
    if (c.initiates_deviation) {
      const double t_onset = (c.deviation_onset_x - state.x) / std::max(state.vx, kMinSpeed);
      double gap = std::numeric_limits<double>::infinity();
      for (const auto & obs : obstacles) {
        const Obstacle o = obs.at_time(t_onset);
        const double rear = o.xo - o.half_length;
        if (rear > c.deviation_onset_x) {
          gap = std::min(gap, rear - c.deviation_onset_x);
        }
      }
      if (std::isfinite(gap)) {
        c.plpts_gap = gap;
        if (gap < plpts && c.feasible) {
          c.feasible = false;
          c.infeasible_reason = "plpts";
        }
      }
    }
    const CostBreakdown cost = evaluate_cost(c, obstacles, road, fields, model, cfg);
    result.evaluated.push_back({std::move(c), cost});
  }

  const auto better = [](const CandidateEvaluation & a, const CandidateEvaluation & b) {
    if (!nearly_equal(a.cost.j_all, b.cost.j_all)) {
      return a.cost.j_all < b.cost.j_all;
    }
    const double ao = std::abs(a.candidate.target_offset);
    const double bo = std::abs(b.candidate.target_offset);
    if (ao != bo) {
      return ao < bo;
    }
    if (a.candidate.target_offset != b.candidate.target_offset) {
      return a.candidate.target_offset > b.candidate.target_offset;  // leftmost
    }
    return a.candidate.transition_gain > b.candidate.transition_gain;
  };

  const CandidateEvaluation * best = nullptr;
  for (const auto & e : result.evaluated) {
    if (e.candidate.feasible && (best == nullptr || better(e, *best))) {
      best = &e;
    }
  }
  result.feasible = best != nullptr;
  if (best == nullptr) {
    for (const auto & e : result.evaluated) {
      if (best == nullptr || e.cost.j_obstacle < best->cost.j_obstacle) {
        best = &e;
      }
    }
  }
  result.chosen = best->candidate;
  result.cost_breakdown = best->cost;
  result.per_point_class.reserve(result.chosen.features.size());
  for (const auto & f : result.chosen.features) {
    result.per_point_class.push_back(classify(model, comfort_input(f)));
  }
  return result;
}

}  // namespace comfort_avoid
