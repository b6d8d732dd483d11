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

#include "comfort_avoid/simulation.hpp"

#include "comfort_avoid/error.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <optional>

namespace comfort_avoid
{

namespace
{

std::string utc_timestamp()
{
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<Obstacle> obstacles_at(const std::vector<Obstacle> & obstacles, double t)
{
  std::vector<Obstacle> out;
  out.reserve(obstacles.size());
  for (const auto & o : obstacles) {
    out.push_back(o.at_time(t));
  }
  return out;
}

}  // namespace

std::vector<ComfortClass> classify_rows(const std::vector<SimRow> & rows, const ClassifierModel & model)
{
  std::vector<TimedState> states;
  states.reserve(rows.size());
  for (const auto & r : rows) {
    states.push_back({{r.x, r.y, r.psi, r.vx, r.vy, r.r}, r.t});
  }
  const auto features = compute_features(states);
  std::vector<ComfortClass> out;
  out.reserve(features.size());
  for (const auto & f : features) {
    out.push_back(classify(model, comfort_input(f)));
  }
  return out;
}

SimLog run_scenario(const ScenarioConfig & cfg) { return run_scenario(cfg, build_classifier(cfg)); }

SimLog run_scenario(const ScenarioConfig & cfg, const ClassifierModel & model)
{
  cfg.validate();
  const double dt = cfg.tracker.dt;
  const int steps = static_cast<int>(std::lround(cfg.duration / dt));
  const int replan_every = static_cast<int>(std::lround(cfg.planner.replan_period / dt));

  SimLog log;
  log.meta.scenario_name = cfg.name;
  log.meta.config_hash = fnv1a_hex(scenario_to_text(cfg));
  log.meta.geometry_hash = geometry_hash(cfg.road, cfg.obstacles);
  log.meta.seed = cfg.seed;
  log.meta.version = library_version();
  log.meta.created = utc_timestamp();
  log.meta.dt = dt;
  log.meta.speed_kmh = cfg.speed_kmh;
  log.meta.vehicle_half_width = cfg.vehicle.half_width;
  log.meta.clearance_margin = cfg.planner.clearance_margin;
  log.meta.road = cfg.road;
  log.meta.obstacles = cfg.obstacles;
  log.rows.reserve(static_cast<std::size_t>(steps) + 1);

  VehicleState state = cfg.initial_state();
  ControlInput u{0.0};
  PlanResult current;
  std::optional<ReferencePath> reference;

  for (int k = 0; k <= steps; ++k) {
    const double t = dt * k;
    if (k % replan_every == 0) {
      const auto obstacles = obstacles_at(cfg.obstacles, t);
      current = plan(state, obstacles, cfg.road, cfg.fields, model, cfg.planner, cfg.vehicle, cfg.plpts);
      reference.emplace(current.chosen.reference());
      PlanRecord rec;
      rec.t = t;
      rec.x = state.x;
      rec.v = state.vx;
      rec.target_offset = current.chosen.target_offset;
      rec.transition_gain = current.chosen.transition_gain;
      rec.feasible = current.feasible;
      rec.initiates_deviation = current.chosen.initiates_deviation;
      rec.deviation_onset_x = current.chosen.deviation_onset_x;
      rec.plpts_gap = current.chosen.plpts_gap;
      rec.plpts_required = plpts_distance(ms_to_kmh(state.vx), cfg.plpts);
      rec.cost = current.cost_breakdown;
      log.plans.push_back(rec);
    }
    const TrackerOutput out = track_step(state, *reference, cfg.vehicle, cfg.tracker, u);
    u = out.u;

    SimRow row;
    row.t = t;
    row.x = state.x;
    row.y = state.y;
    row.psi = state.psi;
    row.vx = state.vx;
    row.vy = state.vy;
    row.r = state.r;
    row.delta_f = u.delta_f;
    row.a_lat = lateral_acceleration(state, u, cfg.vehicle);
    row.beta = sideslip(state);
    row.plan_offset = current.chosen.target_offset;
    row.j_all = current.cost_breakdown.j_all;
    log.rows.push_back(row);

    if (k < steps) {
      state = step_dynamic(state, u, cfg.vehicle, dt);
      if (!std::isfinite(state.y) || !std::isfinite(state.psi)) {
        throw RuntimeError("simulation diverged at t = " + std::to_string(t));
      }
      if (!cfg.road.contains(state.y)) {
        throw RuntimeError("vehicle left the road at t = " + std::to_string(t + dt));
      }
    }
  }

  const auto classes = classify_rows(log.rows, model);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    log.rows[i].comfort_class = classes[i];
  }
  return log;
}

}  // namespace comfort_avoid
