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

#include "comfort_avoid/report.hpp"

#include "comfort_avoid/error.hpp"
#include "comfort_avoid/mpc_planner.hpp"
#include "comfort_avoid/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace comfort_avoid
{

namespace
{

std::string fmt(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::vector<FeatureVector> row_features(const SimLog & log)
{
  std::vector<TimedState> states;
  states.reserve(log.rows.size());
  for (const auto & r : log.rows) {
    states.push_back({{r.x, r.y, r.psi, r.vx, r.vy, r.r}, r.t});
  }
  return compute_features(states);
}

double row_clearance(const SimRow & r, const SimMetadata & meta)
{
  double c = std::numeric_limits<double>::infinity();
  for (const auto & o : meta.obstacles) {
    c = std::min(c, obstacle_clearance(r.x, r.y, o.at_time(r.t), meta.vehicle_half_width));
  }
  return c;
}

}  // namespace

ComfortReport comfort_report(const SimLog & log, const ClassifierModel & model)
{
  if (log.rows.empty()) {
    throw ValidationError("log has no rows", "log");
  }
  ComfortReport rep;
  for (ComfortClass c : classify_rows(log.rows, model)) {
    switch (c) {
      case ComfortClass::kGood:
        ++rep.good;
        break;
      case ComfortClass::kNormal:
        ++rep.normal;
        break;
      case ComfortClass::kPoor:
        ++rep.poor;
        break;
    }
    ++rep.total;
  }
  return rep;
}

std::string comfort_report_text(const ComfortReport & r)
{
  return "good " + std::to_string(r.good) + "\nnormal " + std::to_string(r.normal) + "\npoor " +
         std::to_string(r.poor) + "\ntotal " + std::to_string(r.total) + "\n";
}

double min_clearance(const SimLog & log)
{
  if (!has_geometry(log)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  double c = std::numeric_limits<double>::infinity();
  for (const auto & r : log.rows) {
    c = std::min(c, row_clearance(r, log.meta));
  }
  return c;
}

int collision_count(const SimLog & log)
{
  if (!has_geometry(log)) {
    return 0;
  }
  int n = 0;
  for (const auto & r : log.rows) {
    if (row_clearance(r, log.meta) <= 0.0) {
      ++n;
    }
  }
  return n;
}

std::optional<double> deviation_onset_distance(const SimLog & log, double threshold)
{
  if (log.rows.empty()) {
    return std::nullopt;
  }
  const double y0 = log.rows.front().y;
  for (const auto & r : log.rows) {
    if (std::abs(r.y - y0) > threshold) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto & o : log.meta.obstacles) {
        const Obstacle now = o.at_time(r.t);
        const double rear = now.xo - now.half_length;
        if (rear > r.x) {
          best = std::min(best, rear - r.x);
        }
      }
      if (std::isfinite(best)) {
        return best;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

RunMetrics run_metrics(const SimLog & log)
{
  RunMetrics m;
  m.rows = static_cast<int>(log.rows.size());
  if (log.rows.empty()) {
    return m;
  }
  for (const auto & r : log.rows) {
    m.max_abs_a_lat = std::max(m.max_abs_a_lat, std::abs(r.a_lat));
    m.max_abs_beta = std::max(m.max_abs_beta, std::abs(r.beta));
    m.max_abs_delta_f = std::max(m.max_abs_delta_f, std::abs(r.delta_f));
    m.max_abs_yaw_rate = std::max(m.max_abs_yaw_rate, std::abs(r.r));
  }
  if (log.rows.size() >= 3) {
    for (const auto & f : row_features(log)) {
      m.max_abs_a_lat_rate = std::max(m.max_abs_a_lat_rate, std::abs(f.a_lat_rate));
    }
  }
  m.min_clearance = min_clearance(log);
  m.collision_steps = collision_count(log);
  m.final_lateral_offset = log.rows.back().y - log.rows.front().y;
  return m;
}

Comparison compare_runs(const SimLog & a, const SimLog & b, const ClassifierModel & model)
{
  Comparison c;
  if (has_geometry(a) && has_geometry(b)) {
    if (a.meta.geometry_hash != b.meta.geometry_hash) {
      c.warnings.push_back("logs come from different road/obstacle geometry");
    }
  } else {
    c.warnings.push_back("geometry metadata missing; clearance not evaluated");
  }
  if (a.rows.size() != b.rows.size()) {
    c.warnings.push_back("logs differ in length");
  }
  c.report_a = comfort_report(a, model);
  c.report_b = comfort_report(b, model);
  c.metrics_a = run_metrics(a);
  c.metrics_b = run_metrics(b);
  return c;
}

std::string comparison_text(const Comparison & c)
{
  std::string out;
  const auto line = [&out](const std::string & name, const std::string & a, const std::string & b) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-22s %14s %14s\n", name.c_str(), a.c_str(), b.c_str());
    out += buf;
  };
  line("metric", "a", "b");
  line("rows", std::to_string(c.metrics_a.rows), std::to_string(c.metrics_b.rows));
  line("good", std::to_string(c.report_a.good), std::to_string(c.report_b.good));
  line("normal", std::to_string(c.report_a.normal), std::to_string(c.report_b.normal));
  line("poor", std::to_string(c.report_a.poor), std::to_string(c.report_b.poor));
  line("total", std::to_string(c.report_a.total), std::to_string(c.report_b.total));
  line("max_abs_a_lat", fmt(c.metrics_a.max_abs_a_lat), fmt(c.metrics_b.max_abs_a_lat));
  line("max_abs_jerk", fmt(c.metrics_a.max_abs_a_lat_rate), fmt(c.metrics_b.max_abs_a_lat_rate));
  line("max_abs_beta", fmt(c.metrics_a.max_abs_beta), fmt(c.metrics_b.max_abs_beta));
  line("max_abs_delta_f", fmt(c.metrics_a.max_abs_delta_f), fmt(c.metrics_b.max_abs_delta_f));
  line("min_clearance", fmt(c.metrics_a.min_clearance), fmt(c.metrics_b.min_clearance));
  line("collision_steps", std::to_string(c.metrics_a.collision_steps), std::to_string(c.metrics_b.collision_steps));
  for (const auto & w : c.warnings) {
    out += "warning: " + w + "\n";
  }
  return out;
}

std::string comparison_csv(const Comparison & c)
{
  std::string out = "run,rows,good,normal,poor,total,max_abs_a_lat,max_abs_jerk,max_abs_beta,max_abs_delta_f,"
                    "min_clearance,collision_steps\n";
  const auto row = [&out](const char * name, const ComfortReport & r, const RunMetrics & m) {
    out += std::string(name) + "," + std::to_string(m.rows) + "," + std::to_string(r.good) + "," +
           std::to_string(r.normal) + "," + std::to_string(r.poor) + "," + std::to_string(r.total) + "," +
           fmt(m.max_abs_a_lat) + "," + fmt(m.max_abs_a_lat_rate) + "," + fmt(m.max_abs_beta) + "," +
           fmt(m.max_abs_delta_f) + "," + fmt(m.min_clearance) + "," + std::to_string(m.collision_steps) + "\n";
  };
  row("a", c.report_a, c.metrics_a);
  row("b", c.report_b, c.metrics_b);
  return out;
}

}  // namespace comfort_avoid
