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

#ifndef COMFORT_AVOID__REPORT_HPP_
#define COMFORT_AVOID__REPORT_HPP_

#include "comfort_avoid/comfort_model.hpp"
#include "comfort_avoid/sim_log.hpp"

#include <optional>
#include <string>
#include <vector>

namespace comfort_avoid
{

struct ComfortReport
{
  int good{0};
  int normal{0};
  int poor{0};
  int total{0};

  bool operator==(const ComfortReport &) const = default;
};

/// Classifies every logged step with `model` and counts the classes.
ComfortReport comfort_report(const SimLog & log, const ClassifierModel & model);

std::string comfort_report_text(const ComfortReport & report);

/// Scalar summaries of one run. Clearance values are NaN when the log has no
/// geometry metadata.
struct RunMetrics
{
  int rows{0};
  double max_abs_a_lat{0.0};
  double max_abs_a_lat_rate{0.0};  // lateral jerk from finite differences
  double max_abs_beta{0.0};
  double max_abs_delta_f{0.0};
  double max_abs_yaw_rate{0.0};
  double min_clearance{0.0};
  int collision_steps{0};
  double final_lateral_offset{0.0};  // final y minus initial y
};

RunMetrics run_metrics(const SimLog & log);

/// Smallest distance between the vehicle footprint and any obstacle over the run.
double min_clearance(const SimLog & log);

/// Steps at which the footprint touches an obstacle.
int collision_count(const SimLog & log);

/// Distance from the vehicle to the rear face of the nearest obstacle ahead at
/// the first step where |y - y0| exceeds `threshold`. Empty if the vehicle
/// never deviates or nothing is ahead at that moment.
std::optional<double> deviation_onset_distance(const SimLog & log, double threshold = 0.1);

struct Comparison
{
  ComfortReport report_a;
  ComfortReport report_b;
  RunMetrics metrics_a;
  RunMetrics metrics_b;
  std::vector<std::string> warnings;
};

Comparison compare_runs(const SimLog & a, const SimLog & b, const ClassifierModel & model);

std::string comparison_text(const Comparison & c);
std::string comparison_csv(const Comparison & c);

}  // namespace comfort_avoid

#endif  // COMFORT_AVOID__REPORT_HPP_
