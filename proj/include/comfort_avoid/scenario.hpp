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

#ifndef COMFORT_AVOID__SCENARIO_HPP_
#define COMFORT_AVOID__SCENARIO_HPP_

#include "comfort_avoid/comfort_model.hpp"
#include "comfort_avoid/mpc_planner.hpp"
#include "comfort_avoid/mpc_tracker.hpp"
#include "comfort_avoid/potential_field.hpp"
#include "comfort_avoid/vehicle_model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace comfort_avoid
{

struct ClassifierSpec
{
  ClassifierKind kind{ClassifierKind::kMahalanobis};
  std::optional<std::string> dataset;  // CSV path; synthetic data when absent
  double synth_separation{2.0};
  int synth_n_per_class{60};
  double synth_label_noise{0.0};
  ClassThresholds thresholds;
  double temperature{1.0};
};

/// Declarative description of one closed-loop experiment.
///
/// Scenario files are JSON documents. Every key is optional and falls back to
/// the defaults of the corresponding struct; unknown keys are rejected. See
/// scenarios/README.md for the schema.
struct ScenarioConfig
{
  std::string name{"scenario"};
  std::uint64_t seed{1};
  double speed_kmh{30.0};
  double duration{20.0};  // [s]
  int ego_lane{0};
  double initial_x{0.0};
  double initial_lateral_offset{0.0};  // from the ego lane center [m]

  VehicleParams vehicle;
  RoadGeometry road;
  std::vector<Obstacle> obstacles;
  PlannerConfig planner;
  TrackerConfig tracker;
  FieldParams fields;
  ClassifierSpec classifier;
  PlptsTable plpts;

  /// Throws ValidationError with the offending field path.
  void validate() const;

  VehicleState initial_state() const;
  double ego_lane_center() const { return road.lane_centers().at(static_cast<std::size_t>(ego_lane)); }
};

/// Parses scenario text. Relative dataset paths are resolved against `base_dir`.
ScenarioConfig parse_scenario(const std::string & text, const std::string & base_dir = ".");
ScenarioConfig load_scenario(const std::string & path);

/// Loads a scenario after setting `dotted_path` (e.g. "planner.weights.s_obstacle")
/// to `value` in the document.
ScenarioConfig load_scenario_with_override(
  const std::string & path, const std::string & dotted_path, double value);

/// Canonical text of the fully resolved configuration (defaults filled in).
std::string scenario_to_text(const ScenarioConfig & cfg);

/// 64-bit FNV-1a of `text`, printed as 16 hex digits.
std::string fnv1a_hex(const std::string & text);

/// Trains the classifier described by cfg.classifier (synthetic data seeded by cfg.seed).
ClassifierModel build_classifier(const ScenarioConfig & cfg);

}  // namespace comfort_avoid

#endif  // COMFORT_AVOID__SCENARIO_HPP_
