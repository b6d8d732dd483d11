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

#ifndef COMFORT_AVOID__SIM_LOG_HPP_
#define COMFORT_AVOID__SIM_LOG_HPP_

#include "comfort_avoid/comfort_model.hpp"
#include "comfort_avoid/mpc_planner.hpp"
#include "comfort_avoid/potential_field.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace comfort_avoid
{

/// One tracker-rate sample of the closed loop.
struct SimRow
{
  double t{0.0};
  double x{0.0};
  double y{0.0};
  double psi{0.0};
  double vx{0.0};
  double vy{0.0};
  double r{0.0};
  double delta_f{0.0};
  double a_lat{0.0};
  double beta{0.0};
  double plan_offset{0.0};
  double j_all{0.0};
  ComfortClass comfort_class{ComfortClass::kGood};

  bool operator==(const SimRow &) const = default;
};

/// What the planner decided at one replanning instant.
struct PlanRecord
{
  double t{0.0};
  double x{0.0};
  double v{0.0};
  double target_offset{0.0};
  double transition_gain{0.0};
  bool feasible{true};
  bool initiates_deviation{false};
  double deviation_onset_x{0.0};  // NaN when the chosen path never deviates
  double plpts_gap{0.0};          // NaN when no obstacle is ahead of the onset
  double plpts_required{0.0};
  CostBreakdown cost;
};

struct SimMetadata
{
  std::string scenario_name;
  std::string config_hash;
  std::string geometry_hash;
  std::uint64_t seed{0};
  std::string version;
  std::string created;  // wall-clock timestamp; the only non-deterministic field
  double dt{0.0};
  double speed_kmh{0.0};
  double vehicle_half_width{0.9};
  double clearance_margin{0.5};
  RoadGeometry road;
  std::vector<Obstacle> obstacles;
};

struct SimLog
{
  std::vector<SimRow> rows;
  std::vector<PlanRecord> plans;
  SimMetadata meta;
};

inline constexpr const char * kLogHeader =
  "t,x,y,psi,vx,vy,r,delta_f,a_lat,beta,plan_offset,j_all,comfort_class";

/// Library version written into log metadata.
const char * library_version();

/// CSV text of the rows, 9 significant digits per number.
std::string log_csv_text(const std::vector<SimRow> & rows);
std::vector<SimRow> parse_log_csv(const std::string & text, const std::string & origin = "log");

std::string plans_csv_text(const std::vector<PlanRecord> & plans);
std::string metadata_text(const SimMetadata & meta);
SimMetadata parse_metadata(const std::string & text, const std::string & origin = "metadata");

/// Hash of the road and obstacle layout, used to detect mismatched comparisons.
std::string geometry_hash(const RoadGeometry & road, const std::vector<Obstacle> & obstacles);

/// `<csv_path>.meta.json` and `<csv_path minus .csv>_plans.csv`.
std::string metadata_path(const std::string & csv_path);
std::string plans_path(const std::string & csv_path);

/// Writes the CSV plus its metadata and plan sidecars.
void save_log(const std::string & csv_path, const SimLog & log);

/// Reads a CSV log; the metadata sidecar is loaded when present.
SimLog load_log(const std::string & csv_path);

/// Whether the log carries geometry (from a metadata sidecar).
bool has_geometry(const SimLog & log);

std::string read_text_file(const std::string & path);
void write_text_file(const std::string & path, const std::string & text);

}  // namespace comfort_avoid

#endif  // COMFORT_AVOID__SIM_LOG_HPP_
