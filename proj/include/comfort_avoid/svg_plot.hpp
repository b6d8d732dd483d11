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

#ifndef COMFORT_AVOID__SVG_PLOT_HPP_
#define COMFORT_AVOID__SVG_PLOT_HPP_

#include "comfort_avoid/mpc_planner.hpp"
#include "comfort_avoid/mpc_tracker.hpp"
#include "comfort_avoid/potential_field.hpp"
#include "comfort_avoid/sim_log.hpp"

#include <string>
#include <utility>
#include <vector>

namespace comfort_avoid
{

/// Overhead view: lane lines, obstacle rectangles (at t = 0) and the driven path.
std::string trajectory_svg(const SimLog & log);

/// Four stacked panels (delta_f, a_lat, beta, r) against time, with the
/// tracker bounds drawn as dashed horizontal lines.
std::string time_series_svg(const SimLog & log, const TrackerBounds & bounds = {});

struct FieldGridSpec
{
  double x_min{0.0};
  double x_max{100.0};
  double y_min{-1.75};
  double y_max{5.25};
  int nx{200};
  int ny{56};
  double ego_speed{8.333};  // [m/s], shapes the obstacle ellipses
};

/// Total potential sampled at cell centers; values[j][i] is row j (y), column i (x).
struct FieldGrid
{
  FieldGridSpec spec;
  std::vector<std::vector<double>> values;

  double cell_x(int i) const;
  double cell_y(int j) const;
};

FieldGrid sample_field(
  const std::vector<Obstacle> & obstacles, const RoadGeometry & road, const FieldParams & fields,
  const FieldGridSpec & spec);

std::string field_heatmap_svg(const FieldGrid & grid, const RoadGeometry & road);

/// Long-form grid dump, one `x,y,value` row per cell.
std::string field_grid_csv(const FieldGrid & grid);

/// One polyline per run, labelled in a legend; obstacles from the first run.
std::string overlay_svg(const std::vector<std::pair<std::string, SimLog>> & runs);

/// Writes trajectory.svg and timeseries.svg into out_dir (created if needed).
std::vector<std::string> render_plots(
  const SimLog & log, const std::string & out_dir, const TrackerBounds & bounds = {});

}  // namespace comfort_avoid

#endif  // COMFORT_AVOID__SVG_PLOT_HPP_
