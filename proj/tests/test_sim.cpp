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

#include "comfort_avoid/error.hpp"
#include "comfort_avoid/report.hpp"
#include "comfort_avoid/scenario.hpp"
#include "comfort_avoid/sim_log.hpp"
#include "comfort_avoid/simulation.hpp"
#include "comfort_avoid/svg_plot.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <regex>
#include <string>
#include <vector>

namespace ca = comfort_avoid;
namespace fs = std::filesystem;

namespace
{

std::string scenario(const std::string & name)
{
  return std::string(COMFORT_AVOID_SOURCE_DIR) + "/scenarios/" + name;
}

fs::path scratch(const std::string & name)
{
  const fs::path p = fs::temp_directory_path() / ("comfort_avoid_test_sim_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string field_error(const std::string & text)
{
  try {
    ca::parse_scenario(text).validate();
  } catch (const ca::ValidationError & e) {
    return e.path();
  }
  return "<accepted>";
}

const ca::SimLog & single_obstacle_log()
{
  static const ca::SimLog log = ca::run_scenario(ca::load_scenario(scenario("single_obstacle_30.cfg")));
  return log;
}

ca::ScenarioConfig empty_road()
{
  auto cfg = ca::load_scenario(scenario("single_obstacle_30.cfg"));
  cfg.name = "empty_road";
  cfg.obstacles.clear();
  cfg.duration = 10.0;
  return cfg;
}

int count(const std::string & text, const std::string & needle)
{
  int n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

}  // namespace

// --- configuration ----------------------------------------------------------------

TEST(ScenarioConfig, MinimalDocumentTakesDefaults)
{
  const auto cfg = ca::parse_scenario(R"({"name": "bare"})");
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.name, "bare");
  EXPECT_EQ(cfg.speed_kmh, 30.0);
  EXPECT_EQ(cfg.tracker.np, 25);
  EXPECT_EQ(cfg.planner.replan_period, 0.2);
  EXPECT_EQ(cfg.planner.reference_y, cfg.ego_lane_center());
}

TEST(ScenarioConfig, ShippedScenariosLoadAndValidate)
{
  for (const char * name : {"single_obstacle_30.cfg", "double_cross_30.cfg", "s_sweep.cfg", "confidence_ab.cfg"}) {
    EXPECT_NO_THROW(ca::load_scenario(scenario(name)).validate()) << name;
  }
}

TEST(ScenarioConfig, UnknownKeysAreRejectedWithTheirPath)
{
  EXPECT_EQ(field_error(R"({"durration": 3})"), "durration");
  EXPECT_EQ(field_error(R"({"planner": {"weights": {"q_trak": 1}}})"), "planner.weights.q_trak");
  EXPECT_EQ(field_error(R"({"obstacles": [{"xo": 1, "colour": "red"}]})"), "obstacles[0].colour");
}

TEST(ScenarioConfig, InvariantViolationsNameTheField)
{
  EXPECT_EQ(field_error(R"({"speed_kmh": 3})"), "speed_kmh");
  EXPECT_EQ(field_error(R"({"speed_kmh": 130})"), "speed_kmh");
  EXPECT_EQ(field_error(R"({"duration": 0})"), "duration");
  EXPECT_EQ(field_error(R"({"duration": 1.005})"), "duration");
  EXPECT_EQ(field_error(R"({"ego_lane": 2})"), "ego_lane");
  EXPECT_EQ(field_error(R"({"vehicle": {"mass": -1}})"), "vehicle.mass");
  EXPECT_EQ(field_error(R"({"obstacles": [{"xo": 10}, {"xo": 20, "half_width": -1}]})"), "obstacles[1].half_width");
  EXPECT_EQ(field_error(R"({"planner": {"lateral_offsets": [1.75]}})"), "planner.lateral_offsets");
  EXPECT_EQ(field_error(R"({"planner": {"weights": {"s_obstacle": -2}}})"), "planner.weights.s_obstacle");
  EXPECT_EQ(field_error(R"({"planner": {"replan_period": 0.03}})"), "planner.replan_period");
  EXPECT_EQ(field_error(R"({"tracker": {"np": 4, "nc": 5}})"), "tracker.nc");
  EXPECT_EQ(field_error(R"({"tracker": {"bounds": {"beta": 0}}})"), "tracker.bounds.beta");
  EXPECT_EQ(field_error(R"({"fields": {"road": {"sigma_b": 0}}})"), "fields.road.sigma_b");
  EXPECT_EQ(field_error(R"({"classifier": {"kind": "svm"}})"), "classifier.kind");
  EXPECT_EQ(field_error(R"({"classifier": {"thresholds": {"t_poor": 0.8, "t_good": 0.7}}})"),
            "classifier.thresholds");
  EXPECT_EQ(field_error(R"({"plpts": {"anchors": [[10, 8], [30, 7]]}})"), "plpts.anchors");
  EXPECT_EQ(field_error(R"({"initial_lateral_offset": 9})"), "initial_lateral_offset");
  EXPECT_EQ(field_error(R"({"speed_kmh": "fast"})"), "speed_kmh");
}

TEST(ScenarioConfig, MalformedDocumentsAreValidationErrors)
{
  EXPECT_THROW(ca::parse_scenario("{ not json"), ca::ValidationError);
  EXPECT_THROW(ca::parse_scenario("[1, 2]"), ca::ValidationError);
  EXPECT_THROW(ca::load_scenario("/nonexistent/x.cfg"), ca::ValidationError);
}

TEST(ScenarioConfig, CanonicalTextIsAFixedPoint)
{
  const auto cfg = ca::load_scenario(scenario("confidence_ab.cfg"));
  const std::string once = ca::scenario_to_text(cfg);
  const std::string twice = ca::scenario_to_text(ca::parse_scenario(once));
  EXPECT_EQ(once, twice);
  EXPECT_EQ(ca::fnv1a_hex(once), ca::fnv1a_hex(twice));
  EXPECT_NE(ca::fnv1a_hex(once), ca::fnv1a_hex(once + " "));
}

TEST(ScenarioConfig, DottedOverrideReplacesOneValue)
{
  const auto base = ca::load_scenario(scenario("s_sweep.cfg"));
  const auto cfg = ca::load_scenario_with_override(scenario("s_sweep.cfg"), "planner.weights.s_obstacle", 55.0);
  EXPECT_EQ(cfg.planner.weights.s_obstacle, 55.0);
  EXPECT_EQ(cfg.planner.weights.q_track, base.planner.weights.q_track);
  EXPECT_THROW(
    ca::load_scenario_with_override(scenario("s_sweep.cfg"), "planner.weights.s_obstacel", 1.0),
    ca::ValidationError);
  EXPECT_THROW(ca::load_scenario_with_override(scenario("s_sweep.cfg"), "planner..x", 1.0), ca::ValidationError);
}

// --- closed loop ------------------------------------------------------------------

TEST(RunScenario, EmptyRoadKeepsTheLane)
{
  const auto cfg = empty_road();
  const auto log = ca::run_scenario(cfg);
  const std::size_t expected = static_cast<std::size_t>(std::lround(cfg.duration / cfg.tracker.dt)) + 1;
  ASSERT_EQ(log.rows.size(), expected);
  for (std::size_t k = 0; k < log.rows.size(); ++k) {
    ASSERT_NEAR(log.rows[k].t, static_cast<double>(k) * cfg.tracker.dt, 1e-9);
  }
  EXPECT_LT(std::abs(log.rows.back().y - log.rows.front().y), 0.05);
  for (const auto & p : log.plans) {
    EXPECT_EQ(p.target_offset, 0.0);
  }
}

TEST(RunScenario, SingleObstacleIsPassedSafelyAndTheLaneRegained)
{
  const auto & log = single_obstacle_log();
  EXPECT_EQ(ca::collision_count(log), 0);
  EXPECT_GE(ca::min_clearance(log), log.meta.clearance_margin);
  EXPECT_LT(std::abs(log.rows.back().y - log.rows.front().y), 0.1);
  EXPECT_EQ(log.plans.back().target_offset, 0.0);
  const bool changed_lane =
    std::any_of(log.rows.begin(), log.rows.end(), [](const ca::SimRow & r) { return r.y > 2.5; });
  EXPECT_TRUE(changed_lane);
}

TEST(RunScenario, PlannerRunsAtTheReplanPeriod)
{
  const auto & log = single_obstacle_log();
  const auto cfg = ca::load_scenario(scenario("single_obstacle_30.cfg"));
  ASSERT_GE(log.plans.size(), 2U);
  for (std::size_t i = 1; i < log.plans.size(); ++i) {
    EXPECT_NEAR(log.plans[i].t - log.plans[i - 1].t, cfg.planner.replan_period, 1e-9);
  }
}

TEST(RunScenario, IsDeterministic)
{
  const auto cfg = ca::load_scenario(scenario("double_cross_30.cfg"));
  const auto a = ca::run_scenario(cfg);
  const auto b = ca::run_scenario(cfg);
  EXPECT_EQ(a.rows, b.rows);
  EXPECT_EQ(ca::log_csv_text(a.rows), ca::log_csv_text(b.rows));
  EXPECT_EQ(ca::plans_csv_text(a.plans), ca::plans_csv_text(b.plans));
  EXPECT_EQ(a.meta.config_hash, b.meta.config_hash);
}

TEST(RunScenario, InvalidConfigIsRejectedBeforeRunning)
{
  auto cfg = empty_road();
  cfg.tracker.nc = 0;
  try {
    ca::run_scenario(cfg);
    FAIL() << "expected a validation error";
  } catch (const ca::ValidationError & e) {
    EXPECT_EQ(e.path(), "tracker.nc");
  }
}

// --- log files ----------------------------------------------------------------------

TEST(SimLog, CsvHeaderAndPrecision)
{
  const std::string text = ca::log_csv_text(single_obstacle_log().rows);
  EXPECT_EQ(text.substr(0, text.find('\n')), ca::kLogHeader);
  std::vector<ca::SimRow> one{{0.1, 1.0 / 3.0, -2.0, 0, 8, 0, 0, 0, 0, 0, 1.75, 12.5, ca::ComfortClass::kPoor}};
  const std::string row = ca::log_csv_text(one);
  EXPECT_NE(row.find("\n0.1,0.333333333,-2,0,8,0,0,0,0,0,1.75,12.5,poor\n"), std::string::npos) << row;
}

TEST(SimLog, CsvRoundTripComparesEqualFieldByField)
{
  const auto & rows = single_obstacle_log().rows;
  const auto read = ca::parse_log_csv(ca::log_csv_text(rows));
  ASSERT_EQ(read.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto & a = rows[i];
    const auto & b = read[i];
    for (const auto & [x, y] : {std::pair{a.t, b.t}, {a.x, b.x}, {a.y, b.y}, {a.psi, b.psi}, {a.vx, b.vx},
                                {a.vy, b.vy}, {a.r, b.r}, {a.delta_f, b.delta_f}, {a.a_lat, b.a_lat},
                                {a.beta, b.beta}, {a.plan_offset, b.plan_offset}, {a.j_all, b.j_all}}) {
      ASSERT_LE(std::abs(x - y), 5e-9 * std::abs(x)) << "row " << i;
    }
    ASSERT_EQ(a.comfort_class, b.comfort_class);
  }
  // Once written at nine digits, a log re-reads exactly.
  EXPECT_EQ(ca::parse_log_csv(ca::log_csv_text(read)), read);
}

TEST(SimLog, SaveAndLoadCarryMetadataAndPlans)
{
  const auto dir = scratch("saveload");
  const std::string csv = (dir / "log.csv").string();
  const auto & log = single_obstacle_log();
  ca::save_log(csv, log);
  EXPECT_TRUE(fs::exists(ca::metadata_path(csv)));
  EXPECT_TRUE(fs::exists(ca::plans_path(csv)));
  const auto back = ca::load_log(csv);
  EXPECT_EQ(back.rows, ca::parse_log_csv(ca::log_csv_text(log.rows)));
  EXPECT_EQ(back.meta.scenario_name, "single_obstacle_30");
  EXPECT_EQ(back.meta.config_hash, log.meta.config_hash);
  EXPECT_EQ(back.meta.geometry_hash, log.meta.geometry_hash);
  EXPECT_EQ(back.meta.road.y_boundaries(), log.meta.road.y_boundaries());
  ASSERT_EQ(back.meta.obstacles.size(), 1U);
  EXPECT_EQ(back.meta.obstacles[0].xo, 60.0);
  EXPECT_TRUE(ca::has_geometry(back));
}

TEST(SimLog, MalformedCsvIsRejected)
{
  EXPECT_THROW(ca::parse_log_csv("t,x\n1,2\n"), ca::ValidationError);
  const std::string bad = std::string(ca::kLogHeader) + "\n0,1,2,3,4,5,6,7,8,9,10,11,excellent\n";
  EXPECT_THROW(ca::parse_log_csv(bad), ca::ValidationError);
  const std::string short_row = std::string(ca::kLogHeader) + "\n0,1,2\n";
  EXPECT_THROW(ca::parse_log_csv(short_row), ca::ValidationError);
}

TEST(SimLog, LoadingWithoutSidecarsStillWorks)
{
  const auto dir = scratch("bare");
  const std::string csv = (dir / "log.csv").string();
  ca::write_text_file(csv, ca::log_csv_text(single_obstacle_log().rows));
  const auto back = ca::load_log(csv);
  EXPECT_EQ(back.rows.size(), single_obstacle_log().rows.size());
  EXPECT_FALSE(ca::has_geometry(back));
  EXPECT_TRUE(std::isnan(ca::min_clearance(back)));
}

// --- reports ------------------------------------------------------------------------

TEST(ComfortReport, CountsSumToTheNumberOfRows)
{
  const auto cfg = ca::load_scenario(scenario("single_obstacle_30.cfg"));
  const auto model = ca::build_classifier(cfg);
  const auto r = ca::comfort_report(single_obstacle_log(), model);
  EXPECT_EQ(r.good + r.normal + r.poor, r.total);
  EXPECT_EQ(r.total, static_cast<int>(single_obstacle_log().rows.size()));
  EXPECT_NE(ca::comfort_report_text(r).find("good"), std::string::npos);
}

TEST(ComfortReport, StraightDrivingIsAllGood)
{
  const auto cfg = empty_road();
  const auto log = ca::run_scenario(cfg);
  const auto r = ca::comfort_report(log, ca::build_classifier(cfg));
  EXPECT_EQ(r.good, r.total);
  EXPECT_EQ(r.total, static_cast<int>(log.rows.size()));
}

TEST(CompareRuns, IdenticalLogsGiveIdenticalReports)
{
  const auto cfg = ca::load_scenario(scenario("single_obstacle_30.cfg"));
  const auto model = ca::build_classifier(cfg);
  const auto c = ca::compare_runs(single_obstacle_log(), single_obstacle_log(), model);
  EXPECT_EQ(c.report_a, c.report_b);
  EXPECT_EQ(c.metrics_a.max_abs_a_lat, c.metrics_b.max_abs_a_lat);
  EXPECT_EQ(c.metrics_a.rows, static_cast<int>(single_obstacle_log().rows.size()));
  EXPECT_TRUE(c.warnings.empty());
  const std::string csv = ca::comparison_csv(c);
  EXPECT_EQ(csv.substr(0, csv.find(',')), "run");
  EXPECT_EQ(count(csv, "\n"), 3);
  const auto a_row = csv.find("\na,");
  const auto b_row = csv.find("\nb,");
  ASSERT_NE(a_row, std::string::npos);
  ASSERT_NE(b_row, std::string::npos);
  EXPECT_EQ(csv.substr(a_row + 3, b_row - a_row - 3), csv.substr(b_row + 3, csv.size() - b_row - 4));
}

TEST(CompareRuns, MismatchedGeometryWarns)
{
  const auto cfg = ca::load_scenario(scenario("single_obstacle_30.cfg"));
  const auto model = ca::build_classifier(cfg);
  auto other = single_obstacle_log();
  other.meta.obstacles[0].xo += 5.0;
  other.meta.geometry_hash = ca::geometry_hash(other.meta.road, other.meta.obstacles);
  const auto c = ca::compare_runs(single_obstacle_log(), other, model);
  ASSERT_FALSE(c.warnings.empty());
  EXPECT_NE(ca::comparison_text(c).find("geometry"), std::string::npos);
}

TEST(CompareRuns, ConfidenceTermImprovesComfortAndSmoothness)
{
  const std::string path = scenario("confidence_ab.cfg");
  const auto cfg_a = ca::load_scenario_with_override(path, "planner.weights.r_confidence", 0.0);
  const auto cfg_b = ca::load_scenario(path);
  ASSERT_GT(cfg_b.planner.weights.r_confidence, 0.0);
  const auto model = ca::build_classifier(cfg_b);
  const auto c = ca::compare_runs(ca::run_scenario(cfg_a, model), ca::run_scenario(cfg_b, model), model);
  EXPECT_GE(c.report_b.good, c.report_a.good);
  EXPECT_LE(c.report_b.poor, c.report_a.poor);
  EXPECT_LE(c.metrics_b.max_abs_a_lat_rate, c.metrics_a.max_abs_a_lat_rate);
  EXPECT_EQ(c.metrics_b.collision_steps, 0);
}

TEST(DeviationOnset, MeasuredFromTheObstacleRearFace)
{
  ca::SimLog log;
  log.meta.obstacles = {{50.0, 0.0, 2.0, 0.9, 0.0}};
  for (int k = 0; k <= 40; ++k) {
    const double x = k;
    log.rows.push_back({0.1 * k, x, x < 20.0 ? 0.0 : 0.05 * (x - 20.0), 0, 10, 0, 0, 0, 0, 0, 0, 0, {}});
  }
  // |y| first exceeds 0.1 at x = 23 (0.15); rear face at 48.
  const auto d = ca::deviation_onset_distance(log);
  ASSERT_TRUE(d.has_value());
  EXPECT_DOUBLE_EQ(*d, 48.0 - 23.0);
  log.rows.resize(21);
  EXPECT_FALSE(ca::deviation_onset_distance(log).has_value());
}

// --- plots --------------------------------------------------------------------------

TEST(Plots, StraightRunIsAHorizontalPolyline)
{
  const auto log = ca::run_scenario(empty_road());
  const std::string svg = ca::trajectory_svg(log);
  std::smatch m;
  ASSERT_TRUE(std::regex_search(svg, m, std::regex("class=\"trajectory\"[^>]*points=\"([^\"]*)\"")));
  const std::string pts = m[1];
  std::regex pair_re("([-0-9.]+),([-0-9.]+)");
  std::vector<double> ys;
  double first_x = 0.0;
  double last_x = 0.0;
  for (auto it = std::sregex_iterator(pts.begin(), pts.end(), pair_re); it != std::sregex_iterator(); ++it) {
    if (ys.empty()) {
      first_x = std::stod((*it)[1]);
    }
    last_x = std::stod((*it)[1]);
    ys.push_back(std::stod((*it)[2]));
  }
  ASSERT_EQ(ys.size(), log.rows.size());
  const auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
  EXPECT_LE(*hi - *lo, 0.5);  // pixels
  EXPECT_GT(last_x - first_x, 100.0);
  EXPECT_EQ(svg.find("<image"), std::string::npos);
  EXPECT_EQ(svg.find("href"), std::string::npos);
}

TEST(Plots, TimeSeriesDrawsEveryBound)
{
  const std::string svg = ca::time_series_svg(single_obstacle_log());
  // delta_f, a_lat, beta and r each get a +/- bound pair.
  EXPECT_EQ(count(svg, "class=\"bound\""), 8);
  EXPECT_EQ(count(svg, "<polyline"), 4);
}

TEST(Plots, HeatmapPeaksInTheObstacleCell)
{
  const std::vector<ca::Obstacle> obs{{43.3, 0.0, 2.25, 0.9, 0.0}};
  const ca::RoadGeometry road;
  // Weighted as the planner sees it: S = 20 on the obstacle, L = 1 on the road.
  ca::FieldParams fields;
  fields.obstacle.weight_s = 20.0;
  const ca::FieldGrid g = ca::sample_field(obs, road, fields, {});
  int bi = 0;
  int bj = 0;
  for (int j = 0; j < g.spec.ny; ++j) {
    for (int i = 0; i < g.spec.nx; ++i) {
      if (g.values[j][i] > g.values[bj][bi]) {
        bi = i;
        bj = j;
      }
    }
  }
  const double wx = (g.spec.x_max - g.spec.x_min) / g.spec.nx;
  const double wy = (g.spec.y_max - g.spec.y_min) / g.spec.ny;
  EXPECT_LE(std::abs(g.cell_x(bi) - obs[0].xo), wx / 2 + 1e-12);
  EXPECT_LE(std::abs(g.cell_y(bj) - obs[0].yo), wy / 2 + 1e-12);
  const std::string svg = ca::field_heatmap_svg(g, road);
  const auto begin = svg.find("<g class=\"heatmap\"");
  const auto end = svg.find("</g>", begin);
  EXPECT_EQ(count(svg.substr(begin, end - begin), "<rect"), g.spec.nx * g.spec.ny);
}

TEST(Plots, FieldGridCsvHasOneRowPerCell)
{
  ca::FieldGridSpec spec;
  spec.nx = 7;
  spec.ny = 3;
  const auto g = ca::sample_field({{50.0, 0.0, 2.25, 0.9, 0.0}}, {}, {}, spec);
  const std::string csv = ca::field_grid_csv(g);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "x,y,value");
  EXPECT_EQ(count(csv, "\n"), 7 * 3 + 1);
  EXPECT_THROW(ca::sample_field({}, {}, {}, {.nx = 0}), ca::ValidationError);
}

TEST(Plots, SweepOverlayHasOnePolylinePerRun)
{
  std::vector<std::pair<std::string, ca::SimLog>> runs;
  for (double s : {30.0, 40.0, 50.0, 60.0, 70.0, 80.0}) {
    auto cfg = ca::load_scenario_with_override(scenario("s_sweep.cfg"), "planner.weights.s_obstacle", s);
    cfg.duration = 8.0;
    runs.emplace_back("S=" + std::to_string(static_cast<int>(s)), ca::run_scenario(cfg));
  }
  const std::string svg = ca::overlay_svg(runs);
  EXPECT_EQ(count(svg, "<polyline class=\"run\""), 6);
  std::vector<std::string> point_sets;
  std::regex re("<polyline class=\"run\"[^>]*points=\"([^\"]*)\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
    point_sets.push_back((*it)[1]);
  }
  std::sort(point_sets.begin(), point_sets.end());
  EXPECT_EQ(std::unique(point_sets.begin(), point_sets.end()) - point_sets.begin(), 6);
  EXPECT_NE(svg.find("S=80"), std::string::npos);
}

TEST(Plots, RenderWritesSelfContainedFiles)
{
  const auto dir = scratch("render");
  const auto files = ca::render_plots(single_obstacle_log(), (dir / "plots").string());
  ASSERT_EQ(files.size(), 2U);
  for (const auto & f : files) {
    const std::string text = ca::read_text_file(f);
    EXPECT_EQ(text.rfind("<?xml", 0), 0U) << f;
    EXPECT_NE(text.find("<svg xmlns=\"http://www.w3.org/2000/svg\""), std::string::npos);
    EXPECT_NE(text.find("</svg>"), std::string::npos);
  }
}

TEST(Plots, UnwritableOutputDirectoryIsAnError)
{
  const auto dir = scratch("unwritable");
  const fs::path blocker = dir / "file";
  ca::write_text_file(blocker.string(), "x");
  EXPECT_THROW(ca::render_plots(single_obstacle_log(), (blocker / "plots").string()), ca::RuntimeError);
  EXPECT_THROW(ca::write_text_file((blocker / "a.svg").string(), "x"), ca::RuntimeError);
}
