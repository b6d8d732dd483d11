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

// comfort_sim: command-line front end for scenario runs, classifier training,
// comfort reports, comparisons, plots and parameter sweeps.

#include "comfort_avoid/comfort_model.hpp"
#include "comfort_avoid/error.hpp"
#include "comfort_avoid/report.hpp"
#include "comfort_avoid/scenario.hpp"
#include "comfort_avoid/sim_log.hpp"
#include "comfort_avoid/simulation.hpp"
#include "comfort_avoid/svg_plot.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using namespace comfort_avoid;

namespace
{

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

void ensure_dir(const std::string & dir)
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw RuntimeError("cannot create directory '" + dir + "': " + ec.message());
  }
}

std::string join(const std::string & dir, const std::string & name) { return (fs::path(dir) / name).string(); }

std::string fmt(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

ClassifierModel model_for(const ScenarioConfig & cfg, const std::string & model_path)
{
  return model_path.empty() ? build_classifier(cfg) : load_model(model_path);
}

void write_run(const std::string & dir, const ScenarioConfig & cfg, const SimLog & log)
{
  ensure_dir(dir);
  save_log(join(dir, "log.csv"), log);
  write_text_file(join(dir, "config.json"), scenario_to_text(cfg));
}

std::string run_summary(const SimLog & log, const ClassifierModel & model)
{
  const RunMetrics m = run_metrics(log);
  const ComfortReport rep = comfort_report(log, model);
  const auto onset = deviation_onset_distance(log);
  std::string s;
  s += "rows " + std::to_string(m.rows) + "\n";
  s += "collision_steps " + std::to_string(m.collision_steps) + "\n";
  s += "min_clearance " + fmt(m.min_clearance) + "\n";
  s += "final_lateral_offset " + fmt(m.final_lateral_offset) + "\n";
  s += "deviation_onset_distance " + (onset ? fmt(*onset) : std::string("none")) + "\n";
  s += "max_abs_a_lat " + fmt(m.max_abs_a_lat) + "\n";
  s += "max_abs_jerk " + fmt(m.max_abs_a_lat_rate) + "\n";
  s += comfort_report_text(rep);
  return s;
}

std::vector<double> parse_values(const std::string & text)
{
  std::vector<double> out;
  std::string cur;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      if (cur.empty()) {
        throw ValidationError("empty entry in value list", "--values");
      }
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cur, &used);
      } catch (const std::exception &) {
        used = 0;
      }
      if (used != cur.size() || !std::isfinite(v)) {
        throw ValidationError("not a number: '" + cur + "'", "--values");
      }
      out.push_back(v);
      cur.clear();
    } else if (text[i] != ' ') {
      cur += text[i];
    }
  }
  return out;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Comfort-aware obstacle avoidance: closed-loop simulation and analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(library_version()));

  // run
  std::string run_scenario_path;
  std::string run_out;
  std::string run_model;
  auto * run = app.add_subcommand("run", "Run one scenario and write its log");
  run->add_option("--scenario", run_scenario_path, "Scenario file")->required();
  run->add_option("--out", run_out, "Output directory")->required();
  run->add_option("--model", run_model, "Classifier model file (default: trained from the scenario)");

  // train
  std::string train_kind;
  std::string train_data;
  bool train_synth = false;
  std::uint64_t train_seed = 42;
  double train_separation = 2.0;
  int train_n = 60;
  double train_temperature = 1.0;
  std::string train_out;
  auto * train_cmd = app.add_subcommand("train", "Train a comfort classifier");
  train_cmd->add_option("--kind", train_kind, "template_matching | class_center_euclidean | mahalanobis | bayes_min_risk")
    ->required();
  auto * data_opt = train_cmd->add_option("--data", train_data, "Labelled feature CSV");
  auto * synth_opt = train_cmd->add_flag("--synth", train_synth, "Use the seeded synthetic dataset");
  data_opt->excludes(synth_opt);
  train_cmd->add_option("--seed", train_seed, "Synthetic data seed");
  train_cmd->add_option("--separation", train_separation, "Synthetic class separation");
  train_cmd->add_option("--n-per-class", train_n, "Synthetic samples per class");
  train_cmd->add_option("--temperature", train_temperature, "Confidence softmax temperature");
  train_cmd->add_option("--out", train_out, "Model output file")->required();

  // report
  std::string report_log;
  std::string report_model;
  auto * report = app.add_subcommand("report", "Comfort class counts for a log");
  report->add_option("--log", report_log, "Log CSV")->required();
  report->add_option("--model", report_model, "Classifier model file")->required();

  // compare
  std::string cmp_a;
  std::string cmp_b;
  std::string cmp_model;
  std::string cmp_out;
  auto * compare = app.add_subcommand("compare", "Side-by-side report of two runs");
  compare->add_option("--a", cmp_a, "Log CSV of run A")->required();
  compare->add_option("--b", cmp_b, "Log CSV of run B")->required();
  compare->add_option("--model", cmp_model, "Classifier model file")->required();
  compare->add_option("--out", cmp_out, "Directory for comparison.txt and comparison.csv");

  // plot
  std::vector<std::string> plot_logs;
  std::string plot_out;
  bool plot_field = false;
  std::string plot_scenario;
  auto * plot = app.add_subcommand("plot", "Render SVG figures for one or more logs");
  plot->add_option("--log", plot_logs, "Log CSV (repeat for an overlay)")->required();
  plot->add_option("--out", plot_out, "Output directory")->required();
  plot->add_flag("--field", plot_field, "Also render the potential-field heatmap");
  plot->add_option("--scenario", plot_scenario, "Scenario supplying field parameters and tracker bounds");

  // sweep
  std::string sweep_scenario;
  std::string sweep_param;
  std::string sweep_values;
  std::string sweep_out;
  unsigned sweep_jobs = std::max(1u, std::thread::hardware_concurrency());
  auto * sweep = app.add_subcommand("sweep", "Run a scenario for each value of one parameter");
  sweep->add_option("--scenario", sweep_scenario, "Scenario file")->required();
  sweep->add_option("--param", sweep_param, "Dotted parameter path, e.g. planner.weights.s_obstacle")->required();
  sweep->add_option("--values", sweep_values, "Comma-separated values")->required();
  sweep->add_option("--out", sweep_out, "Output directory")->required();
  sweep->add_option("--jobs", sweep_jobs, "Concurrent runs")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*run) {
      const ScenarioConfig cfg = load_scenario(run_scenario_path);
      const ClassifierModel model = model_for(cfg, run_model);
      const SimLog log = run_scenario(cfg, model);
      write_run(run_out, cfg, log);
      std::cout << "scenario " << cfg.name << "\n" << run_summary(log, model);
    } else if (*train_cmd) {
      if (train_data.empty() && !train_synth) {
        throw ValidationError("pass --data <csv> or --synth", "train");
      }
      const ClassifierKind kind = classifier_kind_from_string(train_kind);
      TrainingSet data;
      if (train_synth) {
        data = synth_dataset(SynthConfig::with_separation(train_separation, train_seed, train_n));
      } else {
        data = read_dataset_csv(train_data);
      }
      TrainOptions options;
      options.temperature = train_temperature;
      const ClassifierModel model = train(data, kind, options);
      save_model(train_out, model);
      const AccuracyReport acc = evaluate_accuracy(model, data);
      std::cout << "kind " << to_string(kind) << "\nsamples " << acc.total << "\ntraining_accuracy "
                << fmt(acc.accuracy) << "\n";
    } else if (*report) {
      const SimLog log = load_log(report_log);
      const ClassifierModel model = load_model(report_model);
      std::cout << comfort_report_text(comfort_report(log, model));
    } else if (*compare) {
      const SimLog a = load_log(cmp_a);
      const SimLog b = load_log(cmp_b);
      const ClassifierModel model = load_model(cmp_model);
      const Comparison c = compare_runs(a, b, model);
      std::cout << comparison_text(c);
      if (!cmp_out.empty()) {
        ensure_dir(cmp_out);
        write_text_file(join(cmp_out, "comparison.txt"), comparison_text(c));
        write_text_file(join(cmp_out, "comparison.csv"), comparison_csv(c));
      } else {
        std::cout << "\n" << comparison_csv(c);
      }
      for (const auto & w : c.warnings) {
        std::cerr << "warning: " << w << "\n";
      }
    } else if (*plot) {
      std::optional<ScenarioConfig> cfg;
      if (!plot_scenario.empty()) {
        cfg = load_scenario(plot_scenario);
      }
      const TrackerBounds bounds = cfg ? cfg->tracker.bounds : TrackerBounds{};
      std::vector<std::pair<std::string, SimLog>> logs;
      for (const auto & path : plot_logs) {
        logs.emplace_back(fs::path(path).parent_path().filename().string(), load_log(path));
        if (!has_geometry(logs.back().second)) {
          throw ValidationError("metadata sidecar not found for '" + path + "'", "--log");
        }
      }
      std::vector<std::string> written = render_plots(logs.front().second, plot_out, bounds);
      if (logs.size() > 1) {
        const std::string path = join(plot_out, "overlay.svg");
        write_text_file(path, overlay_svg(logs));
        written.push_back(path);
      }
      if (plot_field) {
        const SimLog & log = logs.front().second;
        FieldGridSpec spec;
        spec.x_min = log.rows.empty() ? 0.0 : log.rows.front().x;
        spec.x_max = log.rows.empty() ? 100.0 : std::max(spec.x_min + 1.0, log.rows.back().x);
        spec.y_min = log.meta.road.y_min();
        spec.y_max = log.meta.road.y_max();
        spec.ego_speed = log.meta.speed_kmh / 3.6;
        // Weighted the way the planner scores it.
        FieldParams fields = cfg ? cfg->fields : FieldParams{};
        const PlannerWeights weights = cfg ? cfg->planner.weights : PlannerWeights{};
        fields.obstacle.weight_s = weights.s_obstacle;
        fields.road.weight_l = weights.l_road;
        const FieldGrid grid = sample_field(log.meta.obstacles, log.meta.road, fields, spec);
        const std::string path = join(plot_out, "field.svg");
        write_text_file(path, field_heatmap_svg(grid, log.meta.road));
        written.push_back(path);
        const std::string csv = join(plot_out, "field.csv");
        write_text_file(csv, field_grid_csv(grid));
        written.push_back(csv);
      }
      for (const auto & w : written) {
        std::cout << w << "\n";
      }
    } else if (*sweep) {
      const std::vector<double> values = parse_values(sweep_values);
      std::vector<ScenarioConfig> configs;
      for (double v : values) {
        configs.push_back(load_scenario_with_override(sweep_scenario, sweep_param, v));
      }
      const std::string leaf = sweep_param.substr(sweep_param.find_last_of('.') + 1);
      std::vector<std::string> dirs;
      for (double v : values) {
        dirs.push_back(join(sweep_out, leaf + "_" + fmt(v)));
      }
      ensure_dir(sweep_out);

      // Each run owns its configuration, classifier and output directory.
      std::vector<SimLog> logs(values.size());
      for (std::size_t start = 0; start < values.size(); start += sweep_jobs) {
        std::vector<std::future<void>> batch;
        for (std::size_t i = start; i < std::min(values.size(), start + sweep_jobs); ++i) {
          batch.push_back(std::async(std::launch::async, [&, i] {
            logs[i] = run_scenario(configs[i]);
            write_run(dirs[i], configs[i], logs[i]);
          }));
        }
        for (auto & f : batch) {
          f.get();
        }
      }

      std::string summary = "value,deviation_onset_distance,min_clearance,collision_steps,final_lateral_offset\n";
      std::vector<std::pair<std::string, SimLog>> overlay;
      for (std::size_t i = 0; i < values.size(); ++i) {
        const RunMetrics m = run_metrics(logs[i]);
        const auto onset = deviation_onset_distance(logs[i]);
        summary += fmt(values[i]) + "," + (onset ? fmt(*onset) : std::string("nan")) + "," + fmt(m.min_clearance) +
                   "," + std::to_string(m.collision_steps) + "," + fmt(m.final_lateral_offset) + "\n";
        overlay.emplace_back(leaf + " = " + fmt(values[i]), std::move(logs[i]));
      }
      write_text_file(join(sweep_out, "summary.csv"), summary);
      write_text_file(join(sweep_out, "overlay.svg"), overlay_svg(overlay));
      std::cout << summary;
    }
  } catch (const ValidationError & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception & e) {
    std::cerr << "runtime failure: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
