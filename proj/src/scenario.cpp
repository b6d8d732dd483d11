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

#include "comfort_avoid/scenario.hpp"

#include "comfort_avoid/error.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace comfort_avoid
{

namespace
{

using nlohmann::json;

// Reads keys out of one JSON object, remembering which were consumed so that
// leftovers can be reported with their full path.
class Section
{
public:
  Section(const json & j, std::string path) : j_(j), path_(std::move(path))
  {
    if (!j_.is_object()) {
      throw ValidationError("expected an object", path_.empty() ? "<root>" : path_);
    }
  }

  std::string child_path(const std::string & key) const { return path_.empty() ? key : path_ + "." + key; }

  bool has(const std::string & key) const { return j_.contains(key); }

  const json & raw(const std::string & key)
  {
    seen_.insert(key);
    return j_.at(key);
  }

  void number(const std::string & key, double & out)
  {
    if (!has(key)) {
      return;
    }
    const json & v = raw(key);
    if (!v.is_number()) {
      throw ValidationError("expected a number", child_path(key));
    }
    out = v.get<double>();
    if (!std::isfinite(out)) {
      throw ValidationError("must be finite", child_path(key));
    }
  }

  void integer(const std::string & key, int & out)
  {
    if (!has(key)) {
      return;
    }
    const json & v = raw(key);
    if (!v.is_number_integer()) {
      throw ValidationError("expected an integer", child_path(key));
    }
    out = v.get<int>();
  }

  void unsigned_integer(const std::string & key, std::uint64_t & out)
  {
    if (!has(key)) {
      return;
    }
    const json & v = raw(key);
    if (!v.is_number_unsigned()) {
      throw ValidationError("expected a non-negative integer", child_path(key));
    }
    out = v.get<std::uint64_t>();
  }

  void text(const std::string & key, std::string & out)
  {
    if (!has(key)) {
      return;
    }
    const json & v = raw(key);
    if (!v.is_string()) {
      throw ValidationError("expected a string", child_path(key));
    }
    out = v.get<std::string>();
  }

  void numbers(const std::string & key, std::vector<double> & out)
  {
    if (!has(key)) {
      return;
    }
    const json & v = raw(key);
    if (!v.is_array()) {
      throw ValidationError("expected an array of numbers", child_path(key));
    }
    out.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) {
        throw ValidationError("expected a number", child_path(key) + "[" + std::to_string(i) + "]");
      }
      out.push_back(v[i].get<double>());
    }
  }

  Section section(const std::string & key) { return Section(raw(key), child_path(key)); }

  void finish() const
  {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) {
        throw ValidationError("unknown key", child_path(it.key()));
      }
    }
  }

private:
  const json & j_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_vehicle(Section s, VehicleParams & v)
{
  s.number("mass", v.mass);
  s.number("yaw_inertia", v.yaw_inertia);
  s.number("lf", v.lf);
  s.number("lr", v.lr);
  s.number("cf", v.cf);
  s.number("cr", v.cr);
  s.number("delta_max", v.delta_max);
  s.number("ddelta_max", v.ddelta_max);
  s.number("half_width", v.half_width);
  s.finish();
}

RoadGeometry read_road(Section s)
{
  std::vector<double> boundaries;
  s.numbers("y_boundaries", boundaries);
  double lane_width = 3.5;
  int num_lanes = 2;
  double y_min = -1.75;
  s.number("lane_width", lane_width);
  s.integer("num_lanes", num_lanes);
  s.number("y_min", y_min);
  s.finish();
  if (!boundaries.empty()) {
    RoadGeometry road(boundaries);
    if ((s.has("num_lanes") && num_lanes != road.num_lanes())) {
      throw ValidationError("must equal the number of boundaries minus one", s.child_path("num_lanes"));
    }
    return road;
  }
  return RoadGeometry::uniform(lane_width, num_lanes, y_min);
}

Obstacle read_obstacle(Section s)
{
  Obstacle o;
  s.number("xo", o.xo);
  s.number("yo", o.yo);
  s.number("half_length", o.half_length);
  s.number("half_width", o.half_width);
  s.number("speed", o.speed);
  s.finish();
  return o;
}

void read_planner(Section s, PlannerConfig & p)
{
  s.number("horizon_t", p.horizon_t);
  s.number("dt", p.dt);
  if (s.has("weights")) {
    Section w = s.section("weights");
    w.number("q_track", p.weights.q_track);
    w.number("s_obstacle", p.weights.s_obstacle);
    w.number("l_road", p.weights.l_road);
    w.number("r_confidence", p.weights.r_confidence);
    w.finish();
  }
  s.numbers("lateral_offsets", p.lateral_offsets);
  s.number("transition_length_gain", p.transition_length_gain);
  s.numbers("transition_length_gains", p.transition_length_gains);
  s.number("clearance_margin", p.clearance_margin);
  s.number("replan_period", p.replan_period);
  s.finish();
}

void read_tracker(Section s, TrackerConfig & t)
{
  s.integer("np", t.np);
  s.integer("nc", t.nc);
  s.number("dt", t.dt);
  s.number("q_y", t.q_y);
  s.number("q_psi", t.q_psi);
  s.number("r_du", t.r_du);
  s.number("rho_slack", t.rho_slack);
  if (s.has("bounds")) {
    Section b = s.section("bounds");
    b.number("delta", t.bounds.delta);
    b.number("ddelta_per_step", t.bounds.ddelta_per_step);
    b.number("beta", t.bounds.beta);
    b.number("a_lat", t.bounds.a_lat);
    b.number("yaw_rate", t.bounds.yaw_rate);
    b.finish();
  }
  s.finish();
}

void read_fields(Section s, FieldParams & f)
{
  if (s.has("obstacle")) {
    Section o = s.section("obstacle");
    o.number("weight_s", f.obstacle.weight_s);
    o.number("sigma_x0", f.obstacle.sigma_x0);
    o.number("sigma_y", f.obstacle.sigma_y);
    o.number("speed_gain_kv", f.obstacle.speed_gain_kv);
    o.finish();
  }
  if (s.has("road")) {
    Section r = s.section("road");
    r.number("weight_l", f.road.weight_l);
    r.number("sigma_b", f.road.sigma_b);
    r.finish();
  }
  s.finish();
}

void read_classifier(Section s, ClassifierSpec & c, const std::string & base_dir)
{
  std::string kind(to_string(c.kind));
  s.text("kind", kind);
  try {
    c.kind = classifier_kind_from_string(kind);
  } catch (const ValidationError & e) {
    throw ValidationError("unknown classifier kind '" + kind + "'", s.child_path("kind"));
  }
  if (s.has("dataset")) {
    std::string path;
    s.text("dataset", path);
    std::filesystem::path p(path);
    if (p.is_relative()) {
      p = std::filesystem::path(base_dir) / p;
    }
    c.dataset = p.lexically_normal().string();
  }
  if (s.has("synth")) {
    Section y = s.section("synth");
    y.number("separation", c.synth_separation);
    y.integer("n_per_class", c.synth_n_per_class);
    y.number("label_noise", c.synth_label_noise);
    y.finish();
  }
  if (s.has("thresholds")) {
    Section t = s.section("thresholds");
    t.number("t_poor", c.thresholds.t_poor);
    t.number("t_good", c.thresholds.t_good);
    t.finish();
  }
  s.number("temperature", c.temperature);
  s.finish();
}

void read_plpts(Section s, PlptsTable & table)
{
  if (s.has("anchors")) {
    const json & a = s.raw("anchors");
    const std::string path = s.child_path("anchors");
    if (!a.is_array()) {
      throw ValidationError("expected an array of [speed_kmh, distance_m] pairs", path);
    }
    table.anchors.clear();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_array() || a[i].size() != 2 || !a[i][0].is_number() || !a[i][1].is_number()) {
        throw ValidationError("expected [speed_kmh, distance_m]", path + "[" + std::to_string(i) + "]");
      }
      table.anchors.emplace_back(a[i][0].get<double>(), a[i][1].get<double>());
    }
  }
  s.finish();
}

ScenarioConfig parse_document(const json & doc, const std::string & base_dir)
{
  ScenarioConfig cfg;
  Section root(doc, "");
  root.text("name", cfg.name);
  root.unsigned_integer("seed", cfg.seed);
  root.number("speed_kmh", cfg.speed_kmh);
  root.number("duration", cfg.duration);
  root.integer("ego_lane", cfg.ego_lane);
  root.number("initial_x", cfg.initial_x);
  root.number("initial_lateral_offset", cfg.initial_lateral_offset);
  if (root.has("vehicle")) {
    read_vehicle(root.section("vehicle"), cfg.vehicle);
  }
  if (root.has("road")) {
    cfg.road = read_road(root.section("road"));
  }
  if (root.has("obstacles")) {
    const json & list = root.raw("obstacles");
    if (!list.is_array()) {
      throw ValidationError("expected an array", "obstacles");
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      cfg.obstacles.push_back(read_obstacle(Section(list[i], "obstacles[" + std::to_string(i) + "]")));
    }
  }
  if (root.has("planner")) {
    read_planner(root.section("planner"), cfg.planner);
  }
  if (root.has("tracker")) {
    read_tracker(root.section("tracker"), cfg.tracker);
  }
  if (root.has("fields")) {
    read_fields(root.section("fields"), cfg.fields);
  }
  if (root.has("classifier")) {
    read_classifier(root.section("classifier"), cfg.classifier, base_dir);
  }
  if (root.has("plpts")) {
    read_plpts(root.section("plpts"), cfg.plpts);
  }
  root.finish();

  if (cfg.ego_lane >= 0 && cfg.ego_lane < cfg.road.num_lanes()) {
    cfg.planner.reference_y = cfg.ego_lane_center();
  }
  cfg.validate();
  return cfg;
}

json parse_json(const std::string & text, const std::string & origin)
{
  try {
    return json::parse(text);
  } catch (const json::parse_error & e) {
    throw ValidationError(std::string("not valid JSON: ") + e.what(), origin);
  }
}

std::string read_file(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open scenario file '" + path + "'", "scenario");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string parent_dir(const std::string & path)
{
  const auto parent = std::filesystem::path(path).parent_path();
  return parent.empty() ? "." : parent.string();
}

}  // namespace

// ---------------------------------------------------------------------------

void ScenarioConfig::validate() const
{
  if (!(duration > 0.0)) {
    throw ValidationError("must be positive", "duration");
  }
  if (!(speed_kmh >= 5.0 && speed_kmh <= 120.0)) {
    throw ValidationError("must lie in [5, 120] km/h", "speed_kmh");
  }
  if (ego_lane < 0 || ego_lane >= road.num_lanes()) {
    throw ValidationError("must index a lane of the road", "ego_lane");
  }
  vehicle.validate("vehicle");
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    obstacles[i].validate("obstacles[" + std::to_string(i) + "]");
  }
  planner.validate("planner");
  tracker.validate("tracker");
  fields.validate("fields");
  plpts.validate("plpts");
  classifier.thresholds.validate("classifier.thresholds");
  if (!(classifier.synth_separation > 0.0)) {
    throw ValidationError("must be positive", "classifier.synth.separation");
  }
  if (classifier.synth_n_per_class < 2) {
    throw ValidationError("must be at least 2", "classifier.synth.n_per_class");
  }
  if (!(classifier.synth_label_noise >= 0.0 && classifier.synth_label_noise < 0.5)) {
    throw ValidationError("must lie in [0, 0.5)", "classifier.synth.label_noise");
  }
  if (!(classifier.temperature > 0.0)) {
    throw ValidationError("must be positive", "classifier.temperature");
  }
  const double ratio = planner.replan_period / tracker.dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 || std::round(ratio) < 1.0) {
    throw ValidationError("must be a positive multiple of tracker.dt", "planner.replan_period");
  }
  const double steps = duration / tracker.dt;
  if (std::abs(steps - std::round(steps)) > 1e-6) {
    throw ValidationError("must be a multiple of tracker.dt", "duration");
  }
  const double y0 = road.lane_centers()[static_cast<std::size_t>(ego_lane)] + initial_lateral_offset;
  if (!road.contains(y0)) {
    throw ValidationError("places the vehicle off the road", "initial_lateral_offset");
  }
  if (!std::isfinite(initial_x)) {
    throw ValidationError("must be finite", "initial_x");
  }
}

VehicleState ScenarioConfig::initial_state() const
{
  VehicleState s;
  s.x = initial_x;
  s.y = ego_lane_center() + initial_lateral_offset;
  s.vx = kmh_to_ms(speed_kmh);
  return s;
}

ScenarioConfig parse_scenario(const std::string & text, const std::string & base_dir)
{
  return parse_document(parse_json(text, "scenario"), base_dir);
}

ScenarioConfig load_scenario(const std::string & path)
{
  return parse_scenario(read_file(path), parent_dir(path));
}

ScenarioConfig load_scenario_with_override(
  const std::string & path, const std::string & dotted_path, double value)
{
  json doc = parse_json(read_file(path), path);
  std::string pointer;
  std::stringstream ss(dotted_path);
  std::string part;
  while (std::getline(ss, part, '.')) {
    if (part.empty()) {
      throw ValidationError("empty path component", dotted_path);
    }
    pointer += "/" + part;
  }
  if (pointer.empty()) {
    throw ValidationError("empty parameter path", "param");
  }
  doc[json::json_pointer(pointer)] = value;
  return parse_document(doc, parent_dir(path));
}

std::string scenario_to_text(const ScenarioConfig & c)
{
  json j;
  j["name"] = c.name;
  j["seed"] = c.seed;
  j["speed_kmh"] = c.speed_kmh;
  j["duration"] = c.duration;
  j["ego_lane"] = c.ego_lane;
  j["initial_x"] = c.initial_x;
  j["initial_lateral_offset"] = c.initial_lateral_offset;
  const auto & v = c.vehicle;
  j["vehicle"] = {{"mass", v.mass}, {"yaw_inertia", v.yaw_inertia}, {"lf", v.lf}, {"lr", v.lr},
                  {"cf", v.cf}, {"cr", v.cr}, {"delta_max", v.delta_max}, {"ddelta_max", v.ddelta_max},
                  {"half_width", v.half_width}};
  j["road"] = {{"y_boundaries", c.road.y_boundaries()}};
  j["obstacles"] = json::array();
  for (const auto & o : c.obstacles) {
    j["obstacles"].push_back({{"xo", o.xo}, {"yo", o.yo}, {"half_length", o.half_length},
                              {"half_width", o.half_width}, {"speed", o.speed}});
  }
  const auto & p = c.planner;
  j["planner"] = {{"horizon_t", p.horizon_t}, {"dt", p.dt},
                  {"weights", {{"q_track", p.weights.q_track}, {"s_obstacle", p.weights.s_obstacle},
                               {"l_road", p.weights.l_road}, {"r_confidence", p.weights.r_confidence}}},
                  {"lateral_offsets", p.lateral_offsets}, {"transition_length_gain", p.transition_length_gain},
                  {"transition_length_gains", p.transition_length_gains},
                  {"clearance_margin", p.clearance_margin}, {"replan_period", p.replan_period}};
  const auto & t = c.tracker;
  j["tracker"] = {{"np", t.np}, {"nc", t.nc}, {"dt", t.dt}, {"q_y", t.q_y}, {"q_psi", t.q_psi},
                  {"r_du", t.r_du}, {"rho_slack", t.rho_slack},
                  {"bounds", {{"delta", t.bounds.delta}, {"ddelta_per_step", t.bounds.ddelta_per_step},
                              {"beta", t.bounds.beta}, {"a_lat", t.bounds.a_lat},
                              {"yaw_rate", t.bounds.yaw_rate}}}};
  j["fields"] = {{"obstacle", {{"weight_s", c.fields.obstacle.weight_s}, {"sigma_x0", c.fields.obstacle.sigma_x0},
                               {"sigma_y", c.fields.obstacle.sigma_y},
                               {"speed_gain_kv", c.fields.obstacle.speed_gain_kv}}},
                 {"road", {{"weight_l", c.fields.road.weight_l}, {"sigma_b", c.fields.road.sigma_b}}}};
  json cls = {{"kind", std::string(to_string(c.classifier.kind))},
              {"synth", {{"separation", c.classifier.synth_separation},
                         {"n_per_class", c.classifier.synth_n_per_class},
                         {"label_noise", c.classifier.synth_label_noise}}},
              {"thresholds", {{"t_poor", c.classifier.thresholds.t_poor}, {"t_good", c.classifier.thresholds.t_good}}},
              {"temperature", c.classifier.temperature}};
  if (c.classifier.dataset) {
    cls["dataset"] = *c.classifier.dataset;
  }
  j["classifier"] = cls;
  json anchors = json::array();
  for (const auto & a : c.plpts.anchors) {
    anchors.push_back({a.first, a.second});
  }
  j["plpts"] = {{"anchors", anchors}};
  return j.dump(2) + "\n";
}

std::string fnv1a_hex(const std::string & text)
{
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ClassifierModel build_classifier(const ScenarioConfig & cfg)
{
  const auto & spec = cfg.classifier;
  TrainingSet data;
  if (spec.dataset) {
    data = read_dataset_csv(*spec.dataset, spec.thresholds);
  } else {
    SynthConfig synth = SynthConfig::with_separation(spec.synth_separation, cfg.seed, spec.synth_n_per_class);
    synth.label_noise = spec.synth_label_noise;
    data = synth_dataset(synth);
  }
  TrainOptions options;
  options.temperature = spec.temperature;
  return train(data, spec.kind, options);
}

}  // namespace comfort_avoid
