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

#include "comfort_avoid/sim_log.hpp"

#include "comfort_avoid/error.hpp"
#include "comfort_avoid/scenario.hpp"

#include <json.hpp>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace comfort_avoid
{

namespace
{

using nlohmann::json;

void append_number(std::string & out, double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  out += buf;
}

std::vector<std::string> split(const std::string & line, char sep)
{
  std::vector<std::string> parts;
  std::string cur;
  std::stringstream ss(line);
  while (std::getline(ss, cur, sep)) {
    parts.push_back(cur);
  }
  if (!line.empty() && line.back() == sep) {
    parts.emplace_back();
  }
  return parts;
}

double parse_number(const std::string & s, const std::string & where)
{
  if (s.empty()) {
    throw ValidationError("empty number", where);
  }
  char * end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE) {
    throw ValidationError("not a number: '" + s + "'", where);
  }
  return v;
}

json obstacles_json(const std::vector<Obstacle> & obstacles)
{
  json arr = json::array();
  for (const auto & o : obstacles) {
    arr.push_back({{"xo", o.xo}, {"yo", o.yo}, {"half_length", o.half_length},
                   {"half_width", o.half_width}, {"speed", o.speed}});
  }
  return arr;
}

}  // namespace

const char * library_version() { return "comfort_avoid 1.0.0"; }

std::string log_csv_text(const std::vector<SimRow> & rows)
{
  std::string out = kLogHeader;
  out += '\n';
  for (const auto & r : rows) {
    for (double v : {r.t, r.x, r.y, r.psi, r.vx, r.vy, r.r, r.delta_f, r.a_lat, r.beta, r.plan_offset, r.j_all}) {
      append_number(out, v);
      out += ',';
    }
    out += to_string(r.comfort_class);
    out += '\n';
  }
  return out;
}

std::vector<SimRow> parse_log_csv(const std::string & text, const std::string & origin)
{
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line) || line != kLogHeader) {
    throw ValidationError("missing or unexpected CSV header", origin);
  }
  std::vector<SimRow> rows;
  int line_no = 1;
  while (std::getline(ss, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    const std::string where = origin + ":" + std::to_string(line_no);
    const auto f = split(line, ',');
    if (f.size() != 13) {
      throw ValidationError("expected 13 columns, got " + std::to_string(f.size()), where);
    }
    SimRow r;
    double * dst[] = {&r.t, &r.x, &r.y, &r.psi, &r.vx, &r.vy, &r.r, &r.delta_f, &r.a_lat, &r.beta,
                      &r.plan_offset, &r.j_all};
    for (std::size_t i = 0; i < 12; ++i) {
      *dst[i] = parse_number(f[i], where);
    }
    r.comfort_class = comfort_class_from_string(f[12]);
    rows.push_back(r);
  }
  return rows;
}

std::string plans_csv_text(const std::vector<PlanRecord> & plans)
{
  std::string out =
    "t,x,v,target_offset,transition_gain,feasible,initiates_deviation,deviation_onset_x,plpts_gap,"
    "plpts_required,j_track,j_obstacle,j_road,j_confidence,j_all\n";
  for (const auto & p : plans) {
    for (double v : {p.t, p.x, p.v, p.target_offset, p.transition_gain}) {
      append_number(out, v);
      out += ',';
    }
    out += p.feasible ? "1," : "0,";
    out += p.initiates_deviation ? "1," : "0,";
    for (double v : {p.deviation_onset_x, p.plpts_gap, p.plpts_required, p.cost.j_track, p.cost.j_obstacle,
                     p.cost.j_road, p.cost.j_confidence}) {
      append_number(out, v);
      out += ',';
    }
    append_number(out, p.cost.j_all);
    out += '\n';
  }
  return out;
}

std::string metadata_text(const SimMetadata & m)
{
  json j;
  j["format"] = "comfort_avoid.simlog/1";
  j["scenario"] = m.scenario_name;
  j["config_hash"] = m.config_hash;
  j["geometry_hash"] = m.geometry_hash;
  j["seed"] = m.seed;
  j["version"] = m.version;
  j["created"] = m.created;
  j["dt"] = m.dt;
  j["speed_kmh"] = m.speed_kmh;
  j["vehicle_half_width"] = m.vehicle_half_width;
  j["clearance_margin"] = m.clearance_margin;
  j["road"] = {{"y_boundaries", m.road.y_boundaries()}};
  j["obstacles"] = obstacles_json(m.obstacles);
  return j.dump(2) + "\n";
}

SimMetadata parse_metadata(const std::string & text, const std::string & origin)
{
  SimMetadata m;
  try {
    const json j = json::parse(text);
    if (j.value("format", "") != "comfort_avoid.simlog/1") {
      throw ValidationError("unsupported metadata format", origin);
    }
    m.scenario_name = j.at("scenario").get<std::string>();
    m.config_hash = j.at("config_hash").get<std::string>();
    m.geometry_hash = j.at("geometry_hash").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.version = j.at("version").get<std::string>();
    m.created = j.at("created").get<std::string>();
    m.dt = j.at("dt").get<double>();
    m.speed_kmh = j.at("speed_kmh").get<double>();
    m.vehicle_half_width = j.at("vehicle_half_width").get<double>();
    m.clearance_margin = j.at("clearance_margin").get<double>();
    m.road = RoadGeometry(j.at("road").at("y_boundaries").get<std::vector<double>>());
    for (const auto & o : j.at("obstacles")) {
      Obstacle obs;
      obs.xo = o.at("xo").get<double>();
      obs.yo = o.at("yo").get<double>();
      obs.half_length = o.at("half_length").get<double>();
      obs.half_width = o.at("half_width").get<double>();
      obs.speed = o.at("speed").get<double>();
      m.obstacles.push_back(obs);
    }
  } catch (const json::exception & e) {
    throw ValidationError(std::string("malformed metadata: ") + e.what(), origin);
  }
  return m;
}

std::string geometry_hash(const RoadGeometry & road, const std::vector<Obstacle> & obstacles)
{
  const json j = {{"road", road.y_boundaries()}, {"obstacles", obstacles_json(obstacles)}};
  return fnv1a_hex(j.dump());
}

std::string metadata_path(const std::string & csv_path) { return csv_path + ".meta.json"; }

std::string plans_path(const std::string & csv_path)
{
  std::filesystem::path p(csv_path);
  const std::string stem = p.extension() == ".csv" ? p.stem().string() : p.filename().string();
  return (p.parent_path() / (stem + "_plans.csv")).string();
}

std::string read_text_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("cannot open '" + path + "'", "file");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string & path, const std::string & text)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw RuntimeError("cannot write '" + path + "'");
  }
  out << text;
  if (!out) {
    throw RuntimeError("write failed for '" + path + "'");
  }
}

void save_log(const std::string & csv_path, const SimLog & log)
{
  write_text_file(csv_path, log_csv_text(log.rows));
  write_text_file(metadata_path(csv_path), metadata_text(log.meta));
  write_text_file(plans_path(csv_path), plans_csv_text(log.plans));
}

SimLog load_log(const std::string & csv_path)
{
  SimLog log;
  log.rows = parse_log_csv(read_text_file(csv_path), csv_path);
  const std::string meta = metadata_path(csv_path);
  if (std::filesystem::exists(meta)) {
    log.meta = parse_metadata(read_text_file(meta), meta);
  }
  return log;
}

bool has_geometry(const SimLog & log) { return !log.meta.geometry_hash.empty(); }

}  // namespace comfort_avoid
