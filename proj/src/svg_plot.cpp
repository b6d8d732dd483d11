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

#include "comfort_avoid/svg_plot.hpp"

#include "comfort_avoid/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>

namespace comfort_avoid
{

namespace
{

std::string num(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string label(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string escape(const std::string & s)
{
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

// Maps data coordinates into a pixel rectangle (y axis pointing up).
struct Frame
{
  double left;
  double top;
  double width;
  double height;
  double x0;
  double x1;
  double y0;
  double y1;

  double px(double x) const { return left + (x - x0) / (x1 - x0) * width; }
  double py(double y) const { return top + (y1 - y) / (y1 - y0) * height; }
};

std::vector<double> ticks(double lo, double hi, int target = 6)
{
  const double span = hi - lo;
  if (!(span > 0.0)) {
    return {lo};
  }
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) {
      break;
    }
  }
  std::vector<double> out;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) {
    out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return out;
}

std::string header(double w, double h)
{
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\" font-family=\"sans-serif\" font-size=\"11\">\n"
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string axes(const Frame & f, const std::string & xlabel, const std::string & ylabel)
{
  std::string s = "<g class=\"axes\" stroke=\"#333\" fill=\"none\">\n<rect x=\"" + num(f.left) + "\" y=\"" +
                  num(f.top) + "\" width=\"" + num(f.width) + "\" height=\"" + num(f.height) + "\"/>\n</g>\n";
  s += "<g class=\"ticks\" fill=\"#333\">\n";
  for (double t : ticks(f.x0, f.x1)) {
    s += "<text x=\"" + num(f.px(t)) + "\" y=\"" + num(f.top + f.height + 14) + "\" text-anchor=\"middle\">" +
         label(t) + "</text>\n";
  }
  for (double t : ticks(f.y0, f.y1, 4)) {
    s += "<text x=\"" + num(f.left - 6) + "\" y=\"" + num(f.py(t) + 4) + "\" text-anchor=\"end\">" + label(t) +
         "</text>\n";
  }
  s += "<text x=\"" + num(f.left + f.width / 2) + "\" y=\"" + num(f.top + f.height + 30) +
       "\" text-anchor=\"middle\">" + escape(xlabel) + "</text>\n";
  s += "<text transform=\"translate(" + num(f.left - 42) + "," + num(f.top + f.height / 2) +
       ") rotate(-90)\" text-anchor=\"middle\">" + escape(ylabel) + "</text>\n</g>\n";
  return s;
}

std::string polyline(
  const Frame & f, const std::vector<double> & xs, const std::vector<double> & ys, const std::string & cls,
  const std::string & color)
{
  std::string s = "<polyline class=\"" + cls + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) {
      s += ' ';
    }
    s += num(f.px(xs[i])) + "," + num(f.py(ys[i]));
  }
  return s + "\"/>\n";
}

std::string hline(const Frame & f, double y, const std::string & cls, const std::string & color, bool dashed)
{
  return "<line class=\"" + cls + "\" x1=\"" + num(f.left) + "\" x2=\"" + num(f.left + f.width) + "\" y1=\"" +
         num(f.py(y)) + "\" y2=\"" + num(f.py(y)) + "\" stroke=\"" + color + "\"" +
         (dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
}

std::string road_and_obstacles(const Frame & f, const RoadGeometry & road, const std::vector<Obstacle> & obstacles)
{
  std::string s;
  const auto & b = road.y_boundaries();
  for (std::size_t i = 0; i < b.size(); ++i) {
    const bool edge = i == 0 || i + 1 == b.size();
    s += hline(f, b[i], edge ? "road-edge" : "lane-line", "#777", !edge);
  }
  for (const auto & o : obstacles) {
    const double x0 = std::max(f.x0, o.xo - o.half_length);
    const double x1 = std::min(f.x1, o.xo + o.half_length);
    if (x1 <= x0) {
      continue;
    }
    s += "<rect class=\"obstacle\" x=\"" + num(f.px(x0)) + "\" y=\"" + num(f.py(o.yo + o.half_width)) +
         "\" width=\"" + num(f.px(x1) - f.px(x0)) + "\" height=\"" +
         num(f.py(o.yo - o.half_width) - f.py(o.yo + o.half_width)) + "\" fill=\"#c0392b\" fill-opacity=\"0.6\"/>\n";
  }
  return s;
}

// x range covering the runs and the obstacles, plus the road's y range.
Frame overhead_frame(
  const std::vector<const SimLog *> & logs, const RoadGeometry & road, const std::vector<Obstacle> & obstacles)
{
  double x0 = std::numeric_limits<double>::infinity();
  double x1 = -x0;
  for (const auto * log : logs) {
    for (const auto & r : log->rows) {
      x0 = std::min(x0, r.x);
      x1 = std::max(x1, r.x);
    }
  }
  for (const auto & o : obstacles) {
    x0 = std::min(x0, o.xo - o.half_length);
    x1 = std::max(x1, o.xo + o.half_length);
  }
  if (!std::isfinite(x0)) {
    x0 = 0.0;
    x1 = 1.0;
  }
  if (x1 - x0 < 1.0) {
    x1 = x0 + 1.0;
  }
  const double pad = 0.5;
  const double y0 = road.y_min() - pad;
  const double y1 = road.y_max() + pad;
  const double width = 900.0;
  // Keep the lateral axis readable: at least 12 px per metre.
  const double height = std::max(160.0, (y1 - y0) * 24.0);
  return {60.0, 20.0, width, height, x0, x1, y0, y1};
}

const char * kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

// Perceptually ordered blue -> yellow ramp.
std::string ramp(double t)
{
  t = std::clamp(t, 0.0, 1.0);
  static const double stops[5][3] = {
    {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
  const double pos = t * 4.0;
  const int i = std::min(3, static_cast<int>(pos));
  const double a = pos - i;
  char buf[8];
  std::snprintf(
    buf, sizeof(buf), "#%02x%02x%02x", static_cast<int>(std::lround(stops[i][0] + a * (stops[i + 1][0] - stops[i][0]))),
    static_cast<int>(std::lround(stops[i][1] + a * (stops[i + 1][1] - stops[i][1]))),
    static_cast<int>(std::lround(stops[i][2] + a * (stops[i + 1][2] - stops[i][2]))));
  return buf;
}

}  // namespace

std::string trajectory_svg(const SimLog & log)
{
  const Frame f = overhead_frame({&log}, log.meta.road, log.meta.obstacles);
  std::string s = header(f.left + f.width + 20, f.top + f.height + 45);
  s += axes(f, "x [m]", "y [m]");
  s += road_and_obstacles(f, log.meta.road, log.meta.obstacles);
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto & r : log.rows) {
    xs.push_back(r.x);
    ys.push_back(r.y);
  }
  s += polyline(f, xs, ys, "trajectory", kPalette[0]);
  return s + "</svg>\n";
}

std::string time_series_svg(const SimLog & log, const TrackerBounds & bounds)
{
  struct Panel
  {
    const char * name;
    double SimRow::*field;
    double bound;
  };
  const Panel panels[] = {
    {"delta_f [rad]", &SimRow::delta_f, bounds.delta},
    {"a_lat [m/s^2]", &SimRow::a_lat, bounds.a_lat},
    {"beta [rad]", &SimRow::beta, bounds.beta},
    {"r [rad/s]", &SimRow::r, bounds.yaw_rate},
  };
  const double panel_h = 150.0;
  const double gap = 50.0;
  std::string s = header(980, 20 + 4 * (panel_h + gap));
  double t0 = 0.0;
  double t1 = 1.0;
  if (!log.rows.empty()) {
    t0 = log.rows.front().t;
    t1 = std::max(t0 + 1e-6, log.rows.back().t);
  }
  for (int p = 0; p < 4; ++p) {
    const Panel & panel = panels[p];
    double lim = panel.bound;
    std::vector<double> ts;
    std::vector<double> vs;
    for (const auto & r : log.rows) {
      ts.push_back(r.t);
      vs.push_back(r.*panel.field);
      lim = std::max(lim, std::abs(r.*panel.field));
    }
    lim *= 1.15;
    const Frame f{70.0, 20.0 + p * (panel_h + gap), 880.0, panel_h, t0, t1, -lim, lim};
    s += "<g class=\"panel\">\n";
    s += axes(f, "t [s]", panel.name);
    s += hline(f, panel.bound, "bound", "#c0392b", true);
    s += hline(f, -panel.bound, "bound", "#c0392b", true);
    s += polyline(f, ts, vs, "series", kPalette[0]);
    s += "</g>\n";
  }
  return s + "</svg>\n";
}

double FieldGrid::cell_x(int i) const
{
  return spec.x_min + (i + 0.5) * (spec.x_max - spec.x_min) / spec.nx;
}

double FieldGrid::cell_y(int j) const
{
  return spec.y_min + (j + 0.5) * (spec.y_max - spec.y_min) / spec.ny;
}

FieldGrid sample_field(
  const std::vector<Obstacle> & obstacles, const RoadGeometry & road, const FieldParams & fields,
  const FieldGridSpec & spec)
{
  if (spec.nx < 1 || spec.ny < 1 || !(spec.x_max > spec.x_min) || !(spec.y_max > spec.y_min)) {
    throw ValidationError("grid needs positive size and increasing bounds", "grid");
  }
  fields.validate();
  FieldGrid g;
  g.spec = spec;
  g.values.assign(static_cast<std::size_t>(spec.ny), std::vector<double>(static_cast<std::size_t>(spec.nx)));
  for (int j = 0; j < spec.ny; ++j) {
    for (int i = 0; i < spec.nx; ++i) {
      g.values[j][i] =
        total_potential(g.cell_x(i), g.cell_y(j), spec.ego_speed, obstacles, road, fields.obstacle, fields.road);
    }
  }
  return g;
}

std::string field_grid_csv(const FieldGrid & grid)
{
  std::string out = "x,y,value\n";
  char buf[96];
  for (int j = 0; j < grid.spec.ny; ++j) {
    for (int i = 0; i < grid.spec.nx; ++i) {
      std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%.9g\n", grid.cell_x(i), grid.cell_y(j), grid.values[j][i]);
      out += buf;
    }
  }
  return out;
}

std::string field_heatmap_svg(const FieldGrid & grid, const RoadGeometry & road)
{
  const auto & spec = grid.spec;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto & row : grid.values) {
    for (double v : row) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const double span = hi > lo ? hi - lo : 1.0;
  const double width = 900.0;
  const double height = std::max(160.0, (spec.y_max - spec.y_min) * 24.0);
  const Frame f{60.0, 20.0, width, height, spec.x_min, spec.x_max, spec.y_min, spec.y_max};
  std::string s = header(f.left + f.width + 90, f.top + f.height + 45);
  const double cw = width / spec.nx;
  const double ch = height / spec.ny;
  s += "<g class=\"heatmap\" shape-rendering=\"crispEdges\">\n";
  for (int j = 0; j < spec.ny; ++j) {
    for (int i = 0; i < spec.nx; ++i) {
      s += "<rect x=\"" + num(f.left + i * cw) + "\" y=\"" + num(f.top + (spec.ny - 1 - j) * ch) + "\" width=\"" +
           num(cw + 0.05) + "\" height=\"" + num(ch + 0.05) + "\" fill=\"" + ramp((grid.values[j][i] - lo) / span) +
           "\"/>\n";
    }
  }
  s += "</g>\n";
  const auto & b = road.y_boundaries();
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] >= spec.y_min && b[i] <= spec.y_max) {
      s += hline(f, b[i], "lane-line", "white", i != 0 && i + 1 != b.size());
    }
  }
  s += axes(f, "x [m]", "y [m]");
  // Colour bar.
  const double bx = f.left + f.width + 20;
  for (int k = 0; k < 50; ++k) {
    s += "<rect x=\"" + num(bx) + "\" y=\"" + num(f.top + (49 - k) * height / 50) + "\" width=\"14\" height=\"" +
         num(height / 50 + 0.05) + "\" fill=\"" + ramp((k + 0.5) / 50.0) + "\"/>\n";
  }
  s += "<text x=\"" + num(bx + 18) + "\" y=\"" + num(f.top + 8) + "\">" + label(hi) + "</text>\n";
  s += "<text x=\"" + num(bx + 18) + "\" y=\"" + num(f.top + height) + "\">" + label(lo) + "</text>\n";
  return s + "</svg>\n";
}

std::string overlay_svg(const std::vector<std::pair<std::string, SimLog>> & runs)
{
  if (runs.empty()) {
    throw ValidationError("no runs to overlay", "runs");
  }
  std::vector<const SimLog *> logs;
  for (const auto & r : runs) {
    logs.push_back(&r.second);
  }
  const SimLog & first = runs.front().second;
  const Frame f = overhead_frame(logs, first.meta.road, first.meta.obstacles);
  const double legend_h = 16.0 * runs.size();
  std::string s = header(f.left + f.width + 20, f.top + f.height + 55 + legend_h);
  s += axes(f, "x [m]", "y [m]");
  s += road_and_obstacles(f, first.meta.road, first.meta.obstacles);
  for (std::size_t k = 0; k < runs.size(); ++k) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto & r : runs[k].second.rows) {
      xs.push_back(r.x);
      ys.push_back(r.y);
    }
    const std::string color = kPalette[k % std::size(kPalette)];
    s += polyline(f, xs, ys, "run", color);
    const double ly = f.top + f.height + 48 + 16.0 * k;
    s += "<line x1=\"" + num(f.left) + "\" x2=\"" + num(f.left + 24) + "\" y1=\"" + num(ly - 4) + "\" y2=\"" +
         num(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    s += "<text x=\"" + num(f.left + 30) + "\" y=\"" + num(ly) + "\">" + escape(runs[k].first) + "</text>\n";
  }
  return s + "</svg>\n";
}

std::vector<std::string> render_plots(const SimLog & log, const std::string & out_dir, const TrackerBounds & bounds)
{
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw RuntimeError("cannot create output directory '" + out_dir + "': " + ec.message());
  }
  const std::string traj = (std::filesystem::path(out_dir) / "trajectory.svg").string();
  const std::string series = (std::filesystem::path(out_dir) / "timeseries.svg").string();
  write_text_file(traj, trajectory_svg(log));
  write_text_file(series, time_series_svg(log, bounds));
  return {traj, series};
}

}  // namespace comfort_avoid
