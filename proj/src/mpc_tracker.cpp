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

#include "comfort_avoid/mpc_tracker.hpp"

#include "comfort_avoid/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace comfort_avoid
{

namespace
{

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kHeadingTolerance = 0.2;

void require(bool ok, const std::string & path, const char * what)
{
  if (!ok) {
    throw ValidationError(what, path);
  }
}

// Affine prediction X_k = s + P * delta_u.
struct AffineState
{
  Vector6d s;
  Eigen::Matrix<double, 6, Eigen::Dynamic> p;
};

}  // namespace

void TrackerConfig::validate(const std::string & path) const
{
  require(np >= 1, path + ".np", "must be at least 1");
  require(nc >= 1 && nc <= np, path + ".nc", "must satisfy 1 <= nc <= np");
  require(dt > 0.0 && dt <= 0.1, path + ".dt", "must lie in (0, 0.1]");
  require(q_y >= 0.0, path + ".q_y", "must be non-negative");
  require(q_psi >= 0.0, path + ".q_psi", "must be non-negative");
  require(r_du >= 0.0, path + ".r_du", "must be non-negative");
  require(rho_slack > 0.0, path + ".rho_slack", "must be positive");
  require(bounds.delta > 0.0, path + ".bounds.delta", "must be positive");
  require(bounds.ddelta_per_step > 0.0, path + ".bounds.ddelta_per_step", "must be positive");
  require(bounds.beta > 0.0, path + ".bounds.beta", "must be positive");
  require(bounds.a_lat > 0.0, path + ".bounds.a_lat", "must be positive");
  require(bounds.yaw_rate > 0.0, path + ".bounds.yaw_rate", "must be positive");
}

// ---------------------------------------------------------------------------

ReferencePath::ReferencePath(std::vector<PathSample> samples) : samples_(std::move(samples))
{
  if (samples_.empty()) {
    throw ValidationError("reference path is empty", "path");
  }
  arc_.resize(samples_.size());
  arc_[0] = 0.0;
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    const double dx = samples_[i].x - samples_[i - 1].x;
    const double dy = samples_[i].y - samples_[i - 1].y;
    const double ds = std::hypot(dx, dy);
    if (!(ds > 0.0)) {
      throw ValidationError("arc length must be strictly increasing", "path.samples[" + std::to_string(i) + "]");
    }
    if (std::abs(normalize_angle(samples_[i - 1].psi - std::atan2(dy, dx))) > kHeadingTolerance) {
      throw ValidationError(
        "heading disagrees with the direction to the next sample",
        "path.samples[" + std::to_string(i - 1) + "]");
    }
    arc_[i] = arc_[i - 1] + ds;
  }
}

ReferencePath ReferencePath::straight(double x0, double y0, double psi, double length, double spacing, double v)
{
  const int n = std::max(2, static_cast<int>(std::ceil(length / spacing)) + 1);
  std::vector<PathSample> s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double d = spacing * i;
    s[static_cast<std::size_t>(i)] = {x0 + d * std::cos(psi), y0 + d * std::sin(psi), psi, v};
  }
  return ReferencePath(std::move(s));
}

PathSample ReferencePath::at(double s) const
{
  if (samples_.size() == 1 || s <= 0.0) {
    PathSample p = samples_.front();
    p.x += s * std::cos(p.psi);
    p.y += s * std::sin(p.psi);
    return p;
  }
  if (s >= arc_.back()) {
    PathSample p = samples_.back();
    const double extra = s - arc_.back();
    p.x += extra * std::cos(p.psi);
    p.y += extra * std::sin(p.psi);
    return p;
  }
  const auto it = std::upper_bound(arc_.begin(), arc_.end(), s);
  const std::size_t i = static_cast<std::size_t>(it - arc_.begin());  // arc_[i-1] <= s < arc_[i]
  const double w = (s - arc_[i - 1]) / (arc_[i] - arc_[i - 1]);
  const PathSample & a = samples_[i - 1];
  const PathSample & b = samples_[i];
  return {
    a.x + w * (b.x - a.x),
    a.y + w * (b.y - a.y),
    normalize_angle(a.psi + w * normalize_angle(b.psi - a.psi)),
    a.v + w * (b.v - a.v),
  };
}

double ReferencePath::project(double px, double py) const
{
  if (samples_.size() == 1) {
    const PathSample & p = samples_.front();
    return (px - p.x) * std::cos(p.psi) + (py - p.y) * std::sin(p.psi);
  }
  std::size_t nearest = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const double d = std::hypot(px - samples_[i].x, py - samples_[i].y);
    if (d < best) {
      best = d;
      nearest = i;
    }
  }
  // Project onto the segments adjacent to the nearest sample; the first and
  // last segments extend indefinitely.
  double best_s = arc_[nearest];
  double best_d = best;
  const std::size_t lo = nearest == 0 ? 0 : nearest - 1;
  const std::size_t hi = std::min(nearest + 1, samples_.size() - 1);
  for (std::size_t i = lo; i < hi; ++i) {
    const PathSample & a = samples_[i];
    const PathSample & b = samples_[i + 1];
    const double sx = b.x - a.x;
    const double sy = b.y - a.y;
    const double len2 = sx * sx + sy * sy;
    double w = ((px - a.x) * sx + (py - a.y) * sy) / len2;
    if (i > 0) {
      w = std::max(w, 0.0);
    }
    if (i + 2 < samples_.size()) {
      w = std::min(w, 1.0);
    }
    const double d = std::hypot(px - (a.x + w * sx), py - (a.y + w * sy));
    if (d < best_d) {
      best_d = d;
      best_s = arc_[i] + w * std::sqrt(len2);
    }
  }
  return best_s;
}

NearestReference nearest_reference(const VehicleState & state, const ReferencePath & path)
{
  if (path.empty()) {
    throw ValidationError("reference path is empty", "path");
  }
  const auto & s = path.samples();
  NearestReference out;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double d = std::hypot(state.x - s[i].x, state.y - s[i].y);
    if (d < best) {
      best = d;
      out.index = i;
    }
  }
  const PathSample & ref = s[out.index];
  out.lateral_error = -std::sin(ref.psi) * (state.x - ref.x) + std::cos(ref.psi) * (state.y - ref.y);
  out.heading_error = normalize_angle(state.psi - ref.psi);
  return out;
}

// ---------------------------------------------------------------------------

QpProblem build_tracking_qp(
  const VehicleState & state, const ReferencePath & path, const VehicleParams & params,
  const TrackerConfig & cfg, ControlInput u_prev)
{
  cfg.validate();
  if (path.empty()) {
    throw ValidationError("reference path is empty", "path");
  }
  const int np = cfg.np;
  const int nc = cfg.nc;
  const double dt = cfg.dt;
  const Linearization lin = linearize(state, u_prev, params, dt);

  // Affine residual of the frozen linearization: f(x0, u0) = A x0 + B u0 + c.
  const Vector6d x0 = state.to_vector();
  const Vector6d next = x0 + dt * state_derivative(state, u_prev, params);
  const Vector6d c = next - lin.a * x0 - lin.b * u_prev.delta_f;

  // Input u_k = u_prev + T_k delta_u, with T_k(i) = 1 for i <= min(k, nc - 1).
  const auto input_row = [nc](int k) {
    Eigen::RowVectorXd t = Eigen::RowVectorXd::Zero(nc);
    t.head(std::min(k, nc - 1) + 1).setOnes();
    return t;
  };

  // Lateral-acceleration coefficients at the frozen speed.
  const double vx = state.vx;
  const double a11 = -(params.cf + params.cr) / (params.mass * vx);
  const double a12v = (params.lr * params.cr - params.lf * params.cf) / (params.mass * vx);  // a12 + vx
  const double b1 = params.cf / params.mass;
  const double beta0 = sideslip(state);
  const double dbeta_dvy = vx / (vx * vx + state.vy * state.vy);

  const double s0 = path.project(state.x, state.y);
  const double v_ref = vx;

  const int n = nc + 1;
  const int eps = nc;
  const int m = 4 * nc + 6 * np;

  MatrixXd ge(2 * np, nc);  // output sensitivities
  VectorXd e0(2 * np);      // free-response outputs
  VectorXd weights(2 * np);
  QpProblem qp;
  qp.a_ineq = MatrixXd::Zero(m, n);
  qp.b_ineq = VectorXd::Zero(m);

  int row = 0;
  for (int j = 0; j < nc; ++j) {
    const auto t = input_row(j);
    qp.a_ineq.row(row).head(nc) = t;
    qp.b_ineq(row++) = cfg.bounds.delta - u_prev.delta_f;
    qp.a_ineq.row(row).head(nc) = -t;
    qp.b_ineq(row++) = cfg.bounds.delta + u_prev.delta_f;
  }
  for (int j = 0; j < nc; ++j) {
    qp.a_ineq(row, j) = 1.0;
    qp.b_ineq(row++) = cfg.bounds.ddelta_per_step;
    qp.a_ineq(row, j) = -1.0;
    qp.b_ineq(row++) = cfg.bounds.ddelta_per_step;
  }

  const auto add_soft_pair = [&](double g0, const Eigen::RowVectorXd & g, double bound) {
    qp.a_ineq.row(row).head(nc) = g;
    qp.a_ineq(row, eps) = -1.0;
    qp.b_ineq(row++) = bound - g0;
    qp.a_ineq.row(row).head(nc) = -g;
    qp.a_ineq(row, eps) = -1.0;
    qp.b_ineq(row++) = bound + g0;
  };

  AffineState xs{x0, Eigen::Matrix<double, 6, Eigen::Dynamic>::Zero(6, nc)};
  for (int k = 1; k <= np; ++k) {
    const auto t_prev = input_row(k - 1);
    xs.s = lin.a * xs.s + lin.b * u_prev.delta_f + c;
    xs.p = lin.a * xs.p + lin.b * t_prev;

    const PathSample ref = path.at(s0 + v_ref * dt * k);
    const double psi_ref = state.psi + normalize_angle(ref.psi - state.psi);
    const double sn = std::sin(ref.psi);
    const double cs = std::cos(ref.psi);

    const int iy = 2 * (k - 1);
    const int ipsi = iy + 1;
    e0(iy) = -sn * (xs.s(0) - ref.x) + cs * (xs.s(1) - ref.y);
    ge.row(iy) = -sn * xs.p.row(0) + cs * xs.p.row(1);
    e0(ipsi) = xs.s(2) - psi_ref;
    ge.row(ipsi) = xs.p.row(2);
    weights(iy) = cfg.q_y;
    weights(ipsi) = cfg.q_psi;

    const auto t_k = input_row(k);
    add_soft_pair(beta0 + dbeta_dvy * (xs.s(4) - state.vy), dbeta_dvy * xs.p.row(4), cfg.bounds.beta);
    add_soft_pair(
      a11 * xs.s(4) + a12v * xs.s(5) + b1 * u_prev.delta_f,
      a11 * xs.p.row(4) + a12v * xs.p.row(5) + b1 * t_k, cfg.bounds.a_lat);
    add_soft_pair(xs.s(5), xs.p.row(5), cfg.bounds.yaw_rate);
  }

  const auto w = weights.asDiagonal();
  qp.h = MatrixXd::Zero(n, n);
  qp.h.topLeftCorner(nc, nc) = 2.0 * (ge.transpose() * w * ge);
  qp.h.topLeftCorner(nc, nc).diagonal().array() += 2.0 * cfg.r_du;
  qp.h(eps, eps) = 2.0 * cfg.rho_slack;
  qp.f = VectorXd::Zero(n);
  qp.f.head(nc) = 2.0 * (ge.transpose() * (w * e0));
  qp.constant = e0.dot(w * e0);
  return qp;
}

Eigen::VectorXd tracking_feasible_start(const QpProblem & qp)
{
  const auto n = qp.num_variables();
  const auto eps = n - 1;
  double epsilon = 0.0;
  for (Eigen::Index i = 0; i < qp.a_ineq.rows(); ++i) {
    const double coef = qp.a_ineq(i, eps);
    if (coef < 0.0) {
      epsilon = std::max(epsilon, -qp.b_ineq(i) / -coef);
    }
  }
  Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
  z(eps) = epsilon;
  return z;
}

TrackerOutput track_step(
  const VehicleState & state, const ReferencePath & path, const VehicleParams & params,
  const TrackerConfig & cfg, ControlInput u_prev)
{
  TrackerOutput out;
  const auto nearest = nearest_reference(state, path);
  out.diag.lateral_error = nearest.lateral_error;
  out.diag.heading_error = nearest.heading_error;

  const QpProblem qp = build_tracking_qp(state, path, params, cfg, u_prev);
  QpOptions options;
  options.x0 = tracking_feasible_start(qp);
  QpSolution sol;
  try {
    sol = solve_qp(qp, options);
  } catch (const RuntimeError &) {
    sol.status = QpStatus::kNumericalFailure;
  }
  out.diag.solver_status = sol.status;
  out.diag.solver_iterations = sol.iterations;

  double du = 0.0;
  if (sol.status == QpStatus::kOptimal) {
    du = std::clamp(sol.x(0), -cfg.bounds.ddelta_per_step, cfg.bounds.ddelta_per_step);
    out.diag.epsilon = std::max(0.0, sol.x(cfg.nc));
  }
  out.u.delta_f = std::clamp(u_prev.delta_f + du, -cfg.bounds.delta, cfg.bounds.delta);
  return out;
}

}  // namespace comfort_avoid
