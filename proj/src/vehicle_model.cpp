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

#include "comfort_avoid/vehicle_model.hpp"

#include "comfort_avoid/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace comfort_avoid
{

namespace
{

struct LateralCoefficients
{
  double a11, a12, b1;  // vy' = a11 vy + a12 r + b1 delta
  double a21, a22, b2;  // r'  = a21 vy + a22 r + b2 delta
};

LateralCoefficients lateral_coefficients(double vx, const VehicleParams & p)
{
  const double m = p.mass;
  const double iz = p.yaw_inertia;
  return {
    -(p.cf + p.cr) / (m * vx),
    (p.lr * p.cr - p.lf * p.cf) / (m * vx) - vx,
    p.cf / m,
    (p.lr * p.cr - p.lf * p.cf) / (iz * vx),
    -(p.lf * p.lf * p.cf + p.lr * p.lr * p.cr) / (iz * vx),
    p.lf * p.cf / iz,
  };
}

void check_step_preconditions(const VehicleState & state, double dt)
{
  if (!(dt > 0.0 && dt <= 0.1)) {
    throw ValidationError("time step must lie in (0, 0.1], got " + std::to_string(dt), "dt");
  }
  if (!(state.vx >= kMinSpeed)) {
    throw ValidationError(
      "longitudinal speed below " + std::to_string(kMinSpeed) + " m/s: " + std::to_string(state.vx),
      "state.vx");
  }
}

// One-dimensional derivative of a uniformly sampled sequence.
std::vector<double> differentiate(const std::vector<double> & f, double dt)
{
  const std::size_t n = f.size();
  std::vector<double> d(n);
  d.front() = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dt);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    d[i] = (f[i + 1] - f[i - 1]) / (2.0 * dt);
  }
  d.back() = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dt);
  return d;
}

// Second derivative: central in the interior, second-order one-sided at the
// ends (first order when only three samples exist).
std::vector<double> differentiate2(const std::vector<double> & f, double dt)
{
  const std::size_t n = f.size();
  const double h2 = dt * dt;
  std::vector<double> d(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
  }
  if (n >= 4) {
    d.front() = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
    d.back() = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
  } else {
    d.front() = d[1];
    d.back() = d[1];
  }
  return d;
}

}  // namespace

Vector6d VehicleState::to_vector() const
{
  Vector6d v;
  v << x, y, psi, vx, vy, r;
  return v;
}

VehicleState VehicleState::from_vector(const Vector6d & v)
{
  return {v(0), v(1), v(2), v(3), v(4), v(5)};
}

double VehicleParams::understeer_gradient() const
{
  return mass * (lr * cr - lf * cf) / (cf * cr * wheelbase());
}

void VehicleParams::validate(const std::string & path) const
{
  const auto positive = [&](double value, const char * name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw ValidationError("must be a finite positive number", path + "." + name);
    }
  };
  positive(mass, "mass");
  positive(yaw_inertia, "yaw_inertia");
  positive(lf, "lf");
  positive(lr, "lr");
  positive(cf, "cf");
  positive(cr, "cr");
  positive(delta_max, "delta_max");
  positive(ddelta_max, "ddelta_max");
  positive(half_width, "half_width");
}

bool FeatureVector::is_finite() const
{
  return std::isfinite(v_long) && std::isfinite(a_lat) && std::isfinite(yaw_rate) &&
         std::isfinite(a_lat_rate) && std::isfinite(yaw_accel);
}

double normalize_angle(double angle)
{
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(angle, two_pi);
  if (a <= -std::numbers::pi) {
    a += two_pi;
  } else if (a > std::numbers::pi) {
    a -= two_pi;
  }
  return a;
}

Vector6d state_derivative(const VehicleState & s, ControlInput input, const VehicleParams & params)
{
  const auto c = lateral_coefficients(s.vx, params);
  const double cos_psi = std::cos(s.psi);
  const double sin_psi = std::sin(s.psi);
  Vector6d d;
  d << s.vx * cos_psi - s.vy * sin_psi,
       s.vx * sin_psi + s.vy * cos_psi,
       s.r,
       0.0,
       c.a11 * s.vy + c.a12 * s.r + c.b1 * input.delta_f,
       c.a21 * s.vy + c.a22 * s.r + c.b2 * input.delta_f;
  return d;
}

VehicleState step_dynamic(
  const VehicleState & state, ControlInput input, const VehicleParams & params, double dt)
{
  check_step_preconditions(state, dt);
  const Vector6d next = state.to_vector() + dt * state_derivative(state, input, params);
  VehicleState out = VehicleState::from_vector(next);
  out.psi = normalize_angle(out.psi);
  return out;
}

Linearization linearize(
  const VehicleState & s, ControlInput input, const VehicleParams & p, double dt)
{
  check_step_preconditions(s, dt);
  (void)input;  // the lateral model is linear in delta_f

  const auto c = lateral_coefficients(s.vx, p);
  const double cos_psi = std::cos(s.psi);
  const double sin_psi = std::sin(s.psi);
  const double vx2 = s.vx * s.vx;
  const double cornering_moment = p.lr * p.cr - p.lf * p.cf;

  // Continuous Jacobian, state order (x, y, psi, vx, vy, r).
  Matrix6d jac = Matrix6d::Zero();
  jac(0, 2) = -s.vx * sin_psi - s.vy * cos_psi;
  jac(0, 3) = cos_psi;
  jac(0, 4) = -sin_psi;
  jac(1, 2) = s.vx * cos_psi - s.vy * sin_psi;
  jac(1, 3) = sin_psi;
  jac(1, 4) = cos_psi;
  jac(2, 5) = 1.0;
  jac(4, 3) = (p.cf + p.cr) / (p.mass * vx2) * s.vy - (cornering_moment / (p.mass * vx2) + 1.0) * s.r;
  jac(4, 4) = c.a11;
  jac(4, 5) = c.a12;
  jac(5, 3) = -cornering_moment / (p.yaw_inertia * vx2) * s.vy +
              (p.lf * p.lf * p.cf + p.lr * p.lr * p.cr) / (p.yaw_inertia * vx2) * s.r;
  jac(5, 4) = c.a21;
  jac(5, 5) = c.a22;

  Linearization lin;
  lin.a = Matrix6d::Identity() + dt * jac;
  lin.b = Vector6d::Zero();
  lin.b(4) = dt * c.b1;
  lin.b(5) = dt * c.b2;
  return lin;
}

double lateral_acceleration(const VehicleState & s, ControlInput input, const VehicleParams & params)
{
  const auto c = lateral_coefficients(s.vx, params);
  const double vy_dot = c.a11 * s.vy + c.a12 * s.r + c.b1 * input.delta_f;
  return vy_dot + s.vx * s.r;
}

double sideslip(const VehicleState & state)
{
  return std::atan2(state.vy, state.vx);
}

std::vector<FeatureVector> compute_features(std::span<const TimedState> log)
{
  const std::size_t n = log.size();
  if (n < 3) {
    throw ValidationError("feature extraction needs at least 3 samples, got " + std::to_string(n), "log");
  }
  const double dt = log[1].t - log[0].t;
  if (!(dt > 0.0)) {
    throw ValidationError("timestamps must be strictly increasing", "log");
  }
  for (std::size_t i = 1; i < n; ++i) {
    const double step = log[i].t - log[i - 1].t;
    if (!(step > 0.0) || std::abs(step - dt) > 1e-6 * dt) {
      throw ValidationError("timestamps must be uniformly spaced (sample " + std::to_string(i) + ")", "log");
    }
  }

  std::vector<double> vy(n), r(n);
  for (std::size_t i = 0; i < n; ++i) {
    vy[i] = log[i].state.vy;
    r[i] = log[i].state.r;
  }
  const auto vy_dot = differentiate(vy, dt);
  std::vector<double> a_lat(n);
  for (std::size_t i = 0; i < n; ++i) {
    a_lat[i] = vy_dot[i] + log[i].state.vx * r[i];
  }
  // Jerk from direct stencils; differencing a_lat again would lose an order
  // next to the one-sided end points.
  const auto vy_ddot = differentiate2(vy, dt);
  std::vector<double> vx_r(n);
  for (std::size_t i = 0; i < n; ++i) {
    vx_r[i] = log[i].state.vx * r[i];
  }
  const auto vx_r_dot = differentiate(vx_r, dt);
  std::vector<double> jerk(n);
  for (std::size_t i = 0; i < n; ++i) {
    jerk[i] = vy_ddot[i] + vx_r_dot[i];
  }
  const auto yaw_accel = differentiate(r, dt);

  std::vector<FeatureVector> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = {log[i].state.vx, a_lat[i], r[i], jerk[i], yaw_accel[i]};
  }
  return out;
}

}  // namespace comfort_avoid
