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
#include "comfort_avoid/vehicle_model.hpp"
#include "support/gen.hpp"
#include "support/jacobian_oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

namespace ca = comfort_avoid;

namespace
{

const ca::VehicleParams kParams{};

std::vector<ca::TimedState> simulate(ca::VehicleState s, const std::vector<double> & steer, double dt)
{
  std::vector<ca::TimedState> log{{s, 0.0}};
  for (std::size_t k = 0; k < steer.size(); ++k) {
    s = ca::step_dynamic(s, {steer[k]}, kParams, dt);
    log.push_back({s, dt * static_cast<double>(k + 1)});
  }
  return log;
}

}  // namespace

TEST(StepDynamic, ZeroSteeringKeepsStraightMotion)
{
  const ca::VehicleState s{0, 0, 0, 10, 0, 0};
  const auto n = ca::step_dynamic(s, {0.0}, kParams, 0.05);
  EXPECT_DOUBLE_EQ(n.x, 0.5);
  EXPECT_EQ(n.y, 0.0);
  EXPECT_EQ(n.psi, 0.0);
  EXPECT_EQ(n.vx, 10.0);
  EXPECT_EQ(n.vy, 0.0);
  EXPECT_EQ(n.r, 0.0);
}

TEST(StepDynamic, YawRateSettlesAtSingleTrackSteadyState)
{
  for (double vx : {5.0, 10.0, 20.0}) {
    const double delta = 0.01;
    ca::VehicleState s{0, 0, 0, vx, 0, 0};
    for (int k = 0; k < 5000; ++k) {
      s = ca::step_dynamic(s, {delta}, kParams, 0.01);
    }
    const double k_us = kParams.mass * (kParams.lr * kParams.cr - kParams.lf * kParams.cf) /
                        (kParams.cf * kParams.cr * kParams.wheelbase());
    const double expected = vx * delta / (kParams.wheelbase() + k_us * vx * vx);
    EXPECT_NEAR(s.r, expected, 0.01 * std::abs(expected)) << "vx " << vx;
  }
}

TEST(StepDynamic, UndersteerGradientFormula)
{
  const double k_us = 1500.0 * (1.4 * 80000.0 - 1.2 * 80000.0) / (80000.0 * 80000.0 * 2.6);
  EXPECT_DOUBLE_EQ(kParams.understeer_gradient(), k_us);
}

TEST(StepDynamic, MirroredSteeringMirrorsTheResponse)
{
  support::Gen gen(7);
  std::vector<double> steer(300);
  for (auto & d : steer) {
    d = gen.uniform(-0.05, 0.05);
  }
  std::vector<double> mirrored(steer.size());
  for (std::size_t i = 0; i < steer.size(); ++i) {
    mirrored[i] = -steer[i];
  }
  const ca::VehicleState s0{0, 0, 0, 12, 0, 0};
  const auto a = simulate(s0, steer, 0.02);
  const auto b = simulate(s0, mirrored, 0.02);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].state.x, b[k].state.x);
    EXPECT_EQ(a[k].state.y, -b[k].state.y);
    EXPECT_EQ(a[k].state.psi, -b[k].state.psi);
    EXPECT_EQ(a[k].state.vy, -b[k].state.vy);
    EXPECT_EQ(a[k].state.r, -b[k].state.r);
  }
}

TEST(StepDynamic, NoSteeringNoLateralMotionEver)
{
  ca::VehicleState s{3, 0, 0, 15, 0, 0};
  for (int k = 0; k < 2000; ++k) {
    s = ca::step_dynamic(s, {0.0}, kParams, 0.02);
    ASSERT_EQ(s.y, 0.0);
    ASSERT_EQ(s.psi, 0.0);
    ASSERT_EQ(s.vy, 0.0);
    ASSERT_EQ(s.r, 0.0);
  }
}

TEST(StepDynamic, LateralSubsystemIsLinearInSteering)
{
  support::Gen gen(11);
  std::vector<double> d1(200);
  std::vector<double> d2(200);
  for (std::size_t i = 0; i < d1.size(); ++i) {
    d1[i] = gen.uniform(-0.05, 0.05);
    d2[i] = gen.uniform(-0.05, 0.05);
  }
  const double a = 0.7;
  const double b = -1.3;
  std::vector<double> mix(d1.size());
  for (std::size_t i = 0; i < d1.size(); ++i) {
    mix[i] = a * d1[i] + b * d2[i];
  }
  const ca::VehicleState s0{0, 0, 0, 10, 0, 0};
  const auto r1 = simulate(s0, d1, 0.02);
  const auto r2 = simulate(s0, d2, 0.02);
  const auto rm = simulate(s0, mix, 0.02);
  for (std::size_t k = 0; k < rm.size(); ++k) {
    const double vy = a * r1[k].state.vy + b * r2[k].state.vy;
    const double r = a * r1[k].state.r + b * r2[k].state.r;
    EXPECT_NEAR(rm[k].state.vy, vy, 1e-14 + 1e-12 * std::abs(vy));
    EXPECT_NEAR(rm[k].state.r, r, 1e-14 + 1e-12 * std::abs(r));
  }
}

TEST(StepDynamic, HeadingStaysNormalized)
{
  ca::VehicleState s{0, 0, std::numbers::pi - 0.001, 10, 0, 0.5};
  for (int k = 0; k < 1000; ++k) {
    s = ca::step_dynamic(s, {0.0}, kParams, 0.02);
    ASSERT_GT(s.psi, -std::numbers::pi);
    ASSERT_LE(s.psi, std::numbers::pi);
  }
  EXPECT_DOUBLE_EQ(ca::normalize_angle(-std::numbers::pi), std::numbers::pi);
  EXPECT_DOUBLE_EQ(ca::normalize_angle(3.0 * std::numbers::pi), std::numbers::pi);
}

TEST(StepDynamic, RejectsBadPreconditions)
{
  const ca::VehicleState ok{0, 0, 0, 10, 0, 0};
  EXPECT_THROW(ca::step_dynamic(ok, {0.0}, kParams, 0.0), ca::ValidationError);
  EXPECT_THROW(ca::step_dynamic(ok, {0.0}, kParams, 0.2), ca::ValidationError);
  const ca::VehicleState slow{0, 0, 0, 0.4, 0, 0};
  EXPECT_THROW(ca::step_dynamic(slow, {0.0}, kParams, 0.02), ca::ValidationError);
  EXPECT_THROW(ca::linearize(slow, {0.0}, kParams, 0.02), ca::ValidationError);
}

TEST(VehicleParams, ValidationNamesTheField)
{
  ca::VehicleParams p;
  p.cf = 0.0;
  try {
    p.validate();
    FAIL() << "expected a validation error";
  } catch (const ca::ValidationError & e) {
    EXPECT_EQ(e.path(), "vehicle.cf");
  }
  p = {};
  p.yaw_inertia = -1.0;
  EXPECT_THROW(p.validate(), ca::ValidationError);
}

TEST(Linearize, KinematicRowsAtZeroHeading)
{
  const ca::VehicleState s{1, 2, 0.0, 12, 0.4, 0.1};
  const double dt = 0.02;
  const auto lin = ca::linearize(s, {0.03}, kParams, dt);
  EXPECT_DOUBLE_EQ(lin.a(0, 2), -s.vy * dt);
  EXPECT_DOUBLE_EQ(lin.a(1, 2), s.vx * dt);
  EXPECT_EQ(lin.b(0), 0.0);
  EXPECT_EQ(lin.b(1), 0.0);
  EXPECT_EQ(lin.b(2), 0.0);
}

TEST(Linearize, MatchesCentralDifferencesOnRandomStates)
{
  support::Gen gen(2024);
  for (int i = 0; i < 100; ++i) {
    const auto s = gen.vehicle_state();
    const ca::ControlInput u{gen.uniform(-0.3, 0.3)};
    const double dt = gen.uniform(0.005, 0.1);
    const auto lin = ca::linearize(s, u, kParams, dt);
    const auto fd = support::fd_jacobian(s, u, kParams, dt);
    EXPECT_LE(support::max_relative_error(lin.a, fd.a), 1e-5) << "case " << i;
    EXPECT_LE(support::max_relative_error(lin.b, fd.b), 1e-5) << "case " << i;
  }
}

TEST(ComputeFeatures, StraightMotionHasNoLateralFeatures)
{
  std::vector<ca::TimedState> log;
  for (int k = 0; k < 20; ++k) {
    log.push_back({{10.0 * 0.02 * k, 0, 0, 10, 0, 0}, 0.02 * k});
  }
  for (const auto & f : ca::compute_features(log)) {
    EXPECT_EQ(f.v_long, 10.0);
    EXPECT_EQ(f.a_lat, 0.0);
    EXPECT_EQ(f.yaw_rate, 0.0);
    EXPECT_EQ(f.a_lat_rate, 0.0);
    EXPECT_EQ(f.yaw_accel, 0.0);
  }
}

TEST(ComputeFeatures, SteadyCircularMotion)
{
  const double vx = 10.0;
  const double r0 = 0.2;
  const double vy = -0.3;
  std::vector<ca::TimedState> log;
  for (int k = 0; k < 30; ++k) {
    const double t = 0.05 * k;
    log.push_back({{0, 0, ca::normalize_angle(r0 * t), vx, vy, r0}, t});
  }
  for (const auto & f : ca::compute_features(log)) {
    EXPECT_DOUBLE_EQ(f.a_lat, vx * r0);
    EXPECT_EQ(f.yaw_rate, r0);
    EXPECT_NEAR(f.a_lat_rate, 0.0, 1e-12);
    EXPECT_NEAR(f.yaw_accel, 0.0, 1e-12);
  }
}

TEST(ComputeFeatures, MirroredManoeuvreNegatesLateralFeatures)
{
  support::Gen gen(5);
  std::vector<double> steer(100);
  for (auto & d : steer) {
    d = gen.uniform(-0.05, 0.05);
  }
  auto log = simulate({0, 0, 0, 9, 0, 0}, steer, 0.02);
  auto mirror = log;
  for (auto & ts : mirror) {
    ts.state.y = -ts.state.y;
    ts.state.psi = -ts.state.psi;
    ts.state.vy = -ts.state.vy;
    ts.state.r = -ts.state.r;
  }
  const auto f = ca::compute_features(log);
  const auto g = ca::compute_features(mirror);
  ASSERT_EQ(f.size(), log.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    EXPECT_EQ(f[k].v_long, g[k].v_long);
    EXPECT_EQ(f[k].a_lat, -g[k].a_lat);
    EXPECT_EQ(f[k].yaw_rate, -g[k].yaw_rate);
    EXPECT_EQ(f[k].a_lat_rate, -g[k].a_lat_rate);
    EXPECT_EQ(f[k].yaw_accel, -g[k].yaw_accel);
  }
}

// vy = A sin(wt), r = B cos(wt): closed-form a_lat = (A w + vx B) cos(wt),
// jerk = -(A w + vx B) w sin(wt), yaw_accel = -B w sin(wt).
TEST(ComputeFeatures, SinusoidalLogConvergesAtSecondOrder)
{
  const double vx = 10.0;
  const double amp_vy = 0.4;
  const double amp_r = 0.15;
  const double w = 2.0;
  const auto max_error = [&](double dt) {
    std::vector<ca::TimedState> log;
    const int n = static_cast<int>(std::lround(3.0 / dt));
    for (int k = 0; k <= n; ++k) {
      const double t = dt * k;
      log.push_back({{0, 0, 0, vx, amp_vy * std::sin(w * t), amp_r * std::cos(w * t)}, t});
    }
    const auto f = ca::compute_features(log);
    double worst = 0.0;
    const double c = amp_vy * w + vx * amp_r;
    for (std::size_t k = 0; k < f.size(); ++k) {
      const double t = log[k].t;
      worst = std::max(worst, std::abs(f[k].a_lat - c * std::cos(w * t)));
      worst = std::max(worst, std::abs(f[k].a_lat_rate + c * w * std::sin(w * t)));
      worst = std::max(worst, std::abs(f[k].yaw_accel + amp_r * w * std::sin(w * t)));
    }
    return worst;
  };
  const double e1 = max_error(0.02);
  const double e2 = max_error(0.01);
  EXPECT_LT(e1, 0.05);
  EXPECT_GT(e1 / e2, 3.0);  // ~4 for second order
}

TEST(ComputeFeatures, RejectsShortOrIrregularLogs)
{
  std::vector<ca::TimedState> log{{{0, 0, 0, 10, 0, 0}, 0.0}, {{0, 0, 0, 10, 0, 0}, 0.02}};
  EXPECT_THROW(ca::compute_features(log), ca::ValidationError);
  log.push_back({{0, 0, 0, 10, 0, 0}, 0.05});
  EXPECT_THROW(ca::compute_features(log), ca::ValidationError);
}
