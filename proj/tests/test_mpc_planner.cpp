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
#include "comfort_avoid/mpc_planner.hpp"
#include "support/gen.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace ca = comfort_avoid;

namespace
{

constexpr double kV30 = 30.0 / 3.6;
const ca::VehicleParams kVehicle{};

const ca::ClassifierModel & model()
{
  static const ca::ClassifierModel m =
    ca::train(ca::synth_dataset(ca::SynthConfig::with_separation(3.0, 42, 60)), ca::ClassifierKind::kMahalanobis);
  return m;
}

ca::PlannerConfig three_offsets()
{
  ca::PlannerConfig cfg;
  cfg.lateral_offsets = {0.0, 1.75, 3.5};
  return cfg;
}

// Distance between the vehicle footprint center and an obstacle rectangle grown
// by the vehicle half width, by brute force over the rectangle outline.
double rectangle_distance(double px, double py, const ca::Obstacle & o, double grow)
{
  const double hx = o.half_length + grow;
  const double hy = o.half_width + grow;
  if (std::abs(px - o.xo) <= hx && std::abs(py - o.yo) <= hy) {
    return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  constexpr int kN = 4000;
  for (int i = 0; i <= kN; ++i) {
    const double u = -1.0 + 2.0 * i / kN;
    for (const auto & [qx, qy] : {std::pair{o.xo + u * hx, o.yo - hy}, std::pair{o.xo + u * hx, o.yo + hy},
                                  std::pair{o.xo - hx, o.yo + u * hy}, std::pair{o.xo + hx, o.yo + u * hy}}) {
      best = std::min(best, std::hypot(px - qx, py - qy));
    }
  }
  return best;
}

double poly(const std::array<double, 6> & c, double s, int derivative)
{
  double v = 0.0;
  for (int i = derivative; i < 6; ++i) {
    double f = 1.0;
    for (int j = 0; j < derivative; ++j) {
      f *= i - j;
    }
    v += f * c[static_cast<std::size_t>(i)] * std::pow(s, i - derivative);
  }
  return v;
}

const ca::CandidateEvaluation & evaluated_with_offset(const ca::PlanResult & r, double offset)
{
  const auto it = std::find_if(r.evaluated.begin(), r.evaluated.end(), [&](const auto & e) {
    return e.candidate.target_offset == offset;
  });
  if (it == r.evaluated.end()) {
    throw std::runtime_error("offset not evaluated");
  }
  return *it;
}

}  // namespace

// --- PLPTS -----------------------------------------------------------------------

TEST(Plpts, AnchorValues)
{
  EXPECT_DOUBLE_EQ(ca::plpts_distance(10.0), 7.67);
  EXPECT_DOUBLE_EQ(ca::plpts_distance(30.0), 8.65);
  EXPECT_DOUBLE_EQ(ca::plpts_distance(60.0), 15.27);
  EXPECT_DOUBLE_EQ(ca::plpts_distance(80.0), 18.15);
}

TEST(Plpts, InterpolatesAndClamps)
{
  EXPECT_NEAR(ca::plpts_distance(45.0), 8.65 + (15.27 - 8.65) * 15.0 / 30.0, 1e-12);
  EXPECT_NEAR(ca::plpts_distance(45.0), 11.96, 1e-12);
  EXPECT_DOUBLE_EQ(ca::plpts_distance(95.0), 18.15);
  EXPECT_DOUBLE_EQ(ca::plpts_distance(3.0), 7.67);
  EXPECT_THROW(ca::plpts_distance(0.0), ca::ValidationError);
  EXPECT_THROW(ca::plpts_distance(-5.0), ca::ValidationError);
}

TEST(Plpts, NonDecreasingInSpeed)
{
  support::Gen gen(3);
  for (int i = 0; i < 2000; ++i) {
    const double a = gen.uniform(0.01, 150.0);
    const double b = gen.uniform(0.01, 150.0);
    EXPECT_LE(ca::plpts_distance(std::min(a, b)), ca::plpts_distance(std::max(a, b)));
  }
}

TEST(Plpts, RejectsUnorderedTables)
{
  ca::PlptsTable t;
  t.anchors = {{10.0, 7.0}, {10.0, 8.0}};
  EXPECT_THROW(ca::plpts_distance(20.0, t), ca::ValidationError);
  t.anchors = {{10.0, 9.0}, {20.0, 8.0}};
  EXPECT_THROW(ca::plpts_distance(20.0, t), ca::ValidationError);
}

// --- lateral profile -------------------------------------------------------------

TEST(LateralProfile, MeetsBoundaryConditions)
{
  support::Gen gen(5);
  for (int trial = 0; trial < 300; ++trial) {
    const double y0 = gen.uniform(-2.0, 5.0);
    const double slope0 = gen.uniform(-0.2, 0.2);
    const double kappa0 = gen.uniform(-0.02, 0.02);
    const double target = gen.uniform(-2.0, 5.0);
    const double len = gen.uniform(5.0, 60.0);
    const auto p = ca::LateralProfile::make(10.0, y0, slope0, kappa0, target, len);
    const double scale = 1.0 + std::abs(target - y0);
    EXPECT_NEAR(poly(p.coeffs, 0.0, 0), y0, 1e-12);
    EXPECT_NEAR(poly(p.coeffs, 0.0, 1), slope0, 1e-12);
    EXPECT_NEAR(poly(p.coeffs, 0.0, 2) / std::pow(1.0 + slope0 * slope0, 1.5), kappa0, 1e-12);
    EXPECT_NEAR(poly(p.coeffs, len, 0), target, 1e-9 * scale);
    EXPECT_NEAR(poly(p.coeffs, len, 1), 0.0, 1e-9 * scale);
    EXPECT_NEAR(poly(p.coeffs, len, 2), 0.0, 1e-9 * scale);
    // Past the end the profile holds the target.
    EXPECT_NEAR(p.y(len + 3.0), target, 1e-9 * scale);
    EXPECT_EQ(p.dy(len + 3.0), 0.0);
  }
}

TEST(LateralProfile, RejectsNonPositiveLength)
{
  EXPECT_THROW(ca::LateralProfile::make(0, 0, 0, 0, 1, 0.0), ca::ValidationError);
}

// --- candidates -----------------------------------------------------------------

TEST(GenerateCandidates, ZeroOffsetIsAStraightContinuation)
{
  const auto cs = ca::generate_candidates({5, 0, 0, kV30, 0, 0}, {}, three_offsets());
  ASSERT_EQ(cs.size(), 3U);
  const auto & c = cs[0];
  ASSERT_EQ(c.target_offset, 0.0);
  for (std::size_t k = 0; k < c.states.size(); ++k) {
    EXPECT_EQ(c.states[k].y, 0.0);
    EXPECT_EQ(c.states[k].psi, 0.0);
    EXPECT_EQ(c.features[k].a_lat, 0.0);
    EXPECT_EQ(c.features[k].yaw_rate, 0.0);
    EXPECT_EQ(c.features[k].a_lat_rate, 0.0);
    EXPECT_EQ(c.features[k].yaw_accel, 0.0);
  }
  EXPECT_TRUE(std::isnan(c.deviation_onset_x));
  EXPECT_FALSE(c.initiates_deviation);
}

TEST(GenerateCandidates, FullLaneChangeReachesTarget)
{
  const ca::PlannerConfig cfg = three_offsets();
  const auto cs = ca::generate_candidates({0, 0, 0, kV30, 0, 0}, {}, cfg);
  const auto & c = cs[2];
  ASSERT_EQ(c.target_offset, 3.5);
  ASSERT_EQ(static_cast<int>(c.states.size()), 30);
  EXPECT_EQ(c.states.front().x, 0.0);
  EXPECT_EQ(c.states.front().y, 0.0);
  EXPECT_NEAR(c.states.front().psi, 0.0, 1e-15);
  EXPECT_NEAR(c.states.back().y, 3.5, 0.01);
  EXPECT_NEAR(c.states.back().psi, 0.0, 1e-12);
  EXPECT_NEAR(c.profile.length, 1.5 * 8.65, 1e-12);
  for (std::size_t k = 1; k < c.states.size(); ++k) {
    EXPECT_NEAR(c.states[k].x - c.states[k - 1].x, kV30 * cfg.dt, 1e-12);
  }
  EXPECT_TRUE(c.initiates_deviation);
}

TEST(GenerateCandidates, FeaturesFollowTheRolloutGeometry)
{
  const ca::PlannerConfig cfg = three_offsets();
  const double v = 15.0;
  const auto cs = ca::generate_candidates({0, 0.3, 0, v, 0, 0}, {}, cfg);
  for (const auto & c : cs) {
    for (std::size_t k = 0; k < c.states.size(); ++k) {
      // Curvature of y(x) by central differences on the profile itself.
      const double s = c.states[k].x - c.profile.x0;
      const double h = 1e-3;
      if (s < h || s > c.profile.length - h) {
        continue;
      }
      const double d1 = (c.profile.y(s + h) - c.profile.y(s - h)) / (2 * h);
      const double d2 = (c.profile.y(s + h) - 2 * c.profile.y(s) + c.profile.y(s - h)) / (h * h);
      const double kappa = d2 / std::pow(1 + d1 * d1, 1.5);
      EXPECT_NEAR(c.features[k].a_lat, v * v * kappa, 1e-4 * (1 + std::abs(v * v * kappa)));
      EXPECT_NEAR(c.features[k].yaw_rate, v * kappa, 1e-5);
      EXPECT_EQ(c.features[k].v_long, v);
    }
  }
}

TEST(GenerateCandidates, OffsetsLeavingTheRoadAreDropped)
{
  ca::PlannerConfig cfg;  // -3.5 .. 3.5 around a reference at 0
  auto cs = ca::generate_candidates({0, 0, 0, kV30, 0, 0}, {}, cfg);
  std::vector<double> offsets;
  for (const auto & c : cs) {
    offsets.push_back(c.target_offset);
  }
  EXPECT_EQ(offsets, (std::vector<double>{-1.75, 0.0, 1.75, 3.5}));

  cfg.transition_length_gains = {1.5, 2.5, 3.5};
  cs = ca::generate_candidates({0, 0, 0, kV30, 0, 0}, {}, cfg);
  EXPECT_EQ(cs.size(), 12U);
}

TEST(GenerateCandidates, MovingVehicleDoesNotInitiateDeviation)
{
  const auto cs = ca::generate_candidates({0, 1.0, 0.08, kV30, 0.5, 0.1}, {}, three_offsets());
  for (const auto & c : cs) {
    EXPECT_FALSE(c.initiates_deviation);
    EXPECT_NEAR(c.states.front().psi, 0.08, 1e-12);
  }
}

TEST(GenerateCandidates, VehicleOffTheRoadIsRejected)
{
  EXPECT_THROW(ca::generate_candidates({0, 6.0, 0, kV30, 0, 0}, {}, three_offsets()), ca::ValidationError);
}

// --- cost -------------------------------------------------------------------------

TEST(EvaluateCost, OnReferenceWithoutObstaclesHasNoTrackingOrObstacleCost)
{
  const ca::PlannerConfig cfg = three_offsets();
  const auto cs = ca::generate_candidates({0, 0, 0, kV30, 0, 0}, {}, cfg);
  const auto c = ca::evaluate_cost(cs[0], {}, {}, {}, model(), cfg);
  EXPECT_EQ(c.j_track, 0.0);
  EXPECT_EQ(c.j_obstacle, 0.0);
}

TEST(EvaluateCost, TermsMatchDirectSums)
{
  ca::PlannerConfig cfg = three_offsets();
  cfg.weights = {0.7, 25.0, 1.3, 2.0};
  const std::vector<ca::Obstacle> obs{{30.0, 0.0, 2.25, 0.9, 0.0}, {45.0, 3.5, 2.25, 0.9, 2.0}};
  const ca::RoadGeometry road;
  const ca::FieldParams fields;
  for (const auto & c : ca::generate_candidates({0, 0, 0, kV30, 0, 0}, road, cfg)) {
    const auto got = ca::evaluate_cost(c, obs, road, fields, model(), cfg);
    double track = 0.0;
    double ob = 0.0;
    double rd = 0.0;
    double conf = 0.0;
    ca::ObstacleFieldParams op = fields.obstacle;
    op.weight_s = 1.0;
    ca::RoadFieldParams rp = fields.road;
    rp.weight_l = 1.0;
    for (std::size_t k = 0; k < c.states.size(); ++k) {
      const auto & p = c.states[k];
      track += p.y * p.y * cfg.dt;
      for (const auto & o : obs) {
        ob += ca::obstacle_potential(p.x, p.y, p.v, o.at_time(cfg.dt * k), op) * cfg.dt;
      }
      rd += ca::road_potential(p.y, road, rp) * cfg.dt;
      conf += (1.0 - ca::confidence_score(model(), ca::comfort_input(c.features[k]))) * cfg.dt;
    }
    EXPECT_NEAR(got.j_track, track, 1e-12);
    EXPECT_NEAR(got.j_obstacle, ob, 1e-12);
    EXPECT_NEAR(got.j_road, rd, 1e-12);
    EXPECT_NEAR(got.j_confidence, conf, 1e-12);
  }
}

TEST(EvaluateCost, RecombinationIdentityHoldsForRandomWeights)
{
  support::Gen gen(71);
  const std::vector<ca::Obstacle> obs{{25.0, 0.0, 2.25, 0.9, 0.0}};
  for (int trial = 0; trial < 100; ++trial) {
    ca::PlannerConfig cfg = three_offsets();
    cfg.weights = {gen.uniform(0, 5), gen.uniform(0, 100), gen.uniform(0, 5), gen.uniform(0, 5)};
    const ca::VehicleState s{0, gen.uniform(-0.5, 0.5), 0, gen.uniform(3.0, 25.0), 0, 0};
    for (const auto & c : ca::generate_candidates(s, {}, cfg)) {
      const auto b = ca::evaluate_cost(c, obs, {}, {}, model(), cfg);
      const auto & w = cfg.weights;
      EXPECT_NEAR(
        b.j_all,
        w.q_track * b.j_track + w.s_obstacle * b.j_obstacle + w.l_road * b.j_road + w.r_confidence * b.j_confidence,
        1e-9);
    }
  }
}

TEST(EvaluateCost, DoublingObstacleWeightDoublesOnlyThatTerm)
{
  ca::PlannerConfig cfg = three_offsets();
  const std::vector<ca::Obstacle> obs{{20.0, 0.0, 2.25, 0.9, 0.0}};
  const auto cs = ca::generate_candidates({0, 0, 0, kV30, 0, 0}, {}, cfg);
  const auto a = ca::evaluate_cost(cs[1], obs, {}, {}, model(), cfg);
  cfg.weights.s_obstacle *= 2.0;
  const auto b = ca::evaluate_cost(cs[1], obs, {}, {}, model(), cfg);
  EXPECT_EQ(a.j_obstacle, b.j_obstacle);
  EXPECT_NEAR(b.j_all - a.j_all, cfg.weights.s_obstacle / 2.0 * a.j_obstacle, 1e-12);
}

TEST(EvaluateCost, PassingThroughAnObstacleCenterAccruesAtLeastOnePeak)
{
  const ca::PlannerConfig cfg = three_offsets();
  const auto cs = ca::generate_candidates({0, 0, 0, kV30, 0, 0}, {}, cfg);
  const auto & p = cs[2].states[12];
  ca::FieldParams fields;
  fields.obstacle.weight_s = 7.0;  // ignored: the planner uses unit field weight
  const std::vector<ca::Obstacle> obs{{p.x, p.y, 2.25, 0.9, 0.0}};
  const auto c = ca::evaluate_cost(cs[2], obs, {}, fields, model(), cfg);
  EXPECT_GE(c.j_obstacle, 1.0 * cfg.dt);
  EXPECT_LT(c.j_obstacle, static_cast<double>(cs[2].states.size()) * cfg.dt);
}

// --- plan -------------------------------------------------------------------------

TEST(Plan, EmptyRoadKeepsTheLane)
{
  const auto r = ca::plan({0, 0, 0, kV30, 0, 0}, {}, {}, {}, model(), ca::PlannerConfig{}, kVehicle);
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.chosen.target_offset, 0.0);
  EXPECT_EQ(r.per_point_class.size(), r.chosen.states.size());
}

TEST(Plan, PureTrackingChoosesTheReference)
{
  support::Gen gen(13);
  ca::PlannerConfig cfg;
  cfg.weights = {1.0, 0.0, 0.0, 0.0};
  for (int trial = 0; trial < 50; ++trial) {
    const ca::VehicleState s{0, gen.uniform(-0.3, 0.3), 0, gen.uniform(3.0, 30.0), 0, 0};
    EXPECT_EQ(ca::plan(s, {}, {}, {}, model(), cfg, kVehicle).chosen.target_offset, 0.0);
  }
}

TEST(Plan, InLaneObstacleForcesAFullLaneChange)
{
  const std::vector<ca::Obstacle> obs{{20.0, 0.0, 2.25, 0.9, 0.0}};
  const ca::PlannerConfig cfg;
  const auto r = ca::plan({0, 0, 0, kV30, 0, 0}, obs, {}, {}, model(), cfg, kVehicle);
  EXPECT_TRUE(r.feasible);
  EXPECT_GE(std::abs(r.chosen.target_offset), obs[0].half_width + kVehicle.half_width + cfg.clearance_margin);
  EXPECT_EQ(evaluated_with_offset(r, 0.0).candidate.infeasible_reason, "collision");
  EXPECT_EQ(evaluated_with_offset(r, 1.75).candidate.infeasible_reason, "collision");
}

TEST(Plan, FeasibleChoicesKeepTheClearanceMargin)
{
  support::Gen gen(29);
  const ca::PlannerConfig cfg;
  int feasible = 0;
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<ca::Obstacle> obs;
    const int n = gen.integer(1, 3);
    for (int i = 0; i < n; ++i) {
      obs.push_back({gen.uniform(5.0, 40.0), gen.coin() ? 0.0 : 3.5, 2.25, 0.9, gen.coin() ? 0.0 : gen.uniform(0.0, 6.0)});
    }
    const auto r = ca::plan({0, 0, 0, kV30, 0, 0}, obs, {}, {}, model(), cfg, kVehicle);
    if (!r.feasible) {
      continue;
    }
    ++feasible;
    for (std::size_t k = 0; k < r.chosen.states.size(); ++k) {
      for (const auto & o : obs) {
        const auto & p = r.chosen.states[k];
        EXPECT_GT(rectangle_distance(p.x, p.y, o.at_time(cfg.dt * k), kVehicle.half_width), cfg.clearance_margin - 1e-3)
          << "trial " << trial;
      }
    }
  }
  EXPECT_GT(feasible, 30);
}

TEST(Plan, ExactTieGoesToTheLeft)
{
  const ca::RoadGeometry road({-5.25, -1.75, 1.75, 5.25});
  ca::PlannerConfig cfg;
  cfg.lateral_offsets = {-3.5, 0.0, 3.5};
  const std::vector<ca::Obstacle> obs{{22.0, 0.0, 2.25, 0.9, 0.0}};
  const auto r = ca::plan({0, 0, 0, kV30, 0, 0}, obs, road, {}, model(), cfg, kVehicle);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(evaluated_with_offset(r, 3.5).cost.j_all, evaluated_with_offset(r, -3.5).cost.j_all);
  EXPECT_EQ(r.chosen.target_offset, 3.5);
}

TEST(Plan, SmallerOffsetWinsATie)
{
  ca::PlannerConfig cfg;
  cfg.weights = {0.0, 0.0, 0.0, 0.0};
  const auto r = ca::plan({0, 0, 0, kV30, 0, 0}, {}, {}, {}, model(), cfg, kVehicle);
  EXPECT_EQ(r.chosen.target_offset, 0.0);
}

TEST(Plan, LateSteeringViolatesPlpts)
{
  // Rear face 9.75 m ahead: the lane change would start closer than 8.65 m.
  const std::vector<ca::Obstacle> obs{{12.0, 0.0, 2.25, 0.9, 0.0}};
  const auto r = ca::plan({0, 0, 0, kV30, 0, 0}, obs, {}, {}, model(), three_offsets(), kVehicle);
  const auto & c = evaluated_with_offset(r, 3.5).candidate;
  ASSERT_FALSE(std::isnan(c.deviation_onset_x));
  EXPECT_NEAR(c.plpts_gap, 9.75 - c.deviation_onset_x, 1e-12);
  EXPECT_LT(c.plpts_gap, 8.65);
  EXPECT_EQ(c.infeasible_reason, "plpts");
}

TEST(Plan, ManoeuvreInProgressIsNotHeldToPlpts)
{
  const std::vector<ca::Obstacle> obs{{12.0, 0.0, 2.25, 0.9, 0.0}};
  const auto r = ca::plan({0, 0.3, 0.1, kV30, 0.3, 0.2}, obs, {}, {}, model(), three_offsets(), kVehicle);
  const auto & c = evaluated_with_offset(r, 3.5).candidate;
  EXPECT_FALSE(c.initiates_deviation);
  EXPECT_NE(c.infeasible_reason, "plpts");
}

TEST(Plan, NothingFeasibleFallsBackToLeastObstacleCost)
{
  const std::vector<ca::Obstacle> obs{{4.0, 0.0, 2.25, 0.9, 0.0}, {4.0, 3.5, 2.25, 0.9, 0.0}};
  const auto r = ca::plan({0, 0, 0, kV30, 0, 0}, obs, {}, {}, model(), ca::PlannerConfig{}, kVehicle);
  EXPECT_FALSE(r.feasible);
  double least = std::numeric_limits<double>::infinity();
  for (const auto & e : r.evaluated) {
    EXPECT_FALSE(e.candidate.feasible);
    least = std::min(least, e.cost.j_obstacle);
  }
  EXPECT_EQ(r.cost_breakdown.j_obstacle, least);
}

TEST(Plan, CoMovingObstacleAheadIsNoCollision)
{
  std::vector<ca::Obstacle> obs{{12.0, 0.0, 2.25, 0.9, kV30}};
  auto r = ca::plan({0, 0, 0, kV30, 0, 0}, obs, {}, {}, model(), three_offsets(), kVehicle);
  EXPECT_TRUE(evaluated_with_offset(r, 0.0).candidate.feasible);
  obs[0].speed = 0.0;
  r = ca::plan({0, 0, 0, kV30, 0, 0}, obs, {}, {}, model(), three_offsets(), kVehicle);
  EXPECT_FALSE(evaluated_with_offset(r, 0.0).candidate.feasible);
}

TEST(PlannerConfig, ValidationNamesTheField)
{
  ca::PlannerConfig cfg;
  cfg.lateral_offsets = {1.75, 3.5};
  try {
    cfg.validate();
    FAIL() << "expected a validation error";
  } catch (const ca::ValidationError & e) {
    EXPECT_EQ(e.path(), "planner.lateral_offsets");
  }
  cfg = {};
  cfg.weights.s_obstacle = -1.0;
  EXPECT_THROW(cfg.validate(), ca::ValidationError);
}
