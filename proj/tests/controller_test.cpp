// Copyright 2026 The Tendon Hand Authors
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


#include <cmath>

#include "doctest.h"
#include "tendon_hand/errors.hpp"
#include "oracles.hpp"
#include "tendon_hand/controller.hpp"

namespace th = tendon_hand;

namespace {

std::vector<th::SensorReading> readings(const th::HandSpec& hand, std::array<double, 5> tips) {
  std::vector<th::SensorReading> out;
  for (const auto& site : hand.sensor_layout) {
    th::SensorReading r;
    r.site = site;
    if (site.kind == th::SensorSiteKind::kFingertip) r.force = tips[static_cast<std::size_t>(site.finger)];
    out.push_back(r);
  }
  return out;
}

th::ObjectShape disk(double x, double y, double r, double k) {
  th::ObjectShape s;
  s.name = "sponge";
  s.kind = th::ShapeKind::kDisk;
  s.pose = {x, y, 0.0};
  s.radius = r;
  s.contact_stiffness = k;
  return s;
}

}  // namespace

TEST_CASE("feedback force per actuator") {
  const th::HandSpec hand = th::default_hand();
  const auto& thumb = hand.actuators[0];
  const auto& pair = hand.actuators[1];
  CHECK(th::select_feedback_force(hand, thumb, readings(hand, {7, 0, 0, 0, 0}), 5.0) == 7.0);
  CHECK(th::select_feedback_force(hand, pair, readings(hand, {0, 10, 6, 0, 0}), 5.0) == 8.0);
  CHECK(th::select_feedback_force(hand, pair, readings(hand, {0, 10, 2, 0, 0}), 5.0) == 10.0);
  CHECK(th::select_feedback_force(hand, pair, readings(hand, {0, 2, 3, 0, 0}), 5.0) == 2.5);
  CHECK(th::select_feedback_force(hand, pair, readings(hand, {0, 1, 9, 0, 0}), 5.0) == 9.0);
}

TEST_CASE("threshold rule matches the piecewise definition") {
  for (double thre : {0.0, 2.5, 5.0}) {
    for (double f1 = 0.0; f1 <= 12.0; f1 += 0.25) {
      for (double f2 = 0.0; f2 <= 12.0; f2 += 0.25) {
        CHECK(th::pair_feedback_force(f1, f2, thre) == oracle::pair_feedback(f1, f2, thre));
      }
    }
  }
  CHECK(th::classify_pair(5.0, 5.0, 5.0) == th::FeedbackBranch::kBothContact);
  CHECK(th::classify_pair(4.999, 4.999, 5.0) == th::FeedbackBranch::kNoContact);
  CHECK(th::classify_pair(5.0, 4.999, 5.0) == th::FeedbackBranch::kFirstOnly);
  CHECK(th::classify_pair(0.0, 5.0, 5.0) == th::FeedbackBranch::kSecondOnly);
}

TEST_CASE("control step is a fixed point exactly at the reference") {
  const th::HandSpec hand = th::default_hand();
  th::ControllerConfig cfg;
  th::ControllerState s;
  s.excursion = {0.001, 0.002, 0.003};
  const auto on_ref = th::control_step(cfg, s, hand, readings(hand, {10, 10, 10, 10, 10}));
  CHECK(on_ref.excursion == s.excursion);
  const auto above = th::control_step(cfg, s, hand, readings(hand, {10, 10.5, 10.5, 10, 10}));
  CHECK(above.excursion[1] == doctest::Approx(0.002 - cfg.gain * 0.5));
  CHECK(above.excursion[0] == s.excursion[0]);
  const auto below = th::control_step(cfg, s, hand, readings(hand, {10, 10, 10, 6, 6}));
  CHECK(below.excursion[2] == doctest::Approx(0.003 + cfg.gain * 4.0));
  CHECK(below.step == 1);
}

TEST_CASE("wire never pays out past rest") {
  const th::HandSpec hand = th::default_hand();
  th::ControllerConfig cfg;
  th::ControllerState s;
  s.excursion = {0.0, 0.0001, 0.0};
  const auto next = th::control_step(cfg, s, hand, readings(hand, {40, 40, 40, 40, 40}));
  for (double e : next.excursion) CHECK(e == 0.0);
}

TEST_CASE("inactive actuators keep their wire length") {
  const th::HandSpec hand = th::default_hand();
  th::ControllerConfig cfg;
  cfg.active_actuators = {1};
  th::ControllerState s;
  s.excursion = {0.001, 0.001, 0.001};
  const auto next = th::control_step(cfg, s, hand, readings(hand, {0, 0, 0, 0, 0}));
  CHECK(next.excursion[0] == 0.001);
  CHECK(next.excursion[2] == 0.001);
  CHECK(next.excursion[1] > 0.001);
}

TEST_CASE("releasing wire lowers tension at the next equilibrium") {
  const th::HandSpec hand = th::default_hand();
  const std::vector<th::ObjectShape> shapes = {disk(0.045, 0.035, 0.02, 2000.0)};
  const std::vector<th::ActuatorCommand> grip = {
      {th::CommandKind::kTension, 0.0}, {th::CommandKind::kTension, 150.0}, {th::CommandKind::kTension, 0.0}};
  const th::HandState s0 = th::solve_hand(hand, grip, shapes);
  th::ControllerConfig cfg;
  cfg.active_actuators = {1};
  th::ControllerState c;
  for (const auto& t : s0.tendons) c.excursion.push_back(t.actuator_excursion);
  REQUIRE(cfg.reference_force < th::select_feedback_force(hand, hand.actuators[1], s0.sensors, cfg.contact_threshold));
  const th::ControllerState c1 = th::control_step(cfg, c, hand, s0.sensors);
  std::vector<th::ActuatorCommand> held;
  for (double e : c1.excursion) held.push_back({th::CommandKind::kExcursion, e});
  const th::HandState s1 = th::solve_hand(hand, held, shapes);
  CHECK(s1.tendons[1].actuator_tension < s0.tendons[1].actuator_tension);
}

TEST_CASE("single contact tracks the reference, not twice it") {
  const th::HandSpec hand = th::default_hand();
  th::ObjectShape d = disk(0.045, 0.035, 0.02, 2000.0);
  d.visibility.fingers = {false, true, false, false, false};
  th::ControllerConfig cfg;
  cfg.active_actuators = {1};
  const th::GraspTrajectory traj = th::run_grasp(hand, std::vector<th::ObjectShape>{d}, cfg,
                                                 th::GraspMode::kForceTrack);
  REQUIRE(traj.converged);
  const auto& last = traj.steps.back().hand;
  const double index = last.sensors[th::sensor_index(hand, th::FingerId::kIndex)].force;
  const double middle = last.sensors[th::sensor_index(hand, th::FingerId::kMiddle)].force;
  CHECK(middle == 0.0);
  CHECK(std::abs(index - cfg.reference_force) <= cfg.tolerance);
}

TEST_CASE("hold modes freeze the settled grasp") {
  const th::HandSpec hand = th::default_hand();
  const std::vector<th::ObjectShape> shapes = {disk(0.045, 0.035, 0.02, 2000.0)};
  th::ControllerConfig cfg;
  cfg.hold_steps = 3;
  const std::vector<th::ActuatorCommand> initial = {
      {th::CommandKind::kTension, 0.0}, {th::CommandKind::kTension, 80.0}, {th::CommandKind::kTension, 80.0}};
  for (th::GraspMode mode : {th::GraspMode::kLengthHold, th::GraspMode::kTensionHold}) {
    const th::GraspTrajectory traj = th::run_grasp(hand, shapes, cfg, mode, initial);
    REQUIRE(traj.steps.size() == 4);
    CHECK(traj.converged);
    for (const auto& step : traj.steps) {
      CHECK(step.hand.tendons[1].actuator_tension ==
            doctest::Approx(traj.steps.front().hand.tendons[1].actuator_tension).epsilon(1e-6));
    }
  }
}

TEST_CASE("step budget ends tracking without convergence") {
  const th::HandSpec hand = th::default_hand();
  const std::vector<th::ObjectShape> shapes = {disk(0.045, 0.035, 0.02, 2000.0)};
  th::ControllerConfig cfg;
  cfg.active_actuators = {1, 2};
  cfg.max_steps = 3;
  const th::GraspTrajectory traj = th::run_grasp(hand, shapes, cfg, th::GraspMode::kForceTrack);
  CHECK_FALSE(traj.converged);
  CHECK(traj.failure.has_value());
  CHECK(traj.steps.size() == 4);
}

TEST_CASE("controller validation") {
  th::ControllerConfig cfg;
  CHECK(th::validate(cfg).empty());
  cfg.gain = 0.0;
  CHECK_FALSE(th::validate(cfg).empty());
  cfg = {};
  cfg.tolerance = -1.0;
  CHECK_FALSE(th::validate(cfg).empty());
  cfg = {};
  cfg.contact_threshold = -0.1;
  CHECK_FALSE(th::validate(cfg).empty());
}
