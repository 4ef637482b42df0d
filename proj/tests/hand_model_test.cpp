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
#include <numbers>

#include "doctest.h"
#include "tendon_hand/errors.hpp"
#include "oracles.hpp"
#include "tendon_hand/equilibrium.hpp"

namespace th = tendon_hand;

TEST_CASE("default hand carries the measured spring compliances") {
  // deg/Nm, proximal to distal, thumb..little.
  const double table[5][3] = {
      {664, 443, 443}, {863, 664, 443}, {903, 707, 443}, {863, 664, 443}, {707, 664, 443}};
  const th::HandSpec hand = th::default_hand();
  REQUIRE(hand.fingers.size() == 5);
  for (int f = 0; f < 5; ++f) {
    for (int j = 0; j < 3; ++j) CHECK(hand.fingers[f].joints[j].compliance_deg_per_nm == table[f][j]);
  }
}

TEST_CASE("stiffness is the reciprocal of compliance in rad/Nm") {
  for (const auto& f : th::default_hand().fingers) {
    for (const auto& j : f.joints) {
      const double compliance_rad = j.compliance_deg_per_nm * std::numbers::pi / 180.0;
      CHECK(th::stiffness(j) * compliance_rad == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(th::stiffness(j) == doctest::Approx(oracle::kappa_from_compliance(j.compliance_deg_per_nm)));
    }
  }
}

TEST_CASE("proximal joints are the softest") {
  for (const auto& f : th::default_hand().fingers) {
    CHECK(th::stiffness(f.joints[0]) <= th::stiffness(f.joints[1]));
    CHECK(th::stiffness(f.joints[1]) <= th::stiffness(f.joints[2]));
  }
}

TEST_CASE("default hand is valid and spans 165 mm with the middle finger") {
  const th::HandSpec hand = th::default_hand();
  CHECK(th::validate(hand).empty());
  const auto& middle = th::finger(hand, th::FingerId::kMiddle);
  double length = 0.0;
  for (const auto& j : middle.joints) length += j.link_length;
  CHECK(hand.palm_length + length == doctest::Approx(0.165).epsilon(1e-12));
  CHECK(hand.robot_mass == 56.4);
  CHECK(hand.actuators.size() == 3);
  CHECK(hand.sensor_layout.size() == 10);
  for (const auto& a : hand.actuators) CHECK(a.max_tension == doctest::Approx(50.0 * 9.80665));
}

TEST_CASE("actuator routing pairs index with middle and ring with little") {
  const th::HandSpec hand = th::default_hand();
  CHECK(th::actuator_for(hand, th::FingerId::kThumb).coupling == th::Coupling::kDirect);
  CHECK(th::actuator_for(hand, th::FingerId::kIndex).id == th::actuator_for(hand, th::FingerId::kMiddle).id);
  CHECK(th::actuator_for(hand, th::FingerId::kRing).id == th::actuator_for(hand, th::FingerId::kLittle).id);
  CHECK(th::actuator_for(hand, th::FingerId::kIndex).coupling == th::Coupling::kMovablePulley);
}

TEST_CASE("finger names round-trip") {
  for (th::FingerId id : th::kAllFingers) CHECK(th::finger_from_string(th::to_string(id)) == id);
  CHECK_FALSE(th::finger_from_string("pinky").has_value());
}

TEST_CASE("validation reports each broken field") {
  SUBCASE("non-positive compliance") {
    th::HandSpec h = th::default_hand();
    h.fingers[1].joints[0].compliance_deg_per_nm = 0.0;
    CHECK_FALSE(th::validate(h).empty());
    CHECK_THROWS_AS(th::require_valid(h), th::InvalidSpecError);
  }
  SUBCASE("inverted limits") {
    th::HandSpec h = th::default_hand();
    h.fingers[2].joints[1].limits = {1.0, 0.5};
    CHECK_FALSE(th::validate(h).empty());
  }
  SUBCASE("two joints") {
    th::HandSpec h = th::default_hand();
    h.fingers[0].joints.pop_back();
    CHECK_FALSE(th::validate(h).empty());
  }
  SUBCASE("pulley driving one finger") {
    th::HandSpec h = th::default_hand();
    h.actuators[1].driven_fingers.pop_back();
    CHECK_FALSE(th::validate(h).empty());
  }
  SUBCASE("finger driven twice") {
    th::HandSpec h = th::default_hand();
    h.actuators[0].driven_fingers = {th::FingerId::kIndex};
    CHECK_FALSE(th::validate(h).empty());
  }
  SUBCASE("negative link") {
    th::HandSpec h = th::default_hand();
    h.fingers[3].joints[2].link_length = -0.01;
    CHECK_FALSE(th::validate(h).empty());
  }
}

TEST_CASE("forward kinematics at right angles") {
  th::FingerSpec f = th::default_hand().fingers[1];
  f.base_pose = {0.01, -0.02, 0.0};
  f.joints[0].link_length = 0.040;
  f.joints[1].link_length = 0.025;
  f.joints[2].link_length = 0.020;
  const double q = std::numbers::pi / 2.0;
  const th::LinkPoints p = th::forward_kinematics(f, th::JointAngles(q, q, q));
  // Up 40 mm, back 25 mm, down 20 mm.
  CHECK(p[3].x() == doctest::Approx(0.01 - 0.025).epsilon(1e-12));
  CHECK(p[3].y() == doctest::Approx(-0.02 + 0.020).epsilon(1e-12));
  CHECK(p[1].y() == doctest::Approx(0.02).epsilon(1e-12));
}

TEST_CASE("forward kinematics matches the reference chain at random angles") {
  const th::FingerSpec f = th::default_hand().fingers[2];
  std::array<oracle::Joint, 3> j;
  for (int i = 0; i < 3; ++i) j[i].link = f.joints[i].link_length;
  for (int n = 0; n < 50; ++n) {
    const std::array<double, 3> q = {0.03 * n, 0.02 * n, 0.01 * n};
    const auto ref = oracle::chain(j, {f.base_pose.x, f.base_pose.y}, f.base_pose.theta, q);
    const auto got = th::forward_kinematics(f, th::JointAngles(q[0], q[1], q[2]));
    for (int k = 0; k < 4; ++k) {
      CHECK(got[k].x() == doctest::Approx(ref[k].x).epsilon(1e-12));
      CHECK(got[k].y() == doctest::Approx(ref[k].y).epsilon(1e-12));
    }
  }
}
