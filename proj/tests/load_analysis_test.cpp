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
#include <limits>

#include "doctest.h"
#include "tendon_hand/errors.hpp"
#include "oracles.hpp"
#include "tendon_hand/load_analysis.hpp"

namespace th = tendon_hand;

TEST_CASE("efficiency from one measured pair") {
  CHECK(th::calibrate_efficiency(37.2, 30.0) == doctest::Approx(1.24));
  CHECK_THROWS_AS(th::calibrate_efficiency(0.0, 30.0), th::DomainError);
  CHECK_THROWS_AS(th::calibrate_efficiency(37.2, -1.0), th::DomainError);
  CHECK_THROWS_AS(th::calibrate_efficiency(std::numeric_limits<double>::infinity(), 1.0), th::DomainError);
}

TEST_CASE("calibration point comes back exactly") {
  for (auto [m, t] : {std::pair{37.2, 30.0}, std::pair{12.3, 4.56}, std::pair{0.7, 91.0}}) {
    const th::GripCalibration cal{m, t};
    CHECK(th::required_tension(m, 1, cal) == t);
    CHECK(th::capacity_mass(cal, th::kgf_to_newtons(t)) == m);
    CHECK(th::required_tension(m, 1, th::calibrate_efficiency(m, t)) == doctest::Approx(t).epsilon(1e-12));
  }
}

TEST_CASE("required tension is linear in mass and splits across hands") {
  const th::GripCalibration cal{37.2, 30.0};
  for (double m : {1.0, 10.0, 56.4, 80.0}) {
    CHECK(th::required_tension(2.0 * m, 1, cal) == doctest::Approx(2.0 * th::required_tension(m, 1, cal)));
    CHECK(th::required_tension(m, 1, cal) == doctest::Approx(2.0 * th::required_tension(m, 2, cal)));
    CHECK(th::required_tension(m, 1, cal) == doctest::Approx(m * 30.0 / 37.2));
  }
  CHECK(th::required_tension(0.0, 1, cal) == 0.0);
  CHECK_THROWS_AS(th::required_tension(-1.0, 1, cal), th::DomainError);
  CHECK_THROWS_AS(th::required_tension(1.0, 0, cal), th::DomainError);
  CHECK_THROWS_AS(th::required_tension(1.0, 1, th::GripCalibration{0.0, 1.0}), th::DomainError);
}

TEST_CASE("margin report for the whole robot on two hands") {
  th::PayloadScenario p;
  p.payload_mass = 56.4;
  p.hands_sharing = 2;
  const th::MarginReport r = th::margin_report(th::default_hand(), p);
  CHECK(r.capacity_mass == doctest::Approx(62.0).epsilon(1e-12));
  CHECK(r.share_mass == doctest::Approx(28.2));
  CHECK(r.required_kgf == doctest::Approx(28.2 / 1.24));
  CHECK(r.margin_ratio == doctest::Approx(62.0 / 28.2));
  CHECK(r.pass);
  CHECK(r.actuators.size() == 3);
}

TEST_CASE("raising the actuator limit never turns a pass into a fail") {
  th::PayloadScenario p;
  p.payload_mass = 56.4;
  p.hands_sharing = 1;
  th::HandSpec hand = th::default_hand();
  bool passed = false;
  for (double kgf = 5.0; kgf <= 80.0; kgf += 2.5) {
    for (auto& a : hand.actuators) a.max_tension = th::kgf_to_newtons(kgf);
    const bool pass = th::margin_report(hand, p).pass;
    CHECK((pass || !passed));
    passed = passed || pass;
  }
  CHECK(passed);
}

TEST_CASE("weakest actuator sets the capacity") {
  th::HandSpec hand = th::default_hand();
  hand.actuators[2].max_tension = th::kgf_to_newtons(30.0);
  th::PayloadScenario p;
  CHECK(th::margin_report(hand, p).capacity_mass == 37.2);
}

TEST_CASE("monotone check tolerates solver noise only") {
  const std::vector<double> flat = {1.0, 1.0 - 1e-9, 2.0};
  CHECK(th::non_decreasing(flat));
  const std::vector<double> dip = {1.0, 0.9, 2.0};
  CHECK_FALSE(th::non_decreasing(dip));
  const std::vector<double> nan = {1.0, std::nan(""), 2.0};
  CHECK_FALSE(th::non_decreasing(nan));
}

namespace {

struct Basket {
  th::HandSpec hand = th::default_hand();
  std::vector<th::ObjectShape> shapes;
  th::RampConfig config;

  Basket() {
    th::ObjectShape handle;
    handle.name = "handle";
    handle.kind = th::ShapeKind::kDisk;
    handle.pose = {-0.025, 0.016, 0.0};
    handle.radius = 0.017;
    handle.visibility.fingers = {false, true, true, true, true};
    shapes.push_back(handle);
    config.object = "handle";
    config.hold = {{th::CommandKind::kTension, 0.0}, {th::CommandKind::kTension, 98.0}, {th::CommandKind::kTension, 98.0}};
  }
};

}  // namespace

TEST_CASE("ramp carries each mass on the handle") {
  Basket b;
  const std::vector<double> masses = {0.0, 10.0, 20.0};
  const th::RampResult r = th::payload_ramp(b.hand, b.shapes, masses, b.config);
  REQUIRE(r.points.size() == 3);
  for (const auto& p : r.points) {
    REQUIRE(p.converged);
    double support = 0.0;
    for (const auto& c : th::all_contacts(*p.state)) {
      if (c.object == "handle") support += c.force * c.normal.x();
    }
    CHECK(support == doctest::Approx(p.mass * 9.80665).epsilon(1e-6).scale(1.0));
    for (std::size_t a = 0; a < p.state->tendons.size(); ++a) {
      const auto& t = p.state->tendons[a];
      CHECK((t.actuator_tension <= b.hand.actuators[a].max_tension || t.saturated));
    }
  }
  const auto peaks = r.peak_tensions();
  CHECK(peaks[0] < peaks[1]);
  CHECK(peaks[1] < peaks[2]);
  CHECK(r.rows(b.hand).size() == 9);
}

TEST_CASE("two hands halve the weight each one carries") {
  Basket b;
  const std::vector<double> masses = {20.0};
  b.config.hands_sharing = 2;
  const th::RampResult two = th::payload_ramp(b.hand, b.shapes, masses, b.config);
  b.config.hands_sharing = 1;
  const std::vector<double> half = {10.0};
  const th::RampResult one = th::payload_ramp(b.hand, b.shapes, half, b.config);
  CHECK(two.peak_tensions()[0] == doctest::Approx(one.peak_tensions()[0]).epsilon(1e-9));
}

TEST_CASE("ramp results do not depend on the thread count") {
  Basket b;
  const std::vector<double> masses = {3.0, 7.0, 11.0};
  b.config.threads = 1;
  const auto serial = th::payload_ramp(b.hand, b.shapes, masses, b.config).peak_tensions();
  b.config.threads = 3;
  const auto parallel = th::payload_ramp(b.hand, b.shapes, masses, b.config).peak_tensions();
  CHECK(serial == parallel);
}

TEST_CASE("ramp input errors") {
  Basket b;
  const std::vector<double> masses = {1.0};
  th::RampConfig bad = b.config;
  bad.object = "bucket";
  CHECK_THROWS_AS(th::payload_ramp(b.hand, b.shapes, masses, bad), th::DomainError);
  bad = b.config;
  bad.hold.pop_back();
  CHECK_THROWS_AS(th::payload_ramp(b.hand, b.shapes, masses, bad), th::DomainError);
  const std::vector<double> negative = {-1.0};
  CHECK_THROWS_AS(th::payload_ramp(b.hand, b.shapes, negative, b.config), th::DomainError);
}

TEST_CASE("overload becomes a failure row, not an exception") {
  Basket b;
  const std::vector<double> masses = {400.0};
  const th::RampResult r = th::payload_ramp(b.hand, b.shapes, masses, b.config);
  CHECK_FALSE(r.points[0].converged);
  CHECK(r.points[0].failure.has_value());
}
