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
#include <random>

#include "doctest.h"
#include "tendon_hand/errors.hpp"
#include "tendon_hand/contact.hpp"

namespace th = tendon_hand;

namespace {

th::ObjectShape disk(double x, double y, double r) {
  th::ObjectShape s;
  s.name = "disk";
  s.kind = th::ShapeKind::kDisk;
  s.pose = {x, y, 0.0};
  s.radius = r;
  return s;
}

}  // namespace

TEST_CASE("signed distance of each shape kind") {
  const th::ObjectShape d = disk(0.0, 0.0, 1.0);
  CHECK(th::signed_distance(d, th::Vec2(2.0, 0.0)) == doctest::Approx(1.0));
  CHECK(th::signed_distance(d, th::Vec2(0.0, 0.5)) == doctest::Approx(-0.5));

  th::ObjectShape plane;
  plane.kind = th::ShapeKind::kHalfPlane;
  plane.pose = {0.0, 1.0, std::numbers::pi / 2.0};  // outward normal +y
  CHECK(th::signed_distance(plane, th::Vec2(5.0, 3.0)) == doctest::Approx(2.0));
  CHECK(th::signed_distance(plane, th::Vec2(-5.0, 0.25)) == doctest::Approx(-0.75));

  th::ObjectShape cap;
  cap.kind = th::ShapeKind::kCapsule;
  cap.pose = {0.0, 0.0, 0.0};
  cap.radius = 0.5;
  cap.half_length = 2.0;
  CHECK(th::signed_distance(cap, th::Vec2(1.0, 1.5)) == doctest::Approx(1.0));
  CHECK(th::signed_distance(cap, th::Vec2(5.0, 0.0)) == doctest::Approx(2.5));
  CHECK(th::signed_distance(cap, th::Vec2(-1.0, 0.0)) == doctest::Approx(-0.5));
}

TEST_CASE("disk distance has a unit gradient away from the center") {
  const th::ObjectShape d = disk(0.03, 0.02, 0.015);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  const double h = 1e-7;
  int checked = 0;
  while (checked < 200) {
    const th::Vec2 p(0.03 + u(rng), 0.02 + u(rng));
    if ((p - th::Vec2(0.03, 0.02)).norm() < 1e-3) continue;
    const double gx = (th::signed_distance(d, p + th::Vec2(h, 0)) - th::signed_distance(d, p - th::Vec2(h, 0))) / (2 * h);
    const double gy = (th::signed_distance(d, p + th::Vec2(0, h)) - th::signed_distance(d, p - th::Vec2(0, h))) / (2 * h);
    CHECK(std::hypot(gx, gy) == doctest::Approx(1.0).epsilon(1e-6));
    const th::Vec2 n = th::outward_normal(d, p);
    CHECK(n.x() == doctest::Approx(gx).epsilon(1e-6));
    CHECK(n.y() == doctest::Approx(gy).epsilon(1e-6));
    ++checked;
  }
}

TEST_CASE("penalty force vanishes at the boundary") {
  const th::ObjectShape d = disk(0.0, 0.0, 0.01);
  CHECK_FALSE(th::contact_force(d, th::Vec2(0.0101, 0.0)).has_value());
  CHECK_FALSE(th::contact_force(d, th::Vec2(0.01, 0.0)).has_value());
  for (double pen : {1e-3, 1e-6, 1e-9, 1e-12}) {
    const auto c = th::contact_force(d, th::Vec2(0.01 - pen, 0.0));
    REQUIRE(c.has_value());
    CHECK(c->penetration == doctest::Approx(pen).epsilon(1e-3));
    CHECK(c->force == doctest::Approx(d.contact_stiffness * pen).epsilon(1e-3));
    CHECK(c->normal.x() == doctest::Approx(1.0));
  }
}

TEST_CASE("deepest point of a link against a disk is the closest point") {
  const th::ObjectShape d = disk(0.5, 1.0, 0.2);
  const th::Vec2 p = th::deepest_point(d, th::Vec2(0.0, 0.9), th::Vec2(1.0, 0.9));
  CHECK(p.x() == doctest::Approx(0.5));
  CHECK(p.y() == doctest::Approx(0.9));
  const th::Vec2 end = th::deepest_point(d, th::Vec2(0.0, 0.9), th::Vec2(0.2, 0.9));
  CHECK(end.x() == doctest::Approx(0.2));
}

TEST_CASE("sensors clamp at their range and flag it") {
  const th::HandSpec hand = th::default_hand();
  std::vector<th::ContactPoint> contacts;
  th::ContactPoint tip;
  tip.finger = th::FingerId::kIndex;
  tip.body = th::ContactBody::kLink;
  tip.index = 2;
  tip.force = hand.sensor_max + 25.0;
  contacts.push_back(tip);
  th::ContactPoint mid = tip;
  mid.finger = th::FingerId::kMiddle;
  mid.force = 12.0;
  contacts.push_back(mid);
  th::ContactPoint proximal = tip;
  proximal.finger = th::FingerId::kRing;
  proximal.index = 0;  // not a fingertip
  proximal.force = 40.0;
  contacts.push_back(proximal);
  th::ContactPoint palm;
  palm.body = th::ContactBody::kPalm;
  palm.index = 3;
  palm.force = 7.0;
  contacts.push_back(palm);

  const auto readings = th::read_sensors(contacts, hand);
  REQUIRE(readings.size() == hand.sensor_layout.size());
  for (const auto& r : readings) {
    CHECK(r.force <= hand.sensor_max);
    CHECK(r.saturated == (r.raw_force > hand.sensor_max));
  }
  CHECK(readings[th::sensor_index(hand, th::FingerId::kIndex)].saturated);
  CHECK(readings[th::sensor_index(hand, th::FingerId::kIndex)].force == hand.sensor_max);
  CHECK(readings[th::sensor_index(hand, th::FingerId::kMiddle)].force == 12.0);
  CHECK(readings[th::sensor_index(hand, th::FingerId::kRing)].force == 0.0);
  double palm_total = 0.0;
  for (const auto& r : readings) {
    if (r.site.kind == th::SensorSiteKind::kPalm) palm_total += r.force;
  }
  CHECK(palm_total == 7.0);
}

TEST_CASE("palm contacts come only from objects the palm sees") {
  const th::HandSpec hand = th::default_hand();
  th::ObjectShape d = disk(-0.04, 0.005, 0.01);  // overlaps the palm surface
  CHECK_FALSE(th::palm_contacts(hand, std::vector<th::ObjectShape>{d}).empty());
  d.visibility.palm = false;
  CHECK(th::palm_contacts(hand, std::vector<th::ObjectShape>{d}).empty());
}

TEST_CASE("shape validation") {
  th::ObjectShape d = disk(0.0, 0.0, -1.0);
  CHECK_FALSE(th::validate(d, "objects[0]").empty());
  d.radius = 0.01;
  CHECK(th::validate(d, "objects[0]").empty());
  d.contact_stiffness = 0.0;
  CHECK_FALSE(th::validate(d, "objects[0]").empty());
}
