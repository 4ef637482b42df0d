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

// 2-D obstacles living in the finger flexion planes, linear penalty contact,
// and the fingertip/palm force sensors.
//
// Frame convention: in every flexion plane +x runs along the extended finger
// and +y points to the palmar side, so flexion rotates links counterclockwise.
// The palm surface is the segment y = 0, x in [-palm_length, 0].

#ifndef TENDON_HAND_CONTACT_HPP_
#define TENDON_HAND_CONTACT_HPP_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tendon_hand/hand_model.hpp"

namespace tendon_hand {

enum class ShapeKind { kDisk, kHalfPlane, kCapsule };

inline constexpr double kRigidContactStiffness = 1e5;   // N/m
inline constexpr double kSpongeContactStiffness = 2e3;  // N/m

/// Which chains see an object. Fingers live in separate flexion planes, so a
/// cross-section only interacts with the fingers (and palm) it is listed for.
struct Visibility {
  std::array<bool, 5> fingers = {true, true, true, true, true};
  bool palm = true;

  bool sees(FingerId id) const { return fingers[static_cast<std::size_t>(id)]; }
};

/// Disk: pose is the center. Half-plane: pose is a point on the boundary and
/// pose.theta the direction of the outward normal. Capsule: pose is the
/// center, pose.theta the axis direction.
struct ObjectShape {
  std::string name;
  ShapeKind kind = ShapeKind::kDisk;
  Pose2 pose;
  double radius = 0.0;       // disk, capsule
  double half_length = 0.0;  // capsule axis half-length
  double contact_stiffness = kRigidContactStiffness;
  Visibility visibility;
};

/// Empty iff the shape satisfies its invariants.
std::vector<Violation> validate(const ObjectShape& shape, const std::string& field);

enum class ContactBody { kLink, kPalm };

struct ContactPoint {
  FingerId finger = FingerId::kThumb;
  ContactBody body = ContactBody::kLink;
  int index = 0;  // link 0..2, or palm sensor 0..4
  std::string object;
  Vec2 position = Vec2::Zero();  // material point on the finger/palm
  double penetration = 0.0;      // m, >= 0
  Vec2 normal = Vec2::UnitX();   // outward from the object, unit length
  double force = 0.0;            // N, along normal
};

struct SensorReading {
  SensorSite site;
  double force = 0.0;      // N, clamped to [0, sensor_max]
  double raw_force = 0.0;  // N, before clamping
  bool saturated = false;
};

/// Negative inside, positive outside, exact for every shape kind.
double signed_distance(const ObjectShape& shape, const Vec2& point);

/// Unit gradient of the signed distance (outward normal at the nearest
/// boundary point). Falls back to the shape's reference direction at the
/// center singularity.
Vec2 outward_normal(const ObjectShape& shape, const Vec2& point);

/// Point of segment [a, b] with the smallest signed distance to the shape.
/// Half-planes tie along parallel segments; the endpoint `a` wins then.
Vec2 deepest_point(const ObjectShape& shape, const Vec2& a, const Vec2& b);

/// Penalty contact at a point: none when the point is outside or on the
/// boundary, otherwise force = stiffness * penetration along the outward
/// normal. Finger/body fields are left for the caller.
std::optional<ContactPoint> contact_force(const ObjectShape& shape, const Vec2& point);

/// Contacts between the palm sensor sites and every object visible to the palm.
std::vector<ContactPoint> palm_contacts(const HandSpec& spec, std::span<const ObjectShape> shapes);

/// One reading per sensor site, in layout order. Fingertip sensors sum the
/// normal force on the distal link; palm sensors sum the force at their site.
std::vector<SensorReading> read_sensors(std::span<const ContactPoint> contacts, const HandSpec& spec);

}  // namespace tendon_hand

#endif  // TENDON_HAND_CONTACT_HPP_
