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

// Parametric description of the five-finger tendon hand.
//
// Each finger is a planar chain of three torsional-spring joints (CM/MP/IP on
// the thumb, MP/PIP/DIP elsewhere) flexed by one tendon. Three actuators drive
// the fingers: the thumb directly, and the index+middle and ring+little pairs
// through movable pulleys. Joint springs are specified by their compliance in
// degrees per newton-meter; the proximal joint of every finger is the softest.

#ifndef TENDON_HAND_HAND_MODEL_HPP_
#define TENDON_HAND_HAND_MODEL_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "tendon_hand/units.hpp"

namespace tendon_hand {

using Vec2 = Eigen::Vector2d;

enum class FingerId { kThumb = 0, kIndex = 1, kMiddle = 2, kRing = 3, kLittle = 4 };

inline constexpr std::array<FingerId, 5> kAllFingers = {
    FingerId::kThumb, FingerId::kIndex, FingerId::kMiddle, FingerId::kRing,
    FingerId::kLittle};

std::string_view to_string(FingerId finger);
std::optional<FingerId> finger_from_string(std::string_view name);

inline constexpr int kJointsPerFinger = 3;
inline constexpr int kPalmSensorCount = 5;
inline constexpr int kSensorCount = 10;

inline constexpr double kDefaultMaxTensionN = 50.0 * kNewtonsPerKgf;
inline constexpr double kDefaultSensorMaxN = 500.0;
// Both masses are quoted for the same robot; the first is the default.
inline constexpr double kRobotMassKg = 56.4;
inline constexpr double kRobotMassAltKg = 56.2;

/// Planar pose: position in meters, orientation in radians.
struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

struct JointLimits {
  double min = 0.0;
  double max = kPi / 2.0;
};

struct JointSpec {
  double compliance_deg_per_nm = 0.0;
  double rest_angle = 0.0;
  JointLimits limits;
  double moment_arm = 0.0;   // m, tendon to joint axis
  double link_length = 0.0;  // m, link distal to this joint
};

struct FingerSpec {
  FingerId name = FingerId::kIndex;
  std::vector<JointSpec> joints;  // proximal to distal
  Pose2 base_pose;
};

enum class Coupling { kDirect, kMovablePulley };

struct ActuatorSpec {
  int id = 0;
  double max_tension = kDefaultMaxTensionN;  // N
  std::vector<FingerId> driven_fingers;
  Coupling coupling = Coupling::kDirect;
};

enum class SensorSiteKind { kFingertip, kPalm };

struct SensorSite {
  SensorSiteKind kind = SensorSiteKind::kFingertip;
  FingerId finger = FingerId::kThumb;  // fingertip sites
  int palm_index = 0;                  // palm sites
  Vec2 position = Vec2::Zero();        // palm sites, hand plane
};

struct HandSpec {
  std::vector<FingerSpec> fingers;
  std::vector<ActuatorSpec> actuators;
  std::vector<SensorSite> sensor_layout;
  double sensor_max = kDefaultSensorMaxN;  // N
  double gravity = kStandardGravity;
  double robot_mass = kRobotMassKg;  // kg
  double palm_length = 0.080;        // m
};

struct Violation {
  std::string field;
  std::string rule;
};

/// Hand with the measured joint compliances, the 3-actuator grouping and an
/// overall length of 165 mm (80 mm palm plus an 85 mm middle finger).
HandSpec default_hand();

/// Empty iff every invariant of the description holds.
std::vector<Violation> validate(const HandSpec& spec);

/// Torsional stiffness in Nm/rad. Throws InvalidSpecError for compliance <= 0.
double stiffness(const JointSpec& joint);

const FingerSpec& finger(const HandSpec& spec, FingerId id);
const ActuatorSpec& actuator_for(const HandSpec& spec, FingerId id);
int sensor_index(const HandSpec& spec, FingerId fingertip);

/// Throws InvalidSpecError listing every violation when `spec` is invalid.
void require_valid(const HandSpec& spec);

}  // namespace tendon_hand

#endif  // TENDON_HAND_HAND_MODEL_HPP_
