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

// Tendon routing: constant moment arms, frictionless sheaths, and the
// movable pulley that lets one actuator close two fingers independently.

#ifndef TENDON_HAND_TENDON_HPP_
#define TENDON_HAND_TENDON_HPP_

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "tendon_hand/hand_model.hpp"

namespace tendon_hand {

using JointAngles = Eigen::Vector3d;
using JointTorques = Eigen::Vector3d;

struct TendonState {
  int actuator_id = 0;
  double actuator_tension = 0.0;       // N
  std::vector<double> branch_tensions;  // N, one per driven finger
  double actuator_excursion = 0.0;     // m, wire drawn in from rest
  std::vector<double> branch_excursions;
  bool saturated = false;
};

/// Flexion-positive torques r_i * T. Throws DomainError for T < 0.
JointTorques joint_torques(const FingerSpec& finger, double branch_tension);

/// Wire drawn past the routing, sum of r_i * (theta_i - rest_i).
/// Throws DomainError when an angle is outside its joint limits.
double wire_excursion(const FingerSpec& finger, const JointAngles& angles);

/// Frictionless movable pulley: both branches carry half the actuator tension.
std::pair<double, double> pulley_split(double actuator_tension);

struct BlockedBranch {
  int branch = 0;          // 0 or 1
  double excursion = 0.0;  // m, where that branch is held
};

/// Branch excursions satisfying e_act = (e_1 + e_2) / 2. With one branch held,
/// the other takes the remainder; throws InfeasibleRoutingError if that would
/// be negative.
std::pair<double, double> pulley_excursions(double actuator_excursion,
                                            std::optional<BlockedBranch> blocked = std::nullopt);

struct ClampedTension {
  double tension = 0.0;
  bool saturated = false;
};

/// Clamps a requested actuator tension to [0, max_tension]; flags the clamp
/// at the upper bound.
ClampedTension clamp_tension(double requested, const ActuatorSpec& actuator);

}  // namespace tendon_hand

#endif  // TENDON_HAND_TENDON_HPP_
