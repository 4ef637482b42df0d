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

#include "tendon_hand/tendon.hpp"

#include <cmath>
#include <string>

#include "tendon_hand/errors.hpp"

namespace tendon_hand {

namespace {

constexpr double kLimitSlack = 1e-12;

void require_three_joints(const FingerSpec& finger) {
  if (finger.joints.size() != static_cast<std::size_t>(kJointsPerFinger)) {
    throw InvalidSpecError("finger '" + std::string(to_string(finger.name)) +
                           "' must have exactly 3 joints");
  }
}

}  // namespace

JointTorques joint_torques(const FingerSpec& finger, double branch_tension) {
  require_three_joints(finger);
  if (!(branch_tension >= 0.0)) {
    throw DomainError("branch tension must be >= 0, got " + std::to_string(branch_tension));
  }
  JointTorques tau;
  for (int i = 0; i < kJointsPerFinger; ++i) tau[i] = finger.joints[i].moment_arm * branch_tension;
  return tau;
}

double wire_excursion(const FingerSpec& finger, const JointAngles& angles) {
  require_three_joints(finger);
  double e = 0.0;
  for (int i = 0; i < kJointsPerFinger; ++i) {
    const JointSpec& j = finger.joints[i];
    if (!(angles[i] >= j.limits.min - kLimitSlack && angles[i] <= j.limits.max + kLimitSlack)) {
      throw DomainError("joint " + std::to_string(i) + " of '" + std::string(to_string(finger.name)) +
                        "' outside its limits: " + std::to_string(angles[i]));
    }
    e += j.moment_arm * (angles[i] - j.rest_angle);
  }
  return e;
}

std::pair<double, double> pulley_split(double actuator_tension) {
  if (!(actuator_tension >= 0.0)) {
    throw DomainError("actuator tension must be >= 0, got " + std::to_string(actuator_tension));
  }
  const double half = 0.5 * actuator_tension;
  return {half, half};
}

std::pair<double, double> pulley_excursions(double actuator_excursion,
                                            std::optional<BlockedBranch> blocked) {
  if (!(actuator_excursion >= 0.0)) {
    throw DomainError("actuator excursion must be >= 0, got " +
                      std::to_string(actuator_excursion));
  }
  if (!blocked) return {actuator_excursion, actuator_excursion};
  if (blocked->branch != 0 && blocked->branch != 1) {
    throw DomainError("blocked branch must be 0 or 1");
  }
  const double free = 2.0 * actuator_excursion - blocked->excursion;
  if (free < 0.0) {
    throw InfeasibleRoutingError("free branch would need negative excursion " +
                                 std::to_string(free) + " m");
  }
  if (blocked->branch == 0) return {blocked->excursion, free};
  return {free, blocked->excursion};
}

ClampedTension clamp_tension(double requested, const ActuatorSpec& actuator) {
  if (!(requested >= 0.0)) {
    throw DomainError("requested tension must be >= 0, got " + std::to_string(requested));
  }
  if (requested > actuator.max_tension) return {actuator.max_tension, true};
  return {requested, false};
}

}  // namespace tendon_hand
