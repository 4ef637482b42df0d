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

// Fingertip force feedback on wire length.
//
// Each actuator feeds back one force: the thumb its own fingertip reading,
// a pulley pair the average of its two fingertips unless exactly one of them
// is above the contact threshold, in which case only that one counts. The
// wire length then moves by dl = k (F_finger - F_ref); positive dl pays wire
// out. Palm sensors are read and logged but never fed back.

#ifndef TENDON_HAND_CONTROLLER_HPP_
#define TENDON_HAND_CONTROLLER_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tendon_hand/equilibrium.hpp"

namespace tendon_hand {

struct ControllerConfig {
  double gain = 5e-5;            // m/N
  double reference_force = 10.0;  // N
  double contact_threshold = 5.0;  // N
  double tolerance = 0.5;         // N
  int max_steps = 200;
  int hold_steps = 5;
  std::vector<int> active_actuators = {0, 1, 2};
};

std::vector<Violation> validate(const ControllerConfig& config);

/// Wire state per actuator. Excursion is wire drawn in from rest, so the
/// wire length is (rest length - excursion) and is never longer than at rest.
struct ControllerState {
  std::vector<double> excursion;  // m, spec actuator order
  int step = 0;
  std::vector<std::vector<double>> feedback_history;  // [actuator][step], N
};

enum class FeedbackBranch { kSingle, kBothContact, kNoContact, kFirstOnly, kSecondOnly };

FeedbackBranch classify_pair(double f1, double f2, double threshold);

/// Feedback force for a pulley pair at a given threshold.
double pair_feedback_force(double f1, double f2, double threshold);

/// Feedback force for one actuator from the hand's sensor readings.
double select_feedback_force(const HandSpec& spec, const ActuatorSpec& actuator,
                             std::span<const SensorReading> readings, double threshold);

/// One synchronous wire-length update for every active actuator.
ControllerState control_step(const ControllerConfig& config, const ControllerState& state,
                             const HandSpec& spec, std::span<const SensorReading> readings);

enum class GraspMode { kLengthHold, kTensionHold, kForceTrack };

struct GraspStep {
  HandState hand;
  ControllerState controller;           // command in force at this step
  std::vector<double> feedback_force;  // N, spec actuator order
};

struct GraspTrajectory {
  std::vector<GraspStep> steps;
  bool converged = false;
  bool any_saturation = false;
  std::optional<std::string> failure;
};

/// Closed-loop or held grasp. Force tracking alternates full hand solves with
/// control steps until every active actuator is within tolerance of F_ref or
/// max_steps updates have been spent. Hold modes solve `initial` once, then
/// freeze either the wire lengths or the actuator tensions it produced.
/// Solver failures end the trajectory and are reported in `failure`.
GraspTrajectory run_grasp(const HandSpec& spec, std::span<const ObjectShape> shapes,
                          const ControllerConfig& config, GraspMode mode,
                          std::span<const ActuatorCommand> initial = {},
                          const SolverOptions& options = {});

}  // namespace tendon_hand

#endif  // TENDON_HAND_CONTROLLER_HPP_
