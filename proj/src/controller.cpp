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

#include "tendon_hand/controller.hpp"

#include <algorithm>
#include <cmath>

namespace tendon_hand {

namespace {

double fingertip_force(const HandSpec& spec, FingerId id, std::span<const SensorReading> readings) {
  const int idx = sensor_index(spec, id);
  if (idx >= static_cast<int>(readings.size())) {
    throw DomainError("no reading for fingertip '" + std::string(to_string(id)) + "'");
  }
  return readings[static_cast<std::size_t>(idx)].force;
}

bool is_active(const ControllerConfig& config, int actuator_id) {
  return std::find(config.active_actuators.begin(), config.active_actuators.end(), actuator_id) !=
         config.active_actuators.end();
}

std::vector<double> feedback_forces(const HandSpec& spec, const ControllerConfig& config,
                                    std::span<const SensorReading> readings) {
  std::vector<double> out;
  out.reserve(spec.actuators.size());
  for (const auto& act : spec.actuators) {
    out.push_back(select_feedback_force(spec, act, readings, config.contact_threshold));
  }
  return out;
}

std::vector<ActuatorCommand> length_commands(const std::vector<double>& excursion) {
  std::vector<ActuatorCommand> cmds;
  for (double e : excursion) cmds.push_back({CommandKind::kExcursion, e});
  return cmds;
}

}  // namespace

std::vector<Violation> validate(const ControllerConfig& config) {
  std::vector<Violation> out;
  if (!(config.gain > 0.0) || !std::isfinite(config.gain)) out.push_back({"controller.k", "k > 0"});
  if (!(config.contact_threshold >= 0.0)) {
    out.push_back({"controller.f_thre", "f_thre >= 0"});
  }
  if (!(config.tolerance > 0.0)) out.push_back({"controller.tolerance", "tolerance > 0"});
  if (!std::isfinite(config.reference_force) || config.reference_force < 0.0) {
    out.push_back({"controller.f_ref", "f_ref finite and >= 0"});
  }
  if (config.max_steps < 0) out.push_back({"controller.max_steps", "max_steps >= 0"});
  if (config.hold_steps < 0) out.push_back({"controller.hold_steps", "hold_steps >= 0"});
  return out;
}

FeedbackBranch classify_pair(double f1, double f2, double threshold) {
  const bool c1 = f1 >= threshold;
  const bool c2 = f2 >= threshold;
  if (c1 && c2) return FeedbackBranch::kBothContact;
  if (!c1 && !c2) return FeedbackBranch::kNoContact;
  return c1 ? FeedbackBranch::kFirstOnly : FeedbackBranch::kSecondOnly;
}

double pair_feedback_force(double f1, double f2, double threshold) {
  switch (classify_pair(f1, f2, threshold)) {
    case FeedbackBranch::kFirstOnly:
      return f1;
    case FeedbackBranch::kSecondOnly:
      return f2;
    default:
      return 0.5 * (f1 + f2);
  }
}

double select_feedback_force(const HandSpec& spec, const ActuatorSpec& actuator,
                             std::span<const SensorReading> readings, double threshold) {
  if (actuator.driven_fingers.size() == 1) {
    return fingertip_force(spec, actuator.driven_fingers[0], readings);
  }
  if (actuator.driven_fingers.size() != 2) {
    throw InvalidSpecError("actuator " + std::to_string(actuator.id) + " drives " +
                           std::to_string(actuator.driven_fingers.size()) + " fingers");
  }
  return pair_feedback_force(fingertip_force(spec, actuator.driven_fingers[0], readings),
                             fingertip_force(spec, actuator.driven_fingers[1], readings), threshold);
}

ControllerState control_step(const ControllerConfig& config, const ControllerState& state,
                             const HandSpec& spec, std::span<const SensorReading> readings) {
  if (state.excursion.size() != spec.actuators.size()) {
    throw DomainError("controller state has " + std::to_string(state.excursion.size()) +
                      " actuators, hand has " + std::to_string(spec.actuators.size()));
  }
  ControllerState next = state;
  next.feedback_history.resize(spec.actuators.size());
  for (std::size_t a = 0; a < spec.actuators.size(); ++a) {
    const ActuatorSpec& act = spec.actuators[a];
    const double f = select_feedback_force(spec, act, readings, config.contact_threshold);
    next.feedback_history[a].push_back(f);
    if (!is_active(config, act.id)) continue;
    const double delta_length = config.gain * (f - config.reference_force);
    next.excursion[a] = std::max(0.0, state.excursion[a] - delta_length);
  }
  ++next.step;
  return next;
}

GraspTrajectory run_grasp(const HandSpec& spec, std::span<const ObjectShape> shapes,
                          const ControllerConfig& config, GraspMode mode,
                          std::span<const ActuatorCommand> initial, const SolverOptions& options) {
  require_valid(spec);
  const std::size_t n_act = spec.actuators.size();
  if (!initial.empty() && initial.size() != n_act) {
    throw DomainError("expected " + std::to_string(n_act) + " initial commands");
  }

  GraspTrajectory traj;
  ControllerState ctrl;
  ctrl.excursion.assign(n_act, 0.0);
  ctrl.feedback_history.resize(n_act);

  auto record = [&](HandState hs) {
    traj.any_saturation = traj.any_saturation || hs.saturated;
    GraspStep step;
    step.feedback_force = feedback_forces(spec, config, hs.sensors);
    step.controller = ctrl;
    step.hand = std::move(hs);
    traj.steps.push_back(std::move(step));
    return &traj.steps.back();
  };

  try {
    std::vector<ActuatorCommand> held;
    if (!initial.empty()) {
      held.assign(initial.begin(), initial.end());
    } else {
      held = length_commands(ctrl.excursion);
    }

    if (mode == GraspMode::kForceTrack) {
      bool all_lengths = std::all_of(held.begin(), held.end(), [](const ActuatorCommand& c) {
        return c.kind == CommandKind::kExcursion;
      });
      if (!all_lengths) {
        const HandState pre = solve_hand(spec, held, shapes, {}, options);
        for (std::size_t a = 0; a < n_act; ++a) held[a] = {CommandKind::kExcursion, pre.tendons[a].actuator_excursion};
      }
      for (std::size_t a = 0; a < n_act; ++a) ctrl.excursion[a] = held[a].value;

      for (int step = 0;; ++step) {
        const GraspStep* s = record(solve_hand(spec, length_commands(ctrl.excursion), shapes, {}, options));
        bool done = true;
        for (std::size_t a = 0; a < n_act; ++a) {
          if (!is_active(config, spec.actuators[a].id)) continue;
          done = done && std::abs(s->feedback_force[a] - config.reference_force) <= config.tolerance;
        }
        if (done) {
          traj.converged = true;
          break;
        }
        if (step >= config.max_steps) {
          traj.failure = "force tracking did not reach tolerance within " +
                         std::to_string(config.max_steps) + " steps";
          break;
        }
        ctrl = control_step(config, ctrl, spec, s->hand.sensors);
      }
      return traj;
    }

    // Hold modes: settle once, then freeze the chosen quantity.
    const GraspStep* first = record(solve_hand(spec, held, shapes, {}, options));
    std::vector<ActuatorCommand> frozen(n_act);
    for (std::size_t a = 0; a < n_act; ++a) {
      const TendonState& t = first->hand.tendons[a];
      frozen[a] = mode == GraspMode::kLengthHold
                      ? ActuatorCommand{CommandKind::kExcursion, t.actuator_excursion}
                      : ActuatorCommand{CommandKind::kTension, t.actuator_tension};
      ctrl.excursion[a] = t.actuator_excursion;
    }
    traj.steps.back().controller = ctrl;
    for (int step = 0; step < config.hold_steps; ++step) {
      ++ctrl.step;
      record(solve_hand(spec, frozen, shapes, {}, options));
    }
    traj.converged = true;
  } catch (const SolverError& e) {
    traj.converged = false;
    traj.failure = e.what();
  }
  return traj;
}

}  // namespace tendon_hand
