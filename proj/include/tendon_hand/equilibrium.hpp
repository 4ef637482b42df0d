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

// Quasi-static finger and hand equilibria.
//
// A finger settles where its potential energy
//
//   E(theta) = sum 1/2 k_i (theta_i - rest_i)^2      joint springs
//            - T * excursion(theta)                  tendon work
//            + sum 1/2 k_c penetration^2             penalty contacts
//            - sum f . p(theta)                      external point loads
//
// is locally minimal inside the joint-limit box. Descents start from the rest
// pose and move in capped steps. A lone finger returns the lowest minimum it
// finds; a hand keeps the one each finger reaches by closing from rest, never
// one on the far side of a grasped object. Solves are pure functions of their
// inputs.

#ifndef TENDON_HAND_EQUILIBRIUM_HPP_
#define TENDON_HAND_EQUILIBRIUM_HPP_

#include <array>
#include <span>
#include <vector>

#include "tendon_hand/contact.hpp"
#include "tendon_hand/errors.hpp"
#include "tendon_hand/hand_model.hpp"
#include "tendon_hand/tendon.hpp"

namespace tendon_hand {

/// Base joint, two intermediate joints, fingertip.
using LinkPoints = std::array<Vec2, 4>;

/// Constant-direction force attached to a material point of a link. The point
/// sits `along` meters down the link axis and `across` meters to its palmar
/// side, measured from the link's proximal joint.
struct PointLoad {
  int link = 0;
  double along = 0.0;
  double across = 0.0;
  Vec2 force = Vec2::Zero();  // N, flexion-plane frame
};

/// Which minimum a finger solve returns when contacts or loads allow several.
enum class MinimumSearch {
  kFromRest,  // the one reached by descending from rest
  kLowest,    // lowest of the descents from rest and from coarse-grid seeds
};

struct SolverOptions {
  double tolerance = 1e-8;  // projected gradient norm, Nm
  int max_iterations = 10000;
  double max_step = 0.02;   // rad per iteration while contacts are possible
  MinimumSearch search = MinimumSearch::kLowest;  // solve_hand always closes from rest
};

struct FingerState {
  FingerId finger = FingerId::kThumb;
  JointAngles angles = JointAngles::Zero();
  LinkPoints points{};
  std::vector<ContactPoint> contacts;
  double branch_tension = 0.0;
  double branch_excursion = 0.0;
  double energy = 0.0;
  SolveDiagnostics diagnostics;
};

/// Planar serial chain from the base pose; angles accumulate counterclockwise.
LinkPoints forward_kinematics(const FingerSpec& finger, const JointAngles& angles);

/// Material point of a load in the flexion-plane frame.
Vec2 load_point(const LinkPoints& points, const PointLoad& load);

double potential_energy(const FingerSpec& finger, const JointAngles& angles, double branch_tension,
                        std::span<const ObjectShape> shapes, std::span<const PointLoad> loads = {});

JointTorques energy_gradient(const FingerSpec& finger, const JointAngles& angles,
                             double branch_tension, std::span<const ObjectShape> shapes,
                             std::span<const PointLoad> loads = {});

/// Contacts between the finger links and the objects visible to it.
std::vector<ContactPoint> finger_contacts(const FingerSpec& finger, const LinkPoints& points,
                                          std::span<const ObjectShape> shapes);

/// Local energy minimizer, chosen per options.search. Throws SolverError on
/// non-convergence and DomainError for negative tension.
FingerState solve_finger(const FingerSpec& finger, double branch_tension,
                         std::span<const ObjectShape> shapes, std::span<const PointLoad> loads = {},
                         const SolverOptions& options = {});

enum class CommandKind { kTension, kExcursion };

struct ActuatorCommand {
  CommandKind kind = CommandKind::kTension;
  double value = 0.0;  // N or m
};

struct HandState {
  std::vector<FingerState> fingers;   // spec finger order
  std::vector<TendonState> tendons;   // spec actuator order
  std::vector<SensorReading> sensors;  // spec sensor order
  std::vector<ContactPoint> palm_contacts;
  SolveDiagnostics diagnostics;
  double excursion_residual = 0.0;  // m, worst length-command mismatch
  bool saturated = false;
};

/// Per-finger point loads, indexed like HandSpec::fingers.
using HandLoads = std::vector<std::vector<PointLoad>>;

/// Solves all fingers under one command per actuator (spec actuator order).
/// Tension commands above an actuator's limit are clamped and flagged. Length
/// commands are met by finding the actuator tension whose equilibrium draws
/// that much wire; an unreachable length saturates the actuator.
HandState solve_hand(const HandSpec& spec, std::span<const ActuatorCommand> commands,
                     std::span<const ObjectShape> shapes, const HandLoads& loads = {},
                     const SolverOptions& options = {});

/// Every ContactPoint of a hand state, fingers first, then palm.
std::vector<ContactPoint> all_contacts(const HandState& state);

}  // namespace tendon_hand

#endif  // TENDON_HAND_EQUILIBRIUM_HPP_
