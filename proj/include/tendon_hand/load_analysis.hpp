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

// Payload versus wire tension.
//
// The aggregate model is linear: a hand whose peak actuator pulls T kgf holds
// eta * T kg, with the grip efficiency eta calibrated from one measured
// (mass, peak tension) pair. payload_ramp runs the full simulator instead:
// the grasp is held at fixed wire lengths and the grasped object is displaced
// along the load direction until the contact reaction on it carries the
// payload weight.

#ifndef TENDON_HAND_LOAD_ANALYSIS_HPP_
#define TENDON_HAND_LOAD_ANALYSIS_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tendon_hand/equilibrium.hpp"

namespace tendon_hand {

/// Basket experiment: 37.2 kg held with a peak wire tension of about 30 kgf.
inline constexpr double kBasketMassKg = 37.2;
inline constexpr double kBasketPeakTensionKgf = 30.0;

/// One measured (mass, peak tension) pair. Predictions scale the pair by
/// ratios instead of going through eta, so the calibration point itself comes
/// back exactly.
struct GripCalibration {
  double mass_kg = kBasketMassKg;
  double tension_kgf = kBasketPeakTensionKgf;

  double efficiency() const { return mass_kg / tension_kgf; }  // kg per kgf
};

/// A calibration equivalent to a bare efficiency.
inline GripCalibration calibration_from_efficiency(double efficiency) { return {efficiency, 1.0}; }

struct PayloadScenario {
  double payload_mass = kRobotMassKg;  // kg
  int hands_sharing = 1;
  std::vector<double> ramp;  // kg
  GripCalibration calibration;
};

/// eta = mass / tension. Throws DomainError unless both are positive.
double calibrate_efficiency(double mass_kg, double tension_kgf);

/// Peak actuator tension (kgf) one hand needs for its share of `mass_kg`.
double required_tension(double mass_kg, int hands_sharing, double efficiency);
double required_tension(double mass_kg, int hands_sharing, const GripCalibration& calibration);

/// Mass (kg) one hand holds when its peak actuator pulls `max_tension_n`.
double capacity_mass(const GripCalibration& calibration, double max_tension_n);

struct ActuatorMargin {
  int actuator_id = 0;
  double required_kgf = 0.0;
  double required_n = 0.0;
  double max_kgf = 0.0;
  double max_n = 0.0;
};

struct MarginReport {
  std::vector<ActuatorMargin> actuators;
  double required_kgf = 0.0;  // peak actuator, per hand
  double required_n = 0.0;
  double capacity_mass = 0.0;  // kg per hand at actuator saturation
  double share_mass = 0.0;     // kg per hand
  double margin_ratio = 0.0;   // capacity / share
  double efficiency = 0.0;
  bool pass = false;
};

/// Capacity uses the weakest actuator's limit; pass iff the per-hand share of
/// the payload fits under it.
MarginReport margin_report(const HandSpec& spec, const PayloadScenario& scenario);

struct RampConfig {
  std::string object;                           // name of the grasped shape
  Vec2 load_direction = Vec2(1.0, 0.0);  // flexion-plane frame, normalized on use
  std::vector<ActuatorCommand> hold;            // grasp settled before loading
  int hands_sharing = 1;
  int threads = 1;
  int max_load_iterations = 100;
  double force_tolerance = 1e-6;  // relative to the per-hand weight (N)
  double max_displacement = 0.05;  // m, search gives up beyond this
};

struct RampPoint {
  double mass = 0.0;  // kg
  std::optional<HandState> state;
  bool converged = false;
  std::optional<std::string> failure;
  double displacement = 0.0;  // m, along the load direction
  int load_iterations = 0;     // hand solves spent on this mass
};

struct RampRow {
  double mass_kg = 0.0;
  int actuator_id = 0;
  double tension_n = 0.0;
  bool saturated = false;
  bool converged = false;
};

struct RampResult {
  HandState hold;
  std::vector<RampPoint> points;

  std::vector<RampRow> rows(const HandSpec& spec) const;
  /// Highest actuator tension at each ramp mass (N); NaN for failed points.
  std::vector<double> peak_tensions() const;
};

/// Peak tensions come from iterative solves, so equal values can differ in the
/// last digits. A curve is monotone when no entry drops below its predecessor
/// by more than this.
inline constexpr double kMonotoneSlackN = 1e-6;

/// Non-decreasing within `slack`; false if any entry is NaN.
bool non_decreasing(std::span<const double> values, double slack = kMonotoneSlackN);

/// Runs one length-held equilibrium per mass. A failing mass becomes a
/// failure row and the ramp continues. Entries run on up to config.threads
/// threads; results do not depend on the thread count.
RampResult payload_ramp(const HandSpec& spec, std::span<const ObjectShape> shapes,
                        std::span<const double> masses, const RampConfig& config,
                        const SolverOptions& options = {});

}  // namespace tendon_hand

#endif  // TENDON_HAND_LOAD_ANALYSIS_HPP_
