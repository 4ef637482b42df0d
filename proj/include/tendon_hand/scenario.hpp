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


// Scenario files and runs.
//
// A scenario is a JSON document with "schema_version": 1. Unknown fields are
// rejected so a misspelled physics parameter fails loudly instead of falling
// back to a default. The schema is described in docs/scenario_schema.md.

#ifndef TENDON_HAND_SCENARIO_HPP_
#define TENDON_HAND_SCENARIO_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tendon_hand/controller.hpp"
#include "tendon_hand/load_analysis.hpp"

namespace tendon_hand {

inline constexpr int kSchemaVersion = 1;

/// Dangling test: about 30 kgf peak while two hands carried the robot.
inline constexpr double kDanglingPeakTensionKgf = 30.0;

enum class ScenarioMode { kGrasp, kRamp, kMargin, kValidate };

std::string_view to_string(ScenarioMode mode);

struct GraspSection {
  GraspMode mode = GraspMode::kForceTrack;
  std::vector<ActuatorCommand> initial;  // empty: start slack
};

struct PayloadSection {
  PayloadScenario scenario;     // carries the calibration pair
  bool efficiency_given = false;  // calibration came from a bare efficiency
};

struct RampSection {
  std::string object;
  Vec2 load_direction = Vec2(1.0, 0.0);
  std::vector<ActuatorCommand> hold;
};

struct Scenario {
  std::string name;
  ScenarioMode mode = ScenarioMode::kValidate;
  std::uint64_t seed = 0;
  HandSpec hand;
  std::vector<ObjectShape> objects;
  std::optional<ControllerConfig> controller;
  std::optional<GraspSection> grasp;
  std::optional<PayloadSection> payload;
  std::optional<RampSection> ramp;
  SolverOptions solver;
  int threads = 1;  // ramp parallelism, not part of the file
};

/// Parses and structurally checks a scenario. Throws ConfigError naming the
/// offending field.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::filesystem::path& path);

/// Physics and mode checks on a parsed scenario; empty when runnable.
std::vector<Violation> validate(const Scenario& scenario);

std::string hand_to_json(const HandSpec& spec);
/// Throws ConfigError on unknown or missing fields.
HandSpec hand_from_json(const std::string& json_text);

enum class ExitCode { kOk = 0, kConfigError = 1, kNotConverged = 2, kSaturated = 3 };

/// What to run: the mode declared in the file, or one named explicitly.
enum class RunKind { kDeclared, kGrasp, kRamp, kMargin, kCalibrate, kValidate };

struct RunResult {
  ExitCode exit_code = ExitCode::kOk;
  std::string report;
  std::string csv;       // empty when the mode writes none
  std::string csv_name;  // telemetry.csv or ramp.csv
  std::optional<GraspTrajectory> trajectory;
  std::optional<RampResult> ramp;
  std::optional<MarginReport> margin;
};

/// Runs a scenario. Configuration problems come back as kConfigError with
/// the message in `report`; nothing is thrown for them.
RunResult run_scenario(const Scenario& scenario, RunKind kind = RunKind::kDeclared);

/// Least-squares line through (x, y) and its coefficient of determination.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace tendon_hand

#endif  // TENDON_HAND_SCENARIO_HPP_
