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


// CSV telemetry. Columns are fixed by the hand description, numbers use the
// shortest decimal form that reads back to the same double, so equal runs
// give equal bytes and every row parses back exactly.

#ifndef TENDON_HAND_TELEMETRY_HPP_
#define TENDON_HAND_TELEMETRY_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "tendon_hand/controller.hpp"
#include "tendon_hand/load_analysis.hpp"

namespace tendon_hand {

/// One grasp step. Tensions follow the actuator order of the hand, sensors
/// its sensor layout, angles are finger-major (thumb..little, proximal first).
struct TelemetryRecord {
  int step = 0;
  std::vector<double> tension;    // N
  std::vector<double> fingertip;  // N, thumb..little
  std::vector<double> palm;       // N, sites 0..4
  std::vector<double> angles;     // rad
  bool converged = false;
  bool saturated = false;

  bool operator==(const TelemetryRecord&) const = default;
};

/// Shortest round-trip decimal; "nan", "inf" and "-inf" for non-finite values.
std::string format_double(double v);
double parse_double(std::string_view text);

std::vector<std::string> telemetry_columns(const HandSpec& spec);
std::vector<TelemetryRecord> telemetry(const GraspTrajectory& trajectory);
std::string telemetry_csv(const HandSpec& spec, const std::vector<TelemetryRecord>& records);
/// Throws ConfigError when the header or a row does not match the hand.
std::vector<TelemetryRecord> parse_telemetry_csv(const HandSpec& spec, const std::string& csv);

inline constexpr std::string_view kRampColumns =
    "mass_kg,actuator_id,tension_N,tension_kgf,saturated,converged";

std::string ramp_csv(const std::vector<RampRow>& rows);
std::vector<RampRow> parse_ramp_csv(const std::string& csv);

}  // namespace tendon_hand

#endif  // TENDON_HAND_TELEMETRY_HPP_
