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


#include "tendon_hand/telemetry.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace tendon_hand {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

std::vector<std::string_view> lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(line);
    start = end + 1;
  }
  return out;
}

std::string_view format_bool(bool b) { return b ? "true" : "false"; }

bool parse_bool(std::string_view s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw ConfigError("expected true or false, got '" + std::string(s) + "'");
}

int parse_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

std::string join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double parse_double(std::string_view s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("expected a number, got '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string> telemetry_columns(const HandSpec& spec) {
  std::vector<std::string> cols{"step"};
  for (const auto& act : spec.actuators) {
    cols.push_back("actuator_" + std::to_string(act.id) + "_tension_N");
  }
  for (FingerId id : kAllFingers) {
    cols.push_back("sensor_fingertip_" + std::string(to_string(id)) + "_N");
  }
  for (int i = 0; i < kPalmSensorCount; ++i) cols.push_back("sensor_palm_" + std::to_string(i) + "_N");
  for (FingerId id : kAllFingers) {
    for (int j = 0; j < kJointsPerFinger; ++j) {
      cols.push_back("joint_" + std::string(to_string(id)) + "_" + std::to_string(j) + "_rad");
    }
  }
  cols.push_back("converged");
  cols.push_back("saturated");
  return cols;
}

std::vector<TelemetryRecord> telemetry(const GraspTrajectory& trajectory) {
  std::vector<TelemetryRecord> out;
  for (std::size_t s = 0; s < trajectory.steps.size(); ++s) {
    const HandState& hand = trajectory.steps[s].hand;
    TelemetryRecord r;
    r.step = static_cast<int>(s);
    for (const auto& t : hand.tendons) r.tension.push_back(t.actuator_tension);
    r.fingertip.assign(kAllFingers.size(), 0.0);
    r.palm.assign(kPalmSensorCount, 0.0);
    for (const auto& reading : hand.sensors) {
      if (reading.site.kind == SensorSiteKind::kFingertip) {
        r.fingertip[static_cast<std::size_t>(reading.site.finger)] = reading.force;
      } else {
        r.palm[static_cast<std::size_t>(reading.site.palm_index)] = reading.force;
      }
    }
    for (FingerId id : kAllFingers) {
      const FingerState* fs = nullptr;
      for (const auto& f : hand.fingers) {
        if (f.finger == id) fs = &f;
      }
      for (int j = 0; j < kJointsPerFinger; ++j) r.angles.push_back(fs ? fs->angles[j] : 0.0);
    }
    r.converged = hand.diagnostics.converged;
    r.saturated = hand.saturated;
    out.push_back(std::move(r));
  }
  return out;
}

std::string telemetry_csv(const HandSpec& spec, const std::vector<TelemetryRecord>& records) {
  std::string out = join(telemetry_columns(spec)) + '\n';
  for (const auto& r : records) {
    std::vector<std::string> cells{std::to_string(r.step)};
    for (double v : r.tension) cells.push_back(format_double(v));
    for (double v : r.fingertip) cells.push_back(format_double(v));
    for (double v : r.palm) cells.push_back(format_double(v));
    for (double v : r.angles) cells.push_back(format_double(v));
    cells.emplace_back(format_bool(r.converged));
    cells.emplace_back(format_bool(r.saturated));
    out += join(cells) + '\n';
  }
  return out;
}

std::vector<TelemetryRecord> parse_telemetry_csv(const HandSpec& spec, const std::string& csv) {
  const auto rows = lines(csv);
  const auto columns = telemetry_columns(spec);
  if (rows.empty() || rows[0] != join(columns)) throw ConfigError("telemetry header does not match hand");
  const std::size_t n_act = spec.actuators.size();
  std::vector<TelemetryRecord> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split(rows[i]);
    if (cells.size() != columns.size()) {
      throw ConfigError("telemetry row " + std::to_string(i) + " has " + std::to_string(cells.size()) +
                        " cells, expected " + std::to_string(columns.size()));
    }
    TelemetryRecord r;
    std::size_t c = 0;
    r.step = parse_int(cells[c++]);
    for (std::size_t a = 0; a < n_act; ++a) r.tension.push_back(parse_double(cells[c++]));
    for (std::size_t f = 0; f < kAllFingers.size(); ++f) r.fingertip.push_back(parse_double(cells[c++]));
    for (int p = 0; p < kPalmSensorCount; ++p) r.palm.push_back(parse_double(cells[c++]));
    for (std::size_t k = 0; k < kAllFingers.size() * kJointsPerFinger; ++k) {
      r.angles.push_back(parse_double(cells[c++]));
    }
    r.converged = parse_bool(cells[c++]);
    r.saturated = parse_bool(cells[c++]);
    out.push_back(std::move(r));
  }
  return out;
}

std::string ramp_csv(const std::vector<RampRow>& rows) {
  std::string out = std::string(kRampColumns) + '\n';
  for (const auto& r : rows) {
    out += join({format_double(r.mass_kg), std::to_string(r.actuator_id), format_double(r.tension_n),
                 format_double(newtons_to_kgf(r.tension_n)), std::string(format_bool(r.saturated)),
                 std::string(format_bool(r.converged))});
    out += '\n';
  }
  return out;
}

std::vector<RampRow> parse_ramp_csv(const std::string& csv) {
  const auto rows = lines(csv);
  if (rows.empty() || rows[0] != kRampColumns) throw ConfigError("ramp header mismatch");
  std::vector<RampRow> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split(rows[i]);
    if (cells.size() != 6) throw ConfigError("ramp row " + std::to_string(i) + " needs 6 cells");
    RampRow r;
    r.mass_kg = parse_double(cells[0]);
    r.actuator_id = parse_int(cells[1]);
    r.tension_n = parse_double(cells[2]);
    r.saturated = parse_bool(cells[4]);
    r.converged = parse_bool(cells[5]);
    out.push_back(r);
  }
  return out;
}

}  // namespace tendon_hand
