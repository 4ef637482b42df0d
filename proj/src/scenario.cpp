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


#include "tendon_hand/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

#include "tendon_hand/telemetry.hpp"

namespace tendon_hand {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// ---- strict JSON reading -------------------------------------------------

std::string join_path(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

void expect_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
}

void allow_only(const json& j, const std::string& path, std::initializer_list<std::string_view> keys) {
  expect_object(j, path);
  for (const auto& [key, value] : j.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(join_path(path, key) + ": unknown field");
    }
  }
}

const json& require(const json& j, const std::string& path, std::string_view key) {
  const auto it = j.find(std::string(key));
  if (it == j.end()) throw ConfigError(join_path(path, key) + ": missing field");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path + ": expected a number");
  return j.get<double>();
}

double number(const json& obj, const std::string& path, std::string_view key) {
  return number(require(obj, path, key), join_path(path, key));
}

double number_or(const json& obj, const std::string& path, std::string_view key, double fallback) {
  return obj.contains(std::string(key)) ? number(obj, path, key) : fallback;
}

long long integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path + ": expected an integer");
  return j.get<long long>();
}

int int_or(const json& obj, const std::string& path, std::string_view key, int fallback) {
  if (!obj.contains(std::string(key))) return fallback;
  const long long v = integer(obj.at(std::string(key)), join_path(path, key));
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ConfigError(join_path(path, key) + ": out of range");
  }
  return static_cast<int>(v);
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path + ": expected a string");
  return j.get<std::string>();
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path + ": expected an array");
  return j;
}

std::string item(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

FingerId finger_id(const json& j, const std::string& path) {
  const auto id = finger_from_string(text(j, path));
  if (!id) throw ConfigError(path + ": unknown finger '" + j.get<std::string>() + "'");
  return *id;
}

// ---- hand ---------------------------------------------------------------

ordered_json pose_json(const Pose2& p) { return {{"x", p.x}, {"y", p.y}, {"theta", p.theta}}; }

Pose2 parse_pose(const json& j, const std::string& path, bool need_theta) {
  allow_only(j, path, {"x", "y", "theta"});
  Pose2 p;
  p.x = number(j, path, "x");
  p.y = number(j, path, "y");
  p.theta = need_theta ? number(j, path, "theta") : number_or(j, path, "theta", 0.0);
  return p;
}

std::string_view coupling_name(Coupling c) { return c == Coupling::kDirect ? "direct" : "movable_pulley"; }

ordered_json hand_json(const HandSpec& spec) {
  ordered_json fingers = ordered_json::array();
  for (const auto& f : spec.fingers) {
    ordered_json joints = ordered_json::array();
    for (const auto& jt : f.joints) {
      joints.push_back({{"compliance_deg_per_nm", jt.compliance_deg_per_nm},
                        {"rest_angle_rad", jt.rest_angle},
                        {"limits_rad", {{"min", jt.limits.min}, {"max", jt.limits.max}}},
                        {"moment_arm_m", jt.moment_arm},
                        {"link_length_m", jt.link_length}});
    }
    fingers.push_back({{"name", to_string(f.name)}, {"base_pose", pose_json(f.base_pose)}, {"joints", joints}});
  }
  ordered_json actuators = ordered_json::array();
  for (const auto& a : spec.actuators) {
    ordered_json driven = ordered_json::array();
    for (FingerId id : a.driven_fingers) driven.push_back(to_string(id));
    actuators.push_back({{"id", a.id},
                         {"max_tension_N", a.max_tension},
                         {"driven_fingers", driven},
                         {"coupling", coupling_name(a.coupling)}});
  }
  ordered_json sensors = ordered_json::array();
  for (const auto& s : spec.sensor_layout) {
    if (s.kind == SensorSiteKind::kFingertip) {
      sensors.push_back({{"kind", "fingertip"}, {"finger", to_string(s.finger)}});
    } else {
      sensors.push_back({{"kind", "palm"},
                         {"index", s.palm_index},
                         {"position", {{"x", s.position.x()}, {"y", s.position.y()}}}});
    }
  }
  return {{"fingers", fingers},
          {"actuators", actuators},
          {"sensor_layout", sensors},
          {"sensor_max_N", spec.sensor_max},
          {"gravity_m_per_s2", spec.gravity},
          {"robot_mass_kg", spec.robot_mass},
          {"palm_length_m", spec.palm_length}};
}

HandSpec parse_hand(const json& j, const std::string& path) {
  if (j.is_string()) {
    if (j.get<std::string>() != "default") throw ConfigError(path + ": expected \"default\" or an object");
    return default_hand();
  }
  allow_only(j, path, {"fingers", "actuators", "sensor_layout", "sensor_max_N", "gravity_m_per_s2",
                       "robot_mass_kg", "palm_length_m"});
  HandSpec spec;
  const std::string fp = join_path(path, "fingers");
  const json& fingers = array(require(j, path, "fingers"), fp);
  for (std::size_t i = 0; i < fingers.size(); ++i) {
    const std::string p = item(fp, i);
    allow_only(fingers[i], p, {"name", "base_pose", "joints"});
    FingerSpec f;
    f.name = finger_id(require(fingers[i], p, "name"), join_path(p, "name"));
    f.base_pose = parse_pose(require(fingers[i], p, "base_pose"), join_path(p, "base_pose"), true);
    const std::string jp = join_path(p, "joints");
    const json& joints = array(require(fingers[i], p, "joints"), jp);
    for (std::size_t k = 0; k < joints.size(); ++k) {
      const std::string q = item(jp, k);
      allow_only(joints[k], q,
                 {"compliance_deg_per_nm", "rest_angle_rad", "limits_rad", "moment_arm_m", "link_length_m"});
      JointSpec jt;
      jt.compliance_deg_per_nm = number(joints[k], q, "compliance_deg_per_nm");
      jt.rest_angle = number(joints[k], q, "rest_angle_rad");
      const std::string lp = join_path(q, "limits_rad");
      const json& lim = require(joints[k], q, "limits_rad");
      allow_only(lim, lp, {"min", "max"});
      jt.limits.min = number(lim, lp, "min");
      jt.limits.max = number(lim, lp, "max");
      jt.moment_arm = number(joints[k], q, "moment_arm_m");
      jt.link_length = number(joints[k], q, "link_length_m");
      f.joints.push_back(jt);
    }
    spec.fingers.push_back(std::move(f));
  }

  const std::string ap = join_path(path, "actuators");
  const json& actuators = array(require(j, path, "actuators"), ap);
  for (std::size_t i = 0; i < actuators.size(); ++i) {
    const std::string p = item(ap, i);
    allow_only(actuators[i], p, {"id", "max_tension_N", "driven_fingers", "coupling"});
    ActuatorSpec a;
    a.id = static_cast<int>(integer(require(actuators[i], p, "id"), join_path(p, "id")));
    a.max_tension = number(actuators[i], p, "max_tension_N");
    const std::string dp = join_path(p, "driven_fingers");
    const json& driven = array(require(actuators[i], p, "driven_fingers"), dp);
    for (std::size_t k = 0; k < driven.size(); ++k) a.driven_fingers.push_back(finger_id(driven[k], item(dp, k)));
    const std::string c = text(require(actuators[i], p, "coupling"), join_path(p, "coupling"));
    if (c == "direct") {
      a.coupling = Coupling::kDirect;
    } else if (c == "movable_pulley") {
      a.coupling = Coupling::kMovablePulley;
    } else {
      throw ConfigError(join_path(p, "coupling") + ": expected direct or movable_pulley");
    }
    spec.actuators.push_back(std::move(a));
  }

  const std::string sp = join_path(path, "sensor_layout");
  const json& sensors = array(require(j, path, "sensor_layout"), sp);
  for (std::size_t i = 0; i < sensors.size(); ++i) {
    const std::string p = item(sp, i);
    SensorSite s;
    const std::string kind = text(require(sensors[i], p, "kind"), join_path(p, "kind"));
    if (kind == "fingertip") {
      allow_only(sensors[i], p, {"kind", "finger"});
      s.kind = SensorSiteKind::kFingertip;
      s.finger = finger_id(require(sensors[i], p, "finger"), join_path(p, "finger"));
    } else if (kind == "palm") {
      allow_only(sensors[i], p, {"kind", "index", "position"});
      s.kind = SensorSiteKind::kPalm;
      s.palm_index = static_cast<int>(integer(require(sensors[i], p, "index"), join_path(p, "index")));
      const std::string pp = join_path(p, "position");
      const json& pos = require(sensors[i], p, "position");
      allow_only(pos, pp, {"x", "y"});
      s.position = Vec2(number(pos, pp, "x"), number(pos, pp, "y"));
    } else {
      throw ConfigError(join_path(p, "kind") + ": expected fingertip or palm");
    }
    spec.sensor_layout.push_back(s);
  }
  spec.sensor_max = number(j, path, "sensor_max_N");
  spec.gravity = number(j, path, "gravity_m_per_s2");
  spec.robot_mass = number(j, path, "robot_mass_kg");
  spec.palm_length = number(j, path, "palm_length_m");
  return spec;
}

// ---- scenario sections ----------------------------------------------------

ObjectShape parse_object(const json& j, const std::string& path) {
  allow_only(j, path, {"name", "kind", "pose", "radius_m", "half_length_m", "contact_stiffness_N_per_m",
                       "visible_to"});
  ObjectShape o;
  o.name = text(require(j, path, "name"), join_path(path, "name"));
  const std::string kind = text(require(j, path, "kind"), join_path(path, "kind"));
  if (kind == "disk") {
    o.kind = ShapeKind::kDisk;
  } else if (kind == "capsule") {
    o.kind = ShapeKind::kCapsule;
  } else if (kind == "half_plane") {
    o.kind = ShapeKind::kHalfPlane;
  } else {
    throw ConfigError(join_path(path, "kind") + ": expected disk, capsule or half_plane");
  }
  o.pose = parse_pose(require(j, path, "pose"), join_path(path, "pose"), false);
  o.radius = number_or(j, path, "radius_m", 0.0);
  o.half_length = number_or(j, path, "half_length_m", 0.0);
  o.contact_stiffness = number_or(j, path, "contact_stiffness_N_per_m", kRigidContactStiffness);
  if (j.contains("visible_to")) {
    const std::string vp = join_path(path, "visible_to");
    const json& vis = array(j.at("visible_to"), vp);
    o.visibility.fingers.fill(false);
    o.visibility.palm = false;
    for (std::size_t i = 0; i < vis.size(); ++i) {
      const std::string name = text(vis[i], item(vp, i));
      if (name == "palm") {
        o.visibility.palm = true;
      } else {
        o.visibility.fingers[static_cast<std::size_t>(finger_id(vis[i], item(vp, i)))] = true;
      }
    }
  }
  return o;
}

std::vector<ActuatorCommand> parse_commands(const json& j, const std::string& path) {
  std::vector<ActuatorCommand> out;
  const json& arr = array(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = item(path, i);
    allow_only(arr[i], p, {"tension_N", "excursion_m"});
    const bool t = arr[i].contains("tension_N");
    const bool e = arr[i].contains("excursion_m");
    if (t == e) throw ConfigError(p + ": give exactly one of tension_N, excursion_m");
    out.push_back(t ? ActuatorCommand{CommandKind::kTension, number(arr[i], p, "tension_N")}
                    : ActuatorCommand{CommandKind::kExcursion, number(arr[i], p, "excursion_m")});
  }
  return out;
}

ControllerConfig parse_controller(const json& j, const std::string& path) {
  allow_only(j, path, {"gain_m_per_N", "reference_force_N", "contact_threshold_N", "tolerance_N", "max_steps",
                       "hold_steps", "active_actuators"});
  ControllerConfig c;
  c.gain = number_or(j, path, "gain_m_per_N", c.gain);
  c.reference_force = number_or(j, path, "reference_force_N", c.reference_force);
  c.contact_threshold = number_or(j, path, "contact_threshold_N", c.contact_threshold);
  c.tolerance = number_or(j, path, "tolerance_N", c.tolerance);
  c.max_steps = int_or(j, path, "max_steps", c.max_steps);
  c.hold_steps = int_or(j, path, "hold_steps", c.hold_steps);
  if (j.contains("active_actuators")) {
    const std::string ap = join_path(path, "active_actuators");
    const json& arr = array(j.at("active_actuators"), ap);
    c.active_actuators.clear();
    for (std::size_t i = 0; i < arr.size(); ++i) {
      c.active_actuators.push_back(static_cast<int>(integer(arr[i], item(ap, i))));
    }
  }
  return c;
}

GraspSection parse_grasp(const json& j, const std::string& path) {
  allow_only(j, path, {"mode", "initial"});
  GraspSection g;
  if (j.contains("mode")) {
    const std::string m = text(j.at("mode"), join_path(path, "mode"));
    if (m == "force_track") {
      g.mode = GraspMode::kForceTrack;
    } else if (m == "length_hold") {
      g.mode = GraspMode::kLengthHold;
    } else if (m == "tension_hold") {
      g.mode = GraspMode::kTensionHold;
    } else {
      throw ConfigError(join_path(path, "mode") + ": expected force_track, length_hold or tension_hold");
    }
  }
  if (j.contains("initial")) g.initial = parse_commands(j.at("initial"), join_path(path, "initial"));
  return g;
}

PayloadSection parse_payload(const json& j, const std::string& path, const HandSpec& hand) {
  allow_only(j, path, {"mass_kg", "hands_sharing", "ramp_kg", "efficiency_kg_per_kgf", "calibration"});
  PayloadSection p;
  p.scenario.payload_mass = number_or(j, path, "mass_kg", hand.robot_mass);
  p.scenario.hands_sharing = int_or(j, path, "hands_sharing", 1);
  if (j.contains("ramp_kg")) {
    const std::string rp = join_path(path, "ramp_kg");
    const json& arr = array(j.at("ramp_kg"), rp);
    for (std::size_t i = 0; i < arr.size(); ++i) p.scenario.ramp.push_back(number(arr[i], item(rp, i)));
  }
  if (j.contains("calibration")) {
    const std::string cp = join_path(path, "calibration");
    const json& c = j.at("calibration");
    allow_only(c, cp, {"mass_kg", "tension_kgf"});
    p.scenario.calibration.mass_kg = number(c, cp, "mass_kg");
    p.scenario.calibration.tension_kgf = number(c, cp, "tension_kgf");
  }
  if (j.contains("efficiency_kg_per_kgf")) {
    if (j.contains("calibration")) {
      throw ConfigError(join_path(path, "efficiency_kg_per_kgf") + ": give either efficiency or calibration");
    }
    p.efficiency_given = true;
    p.scenario.calibration = calibration_from_efficiency(number(j, path, "efficiency_kg_per_kgf"));
  }
  return p;
}

RampSection parse_ramp(const json& j, const std::string& path) {
  allow_only(j, path, {"object", "load_direction", "hold"});
  RampSection r;
  r.object = text(require(j, path, "object"), join_path(path, "object"));
  if (j.contains("load_direction")) {
    const std::string dp = join_path(path, "load_direction");
    const json& d = j.at("load_direction");
    allow_only(d, dp, {"x", "y"});
    r.load_direction = Vec2(number(d, dp, "x"), number(d, dp, "y"));
  }
  r.hold = parse_commands(require(j, path, "hold"), join_path(path, "hold"));
  return r;
}

SolverOptions parse_solver(const json& j, const std::string& path) {
  allow_only(j, path, {"tolerance", "max_iterations", "max_step_rad"});
  SolverOptions s;
  s.tolerance = number_or(j, path, "tolerance", s.tolerance);
  s.max_iterations = int_or(j, path, "max_iterations", s.max_iterations);
  s.max_step = number_or(j, path, "max_step_rad", s.max_step);
  return s;
}

std::optional<ScenarioMode> mode_from_string(std::string_view m) {
  if (m == "grasp") return ScenarioMode::kGrasp;
  if (m == "ramp") return ScenarioMode::kRamp;
  if (m == "margin") return ScenarioMode::kMargin;
  if (m == "validate") return ScenarioMode::kValidate;
  return std::nullopt;
}

// ---- validation -----------------------------------------------------------

std::vector<Violation> check(const Scenario& s, std::optional<ScenarioMode> mode) {
  std::vector<Violation> out;
  for (auto& v : validate(s.hand)) out.push_back({"hand." + v.field, v.rule});
  std::set<std::string> names;
  for (std::size_t i = 0; i < s.objects.size(); ++i) {
    const std::string field = "objects[" + std::to_string(i) + "]";
    for (auto& v : validate(s.objects[i], field)) out.push_back(v);
    if (s.objects[i].name.empty()) out.push_back({field + ".name", "non-empty name"});
    if (!names.insert(s.objects[i].name).second) out.push_back({field + ".name", "unique object names"});
  }
  if (s.controller) {
    for (auto& v : validate(*s.controller)) out.push_back(v);
  }
  if (!(s.solver.tolerance > 0.0)) out.push_back({"solver.tolerance", "tolerance > 0"});
  if (s.solver.max_iterations < 1) out.push_back({"solver.max_iterations", "max_iterations >= 1"});
  if (!(s.solver.max_step > 0.0)) out.push_back({"solver.max_step_rad", "max_step_rad > 0"});
  const std::size_t n_act = s.hand.actuators.size();
  if (s.grasp && !s.grasp->initial.empty() && s.grasp->initial.size() != n_act) {
    out.push_back({"grasp.initial", "one command per actuator"});
  }
  if (s.payload) {
    const PayloadScenario& p = s.payload->scenario;
    if (!(p.payload_mass >= 0.0) || !std::isfinite(p.payload_mass)) out.push_back({"payload.mass_kg", "mass_kg >= 0"});
    if (p.hands_sharing != 1 && p.hands_sharing != 2) out.push_back({"payload.hands_sharing", "1 or 2"});
    for (double m : p.ramp) {
      if (!(m >= 0.0) || !std::isfinite(m)) {
        out.push_back({"payload.ramp_kg", "masses >= 0"});
        break;
      }
    }
    const GripCalibration& c = p.calibration;
    const bool calibrated = c.mass_kg > 0.0 && c.tension_kgf > 0.0 && std::isfinite(c.mass_kg) &&
                            std::isfinite(c.tension_kgf);
    if (!calibrated) {
      out.push_back(s.payload->efficiency_given
                        ? Violation{"payload.efficiency_kg_per_kgf", "efficiency > 0"}
                        : Violation{"payload.calibration", "mass_kg > 0 and tension_kgf > 0"});
    }
  }
  if (s.ramp) {
    const bool found = std::any_of(s.objects.begin(), s.objects.end(),
                                   [&](const ObjectShape& o) { return o.name == s.ramp->object; });
    if (!found) out.push_back({"ramp.object", "names one of the objects"});
    if (s.ramp->hold.size() != n_act) out.push_back({"ramp.hold", "one command per actuator"});
    if (!(s.ramp->load_direction.norm() > 0.0)) out.push_back({"ramp.load_direction", "non-zero"});
  }

  if (mode == ScenarioMode::kGrasp && !s.controller) {
    out.push_back({"controller", "section required in grasp mode"});
  }
  if (mode == ScenarioMode::kRamp) {
    if (!s.payload) {
      out.push_back({"payload", "section required in ramp mode"});
    } else if (s.payload->scenario.ramp.empty()) {
      out.push_back({"payload.ramp_kg", "non-empty in ramp mode"});
    }
    if (!s.ramp) out.push_back({"ramp", "section required in ramp mode"});
  }
  if (mode == ScenarioMode::kMargin && !s.payload) {
    out.push_back({"payload", "section required in margin mode"});
  }
  return out;
}

std::string violation_text(const std::vector<Violation>& v) {
  std::string out;
  for (const auto& x : v) out += "config error: " + x.field + ": " + x.rule + "\n";
  return out;
}

// ---- reports --------------------------------------------------------------

std::string fixed(double v, int digits) {
  if (!std::isfinite(v)) return format_double(v);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string newtons_and_kgf(double n) { return fixed(n, 3) + " N (" + fixed(newtons_to_kgf(n), 3) + " kgf)"; }


std::string_view grasp_mode_name(GraspMode m) {
  switch (m) {
    case GraspMode::kForceTrack:
      return "force_track";
    case GraspMode::kLengthHold:
      return "length_hold";
    case GraspMode::kTensionHold:
      return "tension_hold";
  }
  return "?";
}

void header(std::ostringstream& r, const Scenario& s, std::string_view mode) {
  r << "scenario = " << s.name << "\n";
  r << "mode = " << mode << "\n";
  r << "seed = " << s.seed << "\n";
}

void run_grasp_mode(const Scenario& s, RunResult& out) {
  const GraspSection grasp = s.grasp.value_or(GraspSection{});
  GraspTrajectory traj = run_grasp(s.hand, s.objects, *s.controller, grasp.mode, grasp.initial, s.solver);
  out.csv = telemetry_csv(s.hand, telemetry(traj));
  out.csv_name = "telemetry.csv";

  std::ostringstream r;
  header(r, s, "grasp");
  r << "grasp_mode = " << grasp_mode_name(grasp.mode) << "\n";
  r << "steps = " << traj.steps.size() << "\n";
  r << "converged = " << (traj.converged ? "true" : "false") << "\n";
  if (traj.failure) r << "failure = " << *traj.failure << "\n";
  r << "saturated = " << (traj.any_saturation ? "true" : "false") << "\n";
  if (!traj.steps.empty()) {
    const GraspStep& last = traj.steps.back();
    for (std::size_t a = 0; a < last.hand.tendons.size(); ++a) {
      double peak = 0.0;
      for (const auto& st : traj.steps) peak = std::max(peak, st.hand.tendons[a].actuator_tension);
      const int id = last.hand.tendons[a].actuator_id;
      r << "actuator_" << id << "_final_tension = " << newtons_and_kgf(last.hand.tendons[a].actuator_tension) << "\n";
      r << "actuator_" << id << "_peak_tension = " << newtons_and_kgf(peak) << "\n";
      r << "actuator_" << id << "_feedback_force_N = " << fixed(last.feedback_force[a], 3) << "\n";
    }
    for (const auto& reading : last.hand.sensors) {
      if (reading.site.kind == SensorSiteKind::kFingertip) {
        r << "sensor_fingertip_" << to_string(reading.site.finger) << "_N = " << fixed(reading.force, 3) << "\n";
      } else {
        r << "sensor_palm_" << reading.site.palm_index << "_N = " << fixed(reading.force, 3) << "\n";
      }
    }
  }
  if (traj.any_saturation) {
    out.exit_code = ExitCode::kSaturated;
  } else if (!traj.converged) {
    out.exit_code = ExitCode::kNotConverged;
  }
  r << "exit_code = " << static_cast<int>(out.exit_code) << "\n";
  out.report = r.str();
  out.trajectory = std::move(traj);
}

void run_ramp_mode(const Scenario& s, RunResult& out) {
  const PayloadSection& p = *s.payload;
  RampConfig cfg;
  cfg.object = s.ramp->object;
  cfg.load_direction = s.ramp->load_direction;
  cfg.hold = s.ramp->hold;
  cfg.hands_sharing = p.scenario.hands_sharing;
  cfg.threads = s.threads;
  RampResult res = payload_ramp(s.hand, s.objects, p.scenario.ramp, cfg, s.solver);
  const auto rows = res.rows(s.hand);
  out.csv = ramp_csv(rows);
  out.csv_name = "ramp.csv";

  std::ostringstream r;
  header(r, s, "ramp");
  std::string masses;
  for (std::size_t i = 0; i < p.scenario.ramp.size(); ++i) {
    masses += (i ? ", " : "") + format_double(p.scenario.ramp[i]);
  }
  r << "masses_kg = " << masses << "\n";
  r << "hands_sharing = " << p.scenario.hands_sharing << "\n";

  const auto peaks = res.peak_tensions();
  bool all_converged = true;
  bool saturated = false;
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < res.points.size(); ++i) {
    const RampPoint& pt = res.points[i];
    all_converged = all_converged && pt.converged;
    if (pt.state) saturated = saturated || pt.state->saturated;
    r << "mass " << format_double(pt.mass) << " kg: peak " << newtons_and_kgf(peaks[i])
      << (pt.converged ? "" : ", not converged") << (pt.state && pt.state->saturated ? ", saturated" : "");
    if (pt.failure) r << " (" << *pt.failure << ")";
    r << "\n";
    if (std::isfinite(peaks[i])) {
      xs.push_back(pt.mass);
      ys.push_back(newtons_to_kgf(peaks[i]));
    }
  }
  if (!peaks.empty()) r << "final_peak_tension = " << newtons_and_kgf(peaks.back()) << "\n";
  const bool monotone = non_decreasing(peaks);
  r << "monotone = " << (monotone ? "true" : "false") << "\n";
  if (xs.size() >= 2) {
    const LinearFit fit = fit_line(xs, ys);
    r << "fit_slope_kgf_per_kg = " << fixed(fit.slope, 4) << "\n";
    r << "fit_intercept_kgf = " << fixed(fit.intercept, 4) << "\n";
    r << "fit_r_squared = " << fixed(fit.r_squared, 5) << "\n";
  }
  const GripCalibration& cal = p.scenario.calibration;
  r << "efficiency_kg_per_kgf = " << fixed(cal.efficiency(), 4) << "\n";
  if (!p.scenario.ramp.empty()) {
    const double m = p.scenario.ramp.back();
    r << "linear_model_tension_at_final_mass_kgf = "
      << fixed(required_tension(m, p.scenario.hands_sharing, cal), 3) << "\n";
  }
  r << "converged = " << (all_converged ? "true" : "false") << "\n";
  r << "saturated = " << (saturated ? "true" : "false") << "\n";
  if (saturated) {
    out.exit_code = ExitCode::kSaturated;
  } else if (!all_converged) {
    out.exit_code = ExitCode::kNotConverged;
  }
  r << "exit_code = " << static_cast<int>(out.exit_code) << "\n";
  out.report = r.str();
  out.ramp = std::move(res);
}

void run_margin_mode(const Scenario& s, RunResult& out) {
  const PayloadScenario& p = s.payload->scenario;
  MarginReport m = margin_report(s.hand, p);

  std::ostringstream r;
  header(r, s, "margin");
  r << "efficiency_kg_per_kgf = " << fixed(m.efficiency, 4) << "\n";
  r << "payload_kg = " << format_double(p.payload_mass) << "\n";
  r << "hands_sharing = " << p.hands_sharing << "\n";
  r << "share_per_hand_kg = " << fixed(m.share_mass, 1) << "\n";
  r << "required_tension_per_hand = " << newtons_and_kgf(m.required_n) << "\n";
  for (const auto& a : m.actuators) {
    r << "actuator_" << a.actuator_id << ": required " << fixed(a.required_kgf, 3) << " kgf of "
      << fixed(a.max_kgf, 3) << " kgf\n";
  }
  r << "capacity_per_hand_kg = " << fixed(m.capacity_mass, 1) << ", " << (m.pass ? "pass" : "fail") << "\n";
  r << "margin_ratio = " << fixed(m.margin_ratio, 3) << "\n";
  // Observed dangling peak against the even-sharing prediction: the mass the
  // observed tension would carry shows how unevenly the hands shared.
  r << "observed_dangling_peak_kgf = " << fixed(kDanglingPeakTensionKgf, 1) << "\n";
  r << "observed_peak_carries_kg = " << fixed(capacity_mass(p.calibration, kgf_to_newtons(kDanglingPeakTensionKgf)), 1) << "\n";
  out.report = r.str();
  out.margin = std::move(m);
}

void run_calibrate(const Scenario& s, RunResult& out) {
  const PayloadSection p = s.payload.value_or(PayloadSection{});
  const GripCalibration& cal = p.scenario.calibration;
  std::ostringstream r;
  header(r, s, "calibrate");
  if (!p.efficiency_given) {
    r << "calibration_mass_kg = " << format_double(cal.mass_kg) << "\n";
    r << "calibration_tension_kgf = " << format_double(cal.tension_kgf) << "\n";
  }
  r << "efficiency_kg_per_kgf = " << format_double(calibrate_efficiency(cal.mass_kg, cal.tension_kgf)) << "\n";
  if (!p.efficiency_given) {
    r << "predicted_tension_at_calibration_kgf = " << format_double(required_tension(cal.mass_kg, 1, cal))
      << "\n";
  }
  for (const auto& a : s.hand.actuators) {
    r << "actuator_" << a.id << "_capacity_kg = " << fixed(capacity_mass(cal, a.max_tension), 1) << "\n";
  }
  if (s.payload) {
    r << "required_tension_for_payload_kgf = "
      << fixed(required_tension(p.scenario.payload_mass, p.scenario.hands_sharing, cal), 3) << "\n";
  }
  out.report = r.str();
}

}  // namespace

std::string_view to_string(ScenarioMode mode) {
  switch (mode) {
    case ScenarioMode::kGrasp:
      return "grasp";
    case ScenarioMode::kRamp:
      return "ramp";
    case ScenarioMode::kMargin:
      return "margin";
    case ScenarioMode::kValidate:
      return "validate";
  }
  return "?";
}

std::string hand_to_json(const HandSpec& spec) { return hand_json(spec).dump(2) + "\n"; }

HandSpec hand_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  return parse_hand(j, "hand");
}

Scenario parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  allow_only(j, "", {"schema_version", "name", "mode", "seed", "hand", "objects", "controller", "grasp", "payload",
                     "ramp", "solver"});
  const long long version = integer(require(j, "", "schema_version"), "schema_version");
  if (version != kSchemaVersion) {
    throw ConfigError("schema_version: expected " + std::to_string(kSchemaVersion) + ", got " +
                      std::to_string(version));
  }
  Scenario s;
  s.name = j.contains("name") ? text(j.at("name"), "name") : "scenario";
  const std::string mode = text(require(j, "", "mode"), "mode");
  const auto m = mode_from_string(mode);
  if (!m) throw ConfigError("mode: expected grasp, ramp, margin or validate, got '" + mode + "'");
  s.mode = *m;
  if (j.contains("seed")) {
    const json& seed = j.at("seed");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
      throw ConfigError("seed: expected a non-negative integer");
    }
    s.seed = seed.get<std::uint64_t>();
  }
  s.hand = j.contains("hand") ? parse_hand(j.at("hand"), "hand") : default_hand();
  if (j.contains("objects")) {
    const json& objs = array(j.at("objects"), "objects");
    for (std::size_t i = 0; i < objs.size(); ++i) s.objects.push_back(parse_object(objs[i], item("objects", i)));
  }
  if (j.contains("controller")) s.controller = parse_controller(j.at("controller"), "controller");
  if (j.contains("grasp")) s.grasp = parse_grasp(j.at("grasp"), "grasp");
  if (j.contains("payload")) s.payload = parse_payload(j.at("payload"), "payload", s.hand);
  if (j.contains("ramp")) s.ramp = parse_ramp(j.at("ramp"), "ramp");
  if (j.contains("solver")) s.solver = parse_solver(j.at("solver"), "solver");
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read scenario file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::vector<Violation> validate(const Scenario& scenario) { return check(scenario, scenario.mode); }

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("fit_line needs two or more points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("fit_line needs two distinct x values");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

RunResult run_scenario(const Scenario& scenario, RunKind kind) {
  RunResult out;
  std::optional<ScenarioMode> mode;
  switch (kind) {
    case RunKind::kDeclared:
      mode = scenario.mode;
      break;
    case RunKind::kGrasp:
      mode = ScenarioMode::kGrasp;
      break;
    case RunKind::kRamp:
      mode = ScenarioMode::kRamp;
      break;
    case RunKind::kMargin:
      mode = ScenarioMode::kMargin;
      break;
    case RunKind::kValidate:
      mode = ScenarioMode::kValidate;
      break;
    case RunKind::kCalibrate:
      break;
  }
  const auto violations = check(scenario, mode);
  if (!violations.empty()) {
    out.exit_code = ExitCode::kConfigError;
    out.report = violation_text(violations);
    return out;
  }
  try {
    if (kind == RunKind::kCalibrate) {
      run_calibrate(scenario, out);
      return out;
    }
    switch (*mode) {
      case ScenarioMode::kGrasp:
        run_grasp_mode(scenario, out);
        break;
      case ScenarioMode::kRamp:
        run_ramp_mode(scenario, out);
        break;
      case ScenarioMode::kMargin:
        run_margin_mode(scenario, out);
        break;
      case ScenarioMode::kValidate: {
        std::ostringstream r;
        header(r, scenario, "validate");
        r << "valid = true\n";
        out.report = r.str();
        break;
      }
    }
  } catch (const SolverError& e) {
    out.exit_code = ExitCode::kNotConverged;
    out.report += std::string("solver error: ") + e.what() + "\n";
  } catch (const std::invalid_argument& e) {
    out.exit_code = ExitCode::kConfigError;
    out.report += std::string("config error: ") + e.what() + "\n";
  } catch (const std::domain_error& e) {
    out.exit_code = ExitCode::kConfigError;
    out.report += std::string("config error: ") + e.what() + "\n";
  } catch (const InfeasibleRoutingError& e) {
    out.exit_code = ExitCode::kConfigError;
    out.report += std::string("config error: ") + e.what() + "\n";
  }
  return out;
}

}  // namespace tendon_hand
