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

#include "tendon_hand/hand_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tendon_hand/errors.hpp"

namespace tendon_hand {

namespace {

constexpr std::array<std::string_view, 5> kFingerNames = {"thumb", "index", "middle",
                                                          "ring", "little"};

struct FingerDefaults {
  FingerId id;
  std::array<double, 3> compliance;  // deg/Nm
  std::array<double, 3> link_length;  // m
  Pose2 base;
};

// Measured machined-spring compliances. Link lengths put the middle finger at
// 85 mm so that palm + middle finger spans 165 mm.
constexpr std::array<FingerDefaults, 5> kFingerDefaults = {{
    {FingerId::kThumb, {664.0, 443.0, 443.0}, {0.032, 0.028, 0.024}, {-0.045, 0.0, 0.0}},
    {FingerId::kIndex, {863.0, 664.0, 443.0}, {0.037, 0.023, 0.019}, {}},
    {FingerId::kMiddle, {903.0, 707.0, 443.0}, {0.040, 0.025, 0.020}, {}},
    {FingerId::kRing, {863.0, 664.0, 443.0}, {0.037, 0.024, 0.019}, {}},
    {FingerId::kLittle, {707.0, 664.0, 443.0}, {0.030, 0.019, 0.017}, {}},
}};

constexpr std::array<double, 3> kMomentArms = {0.010, 0.008, 0.006};

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

std::string finger_field(const FingerSpec& f) {
  return "fingers[" + std::string(to_string(f.name)) + "]";
}

}  // namespace

std::string_view to_string(FingerId finger) {
  return kFingerNames[static_cast<std::size_t>(finger)];
}

std::optional<FingerId> finger_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kFingerNames.size(); ++i) {
    if (kFingerNames[i] == name) return static_cast<FingerId>(i);
  }
  return std::nullopt;
}

HandSpec default_hand() {
  HandSpec spec;
  for (const auto& d : kFingerDefaults) {
    FingerSpec f;
    f.name = d.id;
    f.base_pose = d.base;
    for (int j = 0; j < kJointsPerFinger; ++j) {
      JointSpec joint;
      joint.compliance_deg_per_nm = d.compliance[j];
      joint.moment_arm = kMomentArms[j];
      joint.link_length = d.link_length[j];
      f.joints.push_back(joint);
    }
    spec.fingers.push_back(std::move(f));
  }

  spec.actuators = {
      {0, kDefaultMaxTensionN, {FingerId::kThumb}, Coupling::kDirect},
      {1, kDefaultMaxTensionN, {FingerId::kIndex, FingerId::kMiddle}, Coupling::kMovablePulley},
      {2, kDefaultMaxTensionN, {FingerId::kRing, FingerId::kLittle}, Coupling::kMovablePulley},
  };

  for (FingerId id : kAllFingers) {
    SensorSite site;
    site.kind = SensorSiteKind::kFingertip;
    site.finger = id;
    spec.sensor_layout.push_back(site);
  }
  // Palm sites on a uniform line across the palm plate.
  for (int i = 0; i < kPalmSensorCount; ++i) {
    SensorSite site;
    site.kind = SensorSiteKind::kPalm;
    site.palm_index = i;
    site.position = Vec2(-spec.palm_length * (0.1 + 0.2 * i), 0.0);
    spec.sensor_layout.push_back(site);
  }
  return spec;
}

double stiffness(const JointSpec& joint) {
  if (!(joint.compliance_deg_per_nm > 0.0) || !std::isfinite(joint.compliance_deg_per_nm)) {
    throw InvalidSpecError("joint compliance must be positive, got " +
                           std::to_string(joint.compliance_deg_per_nm));
  }
  return 1.0 / deg_to_rad(joint.compliance_deg_per_nm);
}

std::vector<Violation> validate(const HandSpec& spec) {
  std::vector<Violation> out;
  auto add = [&out](std::string field, std::string rule) {
    out.push_back({std::move(field), std::move(rule)});
  };

  if (spec.fingers.size() != kAllFingers.size()) {
    add("fingers", "finger count != 5");
  }
  std::array<int, 5> finger_seen{};
  for (const auto& f : spec.fingers) {
    const std::string base = finger_field(f);
    ++finger_seen[static_cast<std::size_t>(f.name)];
    if (!std::isfinite(f.base_pose.x) || !std::isfinite(f.base_pose.y) ||
        !std::isfinite(f.base_pose.theta)) {
      add(base + ".base_pose", "non-finite pose");
    }
    if (f.joints.size() != static_cast<std::size_t>(kJointsPerFinger)) {
      add(base + ".joints", "joint count != 3");
    }
    for (std::size_t j = 0; j < f.joints.size(); ++j) {
      const JointSpec& joint = f.joints[j];
      const std::string jf = base + ".joints[" + std::to_string(j) + "]";
      if (!finite_positive(joint.compliance_deg_per_nm)) add(jf + ".compliance", "compliance > 0");
      if (!finite_positive(joint.moment_arm)) add(jf + ".moment_arm", "moment_arm > 0");
      if (!finite_positive(joint.link_length)) add(jf + ".link_length", "link_length > 0");
      if (!(joint.limits.min <= joint.rest_angle && joint.rest_angle <= joint.limits.max)) {
        add(jf + ".rest_angle", "limits.min <= rest_angle <= limits.max");
      }
      if (j > 0 && f.joints[j].compliance_deg_per_nm > f.joints[j - 1].compliance_deg_per_nm) {
        add(jf + ".compliance", "compliance ordering");
      }
    }
  }
  for (FingerId id : kAllFingers) {
    if (finger_seen[static_cast<std::size_t>(id)] > 1) {
      add("fingers[" + std::string(to_string(id)) + "]", "duplicate finger");
    }
  }

  std::array<int, 5> driven_count{};
  for (std::size_t a = 0; a < spec.actuators.size(); ++a) {
    const ActuatorSpec& act = spec.actuators[a];
    const std::string af = "actuators[" + std::to_string(a) + "]";
    if (!finite_positive(act.max_tension)) add(af + ".max_tension", "max_tension > 0");
    if (act.driven_fingers.empty() || act.driven_fingers.size() > 2) {
      add(af + ".driven_fingers", "1 or 2 driven fingers");
    }
    const bool pair = act.driven_fingers.size() == 2;
    if (pair != (act.coupling == Coupling::kMovablePulley)) {
      add(af + ".coupling", "movable_pulley iff two driven fingers");
    }
    for (FingerId id : act.driven_fingers) ++driven_count[static_cast<std::size_t>(id)];
  }
  for (FingerId id : kAllFingers) {
    if (driven_count[static_cast<std::size_t>(id)] != 1) {
      add("actuators", "finger " + std::string(to_string(id)) + " driven by exactly one actuator");
    }
  }

  if (spec.sensor_layout.size() != static_cast<std::size_t>(kSensorCount)) {
    add("sensor_layout", "sensor count != 10");
  }
  std::array<int, 5> tip_seen{};
  std::array<int, kPalmSensorCount> palm_seen{};
  for (const auto& s : spec.sensor_layout) {
    if (s.kind == SensorSiteKind::kFingertip) {
      ++tip_seen[static_cast<std::size_t>(s.finger)];
    } else if (s.palm_index >= 0 && s.palm_index < kPalmSensorCount) {
      ++palm_seen[static_cast<std::size_t>(s.palm_index)];
    } else {
      add("sensor_layout", "palm index out of range 0..4");
    }
  }
  if (std::any_of(tip_seen.begin(), tip_seen.end(), [](int c) { return c != 1; }) ||
      std::any_of(palm_seen.begin(), palm_seen.end(), [](int c) { return c != 1; })) {
    add("sensor_layout", "one fingertip site per finger and palm sites 0..4");
  }

  if (!finite_positive(spec.sensor_max)) add("sensor_max", "sensor_max > 0");
  if (!finite_positive(spec.gravity)) add("gravity", "gravity > 0");
  if (!finite_positive(spec.robot_mass)) add("robot_mass", "robot_mass > 0");
  if (!finite_positive(spec.palm_length)) add("palm_length", "palm_length > 0");
  return out;
}

void require_valid(const HandSpec& spec) {
  const auto violations = validate(spec);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid hand spec:";
  for (const auto& v : violations) msg << ' ' << v.field << " (" << v.rule << ");";
  throw InvalidSpecError(msg.str());
}

const FingerSpec& finger(const HandSpec& spec, FingerId id) {
  for (const auto& f : spec.fingers) {
    if (f.name == id) return f;
  }
  throw InvalidSpecError("hand spec has no finger '" + std::string(to_string(id)) + "'");
}

const ActuatorSpec& actuator_for(const HandSpec& spec, FingerId id) {
  for (const auto& a : spec.actuators) {
    if (std::find(a.driven_fingers.begin(), a.driven_fingers.end(), id) != a.driven_fingers.end()) {
      return a;
    }
  }
  throw InvalidSpecError("no actuator drives finger '" + std::string(to_string(id)) + "'");
}

int sensor_index(const HandSpec& spec, FingerId fingertip) {
  for (std::size_t i = 0; i < spec.sensor_layout.size(); ++i) {
    const auto& s = spec.sensor_layout[i];
    if (s.kind == SensorSiteKind::kFingertip && s.finger == fingertip) return static_cast<int>(i);
  }
  throw InvalidSpecError("no fingertip sensor on '" + std::string(to_string(fingertip)) + "'");
}

}  // namespace tendon_hand
