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


#include "tendon_hand/tendon_hand.h"

#include <exception>
#include <new>
#include <string>

#include "tendon_hand/scenario.hpp"

struct th_hand {
  tendon_hand::HandSpec spec;
  std::string json;
};

struct th_scenario {
  tendon_hand::Scenario scenario;
  std::string mode;
};

struct th_result {
  tendon_hand::RunResult result;
};

namespace {

thread_local std::string g_last_error;

th_status fail(th_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Maps exceptions escaping the C++ core onto status codes.
template <typename F>
th_status guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const tendon_hand::ConfigError& e) {
    return fail(TH_CONFIG_ERROR, e.what());
  } catch (const tendon_hand::InvalidSpecError& e) {
    return fail(TH_CONFIG_ERROR, e.what());
  } catch (const tendon_hand::SolverError& e) {
    return fail(TH_NOT_CONVERGED, e.what());
  } catch (const tendon_hand::DomainError& e) {
    return fail(TH_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(TH_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(TH_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(TH_INTERNAL_ERROR, "unknown error");
  }
}

}  // namespace

extern "C" {

const char* th_version(void) { return "1.0.0"; }

const char* th_last_error(void) { return g_last_error.c_str(); }

th_status th_hand_default(th_hand** out) {
  if (!out) return fail(TH_INVALID_ARGUMENT, "out is null");
  return guarded([&] {
    *out = new th_hand{tendon_hand::default_hand(), {}};
    return TH_OK;
  });
}

th_status th_hand_from_json(const char* json, th_hand** out) {
  if (!json || !out) return fail(TH_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new th_hand{tendon_hand::hand_from_json(json), {}};
    return TH_OK;
  });
}

th_status th_hand_to_json(th_hand* hand, const char** out) {
  if (!hand || !out) return fail(TH_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    hand->json = tendon_hand::hand_to_json(hand->spec);
    *out = hand->json.c_str();
    return TH_OK;
  });
}

th_status th_hand_validate(const th_hand* hand, size_t* violation_count) {
  if (!hand) return fail(TH_INVALID_ARGUMENT, "hand is null");
  return guarded([&] {
    const auto v = tendon_hand::validate(hand->spec);
    if (violation_count) *violation_count = v.size();
    if (v.empty()) return TH_OK;
    std::string msg;
    for (const auto& x : v) msg += x.field + ": " + x.rule + "\n";
    return fail(TH_CONFIG_ERROR, msg);
  });
}

size_t th_hand_actuator_count(const th_hand* hand) { return hand ? hand->spec.actuators.size() : 0; }

th_status th_hand_solve_tensions(const th_hand* hand, const double* tensions, size_t n_tensions, double* angles,
                                 size_t n_angles) {
  if (!hand || !tensions || !angles) return fail(TH_INVALID_ARGUMENT, "null argument");
  if (n_tensions != hand->spec.actuators.size()) {
    return fail(TH_INVALID_ARGUMENT, "expected " + std::to_string(hand->spec.actuators.size()) + " tensions");
  }
  const size_t n_out = tendon_hand::kAllFingers.size() * tendon_hand::kJointsPerFinger;
  if (n_angles < n_out) return fail(TH_INVALID_ARGUMENT, "angles needs room for 15 values");
  return guarded([&] {
    std::vector<tendon_hand::ActuatorCommand> cmds;
    for (size_t i = 0; i < n_tensions; ++i) cmds.push_back({tendon_hand::CommandKind::kTension, tensions[i]});
    const auto state = tendon_hand::solve_hand(hand->spec, cmds, {});
    size_t k = 0;
    for (tendon_hand::FingerId id : tendon_hand::kAllFingers) {
      for (const auto& f : state.fingers) {
        if (f.finger != id) continue;
        for (int j = 0; j < tendon_hand::kJointsPerFinger; ++j) angles[k + j] = f.angles[j];
      }
      k += tendon_hand::kJointsPerFinger;
    }
    if (state.saturated) return fail(TH_SATURATED, "actuator tension clamped at its limit");
    return TH_OK;
  });
}

void th_hand_free(th_hand* hand) { delete hand; }

th_status th_scenario_load_file(const char* path, th_scenario** out) {
  if (!path || !out) return fail(TH_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto s = tendon_hand::load_scenario(path);
    const std::string mode(tendon_hand::to_string(s.mode));
    *out = new th_scenario{std::move(s), mode};
    return TH_OK;
  });
}

th_status th_scenario_load_json(const char* json, th_scenario** out) {
  if (!json || !out) return fail(TH_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto s = tendon_hand::parse_scenario(json);
    const std::string mode(tendon_hand::to_string(s.mode));
    *out = new th_scenario{std::move(s), mode};
    return TH_OK;
  });
}

th_status th_scenario_set_seed(th_scenario* scenario, uint64_t seed) {
  if (!scenario) return fail(TH_INVALID_ARGUMENT, "scenario is null");
  scenario->scenario.seed = seed;
  return TH_OK;
}

th_status th_scenario_set_tolerance(th_scenario* scenario, double tolerance) {
  if (!scenario) return fail(TH_INVALID_ARGUMENT, "scenario is null");
  if (!(tolerance > 0.0)) return fail(TH_INVALID_ARGUMENT, "tolerance must be > 0");
  scenario->scenario.solver.tolerance = tolerance;
  return TH_OK;
}

th_status th_scenario_set_max_steps(th_scenario* scenario, int max_steps) {
  if (!scenario) return fail(TH_INVALID_ARGUMENT, "scenario is null");
  if (max_steps < 0) return fail(TH_INVALID_ARGUMENT, "max_steps must be >= 0");
  if (!scenario->scenario.controller) {
    return fail(TH_CONFIG_ERROR, "controller: section needed to set max_steps");
  }
  scenario->scenario.controller->max_steps = max_steps;
  return TH_OK;
}

th_status th_scenario_set_threads(th_scenario* scenario, int threads) {
  if (!scenario) return fail(TH_INVALID_ARGUMENT, "scenario is null");
  if (threads < 1) return fail(TH_INVALID_ARGUMENT, "threads must be >= 1");
  scenario->scenario.threads = threads;
  return TH_OK;
}

const char* th_scenario_mode(const th_scenario* scenario) { return scenario ? scenario->mode.c_str() : ""; }

const char* th_scenario_name(const th_scenario* scenario) {
  return scenario ? scenario->scenario.name.c_str() : "";
}

th_status th_scenario_run(const th_scenario* scenario, th_run_kind kind, th_result** out) {
  if (!scenario || !out) return fail(TH_INVALID_ARGUMENT, "null argument");
  tendon_hand::RunKind k;
  switch (kind) {
    case TH_RUN_DECLARED:
      k = tendon_hand::RunKind::kDeclared;
      break;
    case TH_RUN_GRASP:
      k = tendon_hand::RunKind::kGrasp;
      break;
    case TH_RUN_RAMP:
      k = tendon_hand::RunKind::kRamp;
      break;
    case TH_RUN_MARGIN:
      k = tendon_hand::RunKind::kMargin;
      break;
    case TH_RUN_CALIBRATE:
      k = tendon_hand::RunKind::kCalibrate;
      break;
    case TH_RUN_VALIDATE:
      k = tendon_hand::RunKind::kValidate;
      break;
    default:
      return fail(TH_INVALID_ARGUMENT, "unknown run kind");
  }
  return guarded([&] {
    *out = new th_result{tendon_hand::run_scenario(scenario->scenario, k)};
    const auto status = static_cast<th_status>((*out)->result.exit_code);
    if (status != TH_OK) g_last_error = (*out)->result.report;
    return status;
  });
}

void th_scenario_free(th_scenario* scenario) { delete scenario; }

th_status th_result_status(const th_result* result) {
  return result ? static_cast<th_status>(result->result.exit_code) : TH_INVALID_ARGUMENT;
}

const char* th_result_report(const th_result* result) { return result ? result->result.report.c_str() : ""; }

const char* th_result_csv(const th_result* result) { return result ? result->result.csv.c_str() : ""; }

const char* th_result_csv_name(const th_result* result) {
  return result ? result->result.csv_name.c_str() : "";
}

void th_result_free(th_result* result) { delete result; }

th_status th_calibrate_efficiency(double mass_kg, double tension_kgf, double* efficiency) {
  if (!efficiency) return fail(TH_INVALID_ARGUMENT, "efficiency is null");
  return guarded([&] {
    *efficiency = tendon_hand::calibrate_efficiency(mass_kg, tension_kgf);
    return TH_OK;
  });
}

th_status th_required_tension_kgf(double mass_kg, int hands_sharing, double efficiency, double* tension_kgf) {
  if (!tension_kgf) return fail(TH_INVALID_ARGUMENT, "tension_kgf is null");
  return guarded([&] {
    *tension_kgf = tendon_hand::required_tension(mass_kg, hands_sharing, efficiency);
    return TH_OK;
  });
}

}  // extern "C"
