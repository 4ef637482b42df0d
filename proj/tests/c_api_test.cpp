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


// Exercises the library through its C header only.

#include <cmath>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "tendon_hand/tendon_hand.h"

namespace {

const std::string kScenarios = TENDON_HAND_SCENARIO_DIR;

}  // namespace

TEST_CASE("version and error text") {
  CHECK(std::string(th_version()).size() > 0);
  th_hand* hand = nullptr;
  CHECK(th_hand_from_json("{", &hand) == TH_CONFIG_ERROR);
  CHECK(hand == nullptr);
  CHECK(std::string(th_last_error()).size() > 0);
}

TEST_CASE("hand json round trip and validation") {
  th_hand* hand = nullptr;
  REQUIRE(th_hand_default(&hand) == TH_OK);
  CHECK(th_hand_actuator_count(hand) == 3);
  const char* text = nullptr;
  REQUIRE(th_hand_to_json(hand, &text) == TH_OK);
  th_hand* copy = nullptr;
  REQUIRE(th_hand_from_json(text, &copy) == TH_OK);
  const char* text2 = nullptr;
  REQUIRE(th_hand_to_json(copy, &text2) == TH_OK);
  CHECK(std::string(text) == std::string(text2));
  size_t violations = 99;
  CHECK(th_hand_validate(hand, &violations) == TH_OK);
  CHECK(violations == 0);

  nlohmann::json j = nlohmann::json::parse(text);
  j["fingers"][0]["joints"][0]["compliance_deg_per_nm"] = -1.0;
  th_hand* bad = nullptr;
  REQUIRE(th_hand_from_json(j.dump().c_str(), &bad) == TH_OK);
  CHECK(th_hand_validate(bad, &violations) == TH_CONFIG_ERROR);
  CHECK(violations >= 1);
  CHECK(std::string(th_last_error()).find("compliance") != std::string::npos);
  th_hand_free(bad);
  th_hand_free(copy);
  th_hand_free(hand);
}

TEST_CASE("free fingers bend by r T / kappa") {
  th_hand* hand = nullptr;
  REQUIRE(th_hand_default(&hand) == TH_OK);
  const char* text = nullptr;
  REQUIRE(th_hand_to_json(hand, &text) == TH_OK);
  const nlohmann::json j = nlohmann::json::parse(text);

  const double tensions[3] = {2.0, 3.0, 1.0};
  double angles[15] = {};
  REQUIRE(th_hand_solve_tensions(hand, tensions, 3, angles, 15) == TH_OK);
  // Each movable pulley halves its wire tension between two free fingers.
  const double per_finger[5] = {2.0, 1.5, 1.5, 0.5, 0.5};
  for (int f = 0; f < 5; ++f) {
    for (int i = 0; i < 3; ++i) {
      const auto& joint = j["fingers"][f]["joints"][i];
      const double kappa = oracle::kappa_from_compliance(joint["compliance_deg_per_nm"].get<double>());
      const double expected = joint["moment_arm_m"].get<double>() * per_finger[f] / kappa;
      CHECK(angles[3 * f + i] == doctest::Approx(expected).epsilon(1e-6));
    }
  }
  th_hand_free(hand);
}

TEST_CASE("invalid arguments are reported, not crashed on") {
  th_hand* hand = nullptr;
  REQUIRE(th_hand_default(&hand) == TH_OK);
  double angles[15] = {};
  const double two[2] = {1.0, 1.0};
  CHECK(th_hand_solve_tensions(hand, two, 2, angles, 15) == TH_INVALID_ARGUMENT);
  const double three[3] = {1.0, 1.0, 1.0};
  CHECK(th_hand_solve_tensions(hand, three, 3, angles, 4) == TH_INVALID_ARGUMENT);
  CHECK(th_hand_solve_tensions(nullptr, three, 3, angles, 15) == TH_INVALID_ARGUMENT);
  const double negative[3] = {-1.0, 0.0, 0.0};
  CHECK(th_hand_solve_tensions(hand, negative, 3, angles, 15) != TH_OK);
  CHECK(th_hand_default(nullptr) == TH_INVALID_ARGUMENT);
  CHECK(th_scenario_load_json(nullptr, nullptr) == TH_INVALID_ARGUMENT);
  th_hand_free(hand);
  th_hand_free(nullptr);
  th_scenario_free(nullptr);
  th_result_free(nullptr);
}

TEST_CASE("scenario without a controller is a config error") {
  th_scenario* s = nullptr;
  REQUIRE(th_scenario_load_json(
              R"({"schema_version": 1, "name": "bare", "mode": "grasp", "hand": "default", "objects": []})", &s) ==
          TH_OK);
  CHECK(std::string(th_scenario_mode(s)) == "grasp");
  CHECK(std::string(th_scenario_name(s)) == "bare");
  th_result* r = nullptr;
  CHECK(th_scenario_run(s, TH_RUN_DECLARED, &r) == TH_CONFIG_ERROR);
  REQUIRE(r != nullptr);
  CHECK(th_result_status(r) == TH_CONFIG_ERROR);
  CHECK(std::string(th_result_report(r)).find("controller") != std::string::npos);
  th_result_free(r);
  th_scenario_free(s);
}

TEST_CASE("margin scenario through the C interface") {
  th_scenario* s = nullptr;
  REQUIRE(th_scenario_load_file((kScenarios + "/margin.json").c_str(), &s) == TH_OK);
  CHECK(th_scenario_set_threads(s, 0) == TH_INVALID_ARGUMENT);
  CHECK(th_scenario_set_threads(s, 2) == TH_OK);
  th_result* r = nullptr;
  REQUIRE(th_scenario_run(s, TH_RUN_DECLARED, &r) == TH_OK);
  CHECK(std::string(th_result_report(r)).find("capacity_per_hand_kg = 62.0, pass") != std::string::npos);
  CHECK(std::string(th_result_csv(r)).empty());
  th_result_free(r);
  th_scenario_free(s);
  CHECK(th_scenario_load_file((kScenarios + "/absent.json").c_str(), &s) == TH_CONFIG_ERROR);
}

TEST_CASE("payload arithmetic") {
  double eta = 0.0;
  REQUIRE(th_calibrate_efficiency(37.2, 30.0, &eta) == TH_OK);
  CHECK(eta == doctest::Approx(1.24));
  double kgf = 0.0;
  REQUIRE(th_required_tension_kgf(56.4, 2, eta, &kgf) == TH_OK);
  CHECK(kgf == doctest::Approx(28.2 / 1.24));
  CHECK(th_calibrate_efficiency(0.0, 30.0, &eta) != TH_OK);
  CHECK(th_required_tension_kgf(56.4, 0, 1.24, &kgf) != TH_OK);
  CHECK(th_required_tension_kgf(56.4, 1, 1.24, nullptr) == TH_INVALID_ARGUMENT);
}
