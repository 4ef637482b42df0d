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


/* C interface to the tendon hand simulator.
 *
 * Objects are opaque handles released with their *_free function. Every call
 * returns a th_status; on failure th_last_error() describes the problem for
 * the calling thread until its next call into the library. Strings returned
 * through handles stay valid until that handle is freed. */

#ifndef TENDON_HAND_TENDON_HAND_H_
#define TENDON_HAND_TENDON_HAND_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TH_API __declspec(dllexport)
#else
#define TH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* The first four values double as CLI exit codes. */
typedef enum th_status {
  TH_OK = 0,
  TH_CONFIG_ERROR = 1,
  TH_NOT_CONVERGED = 2,
  TH_SATURATED = 3,
  TH_INVALID_ARGUMENT = 4,
  TH_INTERNAL_ERROR = 5
} th_status;

typedef enum th_run_kind {
  TH_RUN_DECLARED = 0,
  TH_RUN_GRASP = 1,
  TH_RUN_RAMP = 2,
  TH_RUN_MARGIN = 3,
  TH_RUN_CALIBRATE = 4,
  TH_RUN_VALIDATE = 5
} th_run_kind;

typedef struct th_hand th_hand;
typedef struct th_scenario th_scenario;
typedef struct th_result th_result;

TH_API const char* th_version(void);
TH_API const char* th_last_error(void);

/* ---- hand descriptions ---- */
TH_API th_status th_hand_default(th_hand** out);
TH_API th_status th_hand_from_json(const char* json, th_hand** out);
/* JSON text owned by the hand. */
TH_API th_status th_hand_to_json(th_hand* hand, const char** out);
/* TH_CONFIG_ERROR with the violations in th_last_error() when invalid. */
TH_API th_status th_hand_validate(const th_hand* hand, size_t* violation_count);
TH_API size_t th_hand_actuator_count(const th_hand* hand);
/* Free-space equilibrium under actuator tensions (N, actuator order).
 * angles receives 15 values, finger-major thumb..little. */
TH_API th_status th_hand_solve_tensions(const th_hand* hand, const double* tensions, size_t n_tensions,
                                        double* angles, size_t n_angles);
TH_API void th_hand_free(th_hand* hand);

/* ---- scenarios ---- */
TH_API th_status th_scenario_load_file(const char* path, th_scenario** out);
TH_API th_status th_scenario_load_json(const char* json, th_scenario** out);
TH_API th_status th_scenario_set_seed(th_scenario* scenario, uint64_t seed);
TH_API th_status th_scenario_set_tolerance(th_scenario* scenario, double tolerance);
TH_API th_status th_scenario_set_max_steps(th_scenario* scenario, int max_steps);
TH_API th_status th_scenario_set_threads(th_scenario* scenario, int threads);
TH_API const char* th_scenario_mode(const th_scenario* scenario);
TH_API const char* th_scenario_name(const th_scenario* scenario);
/* Returns the run's exit status; *out is set whenever a result exists, also
 * for TH_CONFIG_ERROR, TH_NOT_CONVERGED and TH_SATURATED. */
TH_API th_status th_scenario_run(const th_scenario* scenario, th_run_kind kind, th_result** out);
TH_API void th_scenario_free(th_scenario* scenario);

/* ---- results ---- */
TH_API th_status th_result_status(const th_result* result);
TH_API const char* th_result_report(const th_result* result);
/* Empty string when the run writes no CSV. */
TH_API const char* th_result_csv(const th_result* result);
TH_API const char* th_result_csv_name(const th_result* result);
TH_API void th_result_free(th_result* result);

/* ---- payload arithmetic ---- */
TH_API th_status th_calibrate_efficiency(double mass_kg, double tension_kgf, double* efficiency);
TH_API th_status th_required_tension_kgf(double mass_kg, int hands_sharing, double efficiency,
                                         double* tension_kgf);

#ifdef __cplusplus
}
#endif

#endif /* TENDON_HAND_TENDON_HAND_H_ */
