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


// tendon_sim: runs one scenario file through the C interface.
//
//   tendon_sim validate|simulate|ramp|margin|calibrate SCENARIO.json
//       [--out DIR] [--seed N] [--tol X] [--max-steps N] [--quiet]
//
// Exit codes: 0 ok, 1 configuration or I/O error, 2 solver non-convergence,
// 3 actuator saturation. TENDON_SIM_THREADS caps ramp parallelism.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "tendon_hand/tendon_hand.h"

namespace {

struct ScenarioDeleter {
  void operator()(th_scenario* s) const { th_scenario_free(s); }
};
struct ResultDeleter {
  void operator()(th_result* r) const { th_result_free(r); }
};

int thread_cap() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("TENDON_SIM_THREADS");
  if (!env || !*env) return static_cast<int>(hw);
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) {
    std::cerr << "warning: ignoring TENDON_SIM_THREADS='" << env << "'\n";
    return static_cast<int>(hw);
  }
  return static_cast<int>(std::min<long>(v, 1024));
}

bool write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << body;
  out.close();
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-static tendon hand simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> max_steps;
  bool quiet = false;

  const std::pair<const char*, th_run_kind> commands[] = {
      {"validate", TH_RUN_VALIDATE}, {"simulate", TH_RUN_DECLARED}, {"ramp", TH_RUN_RAMP},
      {"margin", TH_RUN_MARGIN},     {"calibrate", TH_RUN_CALIBRATE},
  };
  const char* help[] = {"Check a scenario without running it", "Run the mode the scenario declares",
                        "Run the payload ramp", "Report payload margin", "Calibrate grip efficiency"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i].first, help[i]);
    sub->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--seed", seed, "Seed recorded with the run");
    sub->add_option("--tol", tol, "Solver tolerance on the projected gradient (Nm)");
    sub->add_option("--max-steps", max_steps, "Controller step budget");
    sub->add_flag("--quiet", quiet, "Print nothing on success");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  th_run_kind kind = TH_RUN_DECLARED;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i]->parsed()) kind = commands[i].second;
  }

  th_scenario* raw = nullptr;
  if (th_scenario_load_file(scenario_path.c_str(), &raw) != TH_OK) {
    std::cerr << "error: " << th_last_error() << "\n";
    return 1;
  }
  std::unique_ptr<th_scenario, ScenarioDeleter> scenario(raw);
  if ((seed && th_scenario_set_seed(scenario.get(), *seed) != TH_OK) ||
      (tol && th_scenario_set_tolerance(scenario.get(), *tol) != TH_OK) ||
      (max_steps && th_scenario_set_max_steps(scenario.get(), *max_steps) != TH_OK) ||
      th_scenario_set_threads(scenario.get(), thread_cap()) != TH_OK) {
    std::cerr << "error: " << th_last_error() << "\n";
    return 1;
  }

  th_result* raw_result = nullptr;
  const th_status status = th_scenario_run(scenario.get(), kind, &raw_result);
  std::unique_ptr<th_result, ResultDeleter> result(raw_result);
  if (!result) {
    std::cerr << "error: " << th_last_error() << "\n";
    return status == TH_OK ? 1 : std::min<int>(status, 3);
  }
  if (status > TH_SATURATED) {
    std::cerr << "error: " << th_last_error() << "\n";
    return 1;
  }

  const std::string report = th_result_report(result.get());
  if (status != TH_CONFIG_ERROR && kind != TH_RUN_VALIDATE) {
    std::error_code ec;
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir, ec);
    const std::string csv_name = th_result_csv_name(result.get());
    bool ok = !ec && write_file(dir / "report.txt", report);
    if (ok && !csv_name.empty()) ok = write_file(dir / csv_name, th_result_csv(result.get()));
    if (!ok) {
      std::cerr << "error: cannot write outputs to '" << out_dir << "'\n";
      return 1;
    }
  }
  if (status != TH_OK) {
    std::cerr << report;
  } else if (!quiet) {
    std::cout << report;
  }
  return static_cast<int>(status);
}
