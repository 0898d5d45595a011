// Copyright 2026 The lembas authors
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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lembas/config.hpp"
#include "lembas/errors.hpp"
#include "lembas/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;

// Streams CSV to the config's output path, or stdout when none is set.
template <typename WriteFn>
void emit_csv(const std::string& output_path, WriteFn&& write) {
  if (output_path.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(output_path);
  if (!out) {
    throw lembas::ConfigError("cannot open output file: " + output_path);
  }
  write(out);
}

int cmd_run(const std::string& config_path) {
  const lembas::LoadedScenario ls = lembas::load_scenario_config(config_path);
  const lembas::Trajectory traj = lembas::run_configured(ls);
  emit_csv(ls.output_path,
           [&](std::ostream& os) { lembas::write_trajectory_csv(os, traj); });
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& param,
              double from, double to, int points) {
  const lembas::LoadedScenario ls = lembas::load_scenario_config(config_path);
  const auto rows = lembas::run_sweep(ls, param, from, to, points);
  emit_csv(ls.output_path,
           [&](std::ostream& os) { lembas::write_sweep_csv(os, rows); });
  return kExitOk;
}

int cmd_verify() {
  const auto results = lembas::run_acceptance_checks();
  int failures = 0;
  for (const auto& res : results) {
    if (!res.passed) ++failures;
    std::printf("[%s] %-24s measured=%.6g threshold=%.6g seconds=%.3f :: %s\n",
                res.passed ? "PASS" : "FAIL", res.name.c_str(), res.measured,
                res.threshold, res.seconds, res.detail.c_str());
  }
  std::printf("%zu/%zu checks passed\n", results.size() - failures,
              results.size());
  return failures == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local work and heat accounting for bipartite quantum systems"};
  app.require_subcommand(1);

  std::string run_config;
  CLI::App* run = app.add_subcommand(
      "run", "Run a configured scenario and emit the trajectory as CSV");
  run->add_option("config", run_config, "JSON scenario config file")
      ->required();

  std::string sweep_config;
  std::string sweep_param;
  double sweep_from = 0.0;
  double sweep_to = 0.0;
  int sweep_points = 0;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Rerun a scenario over a parameter range, emit totals as CSV");
  sweep->add_option("config", sweep_config, "JSON scenario config file")
      ->required();
  sweep->add_option("--param", sweep_param, "parameter name to sweep")
      ->required();
  sweep->add_option("--from", sweep_from, "first parameter value")->required();
  sweep->add_option("--to", sweep_to, "last parameter value")->required();
  sweep->add_option("--points", sweep_points, "number of sweep points")
      ->required();

  CLI::App* verify = app.add_subcommand(
      "verify", "Run the verification suite and report each check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    // Help and version requests exit cleanly; anything else is a usage error.
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (run->parsed()) return cmd_run(run_config);
    if (sweep->parsed()) {
      return cmd_sweep(sweep_config, sweep_param, sweep_from, sweep_to,
                       sweep_points);
    }
    if (verify->parsed()) return cmd_verify();
  } catch (const lembas::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const lembas::NumericalConsistencyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericalError;
  } catch (const lembas::StepSizeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
  return kExitOk;
}
