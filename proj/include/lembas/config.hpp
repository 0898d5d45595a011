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

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lembas/scenarios.hpp"

namespace lembas {

// A parsed run configuration. Exactly one of the two scenario configs is
// meaningful, selected by `scenario`.
struct LoadedScenario {
  std::string scenario;  // "driven_tls" or "swap_cooling"
  DrivenTlsConfig tls;
  SwapConfig swap;
  TimeGrid grid;
  // Explicit measurement basis on the subsystem, when the config overrides
  // the default energy basis.
  std::optional<std::vector<ComplexVector>> basis_vectors;
  std::string output_path;  // empty means stdout
};

// Parses a JSON config document. The schema is strict: every required key
// must be present, unknown keys are rejected, and errors name the offending
// key path (ConfigError, e.g. "missing key: parameters.g").
//
//   {
//     "scenario": "driven_tls",
//     "parameters": {"delta_e": 1.0, "g": 0.1, "omega": 1.0, "beta": 2.0},
//     "grid": {"t0": 0.0, "t1": 31.4, "n_steps": 4096},
//     "frame": "rwa",            // optional, default "rwa"
//     "basis": "energy",         // optional; or basis vectors as nested
//                                // [re, im] pairs, default "energy"
//     "output": "run.csv"        // optional, default stdout
//   }
//
// swap_cooling takes parameters delta_e_a, delta_e_b, g, beta_i instead.
LoadedScenario parse_scenario_config(const std::string& text);

// Reads and parses a config file; ConfigError when unreadable.
LoadedScenario load_scenario_config(const std::string& path);

// Grid size after applying the LEMBAS_NSTEPS_OVERRIDE environment variable,
// a testing hook that replaces every configured step count with its value.
// Unset or empty means no override; a malformed value is a ConfigError.
int effective_steps(int configured);

// Builds the configured scenario and runs its trajectory (for swap_cooling,
// the spin-A local ledger). The grid passes through effective_steps.
Trajectory run_configured(const LoadedScenario& ls);

// CSV emission, 17 significant digits, one row per grid node. Columns:
//   t,U_A,dU_dt,dW_dt,dQ_dt,W_cum,Q_cum,S_A,dS_dt,T_star
// with T_star left blank where the local temperature is undefined.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

struct SweepRow {
  double value;
  double w_total;
  double q_total;
  std::optional<double> eta;  // -q_total/w_total, absent when w_total ~ 0
};

// Reruns the configured scenario with one parameter replaced by each of
// `points` evenly spaced values in [from, to] (points = 1 uses `from`).
// Valid names are the scenario's parameter keys plus, for driven_tls,
// "delta" as shorthand for a detuning (omega = delta_e + value). Unknown
// names raise ConfigError. Totals are the final cumulative columns of the
// same trajectory cmd_run would emit.
std::vector<SweepRow> run_sweep(const LoadedScenario& ls,
                                const std::string& param, double from,
                                double to, int points);

// Columns: param,W_total,Q_total,eta with eta blank where undefined.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace lembas
