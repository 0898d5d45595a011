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

#include "lembas/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lembas/errors.hpp"

namespace lembas {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::string& prefix,
                         const std::set<std::string>& allowed) {
  for (const auto& item : obj.items()) {
    if (allowed.count(item.key()) == 0) {
      throw ConfigError("unknown key: " + prefix + item.key());
    }
  }
}

const json& require_key(const json& obj, const std::string& prefix,
                        const std::string& key) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw ConfigError("missing key: " + prefix + key);
  }
  return *it;
}

double require_number(const json& obj, const std::string& prefix,
                      const std::string& key) {
  const json& v = require_key(obj, prefix, key);
  if (!v.is_number()) {
    throw ConfigError("expected a number at " + prefix + key);
  }
  return v.get<double>();
}

int require_integer(const json& obj, const std::string& prefix,
                    const std::string& key) {
  const json& v = require_key(obj, prefix, key);
  if (!v.is_number_integer()) {
    throw ConfigError("expected an integer at " + prefix + key);
  }
  return v.get<int>();
}

Frame parse_frame(const json& root) {
  const auto it = root.find("frame");
  if (it == root.end()) return Frame::kRwa;
  if (!it->is_string()) {
    throw ConfigError("expected a string at frame");
  }
  const std::string name = it->get<std::string>();
  if (name == "rwa") return Frame::kRwa;
  if (name == "lab") return Frame::kLab;
  throw ConfigError("frame must be \"lab\" or \"rwa\", got \"" + name + "\"");
}

// "energy" (the default) leaves basis_vectors empty; otherwise the value is
// an array of basis vectors, each an array of [re, im] pairs.
std::optional<std::vector<ComplexVector>> parse_basis(const json& root) {
  const auto it = root.find("basis");
  if (it == root.end()) return std::nullopt;
  if (it->is_string()) {
    if (it->get<std::string>() == "energy") return std::nullopt;
    throw ConfigError(
        "basis must be \"energy\" or an array of basis vectors");
  }
  if (!it->is_array() || it->empty()) {
    throw ConfigError(
        "basis must be \"energy\" or a nonempty array of basis vectors");
  }
  std::vector<ComplexVector> vectors;
  for (const json& vec : *it) {
    if (!vec.is_array() || vec.empty()) {
      throw ConfigError("each basis vector must be a nonempty array");
    }
    ComplexVector v(vec.size());
    Eigen::Index row = 0;
    for (const json& entry : vec) {
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number()) {
        throw ConfigError(
            "each basis vector component must be an [re, im] pair");
      }
      v(row++) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
    vectors.push_back(std::move(v));
  }
  return vectors;
}

std::string frame_name(Frame f) { return f == Frame::kRwa ? "rwa" : "lab"; }

void format_field(std::ostream& os, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

}  // namespace

LoadedScenario parse_scenario_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) {
    throw ConfigError("config root must be an object");
  }
  reject_unknown_keys(
      root, "", {"scenario", "parameters", "grid", "frame", "basis", "output"});

  const json& scenario_key = require_key(root, "", "scenario");
  if (!scenario_key.is_string()) {
    throw ConfigError("expected a string at scenario");
  }
  LoadedScenario ls;
  ls.scenario = scenario_key.get<std::string>();

  const json& params = require_key(root, "", "parameters");
  if (!params.is_object()) {
    throw ConfigError("expected an object at parameters");
  }
  const Frame frame = parse_frame(root);
  if (ls.scenario == "driven_tls") {
    reject_unknown_keys(params, "parameters.",
                        {"delta_e", "g", "omega", "beta"});
    ls.tls.delta_e = require_number(params, "parameters.", "delta_e");
    ls.tls.g = require_number(params, "parameters.", "g");
    ls.tls.omega = require_number(params, "parameters.", "omega");
    ls.tls.beta = require_number(params, "parameters.", "beta");
    ls.tls.frame = frame;
  } else if (ls.scenario == "swap_cooling") {
    reject_unknown_keys(params, "parameters.",
                        {"delta_e_a", "delta_e_b", "g", "beta_i"});
    ls.swap.delta_e_a = require_number(params, "parameters.", "delta_e_a");
    ls.swap.delta_e_b = require_number(params, "parameters.", "delta_e_b");
    ls.swap.g = require_number(params, "parameters.", "g");
    ls.swap.beta_i = require_number(params, "parameters.", "beta_i");
    ls.swap.frame = frame;
  } else {
    throw ConfigError("unknown scenario \"" + ls.scenario +
                      "\"; expected \"driven_tls\" or \"swap_cooling\"");
  }

  const json& grid = require_key(root, "", "grid");
  if (!grid.is_object()) {
    throw ConfigError("expected an object at grid");
  }
  reject_unknown_keys(grid, "grid.", {"t0", "t1", "n_steps"});
  ls.grid.t0 = require_number(grid, "grid.", "t0");
  ls.grid.t1 = require_number(grid, "grid.", "t1");
  ls.grid.n_steps = require_integer(grid, "grid.", "n_steps");

  ls.basis_vectors = parse_basis(root);

  const auto out = root.find("output");
  if (out != root.end()) {
    if (!out->is_string()) {
      throw ConfigError("expected a string at output");
    }
    ls.output_path = out->get<std::string>();
  }

  // Fail at load time, with the config-error exit code, rather than deep in
  // the run.
  try {
    if (ls.scenario == "driven_tls") {
      ls.tls.validate();
    } else {
      ls.swap.validate();
    }
    ls.grid.validate();
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  return ls;
}

LoadedScenario load_scenario_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config file: " + path);
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario_config(text.str());
}

int effective_steps(int configured) {
  const char* env = std::getenv("LEMBAS_NSTEPS_OVERRIDE");
  if (env == nullptr || *env == '\0') return configured;
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || value < 2 || value > 100000000) {
    throw ConfigError(
        std::string("LEMBAS_NSTEPS_OVERRIDE must be an integer >= 2, got \"") +
        env + "\"");
  }
  return static_cast<int>(value);
}

Trajectory run_configured(const LoadedScenario& ls) {
  TimeGrid grid = ls.grid;
  grid.n_steps = effective_steps(grid.n_steps);
  TrajectoryOptions opts;
  if (ls.basis_vectors) {
    opts.basis = MeasurementBasis::explicit_basis(*ls.basis_vectors);
  }
  Trajectory traj;
  if (ls.scenario == "driven_tls") {
    traj = run_trajectory(driven_tls_system(ls.tls),
                          driven_tls_initial_state(ls.tls), grid, opts);
    traj.scenario = "driven_tls";
    traj.frame = frame_name(ls.tls.frame);
  } else if (ls.scenario == "swap_cooling") {
    traj = run_trajectory(swap_system(ls.swap), swap_initial_state(ls.swap),
                          grid, opts);
    traj.scenario = "swap_cooling";
    traj.frame = frame_name(ls.swap.frame);
  } else {
    throw ConfigError("unknown scenario \"" + ls.scenario + "\"");
  }
  return traj;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,U_A,dU_dt,dW_dt,dQ_dt,W_cum,Q_cum,S_A,dS_dt,T_star\n";
  for (const TrajectoryRecord& rec : traj.records) {
    format_field(os, rec.t);
    os << ',';
    format_field(os, rec.u_a);
    os << ',';
    format_field(os, rec.du_dt);
    os << ',';
    format_field(os, rec.dw_dt);
    os << ',';
    format_field(os, rec.dq_dt);
    os << ',';
    format_field(os, rec.w_cum);
    os << ',';
    format_field(os, rec.q_cum);
    os << ',';
    format_field(os, rec.s_a);
    os << ',';
    format_field(os, rec.ds_dt);
    os << ',';
    if (rec.t_star) format_field(os, *rec.t_star);
    os << '\n';
  }
}

std::vector<SweepRow> run_sweep(const LoadedScenario& ls,
                                const std::string& param, double from,
                                double to, int points) {
  if (points < 1) {
    throw ConfigError("sweep needs at least one point, got " +
                      std::to_string(points));
  }
  std::vector<SweepRow> rows;
  rows.reserve(points);
  for (int i = 0; i < points; ++i) {
    const double value =
        points == 1 ? from : from + i * (to - from) / (points - 1);
    LoadedScenario point = ls;
    if (ls.scenario == "driven_tls") {
      if (param == "delta_e") {
        point.tls.delta_e = value;
      } else if (param == "g") {
        point.tls.g = value;
      } else if (param == "omega") {
        point.tls.omega = value;
      } else if (param == "beta") {
        point.tls.beta = value;
      } else if (param == "delta") {
        point.tls.omega = point.tls.delta_e + value;
      } else {
        throw ConfigError("unknown sweep parameter \"" + param +
                          "\" for driven_tls");
      }
      try {
        point.tls.validate();
      } catch (const ValidationError& e) {
        throw ConfigError(std::string("invalid sweep value: ") + e.what());
      }
    } else {
      if (param == "delta_e_a") {
        point.swap.delta_e_a = value;
      } else if (param == "delta_e_b") {
        point.swap.delta_e_b = value;
      } else if (param == "g") {
        point.swap.g = value;
      } else if (param == "beta_i") {
        point.swap.beta_i = value;
      } else {
        throw ConfigError("unknown sweep parameter \"" + param +
                          "\" for swap_cooling");
      }
      try {
        point.swap.validate();
      } catch (const ValidationError& e) {
        throw ConfigError(std::string("invalid sweep value: ") + e.what());
      }
    }
    const Trajectory traj = run_configured(point);
    SweepRow row;
    row.value = value;
    row.w_total = traj.records.back().w_cum;
    row.q_total = traj.records.back().q_cum;
    if (std::abs(row.w_total) > 1e-12) {
      // +0.0 so a signed zero in q_total cannot surface as "-0".
      row.eta = -row.q_total / row.w_total + 0.0;
    }
    rows.push_back(row);
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "param,W_total,Q_total,eta\n";
  for (const SweepRow& row : rows) {
    format_field(os, row.value);
    os << ',';
    format_field(os, row.w_total);
    os << ',';
    format_field(os, row.q_total);
    os << ',';
    if (row.eta) format_field(os, *row.eta);
    os << '\n';
  }
}

}  // namespace lembas
