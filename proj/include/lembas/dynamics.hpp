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

#include <optional>
#include <string>
#include <vector>

#include "lembas/core.hpp"
#include "lembas/states.hpp"

namespace lembas {

// Uniform time grid with n_steps intervals (n_steps + 1 nodes).
struct TimeGrid {
  double t0 = 0.0;
  double t1 = 1.0;
  int n_steps = 4096;

  double dt() const { return (t1 - t0) / n_steps; }
  std::vector<double> times() const;

  // t1 > t0 and n_steps >= 2; throws ValidationError otherwise.
  void validate() const;
};

// One grid node of a run: the reduced state and every accounting quantity
// evaluated there. Rates are instantaneous; the cumulative columns are
// trapezoid integrals over the nodes so far.
struct TrajectoryRecord {
  double t;
  DensityOperator rho_a;
  double u_a;
  double du_dt;
  double dw_dt;
  double dq_dt;
  double w_cum;
  double q_cum;
  double s_a;
  double ds_dt;
  std::optional<double> t_star;
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;
  TimeGrid grid;
  std::string scenario;  // descriptor, empty for ad-hoc systems
  std::string frame;     // "lab", "rwa", or empty
};

struct TrajectoryOptions {
  // Measurement basis; defaults to the energy basis of the local
  // Hamiltonian when absent.
  std::optional<MeasurementBasis> basis;
  // When set, the incoherent generator is recomputed through the
  // correlation operator at every node and compared against the
  // derivative route; disagreement beyond route_tol (relative to
  // max(1, norm)) throws NumericalConsistencyError.
  bool check_linc_routes = false;
  double route_tol = 1e-10;
};

// Midpoint piecewise-constant propagation: rho(t_{k+1}) = U rho(t_k) U*
// with U = exp(-i H(t_k + dt/2) dt). Exactly unitary per step, so trace
// and spectrum are preserved to round-off; a trace drift beyond 1e-8
// still throws StepSizeError as a guard against degenerate inputs.
std::vector<DensityOperator> evolve_full(const BipartiteSystem& sys,
                                         const DensityOperator& rho0,
                                         const TimeGrid& grid);
std::vector<DensityOperator> evolve_full(const SemiclassicalSystem& sys,
                                         const DensityOperator& rho0,
                                         const TimeGrid& grid);

// Frame transform of a time-parameterized Hamiltonian: with the diagonal
// generator G = diag(level_frequencies),
//   h_rot(t) = exp(iGt) h(t) exp(-iGt) - G.
// Computed elementwise through the phase differences, so the input stays
// a cheap closure.
std::function<ComplexMatrix(double)> rotating_frame(
    std::function<ComplexMatrix(double)> h, RealVector level_frequencies);

// Time derivative of the basis-preserving part of the effective
// Hamiltonian, by the product rule
//   d/dt h_eff = tr_B[ dh_int/dt (1 x rho_B) ] + tr_B[ h_int (1 x drho_B/dt) ]
// with drho_B/dt = tr_A(-i[H, rho]) and dh_int/dt either the registered
// analytic derivative or a centered finite difference, followed by the
// block-diagonal projection.
ComplexMatrix d_heff1_dt(const BipartiteSystem& sys,
                         const ComplexMatrix& rho_ab, double t,
                         const MeasurementBasis& basis);
ComplexMatrix d_heff1_dt(const SemiclassicalSystem& sys, double t,
                         const MeasurementBasis& basis);

// Full run: evolve, decompose, accumulate. For the bipartite overload the
// incoherent generator comes from the derivative route
//   L = drho_A/dt + i[h_local + h_eff, rho_A]
// with h_local the local part of the evolution generator. For the
// semiclassical overload the subsystem is closed, L is identically zero,
// and so are dQ/dt and dS/dt.
Trajectory run_trajectory(const BipartiteSystem& sys,
                          const DensityOperator& rho0, const TimeGrid& grid,
                          const TrajectoryOptions& opts = {});
Trajectory run_trajectory(const SemiclassicalSystem& sys,
                          const DensityOperator& rho0, const TimeGrid& grid,
                          const TrajectoryOptions& opts = {});

// Textbook work/heat rates for a driven subsystem, expressed through
// rotating-frame quantities so that they equal the lab-frame traces
// tr(rho dH/dt) and tr(H drho/dt) regardless of the frame the system
// struct is written in.
OldDefinitionSplit old_split_semiclassical(const SemiclassicalSystem& sys,
                                           const ComplexMatrix& rho, double t);

}  // namespace lembas

