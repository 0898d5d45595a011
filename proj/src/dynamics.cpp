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

#include "lembas/dynamics.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "lembas/errors.hpp"

namespace lembas {

namespace {

constexpr double kTraceDriftTol = 1e-8;
constexpr double kFdStep = 1e-5;
constexpr double kFirstLawTol = 1e-9;

ComplexMatrix step_state(const ComplexMatrix& u, const ComplexMatrix& rho) {
  ComplexMatrix next = hermitize(u * rho * u.adjoint());
  const double tr = next.trace().real();
  // Negated <= so a NaN trace also lands in the throw branch.
  if (!(std::abs(tr - 1.0) <= kTraceDriftTol)) {
    throw StepSizeError("state trace drifted to " + std::to_string(tr) +
                        "; reduce dt by increasing n_steps");
  }
  return next;
}

ComplexMatrix liouville_derivative(const ComplexMatrix& h,
                                   const ComplexMatrix& rho) {
  return Complex(0.0, -1.0) * commutator(h, rho);
}

// Real part of tr(a b) with the same residue guard as the core rates.
double real_product_trace(const ComplexMatrix& a, const ComplexMatrix& b,
                          const char* what) {
  const Complex tr = (a * b).trace();
  if (std::abs(tr.imag()) > 1e-10 * std::max(1.0, std::abs(tr.real()))) {
    throw NumericalConsistencyError(std::string(what) +
                                    ": imaginary residue " +
                                    std::to_string(tr.imag()));
  }
  return tr.real();
}

ComplexMatrix interaction_derivative(const BipartiteSystem& sys, double t) {
  if (sys.dh_int_dt) return sys.dh_int_dt(t);
  return (sys.h_int(t + kFdStep) - sys.h_int(t - kFdStep)) / (2.0 * kFdStep);
}

ComplexMatrix drive_derivative(const SemiclassicalSystem& sys, double t) {
  if (!sys.h_drive) return ComplexMatrix::Zero(sys.dim, sys.dim);
  if (sys.dh_drive_dt) return sys.dh_drive_dt(t);
  return (sys.h_drive(t + kFdStep) - sys.h_drive(t - kFdStep)) /
         (2.0 * kFdStep);
}

ComplexMatrix d_heff1_dt_at(const BipartiteSystem& sys,
                            const ComplexMatrix& h_int_t,
                            const ComplexMatrix& rho_b,
                            const ComplexMatrix& rho_dot, double t,
                            const MeasurementBasis& basis) {
  const ComplexMatrix rho_b_dot =
      partial_trace_a(rho_dot, sys.dim_a, sys.dim_b);
  const ComplexMatrix dh_eff =
      effective_hamiltonian(interaction_derivative(sys, t), rho_b, sys.dim_a,
                            sys.dim_b) +
      effective_hamiltonian(h_int_t, rho_b_dot, sys.dim_a, sys.dim_b);
  return basis.block_diagonal(dh_eff);
}

void require_first_law(double du, double dw, double dq) {
  const double gap = std::abs(du - (dw + dq));
  if (gap > kFirstLawTol * std::max(1.0, std::abs(du))) {
    throw NumericalConsistencyError(
        "first-law residual " + std::to_string(gap) + " at dU/dt = " +
        std::to_string(du) + "; the three rates disagree");
  }
}

void accumulate(Trajectory& traj, TrajectoryRecord&& rec, double dt) {
  if (traj.records.empty()) {
    rec.w_cum = 0.0;
    rec.q_cum = 0.0;
  } else {
    const TrajectoryRecord& prev = traj.records.back();
    rec.w_cum = prev.w_cum + 0.5 * dt * (prev.dw_dt + rec.dw_dt);
    rec.q_cum = prev.q_cum + 0.5 * dt * (prev.dq_dt + rec.dq_dt);
  }
  traj.records.push_back(std::move(rec));
}

MeasurementBasis resolve_basis(const TrajectoryOptions& opts,
                               const ComplexMatrix& h_a) {
  if (opts.basis) {
    if (opts.basis->dim() != h_a.rows()) {
      throw DimensionError("run_trajectory: basis dimension " +
                           std::to_string(opts.basis->dim()) +
                           " does not match the subsystem dimension " +
                           std::to_string(h_a.rows()));
    }
    return *opts.basis;
  }
  return MeasurementBasis::energy_basis(h_a);
}

}  // namespace

std::vector<double> TimeGrid::times() const {
  std::vector<double> out;
  out.reserve(n_steps + 1);
  const double step = dt();
  for (int k = 0; k <= n_steps; ++k) out.push_back(t0 + k * step);
  return out;
}

void TimeGrid::validate() const {
  if (!(t1 > t0)) {
    throw ValidationError("time grid: t1 must exceed t0");
  }
  if (n_steps < 2) {
    throw ValidationError("time grid: n_steps must be at least 2, got " +
                          std::to_string(n_steps));
  }
  if (!std::isfinite(t0) || !std::isfinite(t1)) {
    throw ValidationError("time grid: endpoints must be finite");
  }
}

std::vector<DensityOperator> evolve_full(const BipartiteSystem& sys,
                                         const DensityOperator& rho0,
                                         const TimeGrid& grid) {
  sys.validate();
  grid.validate();
  if (rho0.dim() != sys.dim_a * sys.dim_b) {
    throw DimensionError("evolve_full: initial state dimension " +
                         std::to_string(rho0.dim()) + " != " +
                         std::to_string(sys.dim_a * sys.dim_b));
  }
  const double dt = grid.dt();
  std::vector<DensityOperator> out;
  out.reserve(grid.n_steps + 1);
  out.push_back(rho0);
  ComplexMatrix rho = rho0.matrix();
  ComplexMatrix u_static;
  if (sys.static_generator) {
    u_static = propagator(sys.evolution_generator(grid.t0 + 0.5 * dt), dt);
  }
  for (int k = 0; k < grid.n_steps; ++k) {
    if (!sys.static_generator) {
      const double t_mid = grid.t0 + (k + 0.5) * dt;
      u_static = propagator(sys.evolution_generator(t_mid), dt);
    }
    rho = step_state(u_static, rho);
    out.emplace_back(rho);
  }
  return out;
}

std::vector<DensityOperator> evolve_full(const SemiclassicalSystem& sys,
                                         const DensityOperator& rho0,
                                         const TimeGrid& grid) {
  sys.validate();
  grid.validate();
  if (rho0.dim() != sys.dim) {
    throw DimensionError("evolve_full: initial state dimension " +
                         std::to_string(rho0.dim()) + " != " +
                         std::to_string(sys.dim));
  }
  const double dt = grid.dt();
  std::vector<DensityOperator> out;
  out.reserve(grid.n_steps + 1);
  out.push_back(rho0);
  ComplexMatrix rho = rho0.matrix();
  ComplexMatrix u_static;
  if (sys.static_generator) {
    u_static = propagator(sys.evolution_generator(grid.t0 + 0.5 * dt), dt);
  }
  for (int k = 0; k < grid.n_steps; ++k) {
    if (!sys.static_generator) {
      const double t_mid = grid.t0 + (k + 0.5) * dt;
      u_static = propagator(sys.evolution_generator(t_mid), dt);
    }
    rho = step_state(u_static, rho);
    out.emplace_back(rho);
  }
  return out;
}

std::function<ComplexMatrix(double)> rotating_frame(
    std::function<ComplexMatrix(double)> h, RealVector level_frequencies) {
  if (!h) {
    throw ValidationError("rotating_frame: empty Hamiltonian callback");
  }
  const Eigen::Index n = level_frequencies.size();
  if (n < 1) {
    throw DimensionError("rotating_frame: no level frequencies given");
  }
  return [h = std::move(h), freqs = std::move(level_frequencies),
          n](double t) -> ComplexMatrix {
    const ComplexMatrix m = h(t);
    if (m.rows() != n || m.cols() != n) {
      throw DimensionError("rotating_frame: Hamiltonian is " +
                           std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()) + ", expected " +
                           std::to_string(n) + " square");
    }
    ComplexMatrix out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const double phase = (freqs(i) - freqs(j)) * t;
        out(i, j) = std::polar(1.0, phase) * m(i, j);
      }
      out(i, i) -= freqs(i);
    }
    return out;
  };
}

ComplexMatrix d_heff1_dt(const BipartiteSystem& sys,
                         const ComplexMatrix& rho_ab, double t,
                         const MeasurementBasis& basis) {
  const ComplexMatrix h_int_t = sys.h_int(t);
  const ComplexMatrix rho_b =
      partial_trace_a(rho_ab, sys.dim_a, sys.dim_b);
  const ComplexMatrix rho_dot =
      liouville_derivative(sys.evolution_generator(t), rho_ab);
  return d_heff1_dt_at(sys, h_int_t, rho_b, rho_dot, t, basis);
}

ComplexMatrix d_heff1_dt(const SemiclassicalSystem& sys, double t,
                         const MeasurementBasis& basis) {
  return basis.block_diagonal(drive_derivative(sys, t));
}

Trajectory run_trajectory(const BipartiteSystem& sys,
                          const DensityOperator& rho0, const TimeGrid& grid,
                          const TrajectoryOptions& opts) {
  sys.validate();
  grid.validate();
  if (rho0.dim() != sys.dim_a * sys.dim_b) {
    throw DimensionError("run_trajectory: initial state dimension " +
                         std::to_string(rho0.dim()) + " != " +
                         std::to_string(sys.dim_a * sys.dim_b));
  }
  const MeasurementBasis basis = resolve_basis(opts, sys.h_a);
  const double dt = grid.dt();
  ComplexMatrix local_gen = sys.h_a;
  if (sys.frame_a.size() > 0) local_gen += sys.frame_a;

  Trajectory traj;
  traj.grid = grid;
  traj.records.reserve(grid.n_steps + 1);

  ComplexMatrix rho = rho0.matrix();
  ComplexMatrix u_static;
  if (sys.static_generator) {
    u_static = propagator(sys.evolution_generator(grid.t0 + 0.5 * dt), dt);
  }

  for (int k = 0; k <= grid.n_steps; ++k) {
    const double t = grid.t0 + k * dt;
    const ComplexMatrix rho_a = partial_trace_b(rho, sys.dim_a, sys.dim_b);
    const ComplexMatrix rho_b = partial_trace_a(rho, sys.dim_a, sys.dim_b);
    const ComplexMatrix h_int_t = sys.h_int(t);
    const ComplexMatrix rho_dot =
        liouville_derivative(sys.evolution_generator(t), rho);
    const ComplexMatrix rho_dot_a =
        partial_trace_b(rho_dot, sys.dim_a, sys.dim_b);

    const ComplexMatrix h_eff =
        effective_hamiltonian(h_int_t, rho_b, sys.dim_a, sys.dim_b);
    const LembasSplit split = lembas_split(h_eff, sys.h_a, basis);
    const ComplexMatrix dh_eff1 =
        d_heff1_dt_at(sys, h_int_t, rho_b, rho_dot, t, basis);

    ComplexMatrix l_inc = hermitize(
        rho_dot_a +
        Complex(0.0, 1.0) * commutator(local_gen + h_eff, rho_a));
    if (opts.check_linc_routes) {
      const CorrelationOperator chi(hermitize(rho - kron(rho_a, rho_b)),
                                    sys.dim_a, sys.dim_b);
      const ComplexMatrix l_corr =
          incoherent_generator_from_correlations(h_int_t, chi);
      const double gap = (l_inc - l_corr).norm();
      if (gap > opts.route_tol * std::max(1.0, l_inc.norm())) {
        throw NumericalConsistencyError(
            "incoherent-generator routes disagree by " + std::to_string(gap) +
            " at t = " + std::to_string(t));
      }
    }

    TrajectoryRecord rec{t,
                         DensityOperator(rho_a),
                         internal_energy(split.h_prime, rho_a),
                         0.0,
                         work_rate(dh_eff1, split.h_prime, split.h_eff2, rho_a),
                         heat_rate(split.h_prime, l_inc),
                         0.0,
                         0.0,
                         0.0,
                         entropy_rate(l_inc, rho_a),
                         local_temperature(split.h_prime, l_inc, rho_a)};
    rec.s_a = rec.rho_a.entropy();
    rec.du_dt = real_product_trace(dh_eff1, rho_a, "dU/dt drive term") +
                real_product_trace(split.h_prime, rho_dot_a, "dU/dt flow term");
    require_first_law(rec.du_dt, rec.dw_dt, rec.dq_dt);
    accumulate(traj, std::move(rec), dt);

    if (k < grid.n_steps) {
      if (!sys.static_generator) {
        const double t_mid = grid.t0 + (k + 0.5) * dt;
        u_static = propagator(sys.evolution_generator(t_mid), dt);
      }
      rho = step_state(u_static, rho);
    }
  }
  return traj;
}

Trajectory run_trajectory(const SemiclassicalSystem& sys,
                          const DensityOperator& rho0, const TimeGrid& grid,
                          const TrajectoryOptions& opts) {
  sys.validate();
  grid.validate();
  if (rho0.dim() != sys.dim) {
    throw DimensionError("run_trajectory: initial state dimension " +
                         std::to_string(rho0.dim()) + " != " +
                         std::to_string(sys.dim));
  }
  const MeasurementBasis basis = resolve_basis(opts, sys.h_a);
  const double dt = grid.dt();
  const ComplexMatrix l_zero = ComplexMatrix::Zero(sys.dim, sys.dim);

  Trajectory traj;
  traj.grid = grid;
  traj.records.reserve(grid.n_steps + 1);

  ComplexMatrix rho = rho0.matrix();
  ComplexMatrix u_static;
  if (sys.static_generator) {
    u_static = propagator(sys.evolution_generator(grid.t0 + 0.5 * dt), dt);
  }

  for (int k = 0; k <= grid.n_steps; ++k) {
    const double t = grid.t0 + k * dt;
    const ComplexMatrix h_eff =
        sys.h_drive ? sys.h_drive(t) : l_zero;
    const LembasSplit split = lembas_split(h_eff, sys.h_a, basis);
    const ComplexMatrix dh_eff1 = d_heff1_dt(sys, t, basis);
    const ComplexMatrix rho_dot =
        liouville_derivative(sys.evolution_generator(t), rho);

    // The subsystem is closed: the classical field shows up in h_eff, not
    // as correlations, so the incoherent generator vanishes identically
    // and with it heat flow and entropy change.
    TrajectoryRecord rec{t,
                         DensityOperator(rho),
                         internal_energy(split.h_prime, rho),
                         0.0,
                         work_rate(dh_eff1, split.h_prime, split.h_eff2, rho),
                         0.0,
                         0.0,
                         0.0,
                         0.0,
                         0.0,
                         std::nullopt};
    rec.s_a = rec.rho_a.entropy();
    rec.du_dt = real_product_trace(dh_eff1, rho, "dU/dt drive term") +
                real_product_trace(split.h_prime, rho_dot, "dU/dt flow term");
    require_first_law(rec.du_dt, rec.dw_dt, rec.dq_dt);
    accumulate(traj, std::move(rec), dt);

    if (k < grid.n_steps) {
      if (!sys.static_generator) {
        const double t_mid = grid.t0 + (k + 0.5) * dt;
        u_static = propagator(sys.evolution_generator(t_mid), dt);
      }
      rho = step_state(u_static, rho);
    }
  }
  return traj;
}

OldDefinitionSplit old_split_semiclassical(const SemiclassicalSystem& sys,
                                           const ComplexMatrix& rho,
                                           double t) {
  ComplexMatrix h_acct = sys.h_a;
  if (sys.h_drive) h_acct += sys.h_drive(t);
  ComplexMatrix dh = drive_derivative(sys, t);
  ComplexMatrix rho_dot =
      liouville_derivative(sys.evolution_generator(t), rho);
  if (sys.frame.size() > 0) {
    // Undo the frame: these are the lab-frame traces expressed through
    // co-rotating operators, so both derivatives pick up a commutator
    // with the frame generator.
    dh += Complex(0.0, 1.0) * commutator(sys.frame, h_acct);
    rho_dot += Complex(0.0, 1.0) * commutator(sys.frame, rho);
  }
  return old_definition_split(h_acct, dh, rho, rho_dot);
}

}  // namespace lembas
