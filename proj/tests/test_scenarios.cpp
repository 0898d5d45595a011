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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "lembas/scenarios.hpp"

namespace {

using lembas::ComplexMatrix;

ComplexMatrix sigma_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

// Population imbalance between the |eg> and |ge> levels of two thermal
// spins, computed from scratch as the test's own oracle.
double population_gap(const lembas::SwapConfig& cfg) {
  const double pe_a = 1.0 / (1.0 + std::exp(cfg.beta_i * cfg.delta_e_a));
  const double pe_b = 1.0 / (1.0 + std::exp(cfg.beta_i * cfg.delta_e_b));
  return pe_a * (1.0 - pe_b) - (1.0 - pe_a) * pe_b;
}

}  // namespace

TEST_CASE("configs validate their parameter ranges") {
  lembas::DrivenTlsConfig tls;
  tls.g = 0.0;
  tls.validate();  // a switched-off drive is legal
  tls.g = -0.1;
  CHECK_THROWS_AS(tls.validate(), lembas::ValidationError);
  tls = lembas::DrivenTlsConfig{};
  tls.delta_e = 0.0;
  CHECK_THROWS_AS(tls.validate(), lembas::ValidationError);
  tls = lembas::DrivenTlsConfig{};
  tls.beta = -1.0;
  CHECK_THROWS_AS(tls.validate(), lembas::ValidationError);

  lembas::SwapConfig swap;
  swap.delta_e_b = swap.delta_e_a;
  CHECK_THROWS_AS(swap.validate(), lembas::ValidationError);
  swap = lembas::SwapConfig{};
  swap.beta_i = 0.0;
  CHECK_THROWS_AS(swap.validate(), lembas::ValidationError);
}

TEST_CASE("a switched-off drive does no work") {
  lembas::DrivenTlsConfig cfg;
  cfg.g = 0.0;
  const lembas::Trajectory traj = lembas::run_trajectory(
      lembas::driven_tls_system(cfg), lembas::driven_tls_initial_state(cfg),
      lembas::driven_tls_default_grid(cfg, 256));
  for (const auto& rec : traj.records) {
    CHECK(rec.dw_dt == 0.0);
    CHECK(rec.w_cum == 0.0);
  }
}

TEST_CASE("closed-form drive rate: endpoints, resonance, monotonicity") {
  lembas::DrivenTlsConfig cfg;
  CHECK(lembas::analytic_tls_work(cfg, 0.0) == 0.0);

  // On resonance the rate amplitude is (delta_e g / 2) tanh(beta delta_e/2),
  // reached a quarter Rabi period in.
  const double quarter = 0.5 * M_PI / cfg.rabi();
  CHECK(lembas::analytic_tls_work(cfg, quarter) ==
        doctest::Approx(0.5 * cfg.delta_e * cfg.g * std::tanh(1.0))
            .epsilon(1e-14));

  // Fixed coupling: the amplitude decays with detuning magnitude.
  auto amplitude = [](double detuning) {
    lembas::DrivenTlsConfig c;
    c.omega = c.delta_e + detuning;
    return lembas::analytic_tls_work(c, 0.5 * M_PI / c.rabi());
  };
  CHECK(amplitude(0.0) > amplitude(0.05));
  CHECK(amplitude(0.05) > amplitude(0.1));
  CHECK(amplitude(-0.05) > amplitude(-0.1));
  CHECK(amplitude(0.05) == doctest::Approx(amplitude(-0.05)).epsilon(1e-14));
}

TEST_CASE("textbook rate coincides on resonance and dies at minus delta_e") {
  lembas::DrivenTlsConfig cfg;  // resonant by default
  for (double t : {0.3, 7.0, 20.0}) {
    CHECK(lembas::analytic_tls_work_old(cfg, t) ==
          doctest::Approx(lembas::analytic_tls_work(cfg, t)).epsilon(1e-14));
  }
  lembas::DrivenTlsConfig detuned;
  detuned.omega = 0.0;  // detuning -delta_e kills the (delta_e + detuning) factor
  for (double t : {0.3, 7.0, 20.0}) {
    CHECK(lembas::analytic_tls_work_old(detuned, t) == 0.0);
  }
}

TEST_CASE("only the textbook half-period work peaks off resonance") {
  // 401-point detuning grid over [-0.5, 0.5]: fine enough that the
  // textbook maximum sits two grid spacings away from zero.
  const int points = 401;
  const double spacing = 0.0025;
  int argmax_new = -1;
  int argmax_old = -1;
  double best_new = -1.0;
  double best_old = -1.0;
  for (int i = 0; i < points; ++i) {
    const double detuning = (i - 200) * spacing;
    lembas::DrivenTlsConfig cfg;
    cfg.omega = cfg.delta_e + detuning;
    const double w_new = lembas::tls_work_half_period(cfg);
    const double w_old = lembas::tls_work_old_half_period(cfg);
    if (w_new > best_new) {
      best_new = w_new;
      argmax_new = i;
    }
    if (w_old > best_old) {
      best_old = w_old;
      argmax_old = i;
    }
  }
  CHECK(argmax_new == 200);  // exactly on resonance
  CHECK(argmax_old == 202);  // displaced by two spacings
}

TEST_CASE("resonant rwa trajectory reproduces the closed-form rate") {
  lembas::DrivenTlsConfig cfg;
  const lembas::Trajectory traj = lembas::run_trajectory(
      lembas::driven_tls_system(cfg), lembas::driven_tls_initial_state(cfg),
      lembas::driven_tls_default_grid(cfg));
  double worst = 0.0;
  for (const auto& rec : traj.records) {
    worst = std::max(
        worst, std::abs(rec.dw_dt - lembas::analytic_tls_work(cfg, rec.t)));
    CHECK(rec.dq_dt == 0.0);
  }
  CHECK(worst < 1e-6 * (0.5 * cfg.delta_e * cfg.g));
}

TEST_CASE("the textbook rates from the engine match their closed form") {
  lembas::DrivenTlsConfig cfg;
  cfg.omega = 1.3;  // detuned, so the two definitions separate
  const lembas::SemiclassicalSystem sys = lembas::driven_tls_system(cfg);
  const auto states =
      lembas::evolve_full(sys, lembas::driven_tls_initial_state(cfg),
                          lembas::driven_tls_default_grid(cfg, 2048));
  const std::vector<double> t = lembas::driven_tls_default_grid(cfg, 2048).times();
  double worst = 0.0;
  for (size_t k = 0; k < states.size(); k += 64) {
    const lembas::OldDefinitionSplit split =
        lembas::old_split_semiclassical(sys, states[k].matrix(), t[k]);
    worst = std::max(worst, std::abs(split.work_rate -
                                     lembas::analytic_tls_work_old(cfg, t[k])));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("weak lab-frame driving approaches the co-rotating result") {
  lembas::DrivenTlsConfig rwa;
  rwa.g = 0.01;
  lembas::DrivenTlsConfig lab = rwa;
  lab.frame = lembas::Frame::kLab;

  auto peak_work = [](const lembas::DrivenTlsConfig& cfg, int n) {
    const lembas::Trajectory traj = lembas::run_trajectory(
        lembas::driven_tls_system(cfg),
        lembas::driven_tls_initial_state(cfg),
        lembas::driven_tls_default_grid(cfg, n));
    double peak = 0.0;
    for (const auto& rec : traj.records) {
      peak = std::max(peak, rec.w_cum);
    }
    return peak;
  };

  const double peak_rwa = peak_work(rwa, 4096);
  const double peak_lab = peak_work(lab, 65536);
  CHECK(std::abs(peak_lab - peak_rwa) < 0.02 * peak_rwa);
}

TEST_CASE("an idle exchange coupling keeps both spins frozen") {
  lembas::SwapConfig cfg;
  cfg.g = 0.0;
  const lembas::DensityOperator rho0 = lembas::swap_initial_state(cfg);
  const ComplexMatrix rho_a0 = lembas::partial_trace_b(rho0.matrix(), 2, 2);
  const lembas::Trajectory traj =
      lembas::run_trajectory(lembas::swap_system(cfg), rho0,
                             lembas::swap_default_grid(cfg, 128));
  for (const auto& rec : traj.records) {
    CHECK(lembas::frobenius_norm(rec.rho_a.matrix() - rho_a0) < 1e-12);
    CHECK(std::abs(rec.w_cum) < 1e-14);
    CHECK(std::abs(rec.q_cum) < 1e-14);
  }
}

TEST_CASE("closed-form exchange rates at the quarter period") {
  lembas::SwapConfig cfg;
  const double d = population_gap(cfg);
  const double t_quarter = 0.5 * M_PI / cfg.g;

  const double w_rate = lembas::analytic_swap_work(cfg, t_quarter);
  CHECK(w_rate == doctest::Approx(0.5 * cfg.g * d *
                                  (cfg.delta_e_b - cfg.delta_e_a))
                      .epsilon(1e-13));

  const double q_rate = lembas::analytic_swap_heat_a(cfg, t_quarter);
  CHECK(q_rate ==
        doctest::Approx(0.5 * cfg.g * d * cfg.delta_e_a).epsilon(1e-13));

  // Totals are the half-period integrals (factor 2/g from sin).
  CHECK(lembas::swap_work_total(cfg) ==
        doctest::Approx(d * (cfg.delta_e_b - cfg.delta_e_a)).epsilon(1e-13));
  CHECK(lembas::swap_heat_total_a(cfg) ==
        doctest::Approx(d * cfg.delta_e_a).epsilon(1e-13));

  // Identical splittings mean no imbalance and no exchange.
  lembas::SwapConfig symmetric;
  symmetric.delta_e_a = 1.0;
  symmetric.delta_e_b = 1.0 + 1e-12;
  CHECK(std::abs(lembas::analytic_swap_work(symmetric, t_quarter)) < 1e-12);
  CHECK(lembas::analytic_swap_work(cfg, 0.0) == 0.0);
}

TEST_CASE("frozen reference totals for the default exchange") {
  const lembas::SwapConfig cfg;
  CHECK(lembas::swap_work_total(cfg) ==
        doctest::Approx(0.1497384993478776).epsilon(1e-14));
  CHECK(lembas::swap_heat_total_a(cfg) ==
        doctest::Approx(0.1497384993478776).epsilon(1e-14));
  CHECK(lembas::swap_final_beta(cfg) == 2.0);
  CHECK(lembas::swap_efficiency(cfg) == doctest::Approx(-1.0));
}

TEST_CASE("efficiency follows the splitting ratio") {
  lembas::SwapConfig cfg;
  CHECK(lembas::swap_efficiency(cfg) == doctest::Approx(-1.0).epsilon(1e-14));
  cfg.delta_e_b = 1.5;
  CHECK(lembas::swap_efficiency(cfg) == doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("simulated exchange rates track the closed forms") {
  // The co-rotating generator is static, so its propagation is exact and
  // the closed forms must be hit to near round-off; the lab frame pays an
  // integrator penalty for its genuinely time-dependent generator.
  for (lembas::Frame frame : {lembas::Frame::kRwa, lembas::Frame::kLab}) {
    const double tol = frame == lembas::Frame::kRwa ? 1e-6 : 1e-4;
    lembas::SwapConfig cfg;
    cfg.frame = frame;
    const lembas::TimeGrid grid = lembas::swap_default_grid(cfg, 4096);
    const lembas::Trajectory local = lembas::run_trajectory(
        lembas::swap_system(cfg), lembas::swap_initial_state(cfg), grid);
    const lembas::Trajectory global = lembas::run_trajectory(
        lembas::swap_global_system(cfg), lembas::swap_initial_state(cfg),
        grid);

    const size_t quarter = local.records.size() / 4;
    const double scale = 0.5 * cfg.g;
    // q_cum counts heat received by A; the closed form counts heat that
    // flows back out, hence the sign flip.
    CHECK(std::abs(local.records[quarter].dq_dt +
                   lembas::analytic_swap_heat_a(
                       cfg, local.records[quarter].t)) < tol * scale);
    CHECK(std::abs(global.records[quarter].dw_dt -
                   lembas::analytic_swap_work(
                       cfg, global.records[quarter].t)) < tol * scale);

    // The joint pair only takes work from the control field.
    for (size_t k = 0; k < global.records.size(); k += 256) {
      CHECK(std::abs(global.records[k].dq_dt) <= 1e-12);
    }

    // Local bookkeeping agrees between the two frames on the totals.
    if (frame == lembas::Frame::kLab) {
      lembas::SwapConfig rwa_cfg;
      const lembas::Trajectory rwa_local = lembas::run_trajectory(
          lembas::swap_system(rwa_cfg), lembas::swap_initial_state(rwa_cfg),
          grid);
      CHECK(std::abs(local.records.back().q_cum -
                     rwa_local.records.back().q_cum) <
            1e-4 * std::abs(rwa_local.records.back().q_cum));
    }
  }
}

TEST_CASE("one full exchange reproduces totals, efficiency, and cooling") {
  lembas::SwapConfig cfg;
  const lembas::SwapRunResult result =
      lembas::run_swap(cfg, lembas::swap_default_grid(cfg));

  const double w_expected = lembas::swap_work_total(cfg);
  const double q_expected = lembas::swap_heat_total_a(cfg);
  CHECK(std::abs(result.w_ab_total - w_expected) < 1e-6 * std::abs(w_expected));
  CHECK(std::abs(result.q_a_total - q_expected) < 1e-6 * std::abs(q_expected));
  CHECK(std::abs(result.eta - lembas::swap_efficiency(cfg)) < 1e-6);
  CHECK(result.final_beta_distance < 1e-8);

  // Spin A ends diagonal: thermal with respect to its own splitting.
  const ComplexMatrix rho_final =
      result.local_a.records.back().rho_a.matrix();
  CHECK(std::abs(rho_final(0, 1)) < 1e-10);
}

TEST_CASE("closed-form measured Hamiltonian matches the engine") {
  lembas::SwapConfig cfg;
  const lembas::BipartiteSystem sys = lembas::swap_system(cfg);
  const lembas::DensityOperator rho0 = lembas::swap_initial_state(cfg);
  const ComplexMatrix rho_b0 = lembas::partial_trace_a(rho0.matrix(), 2, 2);

  const ComplexMatrix from_engine =
      sys.h_a +
      lembas::effective_hamiltonian(sys.h_int(0.0), rho_b0, 2, 2);
  const ComplexMatrix closed = lembas::analytic_swap_heff_a(cfg, 0.0);
  CHECK(lembas::frobenius_norm(closed - from_engine) < 1e-8);

  // It stays diagonal, and its drift is carried by cos(g t) alone.
  for (double t : {0.7, 3.0, 11.0}) {
    const ComplexMatrix h = lembas::analytic_swap_heff_a(cfg, t);
    CHECK(lembas::frobenius_norm(lembas::commutator(h, sigma_z())) < 1e-14);
    const ComplexMatrix mirrored =
        lembas::analytic_swap_heff_a(cfg, 2.0 * M_PI / cfg.g - t);
    CHECK(lembas::frobenius_norm(h - mirrored) < 1e-13);
  }

  // Along the trajectory the engine's measured Hamiltonian follows the
  // closed form within integrator accuracy.
  const lembas::TimeGrid grid = lembas::swap_default_grid(cfg, 1024);
  const auto states = lembas::evolve_full(sys, rho0, grid);
  const std::vector<double> times = grid.times();
  for (size_t k = 0; k < states.size(); k += 128) {
    const ComplexMatrix rho_b =
        lembas::partial_trace_a(states[k].matrix(), 2, 2);
    const ComplexMatrix engine =
        sys.h_a + lembas::effective_hamiltonian(sys.h_int(times[k]), rho_b, 2, 2);
    CHECK(lembas::frobenius_norm(
              engine - lembas::analytic_swap_heff_a(cfg, times[k])) < 1e-6);
  }
}

TEST_CASE("transverse far-detuned driving moves almost no energy") {
  const lembas::DriverDemoSummary summary =
      lembas::table1_driver_demo(lembas::DriveCoupling::kSigmaX, true);
  CHECK(summary.q_cum_max_abs == 0.0);
  CHECK(summary.w_cum_max_abs <= summary.amplitude_bound * (1.0 + 1e-9));
  CHECK(summary.w_cum_max_abs > 0.25 * summary.amplitude_bound);
  // Over a full cycle the drive takes back what it lent.
  CHECK(std::abs(summary.w_final) < 1e-6);

  const lembas::DriverDemoSummary resonant =
      lembas::table1_driver_demo(lembas::DriveCoupling::kSigmaX, false);
  CHECK(resonant.w_cum_max_abs > 10.0 * summary.w_cum_max_abs);
}

TEST_CASE("longitudinal driving is pure work on the populations") {
  const lembas::DriverDemoSummary summary =
      lembas::table1_driver_demo(lembas::DriveCoupling::kSigmaZ, false);
  CHECK(summary.q_cum_max_abs == 0.0);
  CHECK(summary.u_drift_max_abs > 1e-3);  // energy genuinely moves
  CHECK(summary.w_cum_max_abs ==
        doctest::Approx(summary.amplitude_bound).epsilon(1e-6));
  // All internal-energy change is work.
  CHECK(summary.u_drift_max_abs ==
        doctest::Approx(summary.w_cum_max_abs).epsilon(1e-7));
}

TEST_CASE("default grids span one cycle of their scenario") {
  lembas::DrivenTlsConfig tls;
  const lembas::TimeGrid tls_grid = lembas::driven_tls_default_grid(tls);
  CHECK(tls_grid.t1 == doctest::Approx(2.0 * M_PI / tls.rabi()));

  lembas::SwapConfig swap;
  const lembas::TimeGrid swap_grid = lembas::swap_default_grid(swap);
  CHECK(swap_grid.t1 == doctest::Approx(M_PI / swap.g));

  swap.g = 0.0;
  CHECK(lembas::swap_default_grid(swap).t1 == doctest::Approx(M_PI));
}
