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
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "doctest.h"
#include "lembas/states.hpp"

namespace {

using lembas::Complex;
using lembas::ComplexMatrix;

ComplexMatrix sigma_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix sigma_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix random_hermitian(Eigen::Index n, std::mt19937& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = Complex(dist(rng), dist(rng));
    }
  }
  return ComplexMatrix(0.5 * (m + m.adjoint()));
}

ComplexMatrix random_density(Eigen::Index n, std::mt19937& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  ComplexMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      g(i, j) = Complex(dist(rng), dist(rng));
    }
  }
  const ComplexMatrix p = g * g.adjoint();
  return ComplexMatrix(p / p.trace().real());
}

}  // namespace

TEST_CASE("thermal state at infinite temperature is maximally mixed") {
  std::mt19937 rng(3);
  const ComplexMatrix h = random_hermitian(4, rng);
  const lembas::DensityOperator rho = lembas::thermal_state(h, 0.0);
  CHECK(lembas::frobenius_norm(rho.matrix() -
                               0.25 * ComplexMatrix::Identity(4, 4)) < 1e-13);
}

TEST_CASE("thermal state at zero temperature is the ground projector") {
  const ComplexMatrix h = 0.5 * sigma_z();
  const lembas::DensityOperator rho =
      lembas::thermal_state(h, std::numeric_limits<double>::infinity());
  ComplexMatrix ground = ComplexMatrix::Zero(2, 2);
  ground(1, 1) = 1.0;  // sigma_z ground state is the second basis vector
  CHECK(lembas::frobenius_norm(rho.matrix() - ground) < 1e-14);
}

TEST_CASE("degenerate ground space is populated uniformly at beta infinity") {
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h(2, 2) = 1.0;  // two degenerate ground levels below one excited level
  const lembas::DensityOperator rho =
      lembas::thermal_state(h, std::numeric_limits<double>::infinity());
  ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
  expected(0, 0) = 0.5;
  expected(1, 1) = 0.5;
  CHECK(lembas::frobenius_norm(rho.matrix() - expected) < 1e-14);
}

TEST_CASE("thermal qubit populations follow the Boltzmann weights") {
  const ComplexMatrix h = 0.5 * sigma_z();
  const lembas::DensityOperator rho = lembas::thermal_state(h, 2.0);
  const double p_excited = 1.0 / (1.0 + std::exp(2.0));
  CHECK(rho.matrix()(0, 0).real() ==
        doctest::Approx(p_excited).epsilon(1e-14));
  CHECK(rho.matrix()(1, 1).real() ==
        doctest::Approx(1.0 - p_excited).epsilon(1e-14));
}

TEST_CASE("thermal state commutes with its Hamiltonian") {
  std::mt19937 rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    const ComplexMatrix h = random_hermitian(3, rng);
    const lembas::DensityOperator rho = lembas::thermal_state(h, 0.8);
    const ComplexMatrix c = lembas::commutator(rho.matrix(), h);
    CHECK(lembas::frobenius_norm(c) < 1e-12);
  }
}

TEST_CASE("thermal entropy decreases with beta") {
  std::mt19937 rng(7);
  const ComplexMatrix h = random_hermitian(4, rng);
  double previous = std::numeric_limits<double>::infinity();
  for (double beta : {0.0, 0.3, 1.0, 3.0, 10.0}) {
    const double s = lembas::thermal_state(h, beta).entropy();
    CHECK(s < previous + 1e-12);
    previous = s;
  }
}

TEST_CASE("thermal state survives extreme beta without overflow") {
  const ComplexMatrix h = 0.5 * sigma_z();
  const lembas::DensityOperator rho = lembas::thermal_state(h, 1e4);
  CHECK(rho.matrix()(1, 1).real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("negative beta is rejected") {
  CHECK_THROWS_AS(lembas::thermal_state(sigma_z(), -0.1),
                  lembas::ValidationError);
}

TEST_CASE("product states carry no correlations") {
  std::mt19937 rng(11);
  const ComplexMatrix rho_a = random_density(2, rng);
  const ComplexMatrix rho_b = random_density(3, rng);
  const lembas::DensityOperator joint =
      lembas::validate_density(lembas::kron(rho_a, rho_b));
  const lembas::CorrelationOperator chi =
      lembas::correlation_operator(joint, 2, 3);
  CHECK(lembas::frobenius_norm(chi.matrix()) < 1e-14);
}

TEST_CASE("Bell state correlations are the projector minus the product") {
  Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(4);
  phi(0) = 1.0 / std::sqrt(2.0);
  phi(3) = 1.0 / std::sqrt(2.0);
  const ComplexMatrix projector = phi * phi.adjoint();
  const lembas::DensityOperator joint = lembas::validate_density(projector);
  const lembas::CorrelationOperator chi =
      lembas::correlation_operator(joint, 2, 2);
  const ComplexMatrix expected =
      projector - 0.25 * ComplexMatrix::Identity(4, 4);
  CHECK(lembas::frobenius_norm(chi.matrix() - expected) < 1e-14);
}

TEST_CASE("correlation operators are traceless with vanishing partial traces") {
  std::mt19937 rng(13);
  for (int rep = 0; rep < 10; ++rep) {
    const lembas::DensityOperator joint =
        lembas::validate_density(random_density(6, rng));
    const lembas::CorrelationOperator chi =
        lembas::correlation_operator(joint, 2, 3);
    CHECK(std::abs(chi.matrix().trace()) < 1e-12);
    CHECK(lembas::frobenius_norm(
              lembas::partial_trace_b(chi.matrix(), 2, 3)) < 1e-12);
    CHECK(lembas::frobenius_norm(
              lembas::partial_trace_a(chi.matrix(), 2, 3)) < 1e-12);
  }
}

TEST_CASE("correlation operator rejects inconsistent cuts") {
  std::mt19937 rng(17);
  const lembas::DensityOperator joint =
      lembas::validate_density(random_density(6, rng));
  CHECK_THROWS_AS(lembas::correlation_operator(joint, 2, 2),
                  lembas::DimensionError);
}

TEST_CASE("the maximally mixed qubit is accepted") {
  const lembas::DensityOperator rho =
      lembas::validate_density(0.5 * ComplexMatrix::Identity(2, 2));
  CHECK(rho.dim() == 2);
}

TEST_CASE("density validation names the violated property") {
  ComplexMatrix overweight = ComplexMatrix::Zero(2, 2);
  overweight(0, 0) = 0.6;
  overweight(1, 1) = 0.6;
  CHECK_THROWS_WITH_AS(lembas::validate_density(overweight),
                       doctest::Contains("trace"), lembas::ValidationError);

  // sigma_x is Hermitian but traceless, so the trace check trips first.
  CHECK_THROWS_WITH_AS(lembas::validate_density(sigma_x()),
                       doctest::Contains("trace"), lembas::ValidationError);

  ComplexMatrix indefinite = ComplexMatrix::Zero(2, 2);
  indefinite(0, 0) = 1.5;
  indefinite(1, 1) = -0.5;
  CHECK_THROWS_WITH_AS(lembas::validate_density(indefinite),
                       doctest::Contains("positive"),
                       lembas::ValidationError);

  ComplexMatrix skewed(2, 2);
  skewed << 0.5, 1.0, 0.0, 0.5;
  CHECK_THROWS_WITH_AS(lembas::validate_density(skewed),
                       doctest::Contains("Hermitian"),
                       lembas::ValidationError);
}

TEST_CASE("bipartite generator assembles local, frame, and coupling parts") {
  lembas::BipartiteSystem sys;
  sys.dim_a = 2;
  sys.dim_b = 2;
  sys.h_a = 0.5 * sigma_z();
  sys.h_b = sigma_z();
  const ComplexMatrix v = lembas::kron(sigma_x(), sigma_x());
  sys.h_int = [v](double) { return v; };
  sys.validate();

  const ComplexMatrix expected =
      lembas::kron(sys.h_a, ComplexMatrix::Identity(2, 2)) +
      lembas::kron(ComplexMatrix::Identity(2, 2), sys.h_b) + v;
  CHECK(lembas::frobenius_norm(sys.evolution_generator(0.3) - expected) <
        1e-14);

  sys.frame_a = -0.5 * sigma_z();
  const ComplexMatrix shifted =
      expected + lembas::kron(sys.frame_a, ComplexMatrix::Identity(2, 2));
  CHECK(lembas::frobenius_norm(sys.evolution_generator(0.3) - shifted) <
        1e-14);
}

TEST_CASE("system validation catches shape mistakes") {
  lembas::BipartiteSystem sys;
  sys.dim_a = 2;
  sys.dim_b = 2;
  sys.h_a = ComplexMatrix::Identity(3, 3);  // wrong size for dim_a
  sys.h_b = sigma_z();
  sys.h_int = [](double) { return ComplexMatrix::Zero(4, 4); };
  CHECK_THROWS_AS(sys.validate(), lembas::DimensionError);

  lembas::SemiclassicalSystem driven;
  driven.dim = 2;
  driven.h_a = 0.5 * sigma_z();
  driven.h_drive = [](double) { return ComplexMatrix::Zero(3, 3); };
  CHECK_THROWS_AS(driven.validate(), lembas::DimensionError);
}

TEST_CASE("semiclassical generator is the local term plus the drive") {
  lembas::SemiclassicalSystem sys;
  sys.dim = 2;
  sys.h_a = 0.5 * sigma_z();
  sys.h_drive = [](double t) {
    return ComplexMatrix(0.1 * std::sin(t) * sigma_x());
  };
  sys.validate();
  const ComplexMatrix expected =
      0.5 * sigma_z() + 0.1 * std::sin(0.4) * sigma_x();
  CHECK(lembas::frobenius_norm(sys.evolution_generator(0.4) - expected) <
        1e-14);
}
