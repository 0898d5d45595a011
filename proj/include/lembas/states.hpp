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

#include <functional>

#include "lembas/linalg.hpp"

namespace lembas {

// Validated density operator: Hermitian, unit trace, positive semidefinite
// (all within the linalg tolerances). The stored matrix is hermitized so
// downstream eigensolves never see asymmetry noise.
class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix m);

  const ComplexMatrix& matrix() const noexcept { return mat_; }
  Eigen::Index dim() const noexcept { return mat_.rows(); }

  // Von Neumann entropy in nats.
  double entropy() const;

 private:
  ComplexMatrix mat_;
};

// Validates and wraps a candidate density matrix. Throws ValidationError
// with a message naming the violated property (hermiticity, trace, or
// positivity).
DensityOperator validate_density(ComplexMatrix m);

// Gibbs state exp(-beta h)/Z. Computed from the spectrum with the largest
// eigenvalue shifted out of the exponent, so large beta does not underflow
// the whole numerator. beta = +infinity yields the normalized projector
// onto the ground space; beta < 0 throws ValidationError.
DensityOperator thermal_state(const ComplexMatrix& h, double beta);

// Correlation part of a joint state: chi = rho_ab - rho_a (x) rho_b.
// Hermitian, traceless, and both partial traces vanish identically.
class CorrelationOperator {
 public:
  CorrelationOperator(ComplexMatrix m, Eigen::Index dim_a, Eigen::Index dim_b);

  const ComplexMatrix& matrix() const noexcept { return mat_; }
  Eigen::Index dim_a() const noexcept { return dim_a_; }
  Eigen::Index dim_b() const noexcept { return dim_b_; }

 private:
  ComplexMatrix mat_;
  Eigen::Index dim_a_;
  Eigen::Index dim_b_;
};

// Builds chi from a joint state and the cut dimensions.
CorrelationOperator correlation_operator(const DensityOperator& joint,
                                         Eigen::Index dim_a,
                                         Eigen::Index dim_b);

// Bipartite setup: local Hamiltonians plus a (possibly time dependent)
// interaction. The optional frame fields are evolution-only shifts: they
// enter the propagator but never the energy accounting, which is how a
// rotating-frame description keeps the lab-frame bookkeeping. dh_int_dt
// may be left empty; callers that need it fall back to a centered finite
// difference.
struct BipartiteSystem {
  Eigen::Index dim_a = 0;
  Eigen::Index dim_b = 0;
  ComplexMatrix h_a;
  ComplexMatrix h_b;
  std::function<ComplexMatrix(double)> h_int;
  std::function<ComplexMatrix(double)> dh_int_dt;
  ComplexMatrix frame_a;  // empty means zero
  ComplexMatrix frame_b;  // empty means zero
  // Set when the evolution generator does not depend on t; the stepper then
  // diagonalizes it once instead of per step.
  bool static_generator = false;

  // kron(h_a + frame_a, I) + kron(I, h_b + frame_b) + h_int(t).
  ComplexMatrix evolution_generator(double t) const;

  // Dimension and hermiticity checks; throws on violation.
  void validate() const;
};

// Subsystem driven by a classical field: no environment degrees of freedom
// are tracked, the drive enters as a time dependent term in the local
// Hamiltonian. The frame field follows the same evolution-only convention
// as in BipartiteSystem.
struct SemiclassicalSystem {
  Eigen::Index dim = 0;
  ComplexMatrix h_a;
  std::function<ComplexMatrix(double)> h_drive;
  std::function<ComplexMatrix(double)> dh_drive_dt;
  ComplexMatrix frame;  // empty means zero
  bool static_generator = false;

  // h_a + frame + h_drive(t).
  ComplexMatrix evolution_generator(double t) const;

  void validate() const;
};

}  // namespace lembas

