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

#include "lembas/states.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "lembas/errors.hpp"

namespace lembas {

namespace {

constexpr double kTraceTol = 1e-10;
constexpr double kCorrelationTol = 1e-10;

ComplexMatrix validated_density_matrix(ComplexMatrix m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("density operator must be square, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
  if (m.rows() == 0) {
    throw DimensionError("density operator must be nonempty");
  }
  if (!is_hermitian(m)) {
    throw ValidationError("density operator is not Hermitian within tolerance");
  }
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw ValidationError("density operator trace is " + std::to_string(tr) +
                          ", expected 1");
  }
  ComplexMatrix sym = hermitize(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericalConsistencyError("density validation: eigensolver failed");
  }
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -kPsdTol) {
    throw ValidationError("density operator has eigenvalue " +
                          std::to_string(min_eig) +
                          ", not positive semidefinite");
  }
  return sym;
}

}  // namespace

DensityOperator::DensityOperator(ComplexMatrix m)
    : mat_(validated_density_matrix(std::move(m))) {}

double DensityOperator::entropy() const { return von_neumann_entropy(mat_); }

DensityOperator validate_density(ComplexMatrix m) {
  return DensityOperator(std::move(m));
}

DensityOperator thermal_state(const ComplexMatrix& h, double beta) {
  require_hermitian(h, "thermal_state");
  if (std::isnan(beta) || beta < 0.0) {
    throw ValidationError("thermal_state: beta must be nonnegative, got " +
                          std::to_string(beta));
  }
  const HermitianEig eig = herm_eig(h);
  const Eigen::Index n = eig.values.size();
  const double e_min = eig.values.minCoeff();

  RealVector weights(n);
  if (std::isinf(beta)) {
    // Zero temperature: equal weight on the ground space.
    const double span = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < n; ++i) {
      weights(i) = (eig.values(i) - e_min <= 1e-12 * span) ? 1.0 : 0.0;
    }
  } else {
    for (Eigen::Index i = 0; i < n; ++i) {
      weights(i) = std::exp(-beta * (eig.values(i) - e_min));
    }
  }
  weights /= weights.sum();

  ComplexMatrix rho = eig.vectors *
                      weights.cast<Complex>().asDiagonal() *
                      eig.vectors.adjoint();
  return DensityOperator(std::move(rho));
}

CorrelationOperator::CorrelationOperator(ComplexMatrix m, Eigen::Index dim_a,
                                         Eigen::Index dim_b)
    : mat_(std::move(m)), dim_a_(dim_a), dim_b_(dim_b) {
  if (mat_.rows() != dim_a_ * dim_b_ || mat_.cols() != dim_a_ * dim_b_) {
    throw DimensionError("correlation operator is " +
                         std::to_string(mat_.rows()) + "x" +
                         std::to_string(mat_.cols()) + ", expected " +
                         std::to_string(dim_a_ * dim_b_) + " square");
  }
  if (!is_hermitian(mat_)) {
    throw ValidationError("correlation operator is not Hermitian");
  }
  const double scale = std::max(1.0, mat_.norm());
  if (std::abs(mat_.trace()) > kCorrelationTol * scale) {
    throw ValidationError("correlation operator is not traceless");
  }
  if (partial_trace_b(mat_, dim_a_, dim_b_).norm() > kCorrelationTol * scale) {
    throw ValidationError(
        "correlation operator has nonvanishing partial trace over B");
  }
  if (partial_trace_a(mat_, dim_a_, dim_b_).norm() > kCorrelationTol * scale) {
    throw ValidationError(
        "correlation operator has nonvanishing partial trace over A");
  }
  mat_ = hermitize(mat_);
}

CorrelationOperator correlation_operator(const DensityOperator& joint,
                                         Eigen::Index dim_a,
                                         Eigen::Index dim_b) {
  if (joint.dim() != dim_a * dim_b) {
    throw DimensionError("correlation_operator: joint state dimension " +
                         std::to_string(joint.dim()) + " != " +
                         std::to_string(dim_a) + "*" + std::to_string(dim_b));
  }
  const ComplexMatrix rho_a = partial_trace_b(joint.matrix(), dim_a, dim_b);
  const ComplexMatrix rho_b = partial_trace_a(joint.matrix(), dim_a, dim_b);
  ComplexMatrix chi = joint.matrix() - kron(rho_a, rho_b);
  // Scrub numerical residue so the constructor's exact-property checks hold.
  chi = hermitize(chi);
  return CorrelationOperator(std::move(chi), dim_a, dim_b);
}

ComplexMatrix BipartiteSystem::evolution_generator(double t) const {
  const ComplexMatrix ident_a = ComplexMatrix::Identity(dim_a, dim_a);
  const ComplexMatrix ident_b = ComplexMatrix::Identity(dim_b, dim_b);
  ComplexMatrix local_a = h_a;
  if (frame_a.size() > 0) local_a += frame_a;
  ComplexMatrix local_b = h_b;
  if (frame_b.size() > 0) local_b += frame_b;
  return kron(local_a, ident_b) + kron(ident_a, local_b) + h_int(t);
}

void BipartiteSystem::validate() const {
  if (dim_a < 1 || dim_b < 1) {
    throw DimensionError("bipartite system: dimensions must be positive");
  }
  if (h_a.rows() != dim_a || h_a.cols() != dim_a) {
    throw DimensionError("bipartite system: h_a must be " +
                         std::to_string(dim_a) + "x" + std::to_string(dim_a));
  }
  if (h_b.rows() != dim_b || h_b.cols() != dim_b) {
    throw DimensionError("bipartite system: h_b must be " +
                         std::to_string(dim_b) + "x" + std::to_string(dim_b));
  }
  require_hermitian(h_a, "bipartite system h_a");
  require_hermitian(h_b, "bipartite system h_b");
  if (frame_a.size() > 0) {
    if (frame_a.rows() != dim_a || frame_a.cols() != dim_a) {
      throw DimensionError("bipartite system: frame_a has wrong shape");
    }
    require_hermitian(frame_a, "bipartite system frame_a");
  }
  if (frame_b.size() > 0) {
    if (frame_b.rows() != dim_b || frame_b.cols() != dim_b) {
      throw DimensionError("bipartite system: frame_b has wrong shape");
    }
    require_hermitian(frame_b, "bipartite system frame_b");
  }
  if (!h_int) {
    throw ValidationError("bipartite system: interaction callback is empty");
  }
  const ComplexMatrix h0 = h_int(0.0);
  if (h0.rows() != dim_a * dim_b || h0.cols() != dim_a * dim_b) {
    throw DimensionError("bipartite system: h_int(0) must be " +
                         std::to_string(dim_a * dim_b) + " square");
  }
  require_hermitian(h0, "bipartite system h_int(0)");
}

ComplexMatrix SemiclassicalSystem::evolution_generator(double t) const {
  ComplexMatrix gen = h_a;
  if (frame.size() > 0) gen += frame;
  if (h_drive) gen += h_drive(t);
  return gen;
}

void SemiclassicalSystem::validate() const {
  if (dim < 1) {
    throw DimensionError("semiclassical system: dimension must be positive");
  }
  if (h_a.rows() != dim || h_a.cols() != dim) {
    throw DimensionError("semiclassical system: h_a must be " +
                         std::to_string(dim) + "x" + std::to_string(dim));
  }
  require_hermitian(h_a, "semiclassical system h_a");
  if (frame.size() > 0) {
    if (frame.rows() != dim || frame.cols() != dim) {
      throw DimensionError("semiclassical system: frame has wrong shape");
    }
    require_hermitian(frame, "semiclassical system frame");
  }
  if (h_drive) {
    const ComplexMatrix d0 = h_drive(0.0);
    if (d0.rows() != dim || d0.cols() != dim) {
      throw DimensionError("semiclassical system: h_drive(0) has wrong shape");
    }
    require_hermitian(d0, "semiclassical system h_drive(0)");
  }
}

}  // namespace lembas
