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

#include <Eigen/Dense>
#include <complex>

#include "lembas/errors.hpp"

namespace lembas {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Relative Frobenius tolerance for hermiticity checks, with an absolute
// floor so near-zero matrices are not held to an impossible standard.
inline constexpr double kHermitianTol = 1e-10;

// Eigenvalues of a nominally positive semidefinite operator may dip this far
// below zero before we call it an error.
inline constexpr double kPsdTol = 1e-10;

// Below this (relative to the largest eigenvalue, floor 1) an eigenvalue is
// treated as exactly zero by matrix_log_psd and the entropy routines.
inline constexpr double kSupportTol = 1e-14;

double frobenius_norm(const ComplexMatrix& m);

// ||m - m^dag||_F against kHermitianTol * max(1, ||m||_F).
bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

// Throws ValidationError mentioning `what` if m fails is_hermitian.
void require_hermitian(const ComplexMatrix& m, const char* what);

// (m + m^dag)/2. Cheap hygiene before eigendecompositions.
ComplexMatrix hermitize(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Partial traces of an operator on a (dim_a x dim_b) tensor-product space,
// with subsystem A as the slow (row-major) index.
ComplexMatrix partial_trace_b(const ComplexMatrix& m, Eigen::Index dim_a,
                              Eigen::Index dim_b);
ComplexMatrix partial_trace_a(const ComplexMatrix& m, Eigen::Index dim_a,
                              Eigen::Index dim_b);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

// Eigendecomposition of a Hermitian matrix. Eigenvalues ascending;
// each eigenvector's first component of modulus > 1e-8 is made real and
// positive so the decomposition is deterministic.
struct HermitianEig {
  RealVector values;
  ComplexMatrix vectors;  // columns
};

HermitianEig herm_eig(const ComplexMatrix& m);

// exp(-i h dt) through the eigendecomposition of h; exactly unitary up to
// round-off for any dt.
ComplexMatrix propagator(const ComplexMatrix& h, double dt);

// Logarithm of a positive semidefinite matrix on its support; eigenvalues
// below the support cut contribute nothing (0 log 0 := 0 convention).
// Eigenvalues below -kPsdTol * scale raise ValidationError.
ComplexMatrix matrix_log_psd(const ComplexMatrix& m);

// -tr(rho log rho) in nats, via the spectrum, same support convention.
double von_neumann_entropy(const ComplexMatrix& rho);

// (1/2) sum |eig(a - b)| for Hermitian a, b.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace lembas
