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
#include <vector>

#include "lembas/states.hpp"

namespace lembas {

// Basis with respect to which "moves populations" versus "only energy
// bookkeeping" is judged. Energy mode groups the eigenvectors of a
// reference Hamiltonian into degenerate blocks; explicit mode takes the
// caller's orthonormal vectors, one rank-1 projector each.
class MeasurementBasis {
 public:
  enum class Mode { kEnergy, kExplicit };

  // Projectors onto the (possibly degenerate) eigenspaces of h. Eigenvalues
  // closer than max(1e-12, 1e-10 * spectral span) share a projector.
  static MeasurementBasis energy_basis(const ComplexMatrix& h);

  // One projector per column of the unitary formed by the given orthonormal
  // vectors. Throws ValidationError if they are not orthonormal.
  static MeasurementBasis explicit_basis(const std::vector<ComplexVector>& vecs);

  const std::vector<ComplexMatrix>& projectors() const noexcept {
    return projectors_;
  }
  Eigen::Index dim() const noexcept { return dim_; }
  Mode mode() const noexcept { return mode_; }

  // Sum_k P_k m P_k: the part of m that commutes with every projector.
  ComplexMatrix block_diagonal(const ComplexMatrix& m) const;

 private:
  MeasurementBasis(std::vector<ComplexMatrix> projectors, Eigen::Index dim,
                   Mode mode)
      : projectors_(std::move(projectors)), dim_(dim), mode_(mode) {}

  std::vector<ComplexMatrix> projectors_;
  Eigen::Index dim_;
  Mode mode_;
};

// Mean-field Hamiltonian the subsystem sees through the interaction:
// tr_B[ h_ab (1 (x) rho_b) ].
ComplexMatrix effective_hamiltonian(const ComplexMatrix& h_ab,
                                    const ComplexMatrix& rho_b,
                                    Eigen::Index dim_a, Eigen::Index dim_b);

// Decomposition of the effective Hamiltonian into the part that preserves
// the measurement basis (h_eff1) and the remainder (h_eff2), together with
// the accounting Hamiltonian h_prime. In energy mode h_prime = h_a + h_eff1
// exactly; in explicit mode the basis need not diagonalize h_a, so h_prime
// is the block-diagonal part of h_a + h_eff.
struct LembasSplit {
  ComplexMatrix h_eff;
  ComplexMatrix h_eff1;
  ComplexMatrix h_eff2;
  ComplexMatrix h_prime;
};

LembasSplit lembas_split(const ComplexMatrix& h_eff, const ComplexMatrix& h_a,
                         const MeasurementBasis& basis);

// Incoherent generator from the correlation route: L = -i tr_B [h_int, chi],
// where h_int is the interaction operator (including any partner-local term
// the caller folded into it; such terms drop out of the partial trace) and
// chi is the correlation part of the joint state.
ComplexMatrix incoherent_generator_from_correlations(
    const ComplexMatrix& h_int, const CorrelationOperator& chi);

// Work rate: tr{ dh_eff1/dt rho } - i tr{ [h_prime, h_eff2] rho }.
// The result is real up to numerical residue; a residue above
// 1e-10 * max(1, |Re|) throws NumericalConsistencyError.
double work_rate(const ComplexMatrix& dh_eff1_dt, const ComplexMatrix& h_prime,
                 const ComplexMatrix& h_eff2, const ComplexMatrix& rho_a);

// Heat rate: tr{ h_prime l_inc }, with the same reality check as work_rate.
double heat_rate(const ComplexMatrix& h_prime, const ComplexMatrix& l_inc);

// Internal energy tr{ h_prime rho }.
double internal_energy(const ComplexMatrix& h_prime, const ComplexMatrix& rho);

// Entropy production rate -tr{ l_inc log rho }. Eigenvalues of rho at or
// below the support cutoff contribute nothing provided l_inc does not feed
// them; if it does (|<i|L|i>| > 1e-12 * max(1, ||L||_F) on a kernel vector),
// the rate is divergent and KernelOverlapError is thrown.
double entropy_rate(const ComplexMatrix& l_inc, const ComplexMatrix& rho);

// Local temperature dQ/dS for the instantaneous rates. Returns nullopt when
// |dS/dt| <= eps_rate (the quotient means nothing at a stationary point of
// the entropy) or when the entropy rate itself is undefined because of
// kernel overlap.
std::optional<double> local_temperature(const ComplexMatrix& h_prime,
                                        const ComplexMatrix& l_inc,
                                        const ComplexMatrix& rho,
                                        double eps_rate = 1e-12);

// Standard textbook splitting, for comparison: work tr{rho dh/dt}, heat
// tr{h drho/dt}.
struct OldDefinitionSplit {
  double work_rate;
  double heat_rate;
};

OldDefinitionSplit old_definition_split(const ComplexMatrix& h_total,
                                        const ComplexMatrix& dh_dt,
                                        const ComplexMatrix& rho,
                                        const ComplexMatrix& drho_dt);

}  // namespace lembas

