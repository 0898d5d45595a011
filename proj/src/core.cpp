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

#include "lembas/core.hpp"

#include <cmath>
#include <string>

#include "lembas/errors.hpp"

namespace lembas {

namespace {

constexpr double kRealityTol = 1e-10;
constexpr double kKernelFeedTol = 1e-12;

// Trace of a product, real part enforced: the quantities these feed are
// expectation values of Hermitian observables, so a large imaginary residue
// signals a bug upstream rather than physics.
double real_trace(const Complex& tr, const char* what) {
  const double re = tr.real();
  const double im = tr.imag();
  if (std::abs(im) > kRealityTol * std::max(1.0, std::abs(re))) {
    throw NumericalConsistencyError(
        std::string(what) + ": imaginary residue " + std::to_string(im) +
        " on nominally real trace " + std::to_string(re));
  }
  return re;
}

}  // namespace

MeasurementBasis MeasurementBasis::energy_basis(const ComplexMatrix& h) {
  const HermitianEig eig = herm_eig(h);
  const Eigen::Index n = eig.values.size();
  const double span = eig.values(n - 1) - eig.values(0);
  const double tol = std::max(1e-12, 1e-10 * span);

  std::vector<ComplexMatrix> projectors;
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && eig.values(stop) - eig.values(stop - 1) <= tol) ++stop;
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    for (Eigen::Index c = start; c < stop; ++c) {
      p += eig.vectors.col(c) * eig.vectors.col(c).adjoint();
    }
    projectors.push_back(std::move(p));
    start = stop;
  }
  return MeasurementBasis(std::move(projectors), n, Mode::kEnergy);
}

MeasurementBasis MeasurementBasis::explicit_basis(
    const std::vector<ComplexVector>& vecs) {
  if (vecs.empty()) {
    throw ValidationError("explicit_basis: no vectors given");
  }
  const Eigen::Index n = vecs.front().size();
  if (static_cast<Eigen::Index>(vecs.size()) != n) {
    throw DimensionError("explicit_basis: need exactly " + std::to_string(n) +
                         " vectors for dimension " + std::to_string(n) +
                         ", got " + std::to_string(vecs.size()));
  }
  ComplexMatrix u(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    if (vecs[c].size() != n) {
      throw DimensionError("explicit_basis: vector " + std::to_string(c) +
                           " has length " + std::to_string(vecs[c].size()) +
                           ", expected " + std::to_string(n));
    }
    u.col(c) = vecs[c];
  }
  if ((u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm() > 1e-10) {
    throw ValidationError("explicit_basis: vectors are not orthonormal");
  }
  std::vector<ComplexMatrix> projectors;
  projectors.reserve(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    projectors.push_back(u.col(c) * u.col(c).adjoint());
  }
  return MeasurementBasis(std::move(projectors), n, Mode::kExplicit);
}

ComplexMatrix MeasurementBasis::block_diagonal(const ComplexMatrix& m) const {
  if (m.rows() != dim_ || m.cols() != dim_) {
    throw DimensionError("block_diagonal: operator is " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", basis dimension is " +
                         std::to_string(dim_));
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (const ComplexMatrix& p : projectors_) {
    out += p * m * p;
  }
  return out;
}

ComplexMatrix effective_hamiltonian(const ComplexMatrix& h_ab,
                                    const ComplexMatrix& rho_b,
                                    Eigen::Index dim_a, Eigen::Index dim_b) {
  if (h_ab.rows() != dim_a * dim_b || h_ab.cols() != dim_a * dim_b) {
    throw DimensionError("effective_hamiltonian: joint operator is " +
                         std::to_string(h_ab.rows()) + "x" +
                         std::to_string(h_ab.cols()) + ", expected " +
                         std::to_string(dim_a * dim_b) + " square");
  }
  if (rho_b.rows() != dim_b || rho_b.cols() != dim_b) {
    throw DimensionError("effective_hamiltonian: rho_b has wrong shape");
  }
  const ComplexMatrix ident_a = ComplexMatrix::Identity(dim_a, dim_a);
  return hermitize(
      partial_trace_b(h_ab * kron(ident_a, rho_b), dim_a, dim_b));
}

LembasSplit lembas_split(const ComplexMatrix& h_eff, const ComplexMatrix& h_a,
                         const MeasurementBasis& basis) {
  if (h_a.rows() != basis.dim() || h_eff.rows() != basis.dim()) {
    throw DimensionError("lembas_split: operator dimension mismatch");
  }
  LembasSplit out;
  out.h_eff = h_eff;
  out.h_eff1 = basis.block_diagonal(h_eff);
  out.h_eff2 = h_eff - out.h_eff1;
  // In energy mode the projectors reproduce h_a exactly, so skip the
  // sandwich and avoid reinjecting round-off into the accounting operator.
  out.h_prime = (basis.mode() == MeasurementBasis::Mode::kEnergy)
                    ? ComplexMatrix(h_a + out.h_eff1)
                    : ComplexMatrix(basis.block_diagonal(h_a) + out.h_eff1);
  return out;
}

ComplexMatrix incoherent_generator_from_correlations(
    const ComplexMatrix& h_int, const CorrelationOperator& chi) {
  const Eigen::Index dim_a = chi.dim_a();
  const Eigen::Index dim_b = chi.dim_b();
  if (h_int.rows() != dim_a * dim_b || h_int.cols() != dim_a * dim_b) {
    throw DimensionError(
        "incoherent_generator_from_correlations: interaction has wrong shape");
  }
  const ComplexMatrix comm = commutator(h_int, chi.matrix());
  ComplexMatrix l = Complex(0.0, -1.0) * partial_trace_b(comm, dim_a, dim_b);
  return hermitize(l);
}

double work_rate(const ComplexMatrix& dh_eff1_dt, const ComplexMatrix& h_prime,
                 const ComplexMatrix& h_eff2, const ComplexMatrix& rho_a) {
  const Complex drive_term = (dh_eff1_dt * rho_a).trace();
  const Complex mixing_term =
      Complex(0.0, -1.0) * (commutator(h_prime, h_eff2) * rho_a).trace();
  return real_trace(drive_term + mixing_term, "work_rate");
}

double heat_rate(const ComplexMatrix& h_prime, const ComplexMatrix& l_inc) {
  return real_trace((h_prime * l_inc).trace(), "heat_rate");
}

double internal_energy(const ComplexMatrix& h_prime,
                       const ComplexMatrix& rho) {
  return real_trace((h_prime * rho).trace(), "internal_energy");
}

double entropy_rate(const ComplexMatrix& l_inc, const ComplexMatrix& rho) {
  if (rho.rows() != l_inc.rows() || rho.cols() != l_inc.cols()) {
    throw DimensionError("entropy_rate: dimension mismatch");
  }
  const HermitianEig eig = herm_eig(rho);
  const double scale = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
  const double l_scale = std::max(1.0, l_inc.norm());
  const ComplexMatrix l_eig = eig.vectors.adjoint() * l_inc * eig.vectors;

  double rate = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double p = eig.values(i);
    const double feed = l_eig(i, i).real();
    if (p > kSupportTol * scale) {
      rate -= feed * std::log(p);
    } else if (std::abs(feed) > kKernelFeedTol * l_scale) {
      throw KernelOverlapError(
          "entropy_rate: generator feeds a zero eigenvalue of rho "
          "(population " + std::to_string(p) + ", rate " +
          std::to_string(feed) + "); the rate is divergent");
    }
  }
  return rate;
}

std::optional<double> local_temperature(const ComplexMatrix& h_prime,
                                        const ComplexMatrix& l_inc,
                                        const ComplexMatrix& rho,
                                        double eps_rate) {
  double ds_dt = 0.0;
  try {
    ds_dt = entropy_rate(l_inc, rho);
  } catch (const KernelOverlapError&) {
    return std::nullopt;
  }
  if (std::abs(ds_dt) <= eps_rate) {
    return std::nullopt;
  }
  return heat_rate(h_prime, l_inc) / ds_dt;
}

OldDefinitionSplit old_definition_split(const ComplexMatrix& h_total,
                                        const ComplexMatrix& dh_dt,
                                        const ComplexMatrix& rho,
                                        const ComplexMatrix& drho_dt) {
  OldDefinitionSplit out;
  out.work_rate = real_trace((rho * dh_dt).trace(), "old work rate");
  out.heat_rate = real_trace((h_total * drho_dt).trace(), "old heat rate");
  return out;
}

}  // namespace lembas
