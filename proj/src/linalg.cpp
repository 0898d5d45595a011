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

#include "lembas/linalg.hpp"

#include <cmath>
#include <string>

namespace lembas {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": matrix must be square, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
}

}  // namespace

double frobenius_norm(const ComplexMatrix& m) { return m.norm(); }

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.norm());
  return (m - m.adjoint()).norm() <= tol * scale;
}

void require_hermitian(const ComplexMatrix& m, const char* what) {
  require_square(m, what);
  if (!is_hermitian(m)) {
    throw ValidationError(std::string(what) + ": not Hermitian within tolerance");
  }
}

ComplexMatrix hermitize(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix partial_trace_b(const ComplexMatrix& m, Eigen::Index dim_a,
                              Eigen::Index dim_b) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
    throw DimensionError("partial_trace_b: operator is " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected " +
                         std::to_string(dim_a * dim_b) + " square");
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
  for (Eigen::Index i = 0; i < dim_a; ++i)
    for (Eigen::Index j = 0; j < dim_a; ++j)
      for (Eigen::Index k = 0; k < dim_b; ++k)
        out(i, j) += m(i * dim_b + k, j * dim_b + k);
  return out;
}

ComplexMatrix partial_trace_a(const ComplexMatrix& m, Eigen::Index dim_a,
                              Eigen::Index dim_b) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
    throw DimensionError("partial_trace_a: operator is " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected " +
                         std::to_string(dim_a * dim_b) + " square");
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
  for (Eigen::Index k = 0; k < dim_b; ++k)
    for (Eigen::Index l = 0; l < dim_b; ++l)
      for (Eigen::Index i = 0; i < dim_a; ++i)
        out(k, l) += m(i * dim_b + k, i * dim_b + l);
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw DimensionError("commutator: operands must be square and same size");
  }
  return a * b - b * a;
}

HermitianEig herm_eig(const ComplexMatrix& m) {
  require_hermitian(m, "herm_eig");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(m));
  if (solver.info() != Eigen::Success) {
    throw NumericalConsistencyError("herm_eig: eigensolver did not converge");
  }
  HermitianEig out{solver.eigenvalues(), solver.eigenvectors()};
  // Fix the arbitrary per-column phase: first component with modulus above
  // 1e-8 becomes real positive. A normalized vector always has one.
  for (Eigen::Index c = 0; c < out.vectors.cols(); ++c) {
    for (Eigen::Index r = 0; r < out.vectors.rows(); ++r) {
      const Complex v = out.vectors(r, c);
      if (std::abs(v) > 1e-8) {
        out.vectors.col(c) *= std::conj(v) / std::abs(v);
        break;
      }
    }
  }
  return out;
}

ComplexMatrix propagator(const ComplexMatrix& h, double dt) {
  const HermitianEig eig = herm_eig(h);
  const Eigen::ArrayXcd phases =
      (Complex(0.0, -dt) * eig.values.array().cast<Complex>()).exp();
  return eig.vectors * phases.matrix().asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix matrix_log_psd(const ComplexMatrix& m) {
  const HermitianEig eig = herm_eig(m);
  const double scale = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
  ComplexVector logs(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double v = eig.values(i);
    if (v < -kPsdTol * scale) {
      throw ValidationError(
          "matrix_log_psd: eigenvalue " + std::to_string(v) +
          " is negative beyond tolerance");
    }
    logs(i) = (v > kSupportTol * scale) ? Complex(std::log(v), 0.0)
                                        : Complex(0.0, 0.0);
  }
  return eig.vectors * logs.asDiagonal() * eig.vectors.adjoint();
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("trace_distance: operands must have the same shape");
  }
  const HermitianEig eig = herm_eig(a - b);
  return 0.5 * eig.values.cwiseAbs().sum();
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  const HermitianEig eig = herm_eig(rho);
  const double scale = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
  double s = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double v = eig.values(i);
    if (v < -kPsdTol * scale) {
      throw ValidationError(
          "von_neumann_entropy: eigenvalue " + std::to_string(v) +
          " is negative beyond tolerance");
    }
    if (v > kSupportTol * scale) s -= v * std::log(v);
  }
  return s;
}

}  // namespace lembas
