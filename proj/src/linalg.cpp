// Copyright 2026 the qopr developers
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

#include "qopr/linalg.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "qopr/errors.hpp"
#include "qopr/tolerances.hpp"

namespace qopr {

namespace {

using EigenMat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EigenMat to_eigen(const ComplexMatrix& m) {
  return Eigen::Map<const EigenMat>(m.data().data(), static_cast<Eigen::Index>(m.rows()),
                                    static_cast<Eigen::Index>(m.cols()));
}

ComplexMatrix from_eigen(const EigenMat& e) {
  ComplexMatrix out(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  Eigen::Map<EigenMat>(out.data().data(), e.rows(), e.cols()) = e;
  return out;
}

void require_hermitian(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("hermitian_eigenvalues: matrix not square");
  const double scale = std::max(1.0, max_abs(m));
  double dev = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
  if (dev > tol::herm * scale) {
    throw DomainError("hermitian_eigenvalues: input deviates from Hermitian by " +
                      std::to_string(dev));
  }
}

}  // namespace

Eigensystem hermitian_eigensystem(const ComplexMatrix& m) {
  require_hermitian(m);
  const EigenMat a = to_eigen(m);
  // symmetrize away sub-tolerance dust before factorizing
  const EigenMat h = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<EigenMat> solver(h);
  if (solver.info() != Eigen::Success) {
    throw InternalConsistencyError("hermitian_eigensystem: solver did not converge");
  }
  Eigensystem out;
  out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + h.rows());
  const EigenMat vecs = solver.eigenvectors();
  for (Eigen::Index k = 0; k < h.cols(); ++k) {
    const double residual = (a * vecs.col(k) - out.values[static_cast<std::size_t>(k)] * vecs.col(k))
                                .template lpNorm<2>();
    if (residual > tol::eig) {
      throw InternalConsistencyError("hermitian_eigensystem: residual " + std::to_string(residual) +
                                     " exceeds bound");
    }
  }
  out.vectors = from_eigen(vecs);
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  return hermitian_eigensystem(m).values;
}

DetInverse det_and_inverse(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("det_and_inverse: matrix not square");
  DetInverse out;
  if (m.rows() == 0) {
    out.det = 1.0;
    out.inverse = ComplexMatrix(0, 0);
    out.condition_estimate = 1.0;
    return out;
  }
  const EigenMat a = to_eigen(m);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  out.det = lu.determinant();
  out.condition_estimate = std::numeric_limits<double>::infinity();
  if (std::abs(out.det) < tol::sing) {
    out.reason = SingularReason::tiny_determinant;
    return out;
  }
  EigenMat inv = lu.inverse();
  const auto residual_of = [&](const EigenMat& x) {
    return (a * x - EigenMat::Identity(a.rows(), a.cols())).cwiseAbs().maxCoeff();
  };
  double residual = residual_of(inv);
  if (residual > tol::inv) {
    // one Newton refinement step often rescues borderline conditioning
    inv = inv * (2.0 * EigenMat::Identity(a.rows(), a.cols()) - a * inv);
    residual = residual_of(inv);
  }
  out.condition_estimate = a.cwiseAbs().rowwise().sum().maxCoeff() *
                           inv.cwiseAbs().rowwise().sum().maxCoeff();
  if (out.condition_estimate > tol::cond_max) {
    out.reason = SingularReason::ill_conditioned;
    return out;
  }
  if (residual > tol::inv) {
    out.reason = SingularReason::residual;
    return out;
  }
  out.inverse = from_eigen(inv);
  return out;
}

}  // namespace qopr
