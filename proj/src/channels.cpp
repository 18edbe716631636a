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

#include "qopr/channels.hpp"

#include <cmath>
#include <utility>

#include "qopr/errors.hpp"
#include "qopr/linalg.hpp"
#include "qopr/tolerances.hpp"

namespace qopr {

namespace {

std::size_t integer_sqrt(std::size_t n) {
  std::size_t r = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(n))));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix rho) : rho_(std::move(rho)) {
  if (!rho_.is_square() || rho_.rows() == 0) throw DimensionError("DensityMatrix: not square");
  rho_.ensure_finite("DensityMatrix");
  const std::size_t n = rho_.rows();
  const double scale = std::max(1.0, max_abs(rho_));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (std::abs(rho_(i, j) - std::conj(rho_(j, i))) > tol::herm * scale) {
        throw DomainError("DensityMatrix: not Hermitian");
      }
  if (std::abs(rho_.trace() - Complex(1.0, 0.0)) > tol::prob) {
    throw DomainError("DensityMatrix: trace differs from one");
  }
  const auto eig = hermitian_eigenvalues(rho_);
  if (eig.front() < -tol::psd * static_cast<double>(n)) {
    throw DomainError("DensityMatrix: negative eigenvalue " + std::to_string(eig.front()));
  }
}

KrausSet::KrausSet(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw DimensionError("KrausSet: empty");
  const std::size_t n = ops_.front().rows();
  if (n == 0) throw DimensionError("KrausSet: zero-dimensional operators");
  for (const auto& op : ops_) {
    if (!op.is_square() || op.rows() != n) {
      throw DimensionError("KrausSet: operators must share one square shape");
    }
    op.ensure_finite("KrausSet");
  }
  if (ops_.size() > n * n) {
    throw DimensionError("KrausSet: more than N^2 operators");
  }
}

ChannelMatrixForm::ChannelMatrixForm(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.is_square()) throw DimensionError("ChannelMatrixForm: not square");
  dim_ = integer_sqrt(m_.rows());
  if (dim_ * dim_ != m_.rows() || dim_ == 0) {
    throw DimensionError("ChannelMatrixForm: side must be a perfect square");
  }
  m_.ensure_finite("ChannelMatrixForm");
}

DensityMatrix apply_channel(const KrausSet& k, const DensityMatrix& rho) {
  if (k.dim() != rho.dim()) throw DimensionError("apply_channel: dimensions differ");
  ComplexMatrix out(k.dim(), k.dim());
  for (const auto& a : k.ops()) out += a * rho.matrix() * a.adjoint();
  return DensityMatrix(std::move(out));
}

ChannelMatrixForm matrix_form(const KrausSet& k) {
  const std::size_t n = k.dim();
  ComplexMatrix m(n * n, n * n);
  for (const auto& a : k.ops()) m += kron(a, a.conjugate());
  return ChannelMatrixForm(std::move(m));
}

DensityMatrix embed_F(const ProbabilityVector& p) {
  ComplexMatrix rho(p.size(), p.size());
  for (std::size_t i = 0; i < p.size(); ++i) rho(i, i) = Complex(p[i], 0.0);
  return DensityMatrix(std::move(rho));
}

ProbabilityVector inverse_F(const DensityMatrix& rho) {
  const ComplexMatrix& m = rho.matrix();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && std::abs(m(i, j)) > tol::prob) {
        throw DomainError("inverse_F: input is not diagonal");
      }
  std::vector<double> p(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) p[i] = m(i, i).real();
  return ProbabilityVector(std::move(p));
}

ComplexMatrix pi_diagonalize(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("pi_diagonalize: not square");
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) out(i, i) = m(i, i);
  return out;
}

DensityMatrix pi_diagonalize(const DensityMatrix& rho) {
  return DensityMatrix(pi_diagonalize(rho.matrix()));
}

CptpCheck is_cptp(const KrausSet& k) {
  ComplexMatrix acc(k.dim(), k.dim());
  for (const auto& a : k.ops()) acc += a.adjoint() * a;
  CptpCheck out;
  out.max_violation = max_abs_diff(acc, ComplexMatrix::identity(k.dim()));
  out.ok = out.max_violation <= tol::prob;
  return out;
}

bool essentially_same(const KrausSet& k1, const KrausSet& k2, double tol) {
  if (k1.dim() != k2.dim()) throw DimensionError("essentially_same: dimensions differ");
  return max_abs_diff(matrix_form(k1).matrix(), matrix_form(k2).matrix()) <= tol;
}

ComplexMatrix gamma_reorder(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("gamma_reorder: not square");
  const std::size_t n = integer_sqrt(m.rows());
  if (n * n != m.rows()) throw DimensionError("gamma_reorder: side must be a perfect square");
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) out(i * n + k, j * n + l) = m(i * n + j, k * n + l);
  return out;
}

ComplexMatrix gamma_reorder(const ChannelMatrixForm& m) { return gamma_reorder(m.matrix()); }

CpCheck is_completely_positive(const ChannelMatrixForm& m, double tol) {
  CpCheck out;
  const ComplexMatrix g = gamma_reorder(m);
  const double scale = std::max(1.0, max_abs(g));
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = i; j < g.cols(); ++j)
      out.hermiticity_defect = std::max(out.hermiticity_defect,
                                        std::abs(g(i, j) - std::conj(g(j, i))));
  out.reorder_hermitian = out.hermiticity_defect <= tol::herm * scale;
  if (!out.reorder_hermitian) {
    out.cp = false;
    return out;
  }
  out.min_eigenvalue = hermitian_eigenvalues(g).front();
  out.cp = out.min_eigenvalue >= -tol;
  return out;
}

}  // namespace qopr
