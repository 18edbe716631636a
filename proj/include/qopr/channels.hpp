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

#pragma once

#include <vector>

#include "qopr/classical.hpp"
#include "qopr/matrix.hpp"

namespace qopr {

/// Hermitian, positive-semidefinite, trace-one complex matrix. Validated on
/// construction (PSD slack scales with the dimension).
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix rho);

  std::size_t dim() const { return rho_.rows(); }
  const ComplexMatrix& matrix() const { return rho_; }

 private:
  ComplexMatrix rho_;
};

/// Ordered list of same-shaped square operators. Shape constraints are
/// enforced here; the identity condition is a property is_cptp reports on, so
/// deliberately broken sets can be represented and diagnosed.
class KrausSet {
 public:
  explicit KrausSet(std::vector<ComplexMatrix> ops);

  std::size_t dim() const { return ops_.front().rows(); }
  std::size_t size() const { return ops_.size(); }
  const ComplexMatrix& operator[](std::size_t i) const { return ops_[i]; }
  const std::vector<ComplexMatrix>& ops() const { return ops_; }

 private:
  std::vector<ComplexMatrix> ops_;
};

/// N^2 x N^2 matrix acting on vectorized states.
class ChannelMatrixForm {
 public:
  explicit ChannelMatrixForm(ComplexMatrix m);

  std::size_t dim() const { return dim_; }  // the underlying N
  const ComplexMatrix& matrix() const { return m_; }

 private:
  ComplexMatrix m_;
  std::size_t dim_ = 0;
};

/// rho -> sum_s A_s rho A_s^dagger.
DensityMatrix apply_channel(const KrausSet& k, const DensityMatrix& rho);

/// sum_s A_s (x) conj(A_s).
ChannelMatrixForm matrix_form(const KrausSet& k);

/// Probability vector -> diagonal density matrix (computational basis).
DensityMatrix embed_F(const ProbabilityVector& p);

/// Diagonal density matrix -> probability vector; DomainError when off-diagonal
/// weight exceeds tol::prob.
ProbabilityVector inverse_F(const DensityMatrix& rho);

/// Zeroes all off-diagonal entries.
ComplexMatrix pi_diagonalize(const ComplexMatrix& m);
DensityMatrix pi_diagonalize(const DensityMatrix& rho);

struct CptpCheck {
  bool ok = false;
  double max_violation = 0.0;  // ||sum A^dagger A - I||_max
};

CptpCheck is_cptp(const KrausSet& k);

/// True when the two matrix forms agree entrywise within tol.
bool essentially_same(const KrausSet& k1, const KrausSet& k2, double tol);

/// Block-index reindexing out[i*N+k, j*N+l] = in[i*N+j, k*N+l]; an involution
/// and a Hilbert-Schmidt isometry. Square inputs of perfect-square size only.
ComplexMatrix gamma_reorder(const ComplexMatrix& m);
ComplexMatrix gamma_reorder(const ChannelMatrixForm& m);

struct CpCheck {
  bool cp = false;
  bool reorder_hermitian = false;
  double min_eigenvalue = 0.0;
  double hermiticity_defect = 0.0;
};

/// Complete positivity via the spectrum of the reordered form: CP iff the
/// minimum eigenvalue stays above -tol. A non-Hermitian reorder is reported
/// as not-CP with the defect recorded.
CpCheck is_completely_positive(const ChannelMatrixForm& m, double tol);

}  // namespace qopr
