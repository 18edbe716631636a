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

#include <optional>
#include <vector>

#include "qopr/matrix.hpp"

namespace qopr {

/// Eigenvalues of a Hermitian matrix, ascending. The input must be Hermitian
/// within tol::herm relative to its max-entry norm (DomainError otherwise);
/// every returned pair satisfies ||m v - lambda v|| <= tol::eig.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

struct Eigensystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k pairs with values[k]
};

Eigensystem hermitian_eigensystem(const ComplexMatrix& m);

/// Why no inverse was produced.
enum class SingularReason { none, tiny_determinant, ill_conditioned, residual };

struct DetInverse {
  Complex det{0.0, 0.0};
  std::optional<ComplexMatrix> inverse;
  /// ||m||_inf * ||m^-1||_inf estimate; +inf when no inverse was formed.
  double condition_estimate = 0.0;
  SingularReason reason = SingularReason::none;

  bool invertible() const { return inverse.has_value(); }
};

/// Determinant via pivoted triangular factorization, plus the inverse when
/// |det| >= tol::sing, the condition estimate stays below tol::cond_max and
/// the residual ||m m^-1 - I||_max <= tol::inv. Otherwise a singular flag.
DetInverse det_and_inverse(const ComplexMatrix& m);

}  // namespace qopr
