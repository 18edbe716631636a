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

#include <cstdint>
#include <string>
#include <vector>

#include "qopr/channels.hpp"
#include "qopr/classical.hpp"
#include "qopr/matrix.hpp"

namespace qopr {

/// The canonical N-operator embedding of a stochastic matrix: operator s has
/// entries sqrt(lambda_jk)/sqrt(N) * exp(2*pi*i*s*(j-k)/N).
struct RepresentationKraus {
  KrausSet kraus;
  StochasticMatrix source;
};

RepresentationKraus build_representation(const StochasticMatrix& lambda);

/// Merges proportional duplicates (which occur only with unit-modulus ratios)
/// into sqrt(count)-scaled representatives, preserving the identity condition.
/// Any other linear dependence contradicts the construction's structure and
/// raises InternalConsistencyError.
KrausSet repair_dependence(const RepresentationKraus& rep);

/// 0/1 block-circulant support pattern: entry (N j + k, N l + m) is 1 exactly
/// when (j - k + m - l) = 0 mod N. Satisfies G^dagger = G and G^2 = N G.
ComplexMatrix build_g(std::size_t n);

/// Basic circulant permutation: c_jk = 1 iff k = (j + 1) mod N; C^N = I.
ComplexMatrix build_c(std::size_t n);

/// The N disjoint index sets alpha_j = { kN + (j+k) mod N : k } covering
/// {0, ..., N^2-1}; the matrix form is the direct sum of its alpha blocks.
std::vector<IndexSet> alpha_partition(std::size_t n);

/// Principal submatrices of the matrix form: V_j(k1,k2) =
/// sqrt(lambda_{k1 k2} * lambda_{(k1+j)(k2+j) mod N}); V_0 = Lambda, and a
/// circulant Lambda makes all blocks equal.
std::vector<ComplexMatrix> v_blocks(const StochasticMatrix& lambda);

/// Which phase-sign family an operation set belongs to.
enum class OperationClass : int { plus = 1, minus = 2 };

/// Addressing of one member: M = max(r, v)(N-1) + n operators with phases
/// exp(2*pi*i*s*(r*j +/- v*k)/M), sign + for plus (class 1), - for minus
/// (class 2). The canonical embedding is the minus member with r = v = 1,
/// M = N.
struct ClassSpec {
  OperationClass cls = OperationClass::minus;
  int r = 1;
  int v = 1;
  int m = 0;

  /// Validates 1 <= r, v <= N+1, N <= m <= N^2 and
  /// 1 <= m - max(r,v)(N-1) <= N^2 - max(r,v)(N-1); ArgumentError otherwise.
  void validate(std::size_t n) const;

  /// Every admissible spec of both classes for dimension n.
  static std::vector<ClassSpec> all_admissible(std::size_t n);

  std::string to_string() const;  // "class:2 r:1 v:1 M:3"
  static ClassSpec parse(const std::string& text);
};

KrausSet build_class_member(const ClassSpec& spec, const StochasticMatrix& lambda);

/// Exact matrix-form basis check of the two defining properties: diagonal
/// states stay diagonal, and the channel commutes with diagonal truncation.
bool is_essentially_classical(const KrausSet& k, double tol = 1e-10);

struct ScanPoint {
  double t = 0.0;
  Complex det{0.0, 0.0};
  bool below_sing = false;  // |det| < tol::sing at the grid point itself
};

struct RootBracket {
  enum class Kind { sign_change, magnitude_dip };
  Kind kind = Kind::sign_change;
  double lo = 0.0;
  double hi = 0.0;
  double refined = 0.0;       // localized root, bracket width <= 1e-9
  double det_at_refined = 0.0;  // |det| there
};

struct InvertibilityReport {
  std::vector<ScanPoint> points;
  std::vector<RootBracket> roots;
};

/// Determinant of the member's matrix form over the grid; roots are bracketed
/// by sign change (refined by bisection) or by an interior |det| minimum that
/// dips below tol::sing (refined by golden-section), to width 1e-9 in t.
InvertibilityReport invertibility_scan(const ClassSpec& spec, const TimeFamily& fam,
                                       const std::vector<double>& t_grid);

/// B_m = sum_s u_{ms} A_s for unitary (or isometric, rows >= cols) u;
/// the matrix form is unchanged. DomainError when u^dagger u != I.
KrausSet unitary_mix(const KrausSet& k, const ComplexMatrix& u);

}  // namespace qopr
