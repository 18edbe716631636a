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
#include <random>
#include <string>
#include <vector>

#include "qopr/classical.hpp"
#include "qopr/matrix.hpp"

namespace qopr {

/// One assertion of a verification suite.
struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;   // measured value vs bound
  int criterion = 0;    // 1..10 when the check backs an acceptance criterion
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  /// 0 keeps the built-in dimension set; otherwise restricts dimension loops.
  int dim = 0;
  /// Appendix overrides; negative epsilon / empty q keep the built-in grids.
  double epsilon = -1.0;
  std::vector<double> q;
};

/// Suite names accepted by run_suite (and the CLI): thm1, thm2, thm3, thm4,
/// lemma3, appendix-b, all.
const std::vector<std::string>& suite_names();

/// Runs one named suite; ArgumentError for unknown names. Deterministic for a
/// fixed seed.
std::vector<CheckResult> run_suite(const std::string& suite, const SuiteOptions& opts = {});

struct CriterionResult {
  int index = 0;
  std::string title;
  bool passed = false;
  std::vector<std::string> failures;  // names+details of failed checks
};

/// Aggregates every suite into the ten acceptance criteria.
std::vector<CriterionResult> run_all_criteria(const SuiteOptions& opts = {});

// Deterministic fixtures shared by suites and tests.

StochasticMatrix random_stochastic(std::size_t n, std::mt19937_64& rng);
ProbabilityVector random_probability(std::size_t n, std::mt19937_64& rng);
/// Random circulant stochastic matrix (first column drawn from the simplex).
StochasticMatrix random_circulant_stochastic(std::size_t n, std::mt19937_64& rng);
/// Haar-ish random unitary via QR of a Gaussian matrix.
ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng);

/// Column-stochastic semigroup t -> exp(t W) for a generator with
/// non-negative off-diagonal entries and zero column sums; every intermediate
/// map of such a family is itself stochastic.
TimeFamily semigroup_family(const std::string& id, const ComplexMatrix& w);
TimeFamily random_semigroup_family(std::size_t n, std::mt19937_64& rng);

}  // namespace qopr
