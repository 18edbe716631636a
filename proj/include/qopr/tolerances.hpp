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

namespace qopr::tol {

// Dense problems here stay at N <= ~8, leaving large headroom over machine
// epsilon; the thresholds below are deliberately loose compared to that.

/// Hermiticity deviation, relative to the max-entry norm of the input.
inline constexpr double herm = 1e-10;
/// Per-pair eigen residual bound ||m v - lambda v||.
inline constexpr double eig = 1e-9;
/// Inverse residual bound ||m m^-1 - I||_max.
inline constexpr double inv = 1e-9;
/// |det| below this counts as singular.
inline constexpr double sing = 1e-12;
/// Condition-number estimate above this counts as not reliably invertible.
inline constexpr double cond_max = 1e12;
/// Probability-level tolerance (simplex membership, column sums, identity condition).
inline constexpr double prob = 1e-10;
/// Positive-semidefiniteness slack per unit dimension (scaled by N at use sites).
inline constexpr double psd = 1e-9;

}  // namespace qopr::tol
