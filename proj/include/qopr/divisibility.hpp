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
#include <string>
#include <vector>

#include "qopr/channels.hpp"
#include "qopr/classical.hpp"

namespace qopr {

struct DivisibilityReport {
  double t = 0.0;
  double s = 0.0;
  bool p_divisible = false;
  bool cp_divisible = false;
  /// Set when the intermediate map could not be formed reliably (singular or
  /// ill-conditioned base channel); the booleans are then meaningless.
  bool indeterminate = false;
  double min_choi_eigenvalue = 0.0;
  double min_intermediate_entry = 0.0;
};

struct IntermediateChannel {
  std::optional<ChannelMatrixForm> form;  // empty when singular
  bool singular = false;
  double condition_estimate = 0.0;
};

/// M(t,s) = M_c(t,t1) * M_c(s,t1)^-1 for the family's canonical embedding.
IntermediateChannel intermediate_channel(const TimeFamily& fam, double t, double s);

/// Classical and quantum divisibility verdicts at one (t, s) pair. The CP
/// verdict tolerance scales with the dimension: min eigenvalue >= -1e-9 * N.
DivisibilityReport assess(const TimeFamily& fam, double t, double s);

/// One report per (s + offset, s) pair, s over t_grid, offsets ascending;
/// deterministic row order (s outer, offset inner).
std::vector<DivisibilityReport> scan(const TimeFamily& fam, const std::vector<double>& t_grid,
                                     const std::vector<double>& s_offsets);

struct TraceDiagnostics {
  bool trace_ok = false;
  double trace_value = 0.0;
  double expected_trace = 0.0;   // sum of all entries of Lambda(t,s)
  bool diagonal_pattern_ok = false;
  double max_diagonal_error = 0.0;
};

/// Checks that the reordered form's trace equals the total mass of the
/// classical intermediate and that its diagonal lists Lambda(t,s) row by row.
TraceDiagnostics trace_diagnostics(const ChannelMatrixForm& m, const ComplexMatrix& lambda_ts);

/// Delimited table, header t,s,p_divisible,cp_divisible,min_choi_eig,
/// min_intermediate_entry; 17-significant-digit reals; indeterminate rows
/// carry the word "indeterminate" in both boolean columns.
std::string scan_table(const std::vector<DivisibilityReport>& reports);

}  // namespace qopr
