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

#include "qopr/divisibility.hpp"

#include <algorithm>
#include <cmath>

#include "qopr/errors.hpp"
#include "qopr/linalg.hpp"
#include "qopr/matrix_io.hpp"
#include "qopr/representation.hpp"
#include "qopr/tolerances.hpp"

namespace qopr {

IntermediateChannel intermediate_channel(const TimeFamily& fam, double t, double s) {
  if (!(t >= s && s >= fam.t1())) throw ArgumentError("intermediate_channel: need t >= s >= t1");
  IntermediateChannel out;
  const ComplexMatrix mc_t = matrix_form(build_representation(fam(t)).kraus).matrix();
  const ComplexMatrix mc_s = matrix_form(build_representation(fam(s)).kraus).matrix();
  const DetInverse inv_s = det_and_inverse(mc_s);
  out.condition_estimate = inv_s.condition_estimate;
  if (!inv_s.invertible()) {
    out.singular = true;
    return out;
  }
  out.form = ChannelMatrixForm(mc_t * (*inv_s.inverse));
  return out;
}

DivisibilityReport assess(const TimeFamily& fam, double t, double s) {
  DivisibilityReport rep;
  rep.t = t;
  rep.s = s;
  const IntermediateResult classical = intermediate_matrix(fam, t, s);
  const IntermediateChannel quantum = intermediate_channel(fam, t, s);
  if (classical.singular || quantum.singular) {
    rep.indeterminate = true;
    return rep;
  }
  rep.p_divisible = classical.stochastic;
  rep.min_intermediate_entry = classical.min_entry;
  const std::size_t n = fam(t).dim();
  const CpCheck cp = is_completely_positive(*quantum.form, 1e-9 * static_cast<double>(n));
  rep.cp_divisible = cp.cp;
  rep.min_choi_eigenvalue = cp.min_eigenvalue;
  return rep;
}

std::vector<DivisibilityReport> scan(const TimeFamily& fam, const std::vector<double>& t_grid,
                                     const std::vector<double>& s_offsets) {
  if (!std::is_sorted(t_grid.begin(), t_grid.end()) ||
      !std::is_sorted(s_offsets.begin(), s_offsets.end())) {
    throw ArgumentError("scan: grids must be sorted ascending");
  }
  for (double d : s_offsets)
    if (d < 0.0) throw ArgumentError("scan: offsets must be non-negative");
  std::vector<DivisibilityReport> reports;
  reports.reserve(t_grid.size() * s_offsets.size());
  for (double s : t_grid)
    for (double d : s_offsets) reports.push_back(assess(fam, s + d, s));
  return reports;
}

TraceDiagnostics trace_diagnostics(const ChannelMatrixForm& m, const ComplexMatrix& lambda_ts) {
  const std::size_t n = m.dim();
  if (lambda_ts.rows() != n || lambda_ts.cols() != n) {
    throw DimensionError("trace_diagnostics: classical matrix shape mismatch");
  }
  TraceDiagnostics out;
  for (const auto& e : lambda_ts.data()) out.expected_trace += e.real();
  const ComplexMatrix g = gamma_reorder(m);
  out.trace_value = g.trace().real();
  out.trace_ok = std::abs(out.trace_value - out.expected_trace) <= tol::prob;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double diff = std::abs(g(i * n + k, i * n + k) - lambda_ts(i, k));
      out.max_diagonal_error = std::max(out.max_diagonal_error, diff);
    }
  out.diagonal_pattern_ok = out.max_diagonal_error <= tol::prob;
  return out;
}

std::string scan_table(const std::vector<DivisibilityReport>& reports) {
  std::string out = "t,s,p_divisible,cp_divisible,min_choi_eig,min_intermediate_entry\n";
  for (const auto& r : reports) {
    out += format_real(r.t);
    out += ',';
    out += format_real(r.s);
    out += ',';
    if (r.indeterminate) {
      out += "indeterminate,indeterminate,";
    } else {
      out += r.p_divisible ? "true," : "false,";
      out += r.cp_divisible ? "true," : "false,";
    }
    out += format_real(r.min_choi_eigenvalue);
    out += ',';
    out += format_real(r.min_intermediate_entry);
    out += '\n';
  }
  return out;
}

}  // namespace qopr
