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

#include "qopr/representation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qopr/errors.hpp"
#include "qopr/linalg.hpp"
#include "qopr/tolerances.hpp"

namespace qopr {

RepresentationKraus build_representation(const StochasticMatrix& lambda) {
  const std::size_t n = lambda.dim();
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<ComplexMatrix> ops;
  ops.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    ComplexMatrix a(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const long long phase_num = static_cast<long long>(s) *
                                    (static_cast<long long>(j) - static_cast<long long>(k));
        a(j, k) = std::sqrt(lambda(j, k)) * inv_sqrt_n *
                  root_of_unity(phase_num, static_cast<long long>(n));
      }
    ops.push_back(std::move(a));
  }
  return RepresentationKraus{KrausSet(std::move(ops)), lambda};
}

KrausSet repair_dependence(const RepresentationKraus& rep) {
  const auto& ops = rep.kraus.ops();
  const std::size_t n = rep.kraus.dim();
  const std::size_t count = ops.size();
  const double ratio_tol = 1e-10;

  std::vector<std::size_t> group(count);
  for (std::size_t i = 0; i < count; ++i) group[i] = i;

  const auto first_significant = [&](const ComplexMatrix& a) {
    const double threshold = std::max(max_abs(a) * 1e-12, 1e-300);
    for (std::size_t k = 0; k < a.data().size(); ++k)
      if (std::abs(a.data()[k]) > threshold) return k;
    throw InternalConsistencyError("repair_dependence: zero operator in the set");
  };

  for (std::size_t i = 0; i < count; ++i) {
    if (group[i] != i) continue;
    const std::size_t pivot = first_significant(ops[i]);
    for (std::size_t j = i + 1; j < count; ++j) {
      if (group[j] != j) continue;
      if (std::abs(ops[j].data()[pivot]) <= max_abs(ops[j]) * 1e-12) continue;
      const Complex ratio = ops[j].data()[pivot] / ops[i].data()[pivot];
      double defect = 0.0;
      for (std::size_t k = 0; k < ops[i].data().size(); ++k)
        defect = std::max(defect, std::abs(ops[j].data()[k] - ratio * ops[i].data()[k]));
      if (defect > ratio_tol * std::max(1.0, max_abs(ops[i]))) continue;
      if (std::abs(std::abs(ratio) - 1.0) > ratio_tol) {
        throw InternalConsistencyError(
            "repair_dependence: proportional operators with non-unimodular ratio");
      }
      group[j] = i;
    }
  }

  std::vector<ComplexMatrix> merged;
  for (std::size_t i = 0; i < count; ++i) {
    if (group[i] != i) continue;
    std::size_t members = 0;
    std::size_t last = i;
    for (std::size_t j = i; j < count; ++j) {
      if (group[j] == i) {
        ++members;
        last = j;
      }
    }
    ComplexMatrix keep = ops[last];
    if (members > 1) keep *= Complex(std::sqrt(static_cast<double>(members)), 0.0);
    merged.push_back(std::move(keep));
  }

  // anything still dependent is not of the proportional form the structure allows
  ComplexMatrix stacked(n * n, merged.size());
  for (std::size_t c = 0; c < merged.size(); ++c) {
    const ComplexMatrix col = vec(merged[c]);
    for (std::size_t r = 0; r < n * n; ++r) stacked(r, c) = col(r, 0);
  }
  const ComplexMatrix gram = stacked.adjoint() * stacked;
  const auto gram_eigs = hermitian_eigenvalues(gram);
  if (gram_eigs.front() < 1e-8) {
    throw InternalConsistencyError(
        "repair_dependence: residual linear dependence beyond proportional duplicates");
  }
  return KrausSet(std::move(merged));
}

ComplexMatrix build_g(std::size_t n) {
  if (n < 2) throw ArgumentError("build_g: dimension must be at least 2");
  ComplexMatrix g(n * n, n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t m = 0; m < n; ++m) {
          const long long arg = static_cast<long long>(j) - static_cast<long long>(k) +
                                static_cast<long long>(m) - static_cast<long long>(l);
          const long long nn = static_cast<long long>(n);
          if (((arg % nn) + nn) % nn == 0) g(n * j + k, n * l + m) = 1.0;
        }
  return g;
}

ComplexMatrix build_c(std::size_t n) {
  if (n < 2) throw ArgumentError("build_c: dimension must be at least 2");
  ComplexMatrix c(n, n);
  for (std::size_t j = 0; j < n; ++j) c(j, (j + 1) % n) = 1.0;
  return c;
}

std::vector<IndexSet> alpha_partition(std::size_t n) {
  if (n < 2) throw ArgumentError("alpha_partition: dimension must be at least 2");
  std::vector<IndexSet> sets;
  sets.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> idx(n);
    for (std::size_t k = 0; k < n; ++k) idx[k] = k * n + (j + k) % n;
    sets.emplace_back(std::move(idx));
  }
  return sets;
}

std::vector<ComplexMatrix> v_blocks(const StochasticMatrix& lambda) {
  const std::size_t n = lambda.dim();
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    ComplexMatrix v(n, n);
    for (std::size_t k1 = 0; k1 < n; ++k1)
      for (std::size_t k2 = 0; k2 < n; ++k2) {
        v(k1, k2) = std::sqrt(lambda(k1, k2)) *
                    std::sqrt(lambda((k1 + j) % n, (k2 + j) % n));
      }
    blocks.push_back(std::move(v));
  }
  return blocks;
}

void ClassSpec::validate(std::size_t n) const {
  const int dim = static_cast<int>(n);
  if (dim < 2) throw ArgumentError("ClassSpec: dimension must be at least 2");
  if (r < 1 || r > dim + 1 || v < 1 || v > dim + 1) {
    throw ArgumentError("ClassSpec: r and v must lie in [1, N+1]");
  }
  const int base = std::max(r, v) * (dim - 1);
  const int offset = m - base;
  if (offset < 1 || offset > dim * dim - base || m < dim || m > dim * dim) {
    throw ArgumentError("ClassSpec: M=" + std::to_string(m) + " inadmissible for N=" +
                        std::to_string(dim) + ", r=" + std::to_string(r) + ", v=" +
                        std::to_string(v));
  }
}

std::vector<ClassSpec> ClassSpec::all_admissible(std::size_t n) {
  std::vector<ClassSpec> specs;
  const int dim = static_cast<int>(n);
  for (OperationClass cls : {OperationClass::plus, OperationClass::minus}) {
    for (int r = 1; r <= dim + 1; ++r)
      for (int v = 1; v <= dim + 1; ++v) {
        const int base = std::max(r, v) * (dim - 1);
        for (int m = std::max(base + 1, dim); m <= dim * dim; ++m) {
          ClassSpec spec{cls, r, v, m};
          spec.validate(n);
          specs.push_back(spec);
        }
      }
  }
  return specs;
}

std::string ClassSpec::to_string() const {
  std::ostringstream os;
  os << "class:" << static_cast<int>(cls) << " r:" << r << " v:" << v << " M:" << m;
  return os.str();
}

ClassSpec ClassSpec::parse(const std::string& text) {
  ClassSpec spec;
  int cls_id = 0;
  bool have_cls = false, have_r = false, have_v = false, have_m = false;
  std::istringstream is(text);
  std::string token;
  while (is >> token) {
    const auto colon = token.find(':');
    if (colon == std::string::npos) throw ArgumentError("ClassSpec: expected key:value tokens");
    const std::string key = token.substr(0, colon);
    int value = 0;
    try {
      value = std::stoi(token.substr(colon + 1));
    } catch (const std::exception&) {
      throw ArgumentError("ClassSpec: non-integer value in '" + token + "'");
    }
    if (key == "class") {
      cls_id = value;
      have_cls = true;
    } else if (key == "r") {
      spec.r = value;
      have_r = true;
    } else if (key == "v") {
      spec.v = value;
      have_v = true;
    } else if (key == "M" || key == "m") {
      spec.m = value;
      have_m = true;
    } else {
      throw ArgumentError("ClassSpec: unknown key '" + key + "'");
    }
  }
  if (!(have_cls && have_r && have_v && have_m)) {
    throw ArgumentError("ClassSpec: need class, r, v and M");
  }
  if (cls_id != 1 && cls_id != 2) throw ArgumentError("ClassSpec: class must be 1 or 2");
  spec.cls = cls_id == 1 ? OperationClass::plus : OperationClass::minus;
  return spec;
}

KrausSet build_class_member(const ClassSpec& spec, const StochasticMatrix& lambda) {
  const std::size_t n = lambda.dim();
  spec.validate(n);
  const long long m = spec.m;
  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));
  const long long sign = spec.cls == OperationClass::plus ? 1 : -1;
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(m));
  for (long long s = 0; s < m; ++s) {
    ComplexMatrix a(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const long long phase_num =
            s * (spec.r * static_cast<long long>(j) + sign * spec.v * static_cast<long long>(k));
        a(j, k) = std::sqrt(lambda(j, k)) * inv_sqrt_m * root_of_unity(phase_num, m);
      }
    ops.push_back(std::move(a));
  }
  return KrausSet(std::move(ops));
}

bool is_essentially_classical(const KrausSet& k, double tol) {
  const std::size_t n = k.dim();
  const ComplexMatrix m = matrix_form(k).matrix();
  // column (l, m') of the form is the image of the matrix unit E_{l m'};
  // both defining properties reduce to a support pattern on the form itself
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t kk = 0; kk < n; ++kk)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t mm = 0; mm < n; ++mm) {
          const double mag = std::abs(m(j * n + kk, l * n + mm));
          if (j != kk && l == mm && mag > tol) return false;  // diagonal in -> off-diagonal out
          if (j == kk && l != mm && mag > tol) return false;  // off-diagonal in -> diagonal out
        }
  return true;
}

namespace {

double det_at(const ClassSpec& spec, const TimeFamily& fam, double t) {
  const ComplexMatrix form = matrix_form(build_class_member(spec, fam(t))).matrix();
  const Complex d = det_and_inverse(form).det;
  return d.real();  // forms of real stochastic matrices have real determinants
}

}  // namespace

InvertibilityReport invertibility_scan(const ClassSpec& spec, const TimeFamily& fam,
                                       const std::vector<double>& t_grid) {
  if (!std::is_sorted(t_grid.begin(), t_grid.end())) {
    throw ArgumentError("invertibility_scan: grid must be sorted ascending");
  }
  InvertibilityReport report;
  report.points.reserve(t_grid.size());
  for (double t : t_grid) {
    const double d = det_at(spec, fam, t);
    report.points.push_back({t, Complex(d, 0.0), std::abs(d) < tol::sing});
  }

  constexpr double width_target = 1e-9;
  const auto refine_bisection = [&](double lo, double hi, double dlo) {
    while (hi - lo > width_target) {
      const double mid = (lo + hi) / 2.0;
      const double dm = det_at(spec, fam, mid);
      if ((dm > 0.0) == (dlo > 0.0)) {
        lo = mid;
        dlo = dm;
      } else {
        hi = mid;
      }
    }
    return std::make_pair(lo, hi);
  };
  const auto refine_minimum = [&](double lo, double hi) {
    // golden-section on |det|; even-multiplicity roots have no sign change
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = std::abs(det_at(spec, fam, x1)), f2 = std::abs(det_at(spec, fam, x2));
    while (b - a > width_target) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - phi * (b - a);
        f1 = std::abs(det_at(spec, fam, x1));
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + phi * (b - a);
        f2 = std::abs(det_at(spec, fam, x2));
      }
    }
    return std::make_pair(a, b);
  };

  for (std::size_t i = 0; i + 1 < report.points.size(); ++i) {
    const double d0 = report.points[i].det.real();
    const double d1 = report.points[i + 1].det.real();
    if ((d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0)) {
      const auto [lo, hi] = refine_bisection(t_grid[i], t_grid[i + 1], d0);
      RootBracket root;
      root.kind = RootBracket::Kind::sign_change;
      root.lo = lo;
      root.hi = hi;
      root.refined = (lo + hi) / 2.0;
      root.det_at_refined = std::abs(det_at(spec, fam, root.refined));
      report.roots.push_back(root);
    }
  }
  for (std::size_t i = 1; i + 1 < report.points.size(); ++i) {
    const double prev = std::abs(report.points[i - 1].det.real());
    const double here = std::abs(report.points[i].det.real());
    const double next = std::abs(report.points[i + 1].det.real());
    if (here <= prev && here <= next && here < prev / 4.0 && here < next / 4.0) {
      const auto [lo, hi] = refine_minimum(t_grid[i - 1], t_grid[i + 1]);
      const double refined = (lo + hi) / 2.0;
      const double value = std::abs(det_at(spec, fam, refined));
      if (value < tol::sing) {
        const bool duplicate = std::any_of(report.roots.begin(), report.roots.end(),
                                           [&](const RootBracket& r) {
                                             return std::abs(r.refined - refined) < 1e-6;
                                           });
        if (!duplicate) {
          RootBracket root;
          root.kind = RootBracket::Kind::magnitude_dip;
          root.lo = lo;
          root.hi = hi;
          root.refined = refined;
          root.det_at_refined = value;
          report.roots.push_back(root);
        }
      }
    }
  }
  std::sort(report.roots.begin(), report.roots.end(),
            [](const RootBracket& a, const RootBracket& b) { return a.refined < b.refined; });
  return report;
}

KrausSet unitary_mix(const KrausSet& k, const ComplexMatrix& u) {
  if (u.cols() != k.size()) {
    throw DimensionError("unitary_mix: mixing matrix columns must match the operator count");
  }
  const ComplexMatrix gram = u.adjoint() * u;
  if (max_abs_diff(gram, ComplexMatrix::identity(u.cols())) > tol::prob) {
    throw DomainError("unitary_mix: mixing matrix is not an isometry");
  }
  std::vector<ComplexMatrix> mixed;
  mixed.reserve(u.rows());
  for (std::size_t mrow = 0; mrow < u.rows(); ++mrow) {
    ComplexMatrix b(k.dim(), k.dim());
    for (std::size_t s = 0; s < k.size(); ++s) {
      if (u(mrow, s) == Complex(0.0, 0.0)) continue;
      ComplexMatrix term = k[s];
      term *= u(mrow, s);
      b += term;
    }
    mixed.push_back(std::move(b));
  }
  return KrausSet(std::move(mixed));
}

}  // namespace qopr
