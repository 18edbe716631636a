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

#include "qopr/classical.hpp"

#include <cmath>
#include <utility>

#include "qopr/errors.hpp"
#include "qopr/linalg.hpp"
#include "qopr/tolerances.hpp"

namespace qopr {

ProbabilityVector::ProbabilityVector(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) throw DomainError("ProbabilityVector: empty");
  double total = 0.0;
  for (double& x : p_) {
    if (!std::isfinite(x)) throw DomainError("ProbabilityVector: non-finite entry");
    if (x < 0.0) {
      if (x < -tol::prob) throw DomainError("ProbabilityVector: negative entry " + std::to_string(x));
      x = 0.0;
    }
    total += x;
  }
  if (std::abs(total - 1.0) > tol::prob) {
    throw DomainError("ProbabilityVector: entries sum to " + std::to_string(total));
  }
}

ProbabilityVector ProbabilityVector::uniform(std::size_t n) {
  return ProbabilityVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

ProbabilityVector ProbabilityVector::basis(std::size_t n, std::size_t k) {
  std::vector<double> p(n, 0.0);
  p.at(k) = 1.0;
  return ProbabilityVector(std::move(p));
}

namespace {

void validate_stochastic(std::size_t n, std::vector<double>& lambda) {
  for (double& x : lambda) {
    if (!std::isfinite(x)) throw DomainError("StochasticMatrix: non-finite entry");
    if (x < 0.0) {
      if (x < -tol::prob) {
        throw DomainError("StochasticMatrix: negative entry " + std::to_string(x));
      }
      x = 0.0;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    double col = 0.0;
    for (std::size_t j = 0; j < n; ++j) col += lambda[j * n + k];
    if (std::abs(col - 1.0) > tol::prob) {
      throw DomainError("StochasticMatrix: column " + std::to_string(k) + " sums to " +
                        std::to_string(col));
    }
  }
}

}  // namespace

StochasticMatrix::StochasticMatrix(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("StochasticMatrix: matrix not square");
  n_ = m.rows();
  lambda_.resize(n_ * n_);
  for (std::size_t k = 0; k < lambda_.size(); ++k) {
    const Complex e = m.data()[k];
    if (std::abs(e.imag()) > tol::prob) {
      throw DomainError("StochasticMatrix: complex entry");
    }
    lambda_[k] = e.real();
  }
  validate_stochastic(n_, lambda_);
}

StochasticMatrix::StochasticMatrix(std::size_t n, const std::vector<double>& row_major)
    : n_(n), lambda_(row_major) {
  if (lambda_.size() != n * n) throw DimensionError("StochasticMatrix: data length != n*n");
  validate_stochastic(n_, lambda_);
}

StochasticMatrix StochasticMatrix::identity(std::size_t n) {
  std::vector<double> id(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) id[i * n + i] = 1.0;
  return StochasticMatrix(n, id);
}

ComplexMatrix StochasticMatrix::to_complex() const {
  ComplexMatrix m(n_, n_);
  for (std::size_t k = 0; k < lambda_.size(); ++k) m.data()[k] = Complex(lambda_[k], 0.0);
  return m;
}

bool StochasticMatrix::is_circulant(double tol) const {
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t k = 0; k < n_; ++k)
      if (std::abs((*this)(j, k) - (*this)((j + 1) % n_, (k + 1) % n_)) > tol) return false;
  return true;
}

ProbabilityVector evolve(const StochasticMatrix& lambda, const ProbabilityVector& p) {
  if (lambda.dim() != p.size()) throw DimensionError("evolve: dimensions differ");
  std::vector<double> out(p.size(), 0.0);
  for (std::size_t j = 0; j < lambda.dim(); ++j)
    for (std::size_t k = 0; k < lambda.dim(); ++k) out[j] += lambda(j, k) * p[k];
  return ProbabilityVector(std::move(out));
}

TimeFamily::TimeFamily(std::string id, double t1, Evaluator evaluator,
                       std::map<std::string, double> params)
    : id_(std::move(id)), t1_(t1), evaluator_(std::move(evaluator)), params_(std::move(params)) {
  const StochasticMatrix at_start = evaluator_(t1_);
  for (std::size_t j = 0; j < at_start.dim(); ++j)
    for (std::size_t k = 0; k < at_start.dim(); ++k) {
      const double expect = j == k ? 1.0 : 0.0;
      if (std::abs(at_start(j, k) - expect) > tol::prob) {
        throw DomainError("TimeFamily '" + id_ + "': evaluator(t1) is not the identity");
      }
    }
}

StochasticMatrix TimeFamily::operator()(double t) const {
  if (t < t1_) throw ArgumentError("TimeFamily: t < t1");
  return evaluator_(t);
}

StochasticMatrix TimeFamily::pairwise(double t, double s) const {
  if (!pairwise_) throw ArgumentError("TimeFamily '" + id_ + "' has no pairwise propagator");
  return pairwise_(t, s);
}

IntermediateResult intermediate_matrix(const TimeFamily& fam, double t, double s) {
  if (!(t >= s && s >= fam.t1())) throw ArgumentError("intermediate_matrix: need t >= s >= t1");
  IntermediateResult out;
  ComplexMatrix prod;
  if (fam.has_pairwise()) {
    prod = fam.pairwise(t, s).to_complex();
  } else {
    const ComplexMatrix at_t = fam(t).to_complex();
    const DetInverse inv_s = det_and_inverse(fam(s).to_complex());
    if (!inv_s.invertible()) {
      out.singular = true;
      return out;
    }
    prod = at_t * (*inv_s.inverse);
  }

  const std::size_t n = prod.rows();
  out.min_entry = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    double col = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double x = prod(j, k).real();
      out.min_entry = std::min(out.min_entry, x);
      col += x;
    }
    out.max_column_sum_error = std::max(out.max_column_sum_error, std::abs(col - 1.0));
  }
  out.stochastic = out.min_entry >= -tol::prob && out.max_column_sum_error <= tol::prob;
  out.matrix = std::move(prod);
  return out;
}

CkResult chapman_kolmogorov_check(const TimeFamily& fam, double t, double s, double u, double tol) {
  if (!(t >= s && s >= u && u >= fam.t1())) {
    throw ArgumentError("chapman_kolmogorov_check: need t >= s >= u >= t1");
  }
  CkResult out;
  const IntermediateResult tu = intermediate_matrix(fam, t, u);
  const IntermediateResult ts = intermediate_matrix(fam, t, s);
  const IntermediateResult su = intermediate_matrix(fam, s, u);
  if (tu.singular || ts.singular || su.singular) {
    out.indeterminate = true;
    return out;
  }
  out.deviation = max_abs_diff(tu.matrix, ts.matrix * su.matrix);
  out.holds = out.deviation <= tol;
  return out;
}

TimeFamily dichotomic_family(double gamma) {
  if (!(gamma > 0.0)) throw ArgumentError("dichotomic_family: gamma must be positive");
  auto eval = [gamma](double t) {
    const double e = std::exp(-2.0 * gamma * t);
    return StochasticMatrix(2, {(1.0 + e) / 2.0, (1.0 - e) / 2.0,
                                (1.0 - e) / 2.0, (1.0 + e) / 2.0});
  };
  return TimeFamily("dichotomic", 0.0, eval, {{"gamma", gamma}});
}

TimeFamily oscillatory_family() {
  auto eval = [](double t) {
    const double q = std::exp(-t) * std::cos(t);
    return StochasticMatrix(2, {(1.0 + q) / 2.0, (1.0 - q) / 2.0,
                                (1.0 - q) / 2.0, (1.0 + q) / 2.0});
  };
  return TimeFamily("oscillatory", 0.0, eval);
}

Counterexample3Params counterexample3_set(int which) {
  if (which == 1) return {1.0 / 3.0, 0.0, 9.0 / 20.0, 4.0 / 15.0, 1.0 / 3.0, 1.0 / 20.0};
  if (which == 2) return {0.0, 0.25, 0.0, 0.1, 0.0, 0.2};
  throw ArgumentError("counterexample3_set: which must be 1 or 2");
}

TimeFamily counterexample3_family(const Counterexample3Params& p, double gamma) {
  if (!(gamma > 0.0)) throw ArgumentError("counterexample3_family: gamma must be positive");
  const double params[6] = {p.a, p.b, p.c, p.d, p.e, p.f};
  for (double v : params) {
    if (!(v >= 0.0)) throw ArgumentError("counterexample3_family: parameters must be non-negative");
  }
  if (p.a + p.d > 1.0 + 1e-15 || p.b + p.e > 1.0 + 1e-15 || p.c + p.f > 1.0 + 1e-15) {
    throw ArgumentError("counterexample3_family: column constraints a+d, b+e, c+f must stay <= 1");
  }
  const double base[9] = {p.a, p.b, p.c, p.d, p.e, p.f, p.x(), p.y(), p.z()};
  auto eval = [base, gamma](double t) {
    const double decay = std::exp(-gamma * t);
    // 2 e^{-gt/2} sinh(gt/2) == 1 - e^{-gt}, so columns sum to one exactly
    const double weight = 1.0 - decay;
    std::vector<double> lam(9);
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        lam[j * 3 + k] = (j == k ? decay : 0.0) + weight * base[j * 3 + k];
    return StochasticMatrix(3, lam);
  };
  return TimeFamily("counterexample3", 0.0, eval,
                    {{"a", p.a}, {"b", p.b}, {"c", p.c}, {"d", p.d}, {"e", p.e}, {"f", p.f},
                     {"gamma", gamma}});
}

double JointProb3::sum() const {
  double s = 0.0;
  for (int j3 = 0; j3 < 2; ++j3)
    for (int j2 = 0; j2 < 2; ++j2)
      for (int j1 = 0; j1 < 2; ++j1) s += table[j3][j2][j1];
  return s;
}

JointProb3 appendix_b_joint(double epsilon, const ProbabilityVector& q) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw ArgumentError("appendix_b_joint: epsilon must lie in [0, 1]");
  }
  if (q.size() != 2) throw DimensionError("appendix_b_joint: q must have length 2");
  JointProb3 out;
  out.epsilon = epsilon;
  out.q = {q[0], q[1]};
  const double q1 = q[0], q2 = q[1];
  out.table[0][0][0] = epsilon * q1 / 2.0;
  out.table[1][1][0] = epsilon * q1 / 2.0;
  out.table[1][0][0] = (1.0 - epsilon) * q1 / 2.0;
  out.table[0][1][0] = (1.0 - epsilon) * q1 / 2.0;
  out.table[0][1][1] = q2 / 2.0;
  out.table[1][0][1] = q2 / 2.0;
  return out;
}

namespace {

// History conditionals of the memory process in the q -> positive limit;
// the q_{j1} factor divides out, leaving functions of epsilon alone.
double structural_cond3(double epsilon, int j3, int j2, int j1) {
  if (j1 == 0) return j3 == j2 ? epsilon : 1.0 - epsilon;
  // j1 == 1: mass sits at j3 = 1 - j2
  return j3 == 1 - j2 ? 1.0 : 0.0;
}

}  // namespace

AppendixBReport appendix_b_analysis(const JointProb3& joint, double tol) {
  AppendixBReport rep;
  const double eps = joint.epsilon;
  if (joint.q.size() != 2) throw DimensionError("appendix_b_analysis: malformed joint");
  for (int j3 = 0; j3 < 2; ++j3)
    for (int j2 = 0; j2 < 2; ++j2)
      for (int j1 = 0; j1 < 2; ++j1)
        if (joint.table[j3][j2][j1] < -tol::prob) {
          throw DomainError("appendix_b_analysis: negative joint probability");
        }

  // pairwise marginals
  double p32[2][2] = {};  // (j3, j2)
  double p21[2][2] = {};  // (j2, j1)
  double p31[2][2] = {};  // (j3, j1)
  double m2[2] = {};      // one-point at t2
  double m1[2] = {joint.q[0], joint.q[1]};
  for (int j3 = 0; j3 < 2; ++j3)
    for (int j2 = 0; j2 < 2; ++j2)
      for (int j1 = 0; j1 < 2; ++j1) {
        const double v = joint.table[j3][j2][j1];
        p32[j3][j2] += v;
        p21[j2][j1] += v;
        p31[j3][j1] += v;
        m2[j2] += v;
      }
  rep.marginal_t2[0] = m2[0];
  rep.marginal_t2[1] = m2[1];

  const auto cond = [&](double num, double den, double limit) {
    return den > tol ? num / den : limit;
  };

  rep.t21 = ComplexMatrix(2, 2);
  rep.t32 = ComplexMatrix(2, 2);
  rep.t31 = ComplexMatrix(2, 2);
  for (int to = 0; to < 2; ++to)
    for (int from = 0; from < 2; ++from) {
      // unreachable initial states take the limit columns, which are all-1/2
      rep.t21(to, from) = cond(p21[to][from], m1[from], 0.5);
      rep.t31(to, from) = cond(p31[to][from], m1[from], 0.5);
      rep.t32(to, from) = cond(p32[to][from], m2[from], 0.5);
    }

  const ComplexMatrix composed = rep.t32 * rep.t21;
  rep.ck_error = max_abs_diff(rep.t31, composed);
  rep.ck_holds = rep.ck_error <= tol;

  for (int j3 = 0; j3 < 2; ++j3)
    for (int j2 = 0; j2 < 2; ++j2) {
      rep.cond3_given_2[j3][j2] = cond(p32[j3][j2], m2[j2], 0.5);
      for (int j1 = 0; j1 < 2; ++j1) {
        rep.cond3_given_21[j3][j2][j1] =
            cond(joint.table[j3][j2][j1], p21[j2][j1], structural_cond3(eps, j3, j2, j1));
      }
    }

  rep.markov_error = 0.0;
  for (int j3 = 0; j3 < 2; ++j3)
    for (int j2 = 0; j2 < 2; ++j2)
      for (int j1 = 0; j1 < 2; ++j1) {
        rep.markov_error = std::max(
            rep.markov_error,
            std::abs(rep.cond3_given_21[j3][j2][j1] - rep.cond3_given_2[j3][j2]));
      }
  rep.markov_holds = rep.markov_error <= tol;
  return rep;
}

TimeFamily appendix_b_family(double epsilon, const ProbabilityVector& q) {
  const JointProb3 joint = appendix_b_joint(epsilon, q);
  const AppendixBReport rep = appendix_b_analysis(joint);
  struct Tables {
    std::vector<double> t21, t32, t31;
  };
  const auto flat = [](const ComplexMatrix& m) {
    return std::vector<double>{m(0, 0).real(), m(0, 1).real(), m(1, 0).real(), m(1, 1).real()};
  };
  Tables tabs{flat(rep.t21), flat(rep.t32), flat(rep.t31)};

  auto eval = [tabs](double t) {
    const long instant = std::lround(t);
    if (instant <= 1) return StochasticMatrix::identity(2);
    if (instant == 2) return StochasticMatrix(2, tabs.t21);
    return StochasticMatrix(2, tabs.t31);
  };
  TimeFamily fam("appendix-b", 1.0, eval, {{"epsilon", epsilon}, {"q1", q[0]}, {"q2", q[1]}});
  fam.set_pairwise([tabs](double t, double s) {
    const long ti = std::lround(t), si = std::lround(s);
    if (ti == si) return StochasticMatrix::identity(2);
    if (si == 1 && ti == 2) return StochasticMatrix(2, tabs.t21);
    if (si == 2 && ti == 3) return StochasticMatrix(2, tabs.t32);
    if (si == 1 && ti == 3) return StochasticMatrix(2, tabs.t31);
    throw ArgumentError("appendix-b family: times must be drawn from {1, 2, 3}");
  });
  return fam;
}

}  // namespace qopr
