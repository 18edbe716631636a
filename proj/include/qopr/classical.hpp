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

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qopr/matrix.hpp"

namespace qopr {

/// Point in the probability simplex. Entries a hair below zero (within
/// tol::prob) are clamped on construction; anything worse throws DomainError,
/// as does a total off unity by more than tol::prob.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> p);
  static ProbabilityVector uniform(std::size_t n);
  static ProbabilityVector basis(std::size_t n, std::size_t k);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& values() const { return p_; }

 private:
  std::vector<double> p_;
};

/// Column-stochastic real matrix: entries >= 0 and every column sums to one
/// within tol::prob. Row-stochastic users must transpose before loading.
class StochasticMatrix {
 public:
  explicit StochasticMatrix(const ComplexMatrix& m);
  StochasticMatrix(std::size_t n, const std::vector<double>& row_major);
  static StochasticMatrix identity(std::size_t n);

  std::size_t dim() const { return n_; }
  double operator()(std::size_t j, std::size_t k) const { return lambda_[j * n_ + k]; }
  const std::vector<double>& values() const { return lambda_; }

  ComplexMatrix to_complex() const;
  bool is_circulant(double tol = 1e-12) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> lambda_;
};

ProbabilityVector evolve(const StochasticMatrix& lambda, const ProbabilityVector& p);

/// One-parameter family of stochastic matrices t -> Lambda(t, t1). The
/// evaluator must be side-effect-free and must return the identity at t1.
class TimeFamily {
 public:
  using Evaluator = std::function<StochasticMatrix(double)>;
  /// Optional direct propagator Lambda(t, s) for processes whose intermediate
  /// maps are defined by conditional probabilities rather than by inversion.
  using Pairwise = std::function<StochasticMatrix(double, double)>;

  TimeFamily(std::string id, double t1, Evaluator evaluator,
             std::map<std::string, double> params = {});

  StochasticMatrix operator()(double t) const;
  double t1() const { return t1_; }
  const std::string& id() const { return id_; }
  const std::map<std::string, double>& params() const { return params_; }

  void set_pairwise(Pairwise pairwise) { pairwise_ = std::move(pairwise); }
  bool has_pairwise() const { return static_cast<bool>(pairwise_); }
  StochasticMatrix pairwise(double t, double s) const;

 private:
  std::string id_;
  double t1_ = 0.0;
  Evaluator evaluator_;
  Pairwise pairwise_;
  std::map<std::string, double> params_;
};

/// Lambda(t, s) = Lambda(t, t1) Lambda(s, t1)^-1 plus the verdict on whether
/// it is itself a stochastic matrix. Singular Lambda(s, t1) yields a typed
/// flag so grid scans can continue past isolated singular points.
struct IntermediateResult {
  ComplexMatrix matrix;  // real-valued; empty when singular
  bool singular = false;
  bool stochastic = false;
  double min_entry = 0.0;            // most negative entry observed
  double max_column_sum_error = 0.0;
};

IntermediateResult intermediate_matrix(const TimeFamily& fam, double t, double s);

struct CkResult {
  bool holds = false;
  bool indeterminate = false;  // a required factor was singular
  double deviation = 0.0;      // max-entry norm of the defect
};

/// Composition-law check Lambda(t,u) = Lambda(t,s) Lambda(s,u) with every
/// factor produced by intermediate_matrix.
CkResult chapman_kolmogorov_check(const TimeFamily& fam, double t, double s, double u, double tol);

/// Two-state symmetric jump process with rate gamma.
TimeFamily dichotomic_family(double gamma);

/// Damped-oscillation two-state family with mixing weight q(t) = e^{-t} cos t;
/// its intermediate maps lose positivity around each sign change of q.
TimeFamily oscillatory_family();

/// Parameters of the 3x3 family Lambda(t,0) = e^{-gamma t} I + (1 - e^{-gamma t}) P
/// with P columns (a,d,x), (b,e,y), (c,f,z); the bottom row is derived from
/// the column-sum constraints.
struct Counterexample3Params {
  double a, b, c, d, e, f;
  double x() const { return 1.0 - a - d; }
  double y() const { return 1.0 - b - e; }
  double z() const { return 1.0 - c - f; }
};

/// The two published parameter sets (which = 1 or 2).
Counterexample3Params counterexample3_set(int which);

TimeFamily counterexample3_family(const Counterexample3Params& params, double gamma);

/// Order-three joint probability table of the two-state memory process,
/// indexed [j3][j2][j1], together with its defining parameters.
struct JointProb3 {
  double table[2][2][2] = {};
  double epsilon = 0.0;
  std::vector<double> q;  // length 2

  double sum() const;
};

JointProb3 appendix_b_joint(double epsilon, const ProbabilityVector& q);

struct AppendixBReport {
  ComplexMatrix t21, t32, t31;       // transition matrices; column = conditioning state
  bool ck_holds = false;
  double ck_error = 0.0;
  bool markov_holds = false;
  double markov_error = 0.0;
  double cond3_given_21[2][2][2] = {};  // p(j3 | j2, j1)
  double cond3_given_2[2][2] = {};      // p(j3 | j2)
  double marginal_t2[2] = {};
};

/// Transition matrices, Chapman-Kolmogorov verdict and the order-three Markov
/// condition computed from the joint table. Conditionals on zero-probability
/// histories take their q -> positive limit, which the stored memory
/// parameter determines exactly.
AppendixBReport appendix_b_analysis(const JointProb3& joint, double tol = 1e-12);

/// A three-instant family view of the memory process (times 1, 2, 3) whose
/// pairwise propagators come from the conditional transition matrices.
TimeFamily appendix_b_family(double epsilon, const ProbabilityVector& q);

}  // namespace qopr
