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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace qopr {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major storage. Small sizes only (N^2 <= ~10^4
/// entries); value semantics throughout.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

  static ComplexMatrix identity(std::size_t n);
  /// Builds from nested row lists; validates rectangular shape and finiteness.
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
  static ComplexMatrix from_real_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<Complex>& data() const { return data_; }
  std::vector<Complex>& data() { return data_; }

  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  ComplexMatrix adjoint() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  /// True when every entry is finite (no NaN/Inf).
  bool all_finite() const;
  /// Throws DomainError unless all_finite().
  void ensure_finite(const char* context) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scalar, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex scalar);

/// Max-entry norm ||a||_max.
double max_abs(const ComplexMatrix& a);
/// ||a - b||_max; shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// Max row sum of absolute values (infinity norm).
double inf_norm(const ComplexMatrix& a);

/// Entrywise product; shapes must agree.
ComplexMatrix hadamard_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Entrywise power with the principal root. Integer exponents accept any
/// complex entries; fractional exponents require non-negative real entries
/// (the only use here is the square root of a stochastic matrix).
ComplexMatrix hadamard_power(const ComplexMatrix& a, double r);

/// Kronecker product: entry (rows_b*j + k, cols_b*l + m) = a(j,l) * b(k,m).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Row-major stacking: entry (j*cols + k) of the column equals a(j,k).
ComplexMatrix vec(const ComplexMatrix& a);
/// Inverse of vec for the given target shape.
ComplexMatrix unvec(const ComplexMatrix& column, std::size_t rows, std::size_t cols);

/// Ordered set of distinct matrix indices, strictly increasing.
class IndexSet {
 public:
  IndexSet() = default;
  /// Validates strict increase; ArgumentError otherwise.
  explicit IndexSet(std::vector<std::size_t> indices);

  std::size_t size() const { return indices_.size(); }
  std::size_t operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<std::size_t>& indices() const { return indices_; }

 private:
  std::vector<std::size_t> indices_;
};

struct DirectSumBlocks {
  std::vector<ComplexMatrix> blocks;
  /// True when every entry outside the blocks is below `tol` in modulus.
  bool clean = true;
  /// Largest off-block modulus actually observed.
  double max_off_block = 0.0;
};

/// Extracts the principal submatrices m[sets[j]] and verifies the direct-sum
/// structure. The sets must partition {0,...,n-1}; ArgumentError otherwise.
DirectSumBlocks direct_sum_extract(const ComplexMatrix& m, const std::vector<IndexSet>& sets,
                                   double off_block_tol = 1e-12);

/// Unit complex number exp(2*pi*i * num/den), with the integer reduced mod den
/// first. Quarter turns are returned exactly so structurally zero sums cancel
/// bit-for-bit.
Complex root_of_unity(long long num, long long den);

}  // namespace qopr
