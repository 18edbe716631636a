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

#include "qopr/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qopr/errors.hpp"

namespace qopr {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()) + " differ");
  }
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  ComplexMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("from_rows: ragged row lengths");
    std::size_t j = 0;
    for (const auto& e : row) m(i, j++) = e;
    ++i;
  }
  m.ensure_finite("from_rows");
  return m;
}

ComplexMatrix ComplexMatrix::from_real_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  ComplexMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("from_real_rows: ragged row lengths");
    std::size_t j = 0;
    for (double e : row) m(i, j++) = Complex(e, 0.0);
    ++i;
  }
  m.ensure_finite("from_real_rows");
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data()[k] = std::conj(data_[k]);
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const { return conjugate().transpose(); }

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw DimensionError("trace: matrix not square");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data()[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data()[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& e : data_) e *= scalar;
  return *this;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& e) {
    return std::isfinite(e.real()) && std::isfinite(e.imag());
  });
}

void ComplexMatrix::ensure_finite(const char* context) const {
  if (!all_finite()) throw DomainError(std::string(context) + ": non-finite entry");
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("operator*: inner dimensions " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()) + " differ");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix operator*(Complex scalar, ComplexMatrix a) { return a *= scalar; }
ComplexMatrix operator*(ComplexMatrix a, Complex scalar) { return a *= scalar; }

double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (const auto& e : a.data()) m = std::max(m, std::abs(e));
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

double inf_norm(const ComplexMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) row += std::abs(a(i, j));
    m = std::max(m, row);
  }
  return m;
}

ComplexMatrix hadamard_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "hadamard_product");
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.data().size(); ++k) out.data()[k] = a.data()[k] * b.data()[k];
  return out;
}

ComplexMatrix hadamard_power(const ComplexMatrix& a, double r) {
  ComplexMatrix out(a.rows(), a.cols());
  const bool integral = r == std::floor(r) && std::abs(r) < 9.1e15;
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    const Complex e = a.data()[k];
    if (integral) {
      const long long n = static_cast<long long>(r);
      if (n < 0 && e == Complex(0.0, 0.0)) {
        throw DomainError("hadamard_power: zero entry with negative exponent");
      }
      Complex p = 1.0;
      Complex base = e;
      for (unsigned long long m = std::llabs(n); m > 0; m >>= 1) {
        if (m & 1) p *= base;
        if (m > 1) base *= base;
      }
      out.data()[k] = n >= 0 ? p : Complex(1.0) / p;
      continue;
    }
    // principal non-negative real root; tiny negative dust from upstream
    // rounding is clamped, anything larger is a genuine domain violation
    if (std::abs(e.imag()) > 1e-13) {
      throw DomainError("hadamard_power: complex entry with fractional exponent");
    }
    double x = e.real();
    if (x < 0.0) {
      if (x < -1e-13) throw DomainError("hadamard_power: negative entry with fractional exponent");
      x = 0.0;
    }
    out.data()[k] = Complex(r == 0.5 ? std::sqrt(x) : std::pow(x, r), 0.0);
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t j = 0; j < a.rows(); ++j)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Complex ajl = a(j, l);
      if (ajl == Complex(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t m = 0; m < b.cols(); ++m)
          out(b.rows() * j + k, b.cols() * l + m) = ajl * b(k, m);
    }
  return out;
}

ComplexMatrix vec(const ComplexMatrix& a) {
  ComplexMatrix out(a.rows() * a.cols(), 1);
  for (std::size_t j = 0; j < a.rows(); ++j)
    for (std::size_t k = 0; k < a.cols(); ++k) out(j * a.cols() + k, 0) = a(j, k);
  return out;
}

ComplexMatrix unvec(const ComplexMatrix& column, std::size_t rows, std::size_t cols) {
  if (column.cols() != 1 || column.rows() != rows * cols) {
    throw DimensionError("unvec: expected a " + std::to_string(rows * cols) + "-entry column");
  }
  ComplexMatrix out(rows, cols);
  for (std::size_t j = 0; j < rows; ++j)
    for (std::size_t k = 0; k < cols; ++k) out(j, k) = column(j * cols + k, 0);
  return out;
}

IndexSet::IndexSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  for (std::size_t i = 1; i < indices_.size(); ++i) {
    if (indices_[i] <= indices_[i - 1]) {
      throw ArgumentError("IndexSet: indices must be strictly increasing");
    }
  }
}

DirectSumBlocks direct_sum_extract(const ComplexMatrix& m, const std::vector<IndexSet>& sets,
                                   double off_block_tol) {
  if (!m.is_square()) throw DimensionError("direct_sum_extract: matrix not square");
  const std::size_t n = m.rows();
  std::vector<std::size_t> owner(n, n);  // block id per index, n = unassigned
  std::size_t covered = 0;
  for (std::size_t b = 0; b < sets.size(); ++b) {
    for (std::size_t i = 0; i < sets[b].size(); ++i) {
      const std::size_t idx = sets[b][i];
      if (idx >= n) throw ArgumentError("direct_sum_extract: index out of range");
      if (owner[idx] != n) throw ArgumentError("direct_sum_extract: index sets overlap");
      owner[idx] = b;
      ++covered;
    }
  }
  if (covered != n) throw ArgumentError("direct_sum_extract: index sets do not cover the matrix");

  DirectSumBlocks out;
  out.blocks.reserve(sets.size());
  for (const auto& set : sets) {
    ComplexMatrix blk(set.size(), set.size());
    for (std::size_t i = 0; i < set.size(); ++i)
      for (std::size_t j = 0; j < set.size(); ++j) blk(i, j) = m(set[i], set[j]);
    out.blocks.push_back(std::move(blk));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (owner[i] == owner[j]) continue;
      out.max_off_block = std::max(out.max_off_block, std::abs(m(i, j)));
    }
  out.clean = out.max_off_block <= off_block_tol;
  return out;
}

Complex root_of_unity(long long num, long long den) {
  if (den <= 0) throw ArgumentError("root_of_unity: denominator must be positive");
  const long long m = ((num % den) + den) % den;
  if ((4 * m) % den == 0) {
    switch ((4 * m) / den) {
      case 0: return Complex(1.0, 0.0);
      case 1: return Complex(0.0, 1.0);
      case 2: return Complex(-1.0, 0.0);
      case 3: return Complex(0.0, -1.0);
    }
  }
  // ratio first: equal rationals land on the identical double before scaling
  const double angle = 2.0 * std::numbers::pi * (static_cast<double>(m) / static_cast<double>(den));
  return Complex(std::cos(angle), std::sin(angle));
}

}  // namespace qopr
