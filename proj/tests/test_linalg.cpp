#include <doctest.h>

#include <cmath>
#include <random>

#include "qopr/errors.hpp"
#include "qopr/linalg.hpp"
#include "qopr/representation.hpp"
#include "qopr/tolerances.hpp"

using namespace qopr;

namespace {

ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = Complex(u(rng), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = Complex(u(rng), u(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

}  // namespace

TEST_CASE("hermitian_eigenvalues: identity") {
  const auto eig = hermitian_eigenvalues(ComplexMatrix::identity(5));
  for (double v : eig) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eigenvalues: 4x4 block pattern has spectrum {0,0,2,2}") {
  // oracle: characteristic polynomial of the two disjoint [[1,1],[1,1]] blocks,
  // x(x-2) each, frozen here
  const auto g2 = build_g(2);
  const auto eig = hermitian_eigenvalues(g2);
  REQUIRE(eig.size() == 4);
  CHECK(std::abs(eig[0]) < 1e-12);
  CHECK(std::abs(eig[1]) < 1e-12);
  CHECK(eig[2] == doctest::Approx(2.0));
  CHECK(eig[3] == doctest::Approx(2.0));
}

TEST_CASE("hermitian_eigenvalues: the support pattern only has 0 and N") {
  for (std::size_t n = 2; n <= 8; ++n) {
    for (double v : hermitian_eigenvalues(build_g(n))) {
      const double nearest = std::abs(v) < std::abs(v - static_cast<double>(n))
                                 ? 0.0
                                 : static_cast<double>(n);
      CHECK(std::abs(v - nearest) < 1e-10);
    }
  }
}

TEST_CASE("hermitian_eigenvalues: non-Hermitian input throws") {
  auto m = ComplexMatrix::identity(3);
  m(0, 1) = Complex(0.5, 0.0);
  CHECK_THROWS_AS(hermitian_eigenvalues(m), DomainError);
}

TEST_CASE("hermitian eigenvalues sum to the trace") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = random_hermitian(6, rng);
    double sum = 0.0;
    for (double v : hermitian_eigenvalues(m)) sum += v;
    CHECK(std::abs(sum - m.trace().real()) < 1e-10);
  }
}

TEST_CASE("det_and_inverse: identity") {
  const auto out = det_and_inverse(ComplexMatrix::identity(4));
  CHECK(std::abs(out.det - Complex(1, 0)) < 1e-15);
  REQUIRE(out.invertible());
  CHECK(max_abs_diff(*out.inverse, ComplexMatrix::identity(4)) < 1e-15);
}

TEST_CASE("det_and_inverse: 2x2 closed form on the jump-process matrix") {
  for (double t : {0.1, 0.5, 1.0, 2.5}) {
    const double e = std::exp(-2.0 * t);
    const auto lam = ComplexMatrix::from_real_rows(
        {{(1 + e) / 2, (1 - e) / 2}, {(1 - e) / 2, (1 + e) / 2}});
    // oracle: ad - bc
    const double oracle =
        (lam(0, 0) * lam(1, 1) - lam(0, 1) * lam(1, 0)).real();
    const auto out = det_and_inverse(lam);
    CHECK(std::abs(out.det.real() - oracle) < 1e-15);
    CHECK(out.det.real() == doctest::Approx(e).epsilon(1e-12));
    REQUIRE(out.invertible());
    CHECK(max_abs_diff(lam * (*out.inverse), ComplexMatrix::identity(2)) <= tol::inv);
  }
}

TEST_CASE("det_and_inverse: cyclic shift determinant is the permutation sign") {
  for (std::size_t n = 2; n <= 8; ++n) {
    // oracle: an n-cycle decomposes into n-1 transpositions
    const double parity = (n - 1) % 2 == 0 ? 1.0 : -1.0;
    const auto out = det_and_inverse(build_c(n));
    CHECK(out.det.real() == doctest::Approx(parity).epsilon(1e-12));
  }
}

TEST_CASE("det_and_inverse: singular input is flagged, no inverse") {
  auto m = ComplexMatrix(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;  // rank 2
  const auto out = det_and_inverse(m);
  CHECK_FALSE(out.invertible());
  CHECK(out.reason == SingularReason::tiny_determinant);
}

TEST_CASE("det_and_inverse: returned inverses meet the residual contract") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix m(5, 5);
    for (auto& e : m.data()) e = Complex(u(rng), u(rng));
    const auto out = det_and_inverse(m);
    if (!out.invertible()) continue;
    CHECK(max_abs_diff(m * (*out.inverse), ComplexMatrix::identity(5)) <= tol::inv);
    CHECK(out.condition_estimate <= tol::cond_max);
  }
}
