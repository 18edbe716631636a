#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "qopr/divisibility.hpp"
#include "qopr/errors.hpp"
#include "qopr/linalg.hpp"
#include "qopr/representation.hpp"
#include "qopr/verification.hpp"

using namespace qopr;

TEST_CASE("intermediate_channel: t = s is the identity on the doubled space") {
  const TimeFamily fam = dichotomic_family(1.0);
  const auto mid = intermediate_channel(fam, 0.9, 0.9);
  REQUIRE_FALSE(mid.singular);
  CHECK(max_abs_diff(mid.form->matrix(), ComplexMatrix::identity(4)) < 1e-12);
}

TEST_CASE("intermediate_channel: jump process doubles its classical intermediate") {
  const TimeFamily fam = dichotomic_family(1.0);
  const double t = 1.4, s = 0.5;
  const auto mid = intermediate_channel(fam, t, s);
  REQUIRE_FALSE(mid.singular);
  const double decay = std::exp(-(t - s));
  ComplexMatrix lam_ts(2, 2);
  lam_ts(0, 0) = lam_ts(1, 1) = decay * std::cosh(t - s);
  lam_ts(0, 1) = lam_ts(1, 0) = decay * std::sinh(t - s);
  const auto blocks = direct_sum_extract(mid.form->matrix(), alpha_partition(2), 1e-11);
  CHECK(blocks.clean);
  CHECK(max_abs_diff(blocks.blocks[0], lam_ts) < 1e-12);
  CHECK(max_abs_diff(blocks.blocks[1], lam_ts) < 1e-12);
}

TEST_CASE("intermediate_channel: first block always carries the classical intermediate") {
  std::mt19937_64 rng(91);
  for (std::size_t n : {std::size_t{2}, std::size_t{3}}) {
    const TimeFamily fam = random_semigroup_family(n, rng);
    const double s = 0.4, t = 1.1;
    const auto mid = intermediate_channel(fam, t, s);
    REQUIRE_FALSE(mid.singular);
    const auto classical = intermediate_matrix(fam, t, s);
    REQUIRE_FALSE(classical.singular);
    const auto blocks = direct_sum_extract(mid.form->matrix(), alpha_partition(n), 1e-9);
    CHECK(max_abs_diff(blocks.blocks[0], classical.matrix) < 1e-10);
  }
}

TEST_CASE("intermediate_channel: composition consistency") {
  std::mt19937_64 rng(92);
  const TimeFamily fam = random_semigroup_family(3, rng);
  const double u = 0.3, s = 0.9, t = 1.6;
  const auto m_tu = intermediate_channel(fam, t, u);
  const auto m_ts = intermediate_channel(fam, t, s);
  const auto m_su = intermediate_channel(fam, s, u);
  REQUIRE_FALSE(m_tu.singular);
  REQUIRE_FALSE(m_ts.singular);
  REQUIRE_FALSE(m_su.singular);
  CHECK(max_abs_diff(m_tu.form->matrix(), m_ts.form->matrix() * m_su.form->matrix()) < 1e-10);
}

TEST_CASE("intermediate_channel: circulant families reduce to the embedded intermediate") {
  // circulant generator -> circulant propagators at every pair of times
  ComplexMatrix w(3, 3);
  const double rate = 0.7;
  for (std::size_t j = 0; j < 3; ++j) {
    w(j, j) = -rate;
    w((j + 1) % 3, j) = rate;
  }
  const TimeFamily fam = semigroup_family("circulant", w);
  const double t = 1.2, s = 0.4;
  const auto mid = intermediate_channel(fam, t, s);
  REQUIRE_FALSE(mid.singular);
  const auto classical = intermediate_matrix(fam, t, s);
  REQUIRE(classical.stochastic);
  const auto embedded = matrix_form(build_representation(StochasticMatrix(classical.matrix)).kraus);
  CHECK(max_abs_diff(mid.form->matrix(), embedded.matrix()) < 1e-10);
}

TEST_CASE("assess: jump process is divisible in both senses everywhere") {
  const TimeFamily fam = dichotomic_family(1.0);
  for (double s : {0.0, 0.5, 1.5}) {
    for (double dt : {0.0, 0.3, 1.0}) {
      const auto rep = assess(fam, s + dt, s);
      REQUIRE_FALSE(rep.indeterminate);
      CHECK(rep.p_divisible);
      CHECK(rep.cp_divisible);
      CHECK(rep.min_choi_eigenvalue >= -1e-10);
    }
  }
}

TEST_CASE("assess: oscillatory family loses classical divisibility at a sign flip") {
  const TimeFamily fam = oscillatory_family();
  const auto rep = assess(fam, 2.0, 1.5);
  REQUIRE_FALSE(rep.indeterminate);
  // oracle: classical entry negativity (see the classical-module test)
  CHECK_FALSE(rep.p_divisible);
  CHECK(rep.min_intermediate_entry < -1e-6);
}

TEST_CASE("scan: grid shape, ordering, and the all-true jump-process table") {
  const TimeFamily fam = dichotomic_family(1.0);
  std::vector<double> grid;
  for (int i = 0; i < 20; ++i) grid.push_back(0.15 * i);
  const std::vector<double> offsets = {0.1, 0.25, 0.5, 0.75, 1.0};
  const auto reports = scan(fam, grid, offsets);
  REQUIRE(reports.size() == 100);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    CHECK(r.s == doctest::Approx(grid[i / offsets.size()]));
    CHECK(r.t == doctest::Approx(grid[i / offsets.size()] + offsets[i % offsets.size()]));
    CHECK(r.p_divisible);
    CHECK(r.cp_divisible);
  }
}

TEST_CASE("scan: empty base grid gives an empty report list") {
  const TimeFamily fam = dichotomic_family(1.0);
  CHECK(scan(fam, {}, {0.5}).empty());
}

TEST_CASE("scan: three-state family flags match the classical entry oracle") {
  const TimeFamily fam = counterexample3_family(counterexample3_set(1), 1.0);
  std::vector<double> grid;
  for (double s = 0.0; s <= 5.0 + 1e-9; s += 0.5) grid.push_back(s);
  const std::vector<double> offsets = {0.25, 1.0};
  const auto reports = scan(fam, grid, offsets);
  int divisible = 0, not_divisible = 0;
  for (const auto& r : reports) {
    REQUIRE_FALSE(r.indeterminate);
    // oracle: recompute the intermediate entries directly
    const auto classical = intermediate_matrix(fam, r.t, r.s);
    CHECK(r.p_divisible == classical.stochastic);
    (r.p_divisible ? divisible : not_divisible) += 1;
  }
  // this family genuinely loses positivity on part of the range
  CHECK(divisible > 0);
  CHECK(not_divisible > 0);
}

TEST_CASE("semigroup verdicts: always classically divisible, spectrum matches the oracle") {
  // The quantum verdict is NOT asserted true here: generic asymmetric
  // semigroups produce divided maps with genuinely negative reordered
  // spectra (see the acceptance report). What must hold: the classical flag,
  // and agreement of the reported minimum eigenvalue with an independent
  // spectral computation.
  std::mt19937_64 rng(93);
  for (std::size_t n : {std::size_t{2}, std::size_t{3}}) {
    for (int trial = 0; trial < 10; ++trial) {
      const TimeFamily fam = random_semigroup_family(n, rng);
      std::uniform_real_distribution<double> u(0.05, 2.0);
      const double s = u(rng), dt = u(rng);
      const auto rep = assess(fam, s + dt, s);
      if (rep.indeterminate) continue;
      CHECK(rep.p_divisible);
      const auto mid = intermediate_channel(fam, s + dt, s);
      REQUIRE_FALSE(mid.singular);
      const auto oracle_eigs = hermitian_eigenvalues(gamma_reorder(*mid.form));
      CHECK(rep.min_choi_eigenvalue == doctest::Approx(oracle_eigs.front()).epsilon(1e-10));
      CHECK(rep.cp_divisible ==
            (rep.min_choi_eigenvalue >= -1e-9 * static_cast<double>(n)));
    }
  }
}

TEST_CASE("circulant semigroups are divisible in both senses") {
  // circulant propagators make the divided map a valid channel form itself
  std::mt19937_64 rng(95);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (std::size_t n : {std::size_t{2}, std::size_t{3}}) {
    for (int trial = 0; trial < 5; ++trial) {
      ComplexMatrix w(n, n);
      std::vector<double> rates(n - 1);
      for (auto& r : rates) r = u(rng);
      for (std::size_t k = 0; k < n; ++k) {
        double total = 0.0;
        for (std::size_t step = 1; step < n; ++step) {
          w((k + step) % n, k) = rates[step - 1];
          total += rates[step - 1];
        }
        w(k, k) = -total;
      }
      const TimeFamily fam = semigroup_family("circulant", w);
      const double s = u(rng), dt = u(rng);
      const auto rep = assess(fam, s + dt, s);
      REQUIRE_FALSE(rep.indeterminate);
      CHECK(rep.p_divisible);
      CHECK(rep.cp_divisible);
      CHECK(rep.min_choi_eigenvalue >= -1e-9 * static_cast<double>(n));
    }
  }
}

TEST_CASE("trace_diagnostics: jump process and identity baseline") {
  const TimeFamily fam = dichotomic_family(1.0);
  const double t = 1.1, s = 0.4;
  const auto mid = intermediate_channel(fam, t, s);
  REQUIRE_FALSE(mid.singular);
  const auto classical = intermediate_matrix(fam, t, s);
  const auto diag = trace_diagnostics(*mid.form, classical.matrix);
  CHECK(diag.trace_ok);
  // oracle: two unit column sums
  CHECK(diag.trace_value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(diag.diagonal_pattern_ok);

  const auto at_equal = intermediate_channel(fam, s, s);
  const auto diag_eq = trace_diagnostics(*at_equal.form, ComplexMatrix::identity(2));
  CHECK(diag_eq.trace_value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("trace_diagnostics: random embedded channel passes the diagonal pattern") {
  std::mt19937_64 rng(94);
  const StochasticMatrix lam = random_stochastic(3, rng);
  const auto form = matrix_form(build_representation(lam).kraus);
  const auto diag = trace_diagnostics(form, lam.to_complex());
  CHECK(diag.trace_ok);
  CHECK(diag.diagonal_pattern_ok);
  CHECK(diag.max_diagonal_error < 1e-13);
}

TEST_CASE("scan_table: header, row count, determinism") {
  const TimeFamily fam = dichotomic_family(1.0);
  const auto reports = scan(fam, {0.0, 0.5}, {0.25});
  const std::string table = scan_table(reports);
  std::istringstream is(table);
  std::string header;
  std::getline(is, header);
  CHECK(header == "t,s,p_divisible,cp_divisible,min_choi_eig,min_intermediate_entry");
  int rows = 0;
  std::string line;
  while (std::getline(is, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 2);
  CHECK(table == scan_table(scan(fam, {0.0, 0.5}, {0.25})));
  CHECK(table.find("true") != std::string::npos);
}
