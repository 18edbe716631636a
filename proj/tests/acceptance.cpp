// Acceptance gate: every criterion runs at its pinned tolerance and prints
// one pass/fail line; any failure fails the build.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>

#include "qopr/verification.hpp"

TEST_CASE("acceptance criteria") {
  using clock = std::chrono::steady_clock;

  {
    // the uniqueness witnesses carry their own runtime bound
    const auto t0 = clock::now();
    (void)qopr::run_suite("thm3");
    const double witness_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    std::printf("uniqueness-witness suite wall time: %.2f s\n", witness_seconds);
    CHECK(witness_seconds < 5.0);
  }

  const auto started = clock::now();
  const auto results = qopr::run_all_criteria();
  const double seconds =
      std::chrono::duration<double>(clock::now() - started).count();

  REQUIRE(results.size() == 10);
  for (const auto& criterion : results) {
    std::printf("criterion %2d: %s - %s\n", criterion.index,
                criterion.passed ? "PASS" : "FAIL", criterion.title.c_str());
    for (const auto& failure : criterion.failures) {
      std::printf("              failed check: %s\n", failure.c_str());
    }
    CHECK_MESSAGE(criterion.passed, "criterion ", criterion.index, " (", criterion.title, ")");
  }
  std::printf("acceptance suite wall time: %.2f s\n", seconds);
  CHECK(seconds < 60.0);
}
