#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qopr/matrix_io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / "qopr_cli_stdout.txt";
  const std::string command =
      std::string(QOPR_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::ostringstream ss;
  ss << in.rdbuf();
  result.output = ss.str();
  return result;
}

fs::path sandbox() {
  const fs::path dir = fs::temp_directory_path() / "qopr_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("embed: identity input collapses to a single operator") {
  const fs::path dir = sandbox();
  const fs::path input = dir / "identity3.json";
  qopr::save_matrix(qopr::ComplexMatrix::identity(3), input);
  const auto run = run_cli("embed " + input.string() + " --out " + dir.string());
  CHECK(run.exit_code == 0);

  const auto kraus = qopr::load_kraus(dir / "kraus.json");
  REQUIRE(kraus.size() == 1);
  CHECK(qopr::max_abs_diff(kraus[0], qopr::ComplexMatrix::identity(3)) < 1e-14);
  const auto form = qopr::load_matrix(dir / "matrix_form.json");
  CHECK(qopr::max_abs_diff(form, qopr::ComplexMatrix::identity(9)) < 1e-14);
  const auto vblocks = qopr::load_kraus(dir / "vblocks.json");
  REQUIRE(vblocks.size() == 3);
  CHECK(qopr::max_abs_diff(vblocks[0], qopr::ComplexMatrix::identity(3)) == 0.0);
}

TEST_CASE("embed: jump-process matrix reproduces the closed-form operator pair") {
  const fs::path dir = sandbox();
  const fs::path input = dir / "jump.json";
  const double t = 0.5;  // gamma = 1
  const double e = std::exp(-2.0 * t);
  qopr::save_matrix(qopr::ComplexMatrix::from_real_rows(
                        {{(1 + e) / 2, (1 - e) / 2}, {(1 - e) / 2, (1 + e) / 2}}),
                    input);
  const auto run = run_cli("embed " + input.string() + " --out " + dir.string());
  CHECK(run.exit_code == 0);
  const auto kraus = qopr::load_kraus(dir / "kraus.json");
  REQUIRE(kraus.size() == 2);
  const double scale = std::exp(-t / 2.0) / std::sqrt(2.0);
  const double c = scale * std::sqrt(std::cosh(t)), s = scale * std::sqrt(std::sinh(t));
  const auto a0 = qopr::ComplexMatrix::from_real_rows({{c, s}, {s, c}});
  const auto a1 = qopr::ComplexMatrix::from_real_rows({{c, -s}, {-s, c}});
  CHECK(qopr::max_abs_diff(kraus[0], a0) < 1e-12);
  CHECK(qopr::max_abs_diff(kraus[1], a1) < 1e-12);
}

TEST_CASE("embed: row-stochastic input is rejected with a named violation") {
  const fs::path dir = sandbox();
  const fs::path input = dir / "rowstoch.json";
  // rows sum to one, columns do not
  qopr::save_matrix(qopr::ComplexMatrix::from_real_rows({{0.7, 0.3}, {0.2, 0.8}}), input);
  const auto run = run_cli("embed " + input.string() + " --out " + dir.string());
  CHECK(run.exit_code == 2);
  CHECK(run.output.find("column") != std::string::npos);
}

TEST_CASE("embed: negative entries are rejected with a named violation") {
  const fs::path dir = sandbox();
  const fs::path input = dir / "negative.json";
  qopr::save_matrix(qopr::ComplexMatrix::from_real_rows({{1.2, 0.0}, {-0.2, 1.0}}), input);
  const auto run = run_cli("embed " + input.string() + " --out " + dir.string());
  CHECK(run.exit_code == 2);
  CHECK(run.output.find("negative") != std::string::npos);
}

TEST_CASE("analyze: jump process gives an all-true table, deterministic output") {
  const fs::path dir = sandbox();
  const fs::path table = dir / "scan.csv";
  const std::string args = "analyze --family dichotomic --gamma 1 --t 0:2:0.25 --offset 0.5 --out " +
                           table.string();
  const auto run = run_cli(args);
  CHECK(run.exit_code == 0);
  std::ifstream in(table);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,s,p_divisible,cp_divisible,min_choi_eig,min_intermediate_entry");
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++rows;
    CHECK(line.find("false") == std::string::npos);
    CHECK(line.find("indeterminate") == std::string::npos);
  }
  CHECK(rows == 9);

  std::ostringstream first;
  first << std::ifstream(table).rdbuf();
  const fs::path table2 = dir / "scan2.csv";
  run_cli("analyze --family dichotomic --gamma 1 --t 0:2:0.25 --offset 0.5 --out " +
          table2.string());
  std::ostringstream second;
  second << std::ifstream(table2).rdbuf();
  CHECK(first.str() == second.str());
}

TEST_CASE("analyze: oscillatory family reports non-divisible rows") {
  const auto run = run_cli("analyze --family oscillatory --t 1.2:2.4:0.3 --offset 0.5,0.9");
  CHECK(run.exit_code == 0);
  CHECK(run.output.find("false") != std::string::npos);
}

TEST_CASE("analyze: usage errors exit with 2") {
  CHECK(run_cli("analyze --family nosuch --t 0:1:0.5").exit_code == 2);
  CHECK(run_cli("analyze --family dichotomic --t 5:1:0.5").exit_code == 2);  // empty grid
  CHECK(run_cli("analyze --family dichotomic --t 0:1:-0.5").exit_code == 2);
}

TEST_CASE("exit codes stay within the documented set for parser-level errors") {
  CHECK(run_cli("nosuchcommand").exit_code == 2);
  CHECK(run_cli("analyze").exit_code == 2);        // missing required options
  CHECK(run_cli("--badflag").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("analyze: three-state witness family mixes divisible and non-divisible rows") {
  const auto run = run_cli("analyze --family counterexample3 --set 1 --t 0:5:0.5 --offset 0.25,1");
  CHECK(run.exit_code == 0);
  CHECK(run.output.find("true") != std::string::npos);
  CHECK(run.output.find("false") != std::string::npos);
}

TEST_CASE("analyze: singular base channel yields indeterminate rows and exit 3") {
  // the memory process has a flat (singular) one-point propagator at its
  // middle instant, so scans over it must keep going and flag those rows
  const auto run = run_cli("analyze --family appendix-b --epsilon 0.3 --t 1:2:1 --offset 1");
  CHECK(run.exit_code == 3);
  CHECK(run.output.find("indeterminate") != std::string::npos);
}

TEST_CASE("verify: known suites pass, unknown suite exits with 2") {
  const auto thm3 = run_cli("verify thm3");
  CHECK(thm3.exit_code == 0);
  CHECK(thm3.output.find("PASS") != std::string::npos);
  CHECK(thm3.output.find("FAIL") == std::string::npos);

  const auto lemma3 = run_cli("verify lemma3 --dim 3 --seed 7");
  CHECK(lemma3.exit_code == 0);

  const auto thm1 = run_cli("verify thm1 --dim 4 --seed 7");
  CHECK(thm1.exit_code == 0);
  CHECK(thm1.output.find("FAIL") == std::string::npos);

  const auto appendix = run_cli("verify appendix-b --epsilon 0 --q 0.5,0.5");
  CHECK(appendix.exit_code == 0);

  CHECK(run_cli("verify nosuch").exit_code == 2);
}

TEST_CASE("demo: every named example renders and exits cleanly") {
  const auto dich = run_cli("demo dichotomic --gamma 2 --t 1");
  CHECK(dich.exit_code == 0);
  CHECK(dich.output.find("p_divisible: true") != std::string::npos);
  CHECK(dich.output.find("cp_divisible: true") != std::string::npos);

  const auto memory = run_cli("demo appendix-b --epsilon 0.3 --q 1,0");
  CHECK(memory.exit_code == 0);
  CHECK(memory.output.find("holds") != std::string::npos);
  CHECK(memory.output.find("fails") != std::string::npos);

  const auto witness = run_cli("demo counterexample3 --set 1");
  CHECK(witness.exit_code == 0);
  CHECK(witness.output.find("root at t=4.169418") != std::string::npos);

  CHECK(run_cli("demo nosuch").exit_code == 2);
}
