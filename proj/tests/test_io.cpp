#include <doctest.h>

#include <filesystem>
#include <random>

#include "qopr/errors.hpp"
#include "qopr/matrix_io.hpp"

using namespace qopr;

TEST_CASE("matrix text format: exact round trip of mixed real/complex data") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix m(3, 4);
  for (std::size_t k = 0; k < m.data().size(); ++k) {
    m.data()[k] = k % 3 == 0 ? Complex(u(rng), 0.0) : Complex(u(rng), u(rng));
  }
  const auto back = matrix_from_text(matrix_to_text(m));
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 4);
  for (std::size_t k = 0; k < m.data().size(); ++k) {
    CHECK(back.data()[k].real() == m.data()[k].real());
    CHECK(back.data()[k].imag() == m.data()[k].imag());
  }
}

TEST_CASE("matrix text format: real entries serialize as bare numbers") {
  const auto m = ComplexMatrix::from_real_rows({{1.5, -2.0}});
  const std::string text = matrix_to_text(m);
  CHECK(text.find("[1.5") == std::string::npos);  // no pair brackets for reals
  CHECK(text.find("1.5") != std::string::npos);
  const auto withc = ComplexMatrix::from_rows({{Complex(0.0, 1.0)}});
  CHECK(matrix_to_text(withc).find("[0, 1]") != std::string::npos);
}

TEST_CASE("matrix text format: malformed input throws") {
  CHECK_THROWS_AS(matrix_from_text("not json"), ArgumentError);
  CHECK_THROWS_AS(matrix_from_text(R"({"rows": 2, "cols": 2, "data": [1, 2, 3]})"),
                  ArgumentError);
  CHECK_THROWS_AS(matrix_from_text(R"({"rows": 1, "cols": 1, "data": [[1, 2, 3]]})"),
                  ArgumentError);
  CHECK_THROWS_AS(matrix_from_text(R"({"rows": 1, "cols": 1})"), ArgumentError);
}

TEST_CASE("kraus list round trip through a file") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "qopr_io_test";
  fs::create_directories(dir);
  std::vector<ComplexMatrix> ops = {
      ComplexMatrix::from_rows({{Complex(0.5, 0.5), Complex(0, 0)},
                                {Complex(0, 0), Complex(0.5, -0.5)}}),
      ComplexMatrix::identity(2)};
  const fs::path file = dir / "ops.json";
  save_kraus(ops, file);
  const auto back = load_kraus(file);
  REQUIRE(back.size() == 2);
  CHECK(max_abs_diff(back[0], ops[0]) == 0.0);
  CHECK(max_abs_diff(back[1], ops[1]) == 0.0);
  fs::remove_all(dir);
}

TEST_CASE("save/load: missing file throws") {
  CHECK_THROWS_AS(load_matrix("/nonexistent/path/m.json"), ArgumentError);
}
