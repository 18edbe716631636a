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

#include "qopr/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qopr/errors.hpp"

namespace qopr {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

void append_entry(std::string& out, const Complex& e) {
  if (e.imag() == 0.0) {
    out += format_real(e.real());
  } else {
    out += '[';
    out += format_real(e.real());
    out += ", ";
    out += format_real(e.imag());
    out += ']';
  }
}

std::string matrix_body(const ComplexMatrix& m) {
  std::string out;
  out += "{\n  \"rows\": " + std::to_string(m.rows());
  out += ",\n  \"cols\": " + std::to_string(m.cols());
  out += ",\n  \"data\": [";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += "\n    ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      append_entry(out, m(i, j));
      if (i * m.cols() + j + 1 < m.rows() * m.cols()) out += ", ";
    }
  }
  out += "\n  ]\n}";
  return out;
}

Complex parse_entry(const nlohmann::json& e) {
  if (e.is_number()) return Complex(e.get<double>(), 0.0);
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return Complex(e[0].get<double>(), e[1].get<double>());
  }
  throw ArgumentError("matrix text: data entry must be a real or a [re, im] pair");
}

ComplexMatrix matrix_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("rows") || !doc.contains("cols") || !doc.contains("data")) {
    throw ArgumentError("matrix text: expected fields rows, cols, data");
  }
  const auto rows = doc["rows"].get<std::size_t>();
  const auto cols = doc["cols"].get<std::size_t>();
  const auto& data = doc["data"];
  if (!data.is_array() || data.size() != rows * cols) {
    throw ArgumentError("matrix text: data length must equal rows*cols");
  }
  ComplexMatrix m(rows, cols);
  for (std::size_t k = 0; k < data.size(); ++k) m.data()[k] = parse_entry(data[k]);
  m.ensure_finite("matrix text");
  return m;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ArgumentError("cannot write file: " + path.string());
  out << text;
}

}  // namespace

std::string matrix_to_text(const ComplexMatrix& m) { return matrix_body(m) + "\n"; }

ComplexMatrix matrix_from_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("matrix text: ") + e.what());
  }
  return matrix_from_json(doc);
}

void save_matrix(const ComplexMatrix& m, const std::filesystem::path& path) {
  write_file(path, matrix_to_text(m));
}

ComplexMatrix load_matrix(const std::filesystem::path& path) {
  return matrix_from_text(read_file(path));
}

std::string kraus_to_text(const std::vector<ComplexMatrix>& ops) {
  std::string out = "[";
  for (std::size_t i = 0; i < ops.size(); ++i) {
    out += matrix_body(ops[i]);
    if (i + 1 < ops.size()) out += ",\n";
  }
  out += "]\n";
  return out;
}

std::vector<ComplexMatrix> kraus_from_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("kraus text: ") + e.what());
  }
  if (!doc.is_array()) throw ArgumentError("kraus text: expected an array of matrices");
  std::vector<ComplexMatrix> ops;
  ops.reserve(doc.size());
  for (const auto& item : doc) ops.push_back(matrix_from_json(item));
  return ops;
}

void save_kraus(const std::vector<ComplexMatrix>& ops, const std::filesystem::path& path) {
  write_file(path, kraus_to_text(ops));
}

std::vector<ComplexMatrix> load_kraus(const std::filesystem::path& path) {
  return kraus_from_text(read_file(path));
}

}  // namespace qopr
