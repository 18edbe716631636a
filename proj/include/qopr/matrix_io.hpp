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

#include <filesystem>
#include <string>
#include <vector>

#include "qopr/matrix.hpp"

namespace qopr {

// Shared matrix text format: a UTF-8 JSON document with fields `rows`, `cols`
// and `data` (row-major; each entry a bare real or a two-element [re, im]
// pair). Reals are written with 17 significant digits so values round-trip
// exactly.

std::string matrix_to_text(const ComplexMatrix& m);
ComplexMatrix matrix_from_text(const std::string& text);

void save_matrix(const ComplexMatrix& m, const std::filesystem::path& path);
ComplexMatrix load_matrix(const std::filesystem::path& path);

/// Kraus sets travel as a JSON array of matrix documents.
std::string kraus_to_text(const std::vector<ComplexMatrix>& ops);
std::vector<ComplexMatrix> kraus_from_text(const std::string& text);

void save_kraus(const std::vector<ComplexMatrix>& ops, const std::filesystem::path& path);
std::vector<ComplexMatrix> load_kraus(const std::filesystem::path& path);

/// 17-significant-digit rendering used by every writer in the project.
std::string format_real(double x);

}  // namespace qopr
