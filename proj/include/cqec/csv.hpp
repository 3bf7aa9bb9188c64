// Copyright 2026 The cqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
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

namespace cqec::cli {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Throws ValidationError unless every row has header.size() entries.
  void validate() const;
  /// Header line then one line per row, LF endings, "%.8e" numbers.
  std::string render() const;
};

namespace schema {
inline const std::vector<std::string> kFidelityCurve{"t", "fidelity", "baseline"};
inline const std::vector<std::string> kScalingSweep{"kappa", "s", "lambda", "F_T"};
inline const std::vector<std::string> kSurface{"gamma", "kappa", "F_T"};
inline const std::vector<std::string> kZeno{"N", "tau", "survival", "deviation"};
}  // namespace schema

/// Nine significant digits in scientific notation.
std::string format_number(double v);

void write_csv(const CsvTable& table, const std::filesystem::path& path);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace cqec::cli
