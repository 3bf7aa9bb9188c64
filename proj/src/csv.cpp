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

#include "cqec/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cqec/errors.hpp"

namespace cqec::cli {

void CsvTable::validate() const {
  if (header.empty()) throw ValidationError("CSV table needs a header");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != header.size()) {
      throw ValidationError("CSV row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                            " fields, header has " + std::to_string(header.size()));
    }
  }
}

std::string format_number(double v) {
  char buf[32];
  // -0 renders as 0 so identical values produce identical bytes.
  std::snprintf(buf, sizeof buf, "%.8e", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string CsvTable::render() const {
  validate();
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const CsvTable& table, const std::filesystem::path& path) {
  const std::string body = table.render();
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path.string() + "' for reading");
  CsvTable t;
  std::string line;
  if (!std::getline(f, line)) throw IoError("'" + path.string() + "' is empty");
  {
    std::stringstream ss(line);
    for (std::string field; std::getline(ss, field, ',');) t.header.push_back(field);
  }
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    for (std::string field; std::getline(ss, field, ',');) {
      try {
        row.push_back(std::stod(field));
      } catch (const std::exception&) {
        throw IoError("'" + path.string() + "': bad number '" + field + "'");
      }
    }
    t.rows.push_back(std::move(row));
  }
  t.validate();
  return t;
}

}  // namespace cqec::cli
