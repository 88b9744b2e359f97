/*
 * Copyright 2026 The triboost authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "triboost/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "triboost/numeric.hpp"

namespace triboost {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

bool parse_double(const std::string& cell, double* out) {
  if (cell.empty()) return false;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size()) return false;
  *out = v;
  return true;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first) {
      table.header = split_line(line);
      first = false;
      continue;
    }
    if (line.empty()) continue;
    table.rows.push_back(split_line(line));
  }
  if (first || table.header.empty()) {
    throw DataError("'" + path + "' is empty or has no header row");
  }
  return table;
}

Dataset ingest_csv(const std::string& path, const std::string& target_column,
                   const std::string& family_tag, bool one_hot) {
  const CsvTable table = read_csv(path);
  const std::size_t width = table.header.size();

  std::int64_t target_idx = -1;
  if (!target_column.empty()) {
    for (std::size_t j = 0; j < width; ++j) {
      if (table.header[j] == target_column) {
        target_idx = static_cast<std::int64_t>(j);
        break;
      }
    }
    if (target_idx < 0) {
      std::string cols;
      for (std::size_t j = 0; j < width; ++j) {
        if (j) cols += ", ";
        cols += table.header[j];
      }
      throw DataError("target column '" + target_column + "' not found in '" +
                      path + "'; available columns: " + cols);
    }
  }

  // Drop rows with missing cells, reporting 1-based data-row numbers.
  std::vector<const std::vector<std::string>*> rows;
  std::string dropped;
  std::size_t dropped_count = 0;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& cells = table.rows[r];
    bool missing = cells.size() != width;
    if (!missing) {
      for (const auto& c : cells) {
        if (c.empty()) {
          missing = true;
          break;
        }
      }
    }
    if (missing) {
      ++dropped_count;
      if (dropped_count <= 20) {
        if (!dropped.empty()) dropped += ", ";
        dropped += std::to_string(r + 1);
      }
    } else {
      rows.push_back(&cells);
    }
  }
  if (dropped_count > 0) {
    std::fprintf(stderr,
                 "triboost: warning: rejected %zu row(s) with missing cells "
                 "in '%s' (rows %s%s)\n",
                 dropped_count, path.c_str(), dropped.c_str(),
                 dropped_count > 20 ? ", ..." : "");
  }
  if (rows.empty()) throw DataError("'" + path + "' has no usable data rows");
  const std::int64_t n = static_cast<std::int64_t>(rows.size());

  // Column typing: numeric iff every cell parses.
  std::vector<bool> is_numeric(width, true);
  for (std::size_t j = 0; j < width; ++j) {
    double v;
    for (const auto* row : rows) {
      if (!parse_double((*row)[j], &v)) {
        is_numeric[j] = false;
        break;
      }
    }
  }
  if (target_idx >= 0 && !is_numeric[target_idx]) {
    throw DataError("target column '" + target_column +
                    "' contains non-numeric values");
  }

  Dataset data;
  data.family_tag = family_tag;
  data.n_rows = n;

  // Expand columns left to right; string columns become 0/1 dummies in
  // first-appearance order of their distinct values.
  std::vector<std::vector<double>> columns;
  for (std::size_t j = 0; j < width; ++j) {
    if (static_cast<std::int64_t>(j) == target_idx) continue;
    if (is_numeric[j]) {
      std::vector<double> col(n);
      for (std::int64_t i = 0; i < n; ++i) {
        parse_double((*rows[i])[j], &col[i]);
      }
      data.feature_names.push_back(table.header[j]);
      columns.push_back(std::move(col));
      continue;
    }
    if (!one_hot) {
      throw DataError("column '" + table.header[j] +
                      "' is non-numeric; pass --one-hot to expand it");
    }
    std::vector<std::string> levels;
    std::unordered_map<std::string, std::size_t> level_of;
    for (std::int64_t i = 0; i < n; ++i) {
      const std::string& v = (*rows[i])[j];
      if (level_of.emplace(v, levels.size()).second) levels.push_back(v);
    }
    std::vector<std::vector<double>> dummies(levels.size(),
                                             std::vector<double>(n, 0.0));
    for (std::int64_t i = 0; i < n; ++i) {
      dummies[level_of[(*rows[i])[j]]][i] = 1.0;
    }
    for (std::size_t l = 0; l < levels.size(); ++l) {
      data.feature_names.push_back(table.header[j] + "=" + levels[l]);
      columns.push_back(std::move(dummies[l]));
    }
  }

  data.n_cols = static_cast<std::int64_t>(columns.size());
  data.features.resize(static_cast<std::size_t>(n) * data.n_cols);
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < data.n_cols; ++j) {
      data.features[i * data.n_cols + j] = columns[j][i];
    }
  }

  data.response.resize(n, 0.0);
  if (target_idx >= 0) {
    for (std::int64_t i = 0; i < n; ++i) {
      parse_double((*rows[i])[target_idx], &data.response[i]);
    }
  }
  return data;
}

void write_dataset_csv(const std::string& path, const Dataset& data,
                       const std::string& target_name) {
  data.check_consistent();
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  for (std::int64_t j = 0; j < data.n_cols; ++j) {
    out << (data.feature_names.empty() ? "x" + std::to_string(j + 1)
                                       : data.feature_names[j])
        << ',';
  }
  out << target_name << '\n';
  for (std::int64_t i = 0; i < data.n_rows; ++i) {
    for (std::int64_t j = 0; j < data.n_cols; ++j) {
      out << numeric::format_double(data.x(i, j)) << ',';
    }
    out << numeric::format_double(data.response[i]) << '\n';
  }
  if (!out) throw DataError("failed writing '" + path + "'");
}

void write_table_csv(const std::string& path,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j) out << ',';
    out << header[j];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ',';
      out << row[j];
    }
    out << '\n';
  }
  if (!out) throw DataError("failed writing '" + path + "'");
}

}  // namespace triboost
