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
#ifndef TRIBOOST_CSV_HPP_
#define TRIBOOST_CSV_HPP_

#include <string>
#include <vector>

#include "triboost/dataset.hpp"

namespace triboost {

// Comma-separated, one header row, UTF-8, no quoting. Tolerates CRLF.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path);

// Builds a Dataset from a CSV file. Numeric columns parse as reals; with
// one_hot, non-numeric columns expand in place to 0/1 dummies (one per
// distinct value, first-appearance order, named "col=value"). Rows with
// missing (empty) cells are dropped and reported to stderr with their
// 1-based data-row numbers. target_column may be empty (features only).
Dataset ingest_csv(const std::string& path, const std::string& target_column,
                   const std::string& family_tag, bool one_hot);

// Dataset to CSV: feature columns then the target column, 17 significant
// digits (round-trip exact).
void write_dataset_csv(const std::string& path, const Dataset& data,
                       const std::string& target_name = "y");

// Generic numeric table writer used for result/score/trace files.
void write_table_csv(const std::string& path,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows);

}  // namespace triboost

#endif  // TRIBOOST_CSV_HPP_
