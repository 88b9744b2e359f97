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
#ifndef TRIBOOST_DATASET_HPP_
#define TRIBOOST_DATASET_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "triboost/error.hpp"

namespace triboost {

// Read-only view of a dense row-major matrix.
struct MatrixView {
  const double* data = nullptr;
  std::int64_t rows = 0;
  std::int64_t cols = 0;

  double operator()(std::int64_t i, std::int64_t j) const {
    return data[i * cols + j];
  }
  const double* row(std::int64_t i) const { return data + i * cols; }
};

// Dense in-memory dataset: feature matrix, response vector, column names.
// No missing values; constant columns are permitted.
struct Dataset {
  std::vector<double> features;  // row-major n_rows x n_cols
  std::vector<double> response;  // length n_rows
  std::vector<std::string> feature_names;
  std::string family_tag;  // loss family hint, may be empty

  std::int64_t n_rows = 0;
  std::int64_t n_cols = 0;

  double x(std::int64_t i, std::int64_t j) const {
    return features[i * n_cols + j];
  }
  MatrixView feature_view() const { return {features.data(), n_rows, n_cols}; }

  // Row subset in the order given by `idx`.
  Dataset subset(const std::vector<std::int64_t>& idx) const;

  void check_consistent() const;
};

}  // namespace triboost

#endif  // TRIBOOST_DATASET_HPP_
