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
#include "triboost/dataset.hpp"

namespace triboost {

Dataset Dataset::subset(const std::vector<std::int64_t>& idx) const {
  Dataset out;
  out.feature_names = feature_names;
  out.family_tag = family_tag;
  out.n_rows = static_cast<std::int64_t>(idx.size());
  out.n_cols = n_cols;
  out.features.reserve(idx.size() * static_cast<std::size_t>(n_cols));
  out.response.reserve(idx.size());
  for (const std::int64_t i : idx) {
    const double* row = features.data() + i * n_cols;
    out.features.insert(out.features.end(), row, row + n_cols);
    out.response.push_back(response[i]);
  }
  return out;
}

void Dataset::check_consistent() const {
  if (n_rows < 0 || n_cols < 0 ||
      features.size() !=
          static_cast<std::size_t>(n_rows) * static_cast<std::size_t>(n_cols) ||
      response.size() != static_cast<std::size_t>(n_rows)) {
    throw DataError("dataset shape is inconsistent");
  }
  if (!feature_names.empty() &&
      feature_names.size() != static_cast<std::size_t>(n_cols)) {
    throw DataError("feature name count does not match column count");
  }
}

}  // namespace triboost
