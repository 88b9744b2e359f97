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
#ifndef TRIBOOST_TREE_HPP_
#define TRIBOOST_TREE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "triboost/dataset.hpp"

namespace triboost {

enum class LeafConstraint {
  kRawCount,            // number of samples per leaf >= S
  kEquivalentWeighted,  // sum of normalized weights per leaf >= S
  kRawHessianSum,       // sum of raw Hessians per leaf >= S
};

std::string to_string(LeafConstraint c);
LeafConstraint leaf_constraint_from_string(const std::string& name);

struct TreeConfig {
  int max_depth = 5;  // root has depth 0; leaves at depth <= max_depth
  LeafConstraint leaf_constraint = LeafConstraint::kRawCount;
  double min_per_leaf = 1.0;  // the constant S

  void validate() const;
};

// Axis-aligned binary regression tree in flat arrays. Node i is a leaf iff
// feature[i] < 0. Routing: go left iff x[feature] <= threshold.
struct RegressionTree {
  std::vector<int> feature;
  std::vector<double> threshold;
  std::vector<int> left;
  std::vector<int> right;
  std::vector<double> value;  // leaf value; 0 on internal nodes
  std::int64_t num_features = 0;

  std::int64_t node_count() const {
    return static_cast<std::int64_t>(feature.size());
  }
  bool is_leaf(std::int64_t node) const { return feature[node] < 0; }

  // Leaf index reached by one feature row of width num_features.
  std::int64_t route(const double* row) const;
  double predict_row(const double* row) const { return value[route(row)]; }
};

// Per-feature presorted sample orders plus a column-major copy of the
// features. Built once per feature matrix and reused across every tree fit
// on it (the sort depends only on the features).
class SplitContext {
 public:
  explicit SplitContext(MatrixView features);

  std::int64_t rows() const { return rows_; }
  std::int64_t cols() const { return cols_; }
  double feature_value(std::int64_t sample, std::int64_t col) const {
    return columns_[col * rows_ + sample];
  }
  std::span<const std::int64_t> sorted_order(std::int64_t col) const {
    return {order_.data() + col * rows_, static_cast<std::size_t>(rows_)};
  }

 private:
  std::int64_t rows_;
  std::int64_t cols_;
  std::vector<double> columns_;       // column-major feature copy
  std::vector<std::int64_t> order_;   // per column: samples sorted by value
};

struct TreeFit {
  RegressionTree tree;
  std::vector<std::int64_t> leaf_of_sample;  // training-row leaf assignment
};

// Exact-greedy CART fit: at every node all features and all midpoints
// between consecutive distinct sorted values are scanned; the split with the
// largest weighted-SSE reduction wins (ties: lowest feature index, then
// lowest threshold). Splits whose children would violate the leaf constraint
// are skipped; recursion stops at max_depth or when no candidate has
// positive gain. Leaf values are weighted means of the targets.
//
// The constraint interprets `weights` directly: pass normalized weights for
// kEquivalentWeighted, raw (floored) Hessians for kRawHessianSum; weight
// sums are irrelevant for kRawCount.
TreeFit fit_tree(const SplitContext& ctx, std::span<const double> targets,
                 std::span<const double> weights, const TreeConfig& config);

// Convenience overload building the context internally.
TreeFit fit_tree(MatrixView features, std::span<const double> targets,
                 std::span<const double> weights, const TreeConfig& config);

// Weighted mean sum(w*t)/sum(w); throws DataError on zero total weight.
double leaf_value(std::span<const double> targets,
                  std::span<const double> weights);

// Constraint check for a single prospective leaf.
bool constraint_satisfied(const TreeConfig& config,
                          std::span<const double> leaf_weights,
                          std::int64_t leaf_count);

// Routes each row to its leaf value; throws DataError on width mismatch.
std::vector<double> predict_tree(const RegressionTree& tree,
                                 MatrixView features);

}  // namespace triboost

#endif  // TRIBOOST_TREE_HPP_
