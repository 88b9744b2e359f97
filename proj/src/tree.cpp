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
#include "triboost/tree.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace triboost {

std::string to_string(LeafConstraint c) {
  switch (c) {
    case LeafConstraint::kRawCount: return "count";
    case LeafConstraint::kEquivalentWeighted: return "equivalent";
    case LeafConstraint::kRawHessianSum: return "hessian-sum";
  }
  return "unknown";
}

LeafConstraint leaf_constraint_from_string(const std::string& name) {
  if (name == "count") return LeafConstraint::kRawCount;
  if (name == "equivalent") return LeafConstraint::kEquivalentWeighted;
  if (name == "hessian-sum") return LeafConstraint::kRawHessianSum;
  throw DataError("unknown leaf constraint '" + name + "'");
}

void TreeConfig::validate() const {
  if (max_depth < 1) throw DataError("max_depth must be >= 1");
  if (!(min_per_leaf >= 0.0)) throw DataError("min_per_leaf must be >= 0");
}

std::int64_t RegressionTree::route(const double* row) const {
  std::int64_t node = 0;
  while (feature[node] >= 0) {
    node = row[feature[node]] <= threshold[node] ? left[node] : right[node];
  }
  return node;
}

SplitContext::SplitContext(MatrixView features)
    : rows_(features.rows), cols_(features.cols) {
  columns_.resize(static_cast<std::size_t>(rows_) * cols_);
  order_.resize(static_cast<std::size_t>(rows_) * cols_);
  for (std::int64_t j = 0; j < cols_; ++j) {
    double* col = columns_.data() + j * rows_;
    for (std::int64_t i = 0; i < rows_; ++i) {
      const double v = features(i, j);
      if (!std::isfinite(v)) {
        throw DataError("non-finite feature value at row " +
                        std::to_string(i) + ", column " + std::to_string(j));
      }
      col[i] = v;
    }
    std::int64_t* ord = order_.data() + j * rows_;
    std::iota(ord, ord + rows_, std::int64_t{0});
    std::stable_sort(ord, ord + rows_, [col](std::int64_t a, std::int64_t b) {
      return col[a] < col[b];
    });
  }
}

double leaf_value(std::span<const double> targets,
                  std::span<const double> weights) {
  if (targets.size() != weights.size()) {
    throw DataError("targets and weights must have equal length");
  }
  double w_sum = 0.0;
  double wt_sum = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    w_sum += weights[i];
    wt_sum += weights[i] * targets[i];
  }
  if (!(w_sum > 0.0)) throw DataError("leaf_value: total weight is zero");
  return wt_sum / w_sum;
}

bool constraint_satisfied(const TreeConfig& config,
                          std::span<const double> leaf_weights,
                          std::int64_t leaf_count) {
  if (config.leaf_constraint == LeafConstraint::kRawCount) {
    return static_cast<double>(leaf_count) >= config.min_per_leaf;
  }
  // kEquivalentWeighted expects normalized weights here, kRawHessianSum raw
  // Hessians; both compare the per-leaf sum against S.
  double sum = 0.0;
  for (const double w : leaf_weights) sum += w;
  return sum >= config.min_per_leaf;
}

namespace {

// Midpoint of a < b that never rounds up to b, so routing "x <= t" puts
// exactly the scanned prefix on the left.
double split_threshold(double a, double b) {
  const double mid = a + 0.5 * (b - a);
  return mid < b ? mid : a;
}

struct BestSplit {
  double gain = 0.0;
  std::int64_t feature = -1;
  double threshold = 0.0;
  std::int64_t left_count = 0;
};

class Grower {
 public:
  Grower(const SplitContext& ctx, std::span<const double> targets,
         std::span<const double> weights, const TreeConfig& config)
      : ctx_(ctx),
        targets_(targets),
        weights_(weights),
        config_(config),
        n_(ctx.rows()),
        p_(ctx.cols()) {
    order_.resize(static_cast<std::size_t>(n_) * p_);
    for (std::int64_t j = 0; j < p_; ++j) {
      auto src = ctx_.sorted_order(j);
      std::copy(src.begin(), src.end(), order_.begin() + j * n_);
    }
    canonical_.resize(n_);
    std::iota(canonical_.begin(), canonical_.end(), std::int64_t{0});
    scratch_.resize(n_);
    go_left_.resize(n_);
    fit_.leaf_of_sample.assign(n_, 0);
    fit_.tree.num_features = p_;
  }

  TreeFit run() {
    grow(new_node(), 0, n_, 0);
    return std::move(fit_);
  }

 private:
  std::int64_t new_node() {
    RegressionTree& t = fit_.tree;
    t.feature.push_back(-1);
    t.threshold.push_back(0.0);
    t.left.push_back(-1);
    t.right.push_back(-1);
    t.value.push_back(0.0);
    return static_cast<std::int64_t>(t.feature.size()) - 1;
  }

  bool child_ok(std::int64_t count, double weight_sum) const {
    if (!(weight_sum > 0.0)) return false;
    if (config_.leaf_constraint == LeafConstraint::kRawCount) {
      return static_cast<double>(count) >= config_.min_per_leaf;
    }
    return weight_sum >= config_.min_per_leaf;
  }

  void make_leaf(std::int64_t node, std::int64_t begin, std::int64_t end,
                 double value) {
    fit_.tree.feature[node] = -1;
    fit_.tree.value[node] = value;
    for (std::int64_t i = begin; i < end; ++i) {
      fit_.leaf_of_sample[canonical_[i]] = node;
    }
  }

  void grow(std::int64_t node, std::int64_t begin, std::int64_t end,
            int depth) {
    // Node aggregates in ascending sample order (canonical_ stays sorted
    // under the stable partition below).
    double w_sum = 0.0;
    double wt_sum = 0.0;
    double t_min = targets_[canonical_[begin]];
    double t_max = t_min;
    for (std::int64_t i = begin; i < end; ++i) {
      const std::int64_t s = canonical_[i];
      w_sum += weights_[s];
      wt_sum += weights_[s] * targets_[s];
      t_min = std::min(t_min, targets_[s]);
      t_max = std::max(t_max, targets_[s]);
    }
    const double value = wt_sum / w_sum;

    // Pure nodes stop exactly; this also keeps constant-target fits at a
    // single leaf instead of chasing rounding noise in the gain.
    if (depth >= config_.max_depth || end - begin < 2 || t_min == t_max) {
      make_leaf(node, begin, end, value);
      return;
    }

    BestSplit best;
    const double parent_term = wt_sum * wt_sum / w_sum;
    const std::int64_t len = end - begin;
    for (std::int64_t j = 0; j < p_; ++j) {
      const std::int64_t* seg = order_.data() + j * n_ + begin;
      double wl = 0.0;
      double sl = 0.0;
      double v = ctx_.feature_value(seg[0], j);
      for (std::int64_t i = 0; i + 1 < len; ++i) {
        const std::int64_t s = seg[i];
        wl += weights_[s];
        sl += weights_[s] * targets_[s];
        const double v_next = ctx_.feature_value(seg[i + 1], j);
        if (v_next > v) {
          const std::int64_t cl = i + 1;
          const double wr = w_sum - wl;
          if (child_ok(cl, wl) && child_ok(len - cl, wr)) {
            const double sr = wt_sum - sl;
            const double gain = sl * sl / wl + sr * sr / wr - parent_term;
            // Strict > keeps the first candidate on ties: lowest feature
            // index, then lowest threshold (scan order is ascending).
            if (gain > best.gain) {
              best.gain = gain;
              best.feature = j;
              best.threshold = split_threshold(v, v_next);
              best.left_count = cl;
            }
          }
        }
        v = v_next;
      }
    }

    if (!(best.gain > 0.0) || best.feature < 0) {
      make_leaf(node, begin, end, value);
      return;
    }

    for (std::int64_t i = begin; i < end; ++i) {
      const std::int64_t s = canonical_[i];
      go_left_[s] =
          ctx_.feature_value(s, best.feature) <= best.threshold ? 1 : 0;
    }
    for (std::int64_t j = 0; j < p_; ++j) {
      stable_partition_segment(order_.data() + j * n_, begin, end);
    }
    stable_partition_segment(canonical_.data(), begin, end);

    const std::int64_t lchild = new_node();
    const std::int64_t rchild = new_node();
    fit_.tree.feature[node] = static_cast<int>(best.feature);
    fit_.tree.threshold[node] = best.threshold;
    fit_.tree.left[node] = static_cast<int>(lchild);
    fit_.tree.right[node] = static_cast<int>(rchild);
    const std::int64_t mid = begin + best.left_count;
    grow(lchild, begin, mid, depth + 1);
    grow(rchild, mid, end, depth + 1);
  }

  void stable_partition_segment(std::int64_t* arr, std::int64_t begin,
                                std::int64_t end) {
    std::int64_t out_left = begin;
    std::int64_t out_right = 0;
    for (std::int64_t i = begin; i < end; ++i) {
      const std::int64_t s = arr[i];
      if (go_left_[s]) {
        arr[out_left++] = s;
      } else {
        scratch_[out_right++] = s;
      }
    }
    std::copy(scratch_.begin(), scratch_.begin() + out_right,
              arr + out_left);
  }

  const SplitContext& ctx_;
  std::span<const double> targets_;
  std::span<const double> weights_;
  const TreeConfig& config_;
  std::int64_t n_;
  std::int64_t p_;
  std::vector<std::int64_t> order_;
  std::vector<std::int64_t> canonical_;
  std::vector<std::int64_t> scratch_;
  std::vector<std::uint8_t> go_left_;
  TreeFit fit_;
};

}  // namespace

TreeFit fit_tree(const SplitContext& ctx, std::span<const double> targets,
                 std::span<const double> weights, const TreeConfig& config) {
  config.validate();
  const std::int64_t n = ctx.rows();
  if (n < 1) throw DataError("fit_tree: empty input");
  if (targets.size() != static_cast<std::size_t>(n) ||
      weights.size() != static_cast<std::size_t>(n)) {
    throw DataError("fit_tree: targets/weights length mismatch");
  }
  double w_sum = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    if (!std::isfinite(targets[i])) {
      throw DataError("fit_tree: non-finite target at row " +
                      std::to_string(i));
    }
    if (!(weights[i] >= 0.0)) {
      throw DataError("fit_tree: negative or NaN weight at row " +
                      std::to_string(i));
    }
    w_sum += weights[i];
  }
  if (!(w_sum > 0.0)) throw DataError("fit_tree: all weights are zero");

  return Grower(ctx, targets, weights, config).run();
}

TreeFit fit_tree(MatrixView features, std::span<const double> targets,
                 std::span<const double> weights, const TreeConfig& config) {
  SplitContext ctx(features);
  return fit_tree(ctx, targets, weights, config);
}

std::vector<double> predict_tree(const RegressionTree& tree,
                                 MatrixView features) {
  if (features.cols != tree.num_features) {
    throw DataError("predict_tree: feature width " +
                    std::to_string(features.cols) + " does not match " +
                    std::to_string(tree.num_features));
  }
  std::vector<double> out(features.rows);
  for (std::int64_t i = 0; i < features.rows; ++i) {
    out[i] = tree.predict_row(features.row(i));
  }
  return out;
}

}  // namespace triboost
