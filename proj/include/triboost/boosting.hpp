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
#ifndef TRIBOOST_BOOSTING_HPP_
#define TRIBOOST_BOOSTING_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "triboost/dataset.hpp"
#include "triboost/losses.hpp"
#include "triboost/tree.hpp"

namespace triboost {

enum class UpdateMode {
  kGradient,  // tree fit by least squares to -g, unit weights
  kNewton,    // weighted least squares to -g/h with weights h
  kHybrid,    // structure from the gradient step, leaves refit by Newton
};

std::string to_string(UpdateMode mode);
UpdateMode update_mode_from_string(const std::string& name);

struct FitConfig {
  UpdateMode mode = UpdateMode::kNewton;
  int num_iterations = 100;    // M
  double learning_rate = 0.1;  // nu in (0, 1]
  TreeConfig tree;
  double hessian_floor = 1e-20;

  // Rejects invalid combinations: Gradient requires kRawCount, Newton
  // requires kEquivalentWeighted or kRawHessianSum, Hybrid requires
  // kRawCount (the constraint applies to the gradient structure search).
  void validate() const;
};

// F0 constants plus M x num_outputs trees with the learning rate already
// applied to leaf values. Immutable after fit.
struct BoostedModel {
  LossSpec loss;
  FitConfig config;
  std::vector<double> f0;  // length num_outputs
  // trees[m * num_outputs + k]: iteration m, output dimension k
  std::vector<RegressionTree> trees;
  std::vector<double> train_loss;  // per-iteration sum_i L(y_i, F_m(x_i))
  std::int64_t num_features = 0;
  std::vector<std::string> feature_names;

  int iterations() const { return config.num_iterations; }
  const RegressionTree& tree_at(int m, int k) const {
    return trees[static_cast<std::size_t>(m) * loss.num_outputs + k];
  }
};

// Constant score vector minimizing the empirical risk. Closed forms where
// available (mean / logit / log-mean), scalar Newton for the rest. Degenerate
// inputs (single-class binary, zero variance) clamp the score to +-15 and
// warn on stderr.
std::vector<double> init_scores(const LossSpec& loss,
                                std::span<const double> responses);

// Regression targets and fitting weights handed to the tree for one output
// dimension. Gradient: (-g, 1). Newton: (-g/max(h,floor), max(h,floor)).
// Hybrid returns the gradient structure-pass pair; its leaf refit uses the
// Newton pair.
void pseudo_targets(UpdateMode mode, std::span<const double> gradients,
                    std::span<const double> hessians, double floor,
                    std::vector<double>* targets,
                    std::vector<double>* fit_weights);

// w~_i = n * h_i / sum(h), renormalized once so the sum equals n.
std::vector<double> normalize_weights(std::span<const double> hessians);

// Stagewise fit. Throws DataError on invalid inputs and NumericError naming
// the iteration if scores turn non-finite mid-fit.
BoostedModel fit(const Dataset& data, const LossSpec& loss,
                 const FitConfig& config);

// Scores f0 + sum of the first `upto` iterations (default: all). Row-major
// n x num_outputs. Throws DataError on width mismatch or upto > M.
std::vector<double> predict(const BoostedModel& model, MatrixView features,
                            int upto = -1);

// Model truncated to its first `upto` iterations.
BoostedModel truncate(const BoostedModel& model, int upto);

}  // namespace triboost

#endif  // TRIBOOST_BOOSTING_HPP_
