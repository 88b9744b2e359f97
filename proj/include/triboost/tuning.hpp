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
#ifndef TRIBOOST_TUNING_HPP_
#define TRIBOOST_TUNING_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "triboost/boosting.hpp"
#include "triboost/dataset.hpp"
#include "triboost/losses.hpp"

namespace triboost {

// Validation metric: error rate for classification families, mean negative
// log-likelihood otherwise.
enum class Metric { kErrorRate, kNegLogLik };
Metric metric_for(const LossSpec& loss);

// Class labels from score rows: binary p > 0.5, multiclass argmax (lowest
// index on exact ties).
std::vector<double> classify(const LossSpec& loss, MatrixView scores);

// Fraction misclassified; throws DataError on empty input.
double error_rate(const LossSpec& loss, MatrixView scores,
                  std::span<const double> truth);

// Mean of per-observation losses (mean, not sum, so values are
// size-comparable across splits).
double neg_log_likelihood(const LossSpec& loss, MatrixView scores,
                          std::span<const double> truth);

double score_metric(const LossSpec& loss, MatrixView scores,
                    std::span<const double> truth);

struct TuningGrid {
  int iterations_max = 1000;  // M searched over 1..iterations_max
  std::vector<double> learning_rates{1.0, 0.1, 0.01, 0.001};
  std::vector<double> min_per_leaf_values{1.0, 5.0, 25.0, 100.0};
  // Constraint used by Newton cells; gradient/hybrid always use kRawCount.
  LeafConstraint newton_constraint = LeafConstraint::kEquivalentWeighted;
  int max_depth = 5;
  double hessian_floor = 1e-20;
};

struct SplitPlan {
  std::uint64_t seed = 42;
  double train_fraction = 1.0 / 3.0;
  double valid_fraction = 1.0 / 3.0;
  double test_fraction = 1.0 / 3.0;
  std::optional<std::int64_t> train_cap;
  std::optional<std::int64_t> valid_cap;
  std::optional<std::int64_t> test_cap;
};

struct TrainValidTest {
  Dataset train;
  Dataset valid;
  Dataset test;
};

// Seed-deterministic disjoint partition covering the index set when uncapped.
TrainValidTest split_dataset(const Dataset& data, const SplitPlan& plan);

struct ScoreRow {
  double learning_rate;
  double min_per_leaf;
  int iteration;       // m
  double valid_score;  // NaN for failed cells
};

struct GridSelection {
  double learning_rate = 0.0;
  double min_per_leaf = 0.0;
  int chosen_m = 0;
  double valid_score = 0.0;
};

struct GridSearchResult {
  GridSelection best;
  BoostedModel best_model;  // truncated to chosen_m
  std::vector<ScoreRow> table;  // |lr| x |S| x M rows
};

// One fit per (lr, S) cell at M = iterations_max, validation scored at every
// m via staged predictions. Global minimizer selected; ties broken by
// smaller m, then smaller lr, then larger S. Cells whose fit throws are
// recorded with NaN scores; throws DataError only if every cell failed.
GridSearchResult grid_search(const Dataset& train, const Dataset& valid,
                             const LossSpec& loss, UpdateMode mode,
                             const TuningGrid& grid);

struct BenchmarkRow {
  int split_id;
  UpdateMode mode;
  double learning_rate;
  double min_per_leaf;
  LeafConstraint constraint;
  int chosen_m;
  double valid_score;
  double test_score;
  bool failed;
};

using DatasetProvider = std::function<TrainValidTest(int split_id)>;

// Grid search per (split, mode) plus test scoring of the selected model.
// Row order is fixed by (split, mode list order) regardless of scheduling.
std::vector<BenchmarkRow> benchmark(const DatasetProvider& provider,
                                    const std::vector<UpdateMode>& modes,
                                    int splits, const LossSpec& loss,
                                    const TuningGrid& grid);

struct TraceCurves {
  std::vector<double> train_loss;  // mean training loss after iteration m
  std::vector<double> test_score;  // metric on test after iteration m
};

// Fixed-learning-rate convergence trace (train loss and test metric per
// iteration) for one mode on one split.
TraceCurves trace_run(const Dataset& train, const Dataset& test,
                      const LossSpec& loss, const FitConfig& config);

}  // namespace triboost

#endif  // TRIBOOST_TUNING_HPP_
