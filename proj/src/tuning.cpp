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
#include "triboost/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "triboost/datagen.hpp"
#include "triboost/numeric.hpp"
#include "triboost/parallel.hpp"

namespace triboost {

Metric metric_for(const LossSpec& loss) {
  switch (loss.family) {
    case LossFamily::kBinaryLogistic:
    case LossFamily::kMulticlassSoftmax:
      return Metric::kErrorRate;
    default:
      return Metric::kNegLogLik;
  }
}

std::vector<double> classify(const LossSpec& loss, MatrixView scores) {
  std::vector<double> labels(scores.rows);
  if (loss.family == LossFamily::kBinaryLogistic) {
    for (std::int64_t i = 0; i < scores.rows; ++i) {
      labels[i] = numeric::sigmoid(scores(i, 0)) > 0.5 ? 1.0 : 0.0;
    }
    return labels;
  }
  if (loss.family == LossFamily::kMulticlassSoftmax) {
    for (std::int64_t i = 0; i < scores.rows; ++i) {
      std::int64_t arg = 0;
      for (std::int64_t k = 1; k < scores.cols; ++k) {
        if (scores(i, k) > scores(i, arg)) arg = k;  // lowest index on ties
      }
      labels[i] = static_cast<double>(arg);
    }
    return labels;
  }
  throw DataError("classify requires a classification loss family");
}

double error_rate(const LossSpec& loss, MatrixView scores,
                  std::span<const double> truth) {
  if (scores.rows == 0) throw DataError("error_rate: empty input");
  if (truth.size() != static_cast<std::size_t>(scores.rows)) {
    throw DataError("error_rate: length mismatch");
  }
  const std::vector<double> labels = classify(loss, scores);
  std::int64_t wrong = 0;
  for (std::int64_t i = 0; i < scores.rows; ++i) {
    if (labels[i] != truth[i]) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(scores.rows);
}

double neg_log_likelihood(const LossSpec& loss, MatrixView scores,
                          std::span<const double> truth) {
  if (scores.rows == 0) throw DataError("neg_log_likelihood: empty input");
  if (truth.size() != static_cast<std::size_t>(scores.rows) ||
      scores.cols != loss.num_outputs) {
    throw DataError("neg_log_likelihood: shape mismatch");
  }
  validate_responses(loss, truth);
  std::vector<double> g(loss.num_outputs), h(loss.num_outputs);
  double sum = 0.0;
  for (std::int64_t i = 0; i < scores.rows; ++i) {
    sum += eval_loss_into(loss, truth[i], scores.row(i), g.data(), h.data());
  }
  return sum / static_cast<double>(scores.rows);
}

double score_metric(const LossSpec& loss, MatrixView scores,
                    std::span<const double> truth) {
  return metric_for(loss) == Metric::kErrorRate
             ? error_rate(loss, scores, truth)
             : neg_log_likelihood(loss, scores, truth);
}

TrainValidTest split_dataset(const Dataset& data, const SplitPlan& plan) {
  data.check_consistent();
  const std::int64_t n = data.n_rows;
  if (n < 3) throw DataError("split_dataset: need at least 3 rows");
  if (!(plan.train_fraction >= 0.0) || !(plan.valid_fraction >= 0.0) ||
      !(plan.test_fraction >= 0.0) ||
      plan.train_fraction + plan.valid_fraction + plan.test_fraction >
          1.0 + 1e-12) {
    throw DataError("split_dataset: invalid fractions");
  }

  std::vector<std::int64_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::int64_t{0});
  Rng rng(plan.seed);
  for (std::int64_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::int64_t>(
        rng.bounded(static_cast<std::uint64_t>(i) + 1));
    std::swap(idx[i], idx[j]);
  }

  const double fn = static_cast<double>(n);
  auto e1 = static_cast<std::int64_t>(std::llround(fn * plan.train_fraction));
  auto e2 = static_cast<std::int64_t>(
      std::llround(fn * (plan.train_fraction + plan.valid_fraction)));
  auto e3 = static_cast<std::int64_t>(std::llround(
      fn * (plan.train_fraction + plan.valid_fraction + plan.test_fraction)));
  e1 = std::clamp<std::int64_t>(e1, 0, n);
  e2 = std::clamp<std::int64_t>(e2, e1, n);
  e3 = std::clamp<std::int64_t>(e3, e2, n);

  auto take = [&](std::int64_t begin, std::int64_t end,
                  const std::optional<std::int64_t>& cap) {
    std::int64_t len = end - begin;
    if (cap) len = std::min(len, *cap);
    return std::vector<std::int64_t>(idx.begin() + begin,
                                     idx.begin() + begin + len);
  };

  TrainValidTest out;
  out.train = data.subset(take(0, e1, plan.train_cap));
  out.valid = data.subset(take(e1, e2, plan.valid_cap));
  out.test = data.subset(take(e2, e3, plan.test_cap));
  return out;
}

namespace {

struct CellOutcome {
  bool failed = true;
  std::string error;
  std::vector<double> scores_by_m;  // validation metric at m = 1..M
  int best_m = 0;
  double best_score = std::numeric_limits<double>::quiet_NaN();
  BoostedModel model;  // truncated to best_m
};

// True if candidate (score, m, lr, S) beats the incumbent under the tie
// rule: smaller score, then smaller m, then smaller lr, then larger S.
bool beats(double score_a, int m_a, double lr_a, double s_a, double score_b,
           int m_b, double lr_b, double s_b) {
  if (std::isnan(score_a)) return false;
  if (std::isnan(score_b)) return true;
  if (score_a != score_b) return score_a < score_b;
  if (m_a != m_b) return m_a < m_b;
  if (lr_a != lr_b) return lr_a < lr_b;
  return s_a > s_b;
}

std::vector<double> restricted_leaf_values(const LossSpec& loss,
                                           UpdateMode mode,
                                           const TuningGrid& grid) {
  std::vector<double> values = grid.min_per_leaf_values;
  if (loss.family == LossFamily::kMeanScaleGaussian &&
      mode != UpdateMode::kNewton) {
    // Very small leaves break identifiability when both mean and scale are
    // modeled; gradient/hybrid cells keep only S >= 25.
    std::erase_if(values, [](double s) { return s < 25.0; });
  }
  if (values.empty()) {
    throw DataError(
        "grid_search: no admissible min_per_leaf values for this loss/mode");
  }
  return values;
}

CellOutcome run_cell(const Dataset& train, const Dataset& valid,
                     const LossSpec& loss, UpdateMode mode,
                     const TuningGrid& grid, double lr, double min_leaf) {
  CellOutcome out;
  FitConfig cfg;
  cfg.mode = mode;
  cfg.num_iterations = grid.iterations_max;
  cfg.learning_rate = lr;
  cfg.hessian_floor = grid.hessian_floor;
  cfg.tree.max_depth = grid.max_depth;
  cfg.tree.min_per_leaf = min_leaf;
  cfg.tree.leaf_constraint = mode == UpdateMode::kNewton
                                 ? grid.newton_constraint
                                 : LeafConstraint::kRawCount;

  BoostedModel model;
  try {
    model = fit(train, loss, cfg);
  } catch (const std::exception& e) {
    out.error = e.what();
    return out;
  }

  // Staged validation scoring: one fit, the metric at every m.
  const int d = loss.num_outputs;
  const std::int64_t nv = valid.n_rows;
  std::vector<double> scores(static_cast<std::size_t>(nv) * d);
  for (std::int64_t i = 0; i < nv; ++i) {
    for (int k = 0; k < d; ++k) scores[i * d + k] = model.f0[k];
  }
  out.scores_by_m.resize(grid.iterations_max);
  const MatrixView score_view{scores.data(), nv, d};
  for (int m = 0; m < grid.iterations_max; ++m) {
    for (int k = 0; k < d; ++k) {
      const RegressionTree& tree = model.tree_at(m, k);
      for (std::int64_t i = 0; i < nv; ++i) {
        scores[i * d + k] += tree.predict_row(valid.feature_view().row(i));
      }
    }
    out.scores_by_m[m] = score_metric(loss, score_view, valid.response);
  }

  for (int m = 0; m < grid.iterations_max; ++m) {
    const double s = out.scores_by_m[m];
    if (std::isnan(s)) continue;
    if (std::isnan(out.best_score) || s < out.best_score) {
      out.best_score = s;
      out.best_m = m + 1;
    }
  }
  if (out.best_m == 0) {
    out.error = "all staged validation scores are NaN";
    return out;
  }
  out.model = truncate(model, out.best_m);
  out.failed = false;
  return out;
}

}  // namespace

GridSearchResult grid_search(const Dataset& train, const Dataset& valid,
                             const LossSpec& loss, UpdateMode mode,
                             const TuningGrid& grid) {
  if (train.n_rows == 0 || valid.n_rows == 0) {
    throw DataError("grid_search: empty train or validation partition");
  }
  if (grid.iterations_max < 1 || grid.learning_rates.empty()) {
    throw DataError("grid_search: empty grid");
  }
  const std::vector<double> leaf_values =
      restricted_leaf_values(loss, mode, grid);

  struct Cell {
    double lr;
    double min_leaf;
  };
  std::vector<Cell> cells;
  for (const double lr : grid.learning_rates) {
    for (const double s : leaf_values) cells.push_back({lr, s});
  }

  std::vector<CellOutcome> outcomes(cells.size());
  parallel_for(cells.size(), [&](std::size_t c) {
    outcomes[c] = run_cell(train, valid, loss, mode, grid, cells[c].lr,
                           cells[c].min_leaf);
  });

  GridSearchResult result;
  result.table.reserve(cells.size() *
                       static_cast<std::size_t>(grid.iterations_max));
  const double nan = std::numeric_limits<double>::quiet_NaN();
  bool have_best = false;
  std::string failures;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const CellOutcome& out = outcomes[c];
    for (int m = 1; m <= grid.iterations_max; ++m) {
      result.table.push_back({cells[c].lr, cells[c].min_leaf, m,
                              out.failed ? nan : out.scores_by_m[m - 1]});
    }
    if (out.failed) {
      failures += "  (lr=" + numeric::format_double(cells[c].lr) +
                  ", min_leaf=" + numeric::format_double(cells[c].min_leaf) +
                  "): " + out.error + "\n";
      continue;
    }
    if (!have_best ||
        beats(out.best_score, out.best_m, cells[c].lr, cells[c].min_leaf,
              result.best.valid_score, result.best.chosen_m,
              result.best.learning_rate, result.best.min_per_leaf)) {
      result.best = {cells[c].lr, cells[c].min_leaf, out.best_m,
                     out.best_score};
      result.best_model = outcomes[c].model;
      have_best = true;
    }
  }
  if (!have_best) {
    throw DataError("grid_search: every cell failed:\n" + failures);
  }
  return result;
}

std::vector<BenchmarkRow> benchmark(const DatasetProvider& provider,
                                    const std::vector<UpdateMode>& modes,
                                    int splits, const LossSpec& loss,
                                    const TuningGrid& grid) {
  if (splits < 1) throw DataError("benchmark: splits must be >= 1");
  if (modes.empty()) throw DataError("benchmark: no modes given");
  std::vector<BenchmarkRow> rows;
  rows.reserve(static_cast<std::size_t>(splits) * modes.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();

  for (int split = 0; split < splits; ++split) {
    const TrainValidTest tvt = provider(split);
    for (const UpdateMode mode : modes) {
      BenchmarkRow row{};
      row.split_id = split;
      row.mode = mode;
      row.constraint = mode == UpdateMode::kNewton
                           ? grid.newton_constraint
                           : LeafConstraint::kRawCount;
      try {
        GridSearchResult res = grid_search(tvt.train, tvt.valid, loss, mode,
                                           grid);
        row.learning_rate = res.best.learning_rate;
        row.min_per_leaf = res.best.min_per_leaf;
        row.chosen_m = res.best.chosen_m;
        row.valid_score = res.best.valid_score;
        const std::vector<double> scores =
            predict(res.best_model, tvt.test.feature_view());
        row.test_score = score_metric(
            loss, {scores.data(), tvt.test.n_rows, loss.num_outputs},
            tvt.test.response);
        row.failed = false;
      } catch (const std::exception& e) {
        std::fprintf(stderr, "triboost: benchmark split %d %s failed: %s\n",
                     split, to_string(mode).c_str(), e.what());
        row.learning_rate = nan;
        row.min_per_leaf = nan;
        row.chosen_m = 0;
        row.valid_score = nan;
        row.test_score = nan;
        row.failed = true;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

TraceCurves trace_run(const Dataset& train, const Dataset& test,
                      const LossSpec& loss, const FitConfig& config) {
  const BoostedModel model = fit(train, loss, config);
  const int m_total = model.iterations();
  const int d = loss.num_outputs;
  const std::int64_t nt = test.n_rows;

  TraceCurves curves;
  curves.train_loss.resize(m_total);
  curves.test_score.resize(m_total);
  for (int m = 0; m < m_total; ++m) {
    curves.train_loss[m] =
        model.train_loss[m] / static_cast<double>(train.n_rows);
  }

  std::vector<double> scores(static_cast<std::size_t>(nt) * d);
  for (std::int64_t i = 0; i < nt; ++i) {
    for (int k = 0; k < d; ++k) scores[i * d + k] = model.f0[k];
  }
  const MatrixView score_view{scores.data(), nt, d};
  for (int m = 0; m < m_total; ++m) {
    for (int k = 0; k < d; ++k) {
      const RegressionTree& tree = model.tree_at(m, k);
      for (std::int64_t i = 0; i < nt; ++i) {
        scores[i * d + k] += tree.predict_row(test.feature_view().row(i));
      }
    }
    curves.test_score[m] = score_metric(loss, score_view, test.response);
  }
  return curves;
}

}  // namespace triboost
