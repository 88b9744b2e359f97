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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "test_util.hpp"
#include "triboost/datagen.hpp"
#include "triboost/tuning.hpp"

using namespace triboost;
using triboost_test::TestRand;

namespace {

MatrixView column_view(const std::vector<double>& scores) {
  return {scores.data(), static_cast<std::int64_t>(scores.size()), 1};
}

TuningGrid small_grid(int m) {
  TuningGrid grid;
  grid.iterations_max = m;
  grid.learning_rates = {0.5, 0.1};
  grid.min_per_leaf_values = {1.0, 5.0};
  grid.max_depth = 3;
  return grid;
}

}  // namespace

TEST_CASE("error_rate on label vectors") {
  const auto loss = LossSpec::binary_logistic();
  // Scores with sign matching the predicted label.
  const std::vector<double> right = {-2.0, 2.0};
  const std::vector<double> truth_01 = {0.0, 1.0};
  CHECK(error_rate(loss, column_view(right), truth_01) == 0.0);

  const std::vector<double> all_one = {2.0, 2.0, 2.0, 2.0};
  const std::vector<double> truth_0111 = {0.0, 1.0, 1.0, 1.0};
  CHECK(error_rate(loss, column_view(all_one), truth_0111) ==
        doctest::Approx(0.25));

  const std::vector<double> wrong = {2.0, -2.0};
  CHECK(error_rate(loss, column_view(wrong), truth_01) == 1.0);

  CHECK_THROWS_AS(
      error_rate(loss, MatrixView{nullptr, 0, 1}, std::vector<double>{}),
      DataError);

  SUBCASE("multiclass argmax breaks ties toward the lowest index") {
    const auto mc = LossSpec::multiclass_softmax(3);
    const std::vector<double> scores = {1.0, 1.0, 0.0};
    const std::vector<double> truth = {0.0};
    CHECK(error_rate(mc, {scores.data(), 1, 3}, truth) == 0.0);
  }
  SUBCASE("boundary probability 0.5 predicts class 0") {
    const std::vector<double> zero = {0.0};
    const std::vector<double> truth1 = {1.0};
    CHECK(error_rate(loss, column_view(zero), truth1) == 1.0);
  }
}

TEST_CASE("neg_log_likelihood means the per-point losses") {
  const std::vector<double> f0 = {0.0};
  const std::vector<double> y1 = {1.0};
  CHECK(neg_log_likelihood(LossSpec::binary_logistic(), column_view(f0), y1) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(neg_log_likelihood(LossSpec::poisson(), column_view(f0), y1) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // Perfect mean-scale fit at sigma = 1: 0.5 log(2 pi) per point.
  const std::vector<double> ms_scores = {3.0, 0.0, -1.0, 0.0};
  const std::vector<double> ms_truth = {3.0, -1.0};
  CHECK(neg_log_likelihood(LossSpec::mean_scale_gaussian(),
                           {ms_scores.data(), 2, 2}, ms_truth) ==
        doctest::Approx(0.9189385332046727).epsilon(1e-12));
}

TEST_CASE("split_dataset partitions deterministically") {
  Dataset d;
  d.n_rows = 10;
  d.n_cols = 1;
  d.features = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  d.response = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};

  SplitPlan plan;
  plan.seed = 5;
  const auto split1 = split_dataset(d, plan);
  CHECK(split1.train.n_rows == 3);
  CHECK(split1.valid.n_rows == 4);
  CHECK(split1.test.n_rows == 3);

  std::multiset<double> seen;
  for (const auto* part : {&split1.train, &split1.valid, &split1.test}) {
    for (const double y : part->response) seen.insert(y);
  }
  CHECK(seen.size() == 10);
  CHECK(std::set<double>(seen.begin(), seen.end()).size() == 10);

  const auto split2 = split_dataset(d, plan);
  CHECK(split1.train.response == split2.train.response);
  CHECK(split1.valid.response == split2.valid.response);
  CHECK(split1.test.response == split2.test.response);

  SplitPlan other = plan;
  other.seed = 6;
  const auto split3 = split_dataset(d, other);
  CHECK(split1.train.response != split3.train.response);

  SUBCASE("caps limit partition sizes") {
    SplitPlan capped = plan;
    capped.train_cap = 2;
    capped.test_cap = 1;
    const auto s = split_dataset(d, capped);
    CHECK(s.train.n_rows == 2);
    CHECK(s.valid.n_rows == 4);
    CHECK(s.test.n_rows == 1);
    // Capped partitions are prefixes of the uncapped ones.
    CHECK(std::equal(s.train.response.begin(), s.train.response.end(),
                     split1.train.response.begin()));
  }
}

TEST_CASE("grid search selects the staged argmin") {
  SimSpec spec = SimSpec::from_name("multi_classif_fht");
  spec.n = 450;
  spec.seed = 31;
  const Dataset all = simulate(spec).data;
  SplitPlan plan;
  plan.seed = 1;
  const auto tvt = split_dataset(all, plan);
  const auto loss = LossSpec::multiclass_softmax(5);

  SUBCASE("single cell returns its own argmin") {
    TuningGrid grid = small_grid(25);
    grid.learning_rates = {0.3};
    grid.min_per_leaf_values = {1.0};
    const auto res =
        grid_search(tvt.train, tvt.valid, loss, UpdateMode::kNewton, grid);
    CHECK(res.table.size() == 25);
    double best = res.table[0].valid_score;
    int best_m = 1;
    for (const auto& row : res.table) {
      if (row.valid_score < best) {
        best = row.valid_score;
        best_m = row.iteration;
      }
    }
    CHECK(res.best.valid_score == best);
    CHECK(res.best.chosen_m == best_m);
    CHECK(res.best_model.iterations() == best_m);
  }

  SUBCASE("duplicating a cell does not change the selection") {
    TuningGrid grid = small_grid(20);
    const auto base =
        grid_search(tvt.train, tvt.valid, loss, UpdateMode::kNewton, grid);
    TuningGrid doubled = grid;
    doubled.learning_rates = {0.5, 0.5, 0.1};
    const auto dup =
        grid_search(tvt.train, tvt.valid, loss, UpdateMode::kNewton, doubled);
    CHECK(dup.best.learning_rate == base.best.learning_rate);
    CHECK(dup.best.min_per_leaf == base.best.min_per_leaf);
    CHECK(dup.best.chosen_m == base.best.chosen_m);
    CHECK(dup.best.valid_score == base.best.valid_score);
  }

  SUBCASE("table has |lr| x |S| x M rows") {
    TuningGrid grid = small_grid(10);
    const auto res =
        grid_search(tvt.train, tvt.valid, loss, UpdateMode::kGradient, grid);
    CHECK(res.table.size() == 2 * 2 * 10);
  }
}

TEST_CASE("squared-error grids agree across modes") {
  TestRand rand(8);
  Dataset d;
  d.n_rows = 300;
  d.n_cols = 3;
  d.features.resize(900);
  d.response.resize(300);
  for (std::int64_t i = 0; i < 300; ++i) {
    for (int j = 0; j < 3; ++j) d.features[i * 3 + j] = rand.uniform(0, 1);
    d.response[i] = d.features[i * 3] * 2.0 + rand.uniform(-0.2, 0.2);
  }
  SplitPlan plan;
  plan.seed = 9;
  const auto tvt = split_dataset(d, plan);
  const auto loss = LossSpec::squared_error();
  const TuningGrid grid = small_grid(30);
  const auto gradient =
      grid_search(tvt.train, tvt.valid, loss, UpdateMode::kGradient, grid);
  const auto newton =
      grid_search(tvt.train, tvt.valid, loss, UpdateMode::kNewton, grid);
  CHECK(gradient.best.learning_rate == newton.best.learning_rate);
  CHECK(gradient.best.min_per_leaf == newton.best.min_per_leaf);
  CHECK(gradient.best.chosen_m == newton.best.chosen_m);
  CHECK(gradient.best.valid_score == newton.best.valid_score);
  REQUIRE(gradient.table.size() == newton.table.size());
  for (std::size_t r = 0; r < gradient.table.size(); ++r) {
    CHECK(gradient.table[r].valid_score == newton.table[r].valid_score);
  }
}

TEST_CASE("mean-scale restricts small leaves for gradient and hybrid") {
  SimSpec spec = SimSpec::from_name("msr_r");
  spec.n = 360;
  spec.seed = 12;
  const Dataset all = simulate(spec).data;
  SplitPlan plan;
  const auto tvt = split_dataset(all, plan);
  const auto loss = LossSpec::mean_scale_gaussian();
  TuningGrid grid;
  grid.iterations_max = 10;
  grid.learning_rates = {0.1};
  grid.min_per_leaf_values = {1.0, 5.0, 25.0, 100.0};
  grid.max_depth = 3;

  const auto gradient =
      grid_search(tvt.train, tvt.valid, loss, UpdateMode::kGradient, grid);
  CHECK(gradient.table.size() == 2 * 10);  // S in {25, 100} only
  for (const auto& row : gradient.table) CHECK(row.min_per_leaf >= 25.0);

  const auto newton =
      grid_search(tvt.train, tvt.valid, loss, UpdateMode::kNewton, grid);
  CHECK(newton.table.size() == 4 * 10);  // Newton keeps the full S grid

  SUBCASE("an all-filtered S grid is an error") {
    TuningGrid tiny = grid;
    tiny.min_per_leaf_values = {1.0, 5.0};
    CHECK_THROWS_AS(
        grid_search(tvt.train, tvt.valid, loss, UpdateMode::kHybrid, tiny),
        DataError);
  }
}

TEST_CASE("benchmark emits one deterministic row per split and mode") {
  const DatasetProvider provider = [](int split) {
    SimSpec spec = SimSpec::from_name("multi_classif_fht");
    spec.n = 360;
    spec.seed = 100 + static_cast<std::uint64_t>(split);
    const Dataset all = simulate(spec).data;
    SplitPlan plan;
    plan.seed = 200 + static_cast<std::uint64_t>(split);
    return split_dataset(all, plan);
  };
  const auto loss = LossSpec::multiclass_softmax(5);
  const TuningGrid grid = small_grid(15);

  SUBCASE("single split, single mode") {
    const auto rows =
        benchmark(provider, {UpdateMode::kNewton}, 1, loss, grid);
    REQUIRE(rows.size() == 1);
    CHECK_FALSE(rows[0].failed);
    CHECK(rows[0].split_id == 0);
    CHECK(rows[0].chosen_m >= 1);
    CHECK(rows[0].test_score >= 0.0);
    CHECK(rows[0].test_score <= 1.0);
  }

  SUBCASE("same configuration twice gives identical tables") {
    const std::vector<UpdateMode> modes = {UpdateMode::kGradient,
                                           UpdateMode::kNewton};
    const auto a = benchmark(provider, modes, 2, loss, grid);
    const auto b = benchmark(provider, modes, 2, loss, grid);
    REQUIRE(a.size() == 4);
    REQUIRE(b.size() == 4);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].split_id == b[i].split_id);
      CHECK(a[i].mode == b[i].mode);
      CHECK(a[i].learning_rate == b[i].learning_rate);
      CHECK(a[i].min_per_leaf == b[i].min_per_leaf);
      CHECK(a[i].chosen_m == b[i].chosen_m);
      CHECK(a[i].valid_score == b[i].valid_score);
      CHECK(a[i].test_score == b[i].test_score);
    }
    // Ordering is split-major, then the given mode order.
    CHECK(a[0].split_id == 0);
    CHECK(a[0].mode == UpdateMode::kGradient);
    CHECK(a[1].mode == UpdateMode::kNewton);
    CHECK(a[2].split_id == 1);
  }
}

TEST_CASE("trace_run produces per-iteration curves") {
  SimSpec spec = SimSpec::from_name("multi_classif_fht");
  spec.n = 400;
  spec.seed = 55;
  const Dataset all = simulate(spec).data;
  SplitPlan plan;
  plan.seed = 3;
  const auto tvt = split_dataset(all, plan);
  FitConfig cfg;
  cfg.mode = UpdateMode::kNewton;
  cfg.num_iterations = 40;
  cfg.learning_rate = 0.3;
  cfg.tree.max_depth = 3;
  cfg.tree.min_per_leaf = 1.0;
  cfg.tree.leaf_constraint = LeafConstraint::kEquivalentWeighted;

  const auto curves = trace_run(tvt.train, tvt.test,
                                LossSpec::multiclass_softmax(5), cfg);
  REQUIRE(curves.train_loss.size() == 40);
  REQUIRE(curves.test_score.size() == 40);
  CHECK(curves.train_loss.back() < curves.train_loss.front());
  for (const double v : curves.train_loss) CHECK(std::isfinite(v));
  for (const double v : curves.test_score) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}
