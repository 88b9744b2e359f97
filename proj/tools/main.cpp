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
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "triboost/boosting.hpp"
#include "triboost/csv.hpp"
#include "triboost/datagen.hpp"
#include "triboost/model_io.hpp"
#include "triboost/numeric.hpp"
#include "triboost/tuning.hpp"

namespace {

using namespace triboost;
using numeric::format_double;

constexpr double kUnsetThreshold = std::numeric_limits<double>::quiet_NaN();

struct LossFlags {
  std::string family;
  double gamma = 10.0;
  double sigma = 1.0;
  double y_lower = kUnsetThreshold;
  double y_upper = kUnsetThreshold;
  int classes = 0;  // 0 = infer from data
};

void add_loss_flags(CLI::App* cmd, LossFlags* flags, bool family_required) {
  auto* opt = cmd->add_option(
      "--loss", flags->family,
      "loss family: squared_error|binary_logistic|multiclass_softmax|"
      "poisson|gamma|tobit|mean_scale");
  if (family_required) opt->required();
  cmd->add_option("--gamma", flags->gamma, "Gamma shape parameter");
  cmd->add_option("--sigma", flags->sigma, "Tobit latent standard deviation");
  cmd->add_option("--y-lower", flags->y_lower,
                  "Tobit lower censoring threshold (default: min response)");
  cmd->add_option("--y-upper", flags->y_upper,
                  "Tobit upper censoring threshold (default: max response)");
  cmd->add_option("--classes", flags->classes,
                  "number of classes (default: inferred from labels)");
}

LossSpec loss_from_flags(const LossFlags& flags, const Dataset* data) {
  const LossFamily family = loss_family_from_string(flags.family);
  switch (family) {
    case LossFamily::kSquaredError: return LossSpec::squared_error();
    case LossFamily::kBinaryLogistic: return LossSpec::binary_logistic();
    case LossFamily::kPoisson: return LossSpec::poisson();
    case LossFamily::kGamma: return LossSpec::gamma_regression(flags.gamma);
    case LossFamily::kMeanScaleGaussian: return LossSpec::mean_scale_gaussian();
    case LossFamily::kMulticlassSoftmax: {
      int k = flags.classes;
      if (k <= 0) {
        if (data == nullptr || data->response.empty()) {
          throw DataError("--classes is required when labels are unavailable");
        }
        double max_label = 0.0;
        for (const double y : data->response) max_label = std::max(max_label, y);
        k = static_cast<int>(max_label) + 1;
      }
      return LossSpec::multiclass_softmax(k);
    }
    case LossFamily::kTobit: {
      double lo = flags.y_lower;
      double hi = flags.y_upper;
      if (!std::isfinite(lo) || !std::isfinite(hi)) {
        if (data == nullptr || data->response.empty()) {
          throw DataError(
              "--y-lower/--y-upper are required when responses are "
              "unavailable");
        }
        const auto [mn, mx] =
            std::minmax_element(data->response.begin(), data->response.end());
        if (!std::isfinite(lo)) lo = *mn;
        if (!std::isfinite(hi)) hi = *mx;
      }
      return LossSpec::tobit(flags.sigma, lo, hi);
    }
  }
  throw DataError("unhandled loss family");
}

std::vector<double> parse_double_list(const std::string& text,
                                      const char* what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string tok = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!tok.empty()) {
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (end != tok.c_str() + tok.size()) {
        throw DataError(std::string("cannot parse ") + what + " value '" +
                        tok + "'");
      }
      out.push_back(v);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw DataError(std::string(what) + " list is empty");
  return out;
}

std::vector<UpdateMode> parse_modes(const std::string& text) {
  std::vector<UpdateMode> modes;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string tok = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!tok.empty()) modes.push_back(update_mode_from_string(tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (modes.empty()) throw DataError("mode list is empty");
  return modes;
}

LeafConstraint default_constraint(UpdateMode mode) {
  return mode == UpdateMode::kNewton ? LeafConstraint::kEquivalentWeighted
                                     : LeafConstraint::kRawCount;
}

// Mean-scale fits with tiny leaves are unidentifiable for gradient/hybrid;
// raise S to 25 with a warning, mirroring the tuning-grid restriction.
double guard_mean_scale_leaf(const LossSpec& loss, UpdateMode mode, double s) {
  if (loss.family == LossFamily::kMeanScaleGaussian &&
      mode != UpdateMode::kNewton && s < 25.0) {
    std::fprintf(stderr,
                 "triboost: warning: raising --min-leaf to 25 for %s on "
                 "mean-scale data\n",
                 to_string(mode).c_str());
    return 25.0;
  }
  return s;
}

Dataset ingest_for_prediction(const std::string& path,
                              const std::string& target) {
  const CsvTable table = read_csv(path);
  const bool has_target =
      std::find(table.header.begin(), table.header.end(), target) !=
      table.header.end();
  return ingest_csv(path, has_target ? target : "", "", false);
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string spec_name;
  std::int64_t n = 0;
  std::uint64_t seed = 42;
  std::string out;
  double gamma = 10.0;
  double sigma = 1.0;
  int classes = 5;
  bool fht_literal_sign = false;
};

int run_simulate(const SimulateArgs& args) {
  SimSpec spec = SimSpec::from_name(args.spec_name);
  spec.n = args.n;
  spec.seed = args.seed;
  spec.gamma = args.gamma;
  spec.sigma = args.sigma;
  spec.num_classes = args.classes;
  spec.fht_literal_sign = args.fht_literal_sign;
  const SimData sim = simulate(spec);
  write_dataset_csv(args.out, sim.data);
  if (std::isfinite(sim.tobit_lower)) {
    std::fprintf(stderr, "triboost: tobit thresholds y_lower=%s y_upper=%s\n",
                 format_double(sim.tobit_lower).c_str(),
                 format_double(sim.tobit_upper).c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// fit

struct FitArgs {
  std::string data;
  std::string target = "y";
  LossFlags loss;
  std::string mode = "newton";
  int iterations = 100;
  double learning_rate = 0.1;
  int max_depth = 5;
  double min_leaf = 1.0;
  std::string constraint;  // empty = mode default
  double hessian_floor = 1e-20;
  bool one_hot = false;
  std::string out;
};

int run_fit(const FitArgs& args) {
  const Dataset data =
      ingest_csv(args.data, args.target, args.loss.family, args.one_hot);
  const LossSpec loss = loss_from_flags(args.loss, &data);
  FitConfig cfg;
  cfg.mode = update_mode_from_string(args.mode);
  cfg.num_iterations = args.iterations;
  cfg.learning_rate = args.learning_rate;
  cfg.hessian_floor = args.hessian_floor;
  cfg.tree.max_depth = args.max_depth;
  cfg.tree.min_per_leaf = guard_mean_scale_leaf(loss, cfg.mode, args.min_leaf);
  cfg.tree.leaf_constraint = args.constraint.empty()
                                 ? default_constraint(cfg.mode)
                                 : leaf_constraint_from_string(args.constraint);
  const BoostedModel model = fit(data, loss, cfg);
  save_model(args.out, model);
  std::fprintf(stderr, "triboost: fitted %d iterations, final train loss %s\n",
               model.iterations(),
               format_double(model.train_loss.back()).c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// predict / evaluate

struct PredictArgs {
  std::string model;
  std::string data;
  std::string target = "y";
  int upto = -1;
  std::string out;
};

std::vector<std::string> response_header(const LossSpec& loss) {
  switch (loss.family) {
    case LossFamily::kBinaryLogistic: return {"p"};
    case LossFamily::kMulticlassSoftmax: {
      std::vector<std::string> h;
      for (int k = 0; k < loss.num_outputs; ++k) {
        h.push_back("p" + std::to_string(k));
      }
      return h;
    }
    case LossFamily::kPoisson:
    case LossFamily::kGamma:
      return {"mean"};
    case LossFamily::kMeanScaleGaussian: return {"mean", "sigma"};
    default: return {"prediction"};
  }
}

int run_predict(const PredictArgs& args) {
  const BoostedModel model = load_model(args.model);
  const Dataset data = ingest_for_prediction(args.data, args.target);
  const std::vector<double> scores =
      predict(model, data.feature_view(), args.upto);
  const int d = model.loss.num_outputs;
  std::vector<std::vector<std::string>> rows;
  rows.reserve(data.n_rows);
  for (std::int64_t i = 0; i < data.n_rows; ++i) {
    const std::vector<double> resp = score_to_response(
        model.loss, {scores.data() + i * d, static_cast<std::size_t>(d)});
    std::vector<std::string> row;
    row.reserve(resp.size());
    for (const double v : resp) row.push_back(format_double(v));
    rows.push_back(std::move(row));
  }
  write_table_csv(args.out, response_header(model.loss), rows);
  return 0;
}

int run_evaluate(const PredictArgs& args) {
  const BoostedModel model = load_model(args.model);
  const Dataset data = ingest_csv(args.data, args.target, "", false);
  const std::vector<double> scores = predict(model, data.feature_view());
  const MatrixView view{scores.data(), data.n_rows, model.loss.num_outputs};
  const double value = score_metric(model.loss, view, data.response);
  const char* name = metric_for(model.loss) == Metric::kErrorRate
                         ? "error_rate"
                         : "neg_log_likelihood";
  std::printf("%s %s\n", name, format_double(value).c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// tune / benchmark / trace

struct GridFlags {
  int iterations_max = 1000;
  std::string learning_rates = "1,0.1,0.01,0.001";
  std::string min_leaf_values = "1,5,25,100";
  std::string newton_constraint = "equivalent";
  int max_depth = 5;
  double hessian_floor = 1e-20;
};

void add_grid_flags(CLI::App* cmd, GridFlags* flags) {
  cmd->add_option("--iterations-max", flags->iterations_max,
                  "M searched over 1..iterations-max");
  cmd->add_option("--learning-rates", flags->learning_rates,
                  "comma-separated learning-rate grid");
  cmd->add_option("--min-leaf-values", flags->min_leaf_values,
                  "comma-separated min-per-leaf grid");
  cmd->add_option("--constraint", flags->newton_constraint,
                  "leaf constraint for newton cells: equivalent|hessian-sum");
  cmd->add_option("--max-depth", flags->max_depth, "maximal tree depth");
  cmd->add_option("--hessian-floor", flags->hessian_floor,
                  "lower clamp on second derivatives");
}

TuningGrid grid_from_flags(const GridFlags& flags) {
  TuningGrid grid;
  grid.iterations_max = flags.iterations_max;
  grid.learning_rates = parse_double_list(flags.learning_rates, "learning-rate");
  grid.min_per_leaf_values =
      parse_double_list(flags.min_leaf_values, "min-leaf");
  grid.newton_constraint =
      leaf_constraint_from_string(flags.newton_constraint);
  grid.max_depth = flags.max_depth;
  grid.hessian_floor = flags.hessian_floor;
  return grid;
}

struct SourceFlags {
  std::string spec_name;  // simulated source
  std::string data;       // CSV source
  std::string target = "y";
  bool one_hot = false;
  std::int64_t n_per_partition = 1000;
  double gamma = 10.0;
  double sigma = 1.0;
  int classes = 5;
};

void add_source_flags(CLI::App* cmd, SourceFlags* flags) {
  auto* spec = cmd->add_option("--spec", flags->spec_name,
                               "simulated dataset name (e.g. msr_r)");
  auto* data = cmd->add_option("--data", flags->data, "CSV dataset path");
  spec->excludes(data);
  data->excludes(spec);
  cmd->add_option("--target", flags->target, "target column for --data");
  cmd->add_flag("--one-hot", flags->one_hot,
                "expand non-numeric CSV columns to dummies");
  cmd->add_option("--n", flags->n_per_partition,
                  "per-partition sample count for --spec sources");
  cmd->add_option("--sim-gamma", flags->gamma, "Gamma shape for --spec sources");
  cmd->add_option("--sim-sigma", flags->sigma, "Tobit sigma for --spec sources");
  cmd->add_option("--sim-classes", flags->classes,
                  "FHT multiclass class count");
}

LossSpec loss_for_sim(const SimSpec& spec, const SimData& sim) {
  switch (spec.response) {
    case ResponseKind::kPoisson: return LossSpec::poisson();
    case ResponseKind::kGamma: return LossSpec::gamma_regression(spec.gamma);
    case ResponseKind::kTobit:
      return LossSpec::tobit(spec.sigma, sim.tobit_lower, sim.tobit_upper);
    case ResponseKind::kMeanScale: return LossSpec::mean_scale_gaussian();
    case ResponseKind::kFhtBinary: return LossSpec::binary_logistic();
    case ResponseKind::kFhtMulticlass:
      return LossSpec::multiclass_softmax(spec.num_classes);
  }
  throw DataError("unhandled response kind");
}

struct SplitJob {
  TrainValidTest data;
  LossSpec loss;
};

// One split's partitions plus its loss spec (Tobit thresholds depend on the
// simulated dataset, so the loss can vary by split).
SplitJob make_split_job(const SourceFlags& source, const LossFlags* loss_flags,
                        std::uint64_t seed, int split) {
  SplitJob job;
  if (!source.spec_name.empty()) {
    SimSpec spec = SimSpec::from_name(source.spec_name);
    spec.n = source.n_per_partition * 3;
    spec.seed = seed + 1000003ULL * static_cast<std::uint64_t>(split);
    spec.gamma = source.gamma;
    spec.sigma = source.sigma;
    spec.num_classes = source.classes;
    const SimData sim = simulate(spec);
    job.loss = loss_for_sim(spec, sim);
    SplitPlan plan;
    plan.seed = seed + 2000003ULL * static_cast<std::uint64_t>(split) + 1;
    job.data = split_dataset(sim.data, plan);
    return job;
  }
  if (source.data.empty()) {
    throw DataError("either --spec or --data is required");
  }
  if (loss_flags == nullptr || loss_flags->family.empty()) {
    throw DataError("--loss is required with --data");
  }
  const Dataset data = ingest_csv(source.data, source.target,
                                  loss_flags->family, source.one_hot);
  job.loss = loss_from_flags(*loss_flags, &data);
  SplitPlan plan;
  plan.seed = seed + 2000003ULL * static_cast<std::uint64_t>(split) + 1;
  job.data = split_dataset(data, plan);
  return job;
}

struct TuneArgs {
  std::string data;
  std::string target = "y";
  bool one_hot = false;
  LossFlags loss;
  std::string mode = "newton";
  std::uint64_t seed = 42;
  GridFlags grid;
  std::string out;
  std::string model_out;
};

int run_tune(const TuneArgs& args) {
  const Dataset data =
      ingest_csv(args.data, args.target, args.loss.family, args.one_hot);
  const LossSpec loss = loss_from_flags(args.loss, &data);
  SplitPlan plan;
  plan.seed = args.seed;
  const TrainValidTest tvt = split_dataset(data, plan);
  const UpdateMode mode = update_mode_from_string(args.mode);
  const GridSearchResult res =
      grid_search(tvt.train, tvt.valid, loss, mode, grid_from_flags(args.grid));

  std::vector<std::vector<std::string>> rows;
  rows.reserve(res.table.size());
  for (const auto& row : res.table) {
    rows.push_back({format_double(row.learning_rate),
                    format_double(row.min_per_leaf),
                    std::to_string(row.iteration),
                    format_double(row.valid_score)});
  }
  write_table_csv(args.out,
                  {"learning_rate", "min_leaf", "iteration", "valid_score"},
                  rows);
  std::printf("best learning_rate=%s min_leaf=%s M=%d valid_score=%s\n",
              format_double(res.best.learning_rate).c_str(),
              format_double(res.best.min_per_leaf).c_str(), res.best.chosen_m,
              format_double(res.best.valid_score).c_str());
  if (!args.model_out.empty()) save_model(args.model_out, res.best_model);
  return 0;
}

struct BenchmarkArgs {
  SourceFlags source;
  LossFlags loss;
  std::string modes = "gradient,newton,hybrid";
  int splits = 10;
  std::uint64_t seed = 42;
  GridFlags grid;
  std::string out;
};

int run_benchmark(const BenchmarkArgs& args) {
  const std::vector<UpdateMode> modes = parse_modes(args.modes);
  const TuningGrid grid = grid_from_flags(args.grid);
  std::vector<BenchmarkRow> all_rows;
  for (int split = 0; split < args.splits; ++split) {
    const SplitJob job = make_split_job(
        args.source, args.loss.family.empty() ? nullptr : &args.loss,
        args.seed, split);
    const DatasetProvider provider = [&job](int) { return job.data; };
    std::vector<BenchmarkRow> rows =
        benchmark(provider, modes, 1, job.loss, grid);
    for (auto& row : rows) {
      row.split_id = split;
      all_rows.push_back(row);
    }
  }
  std::vector<std::vector<std::string>> rows;
  rows.reserve(all_rows.size());
  for (const auto& r : all_rows) {
    rows.push_back({std::to_string(r.split_id), to_string(r.mode),
                    format_double(r.learning_rate),
                    format_double(r.min_per_leaf), to_string(r.constraint),
                    std::to_string(r.chosen_m), format_double(r.valid_score),
                    format_double(r.test_score)});
  }
  write_table_csv(args.out,
                  {"split_id", "mode", "learning_rate", "min_leaf",
                   "constraint", "chosen_M", "valid_score", "test_score"},
                  rows);
  return 0;
}

struct TraceArgs {
  SourceFlags source;
  LossFlags loss;
  std::string modes = "gradient,newton,hybrid";
  int splits = 10;
  std::uint64_t seed = 42;
  double fixed_lr = 0.1;
  int iterations = 1000;
  int max_depth = 5;
  double min_leaf = 1.0;
  double hessian_floor = 1e-20;
  std::string out_prefix;
};

int run_trace(const TraceArgs& args) {
  const std::vector<UpdateMode> modes = parse_modes(args.modes);
  for (int split = 0; split < args.splits; ++split) {
    const SplitJob job = make_split_job(
        args.source, args.loss.family.empty() ? nullptr : &args.loss,
        args.seed, split);
    for (const UpdateMode mode : modes) {
      FitConfig cfg;
      cfg.mode = mode;
      cfg.num_iterations = args.iterations;
      cfg.learning_rate = args.fixed_lr;
      cfg.hessian_floor = args.hessian_floor;
      cfg.tree.max_depth = args.max_depth;
      cfg.tree.min_per_leaf =
          guard_mean_scale_leaf(job.loss, mode, args.min_leaf);
      cfg.tree.leaf_constraint = default_constraint(mode);
      const TraceCurves curves =
          trace_run(job.data.train, job.data.test, job.loss, cfg);
      std::vector<std::vector<std::string>> rows;
      rows.reserve(curves.train_loss.size());
      for (std::size_t m = 0; m < curves.train_loss.size(); ++m) {
        rows.push_back({std::to_string(m + 1),
                        format_double(curves.train_loss[m]),
                        format_double(curves.test_score[m])});
      }
      const std::string path = args.out_prefix + "_" + to_string(mode) +
                               "_split" + std::to_string(split) + ".csv";
      write_table_csv(path, {"iteration", "train_loss", "test_score"}, rows);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tree boosting with gradient, Newton, and hybrid updates"};
  app.require_subcommand(1);

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "generate a simulated dataset");
  sim->add_option("--spec", sim_args.spec_name, "dataset name, e.g. poisson_f1")
      ->required();
  sim->add_option("--n", sim_args.n, "sample count")->required();
  sim->add_option("--seed", sim_args.seed, "RNG seed");
  sim->add_option("--out", sim_args.out, "output CSV path")->required();
  sim->add_option("--gamma", sim_args.gamma, "Gamma shape");
  sim->add_option("--sigma", sim_args.sigma, "Tobit latent std");
  sim->add_option("--classes", sim_args.classes, "FHT multiclass classes");
  sim->add_flag("--fht-literal-sign", sim_args.fht_literal_sign,
                "use the literal constant-sign reading of the FHT binary "
                "score function");

  FitArgs fit_args;
  auto* fitc = app.add_subcommand("fit", "fit a boosted model");
  fitc->add_option("--data", fit_args.data, "training CSV")->required();
  fitc->add_option("--target", fit_args.target, "target column name");
  add_loss_flags(fitc, &fit_args.loss, /*family_required=*/true);
  fitc->add_option("--mode", fit_args.mode, "gradient|newton|hybrid");
  fitc->add_option("--iterations", fit_args.iterations, "boosting iterations");
  fitc->add_option("--learning-rate", fit_args.learning_rate, "shrinkage nu");
  fitc->add_option("--max-depth", fit_args.max_depth, "maximal tree depth");
  fitc->add_option("--min-leaf", fit_args.min_leaf, "leaf constraint S");
  fitc->add_option("--constraint", fit_args.constraint,
                   "count|equivalent|hessian-sum (default per mode)");
  fitc->add_option("--hessian-floor", fit_args.hessian_floor,
                   "lower clamp on second derivatives");
  fitc->add_flag("--one-hot", fit_args.one_hot,
                 "expand non-numeric columns to dummies");
  fitc->add_option("--out", fit_args.out, "output model JSON")->required();

  PredictArgs predict_args;
  auto* pred = app.add_subcommand("predict", "predict with a saved model");
  pred->add_option("--model", predict_args.model, "model JSON")->required();
  pred->add_option("--data", predict_args.data, "input CSV")->required();
  pred->add_option("--target", predict_args.target,
                   "target column to ignore if present");
  pred->add_option("--upto", predict_args.upto,
                   "use only the first M iterations (0 = F0 only)");
  pred->add_option("--out", predict_args.out, "output CSV")->required();

  PredictArgs eval_args;
  auto* eval = app.add_subcommand("evaluate",
                                  "error rate or mean NLL on labeled data");
  eval->add_option("--model", eval_args.model, "model JSON")->required();
  eval->add_option("--data", eval_args.data, "labeled CSV")->required();
  eval->add_option("--target", eval_args.target, "target column name");

  TuneArgs tune_args;
  auto* tune = app.add_subcommand("tune", "grid search on one random split");
  tune->add_option("--data", tune_args.data, "CSV dataset")->required();
  tune->add_option("--target", tune_args.target, "target column name");
  tune->add_flag("--one-hot", tune_args.one_hot,
                 "expand non-numeric columns to dummies");
  add_loss_flags(tune, &tune_args.loss, /*family_required=*/true);
  tune->add_option("--mode", tune_args.mode, "gradient|newton|hybrid");
  tune->add_option("--seed", tune_args.seed, "split seed");
  add_grid_flags(tune, &tune_args.grid);
  tune->add_option("--out", tune_args.out, "score table CSV")->required();
  tune->add_option("--model-out", tune_args.model_out,
                   "optionally save the selected model");

  BenchmarkArgs bench_args;
  auto* bench = app.add_subcommand(
      "benchmark", "grid-searched comparison across splits and modes");
  add_source_flags(bench, &bench_args.source);
  add_loss_flags(bench, &bench_args.loss, /*family_required=*/false);
  bench->add_option("--modes", bench_args.modes, "comma-separated mode list");
  bench->add_option("--splits", bench_args.splits, "number of random splits");
  bench->add_option("--seed", bench_args.seed, "base seed");
  add_grid_flags(bench, &bench_args.grid);
  bench->add_option("--out", bench_args.out, "result CSV")->required();

  TraceArgs trace_args;
  auto* trace = app.add_subcommand(
      "trace", "fixed-learning-rate train/test curves per iteration");
  add_source_flags(trace, &trace_args.source);
  add_loss_flags(trace, &trace_args.loss, /*family_required=*/false);
  trace->add_option("--modes", trace_args.modes, "comma-separated mode list");
  trace->add_option("--splits", trace_args.splits, "number of random splits");
  trace->add_option("--seed", trace_args.seed, "base seed");
  trace->add_option("--fixed-lr", trace_args.fixed_lr, "fixed learning rate")
      ->required();
  trace->add_option("--iterations", trace_args.iterations,
                    "boosting iterations");
  trace->add_option("--max-depth", trace_args.max_depth, "maximal tree depth");
  trace->add_option("--min-leaf", trace_args.min_leaf, "leaf constraint S");
  trace->add_option("--hessian-floor", trace_args.hessian_floor,
                    "lower clamp on second derivatives");
  trace->add_option("--out-prefix", trace_args.out_prefix,
                    "trace CSVs are written to <prefix>_<mode>_split<k>.csv")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*sim) return run_simulate(sim_args);
    if (*fitc) return run_fit(fit_args);
    if (*pred) return run_predict(predict_args);
    if (*eval) return run_evaluate(eval_args);
    if (*tune) return run_tune(tune_args);
    if (*bench) return run_benchmark(bench_args);
    if (*trace) return run_trace(trace_args);
  } catch (const NumericError& e) {
    std::fprintf(stderr, "triboost: numeric failure: %s\n", e.what());
    return 3;
  } catch (const DataError& e) {
    std::fprintf(stderr, "triboost: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "triboost: %s\n", e.what());
    return 2;
  }
  return 1;
}
