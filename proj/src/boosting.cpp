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
#include "triboost/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "triboost/numeric.hpp"
#include "triboost/parallel.hpp"

namespace triboost {

namespace {
constexpr double kDegenerateScore = 15.0;

void warn(const std::string& msg) {
  std::fprintf(stderr, "triboost: warning: %s\n", msg.c_str());
}

double mean(std::span<const double> v) {
  double s = 0.0;
  for (const double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Newton iteration for the risk-minimizing constant of a scalar loss.
double scalar_newton_init(const LossSpec& spec, std::span<const double> y,
                          double start) {
  const double n = static_cast<double>(y.size());
  double f = start;
  for (int it = 0; it < 100; ++it) {
    double g_sum = 0.0;
    double h_sum = 0.0;
    double g, h;
    for (const double yi : y) {
      eval_loss_into(spec, yi, &f, &g, &h);
      g_sum += g;
      h_sum += h;
    }
    if (std::abs(g_sum / n) < 1e-10) break;
    if (!(h_sum > 0.0)) break;
    f -= g_sum / h_sum;
  }
  return f;
}
}  // namespace

std::string to_string(UpdateMode mode) {
  switch (mode) {
    case UpdateMode::kGradient: return "gradient";
    case UpdateMode::kNewton: return "newton";
    case UpdateMode::kHybrid: return "hybrid";
  }
  return "unknown";
}

UpdateMode update_mode_from_string(const std::string& name) {
  if (name == "gradient") return UpdateMode::kGradient;
  if (name == "newton") return UpdateMode::kNewton;
  if (name == "hybrid") return UpdateMode::kHybrid;
  throw DataError("unknown update mode '" + name + "'");
}

void FitConfig::validate() const {
  tree.validate();
  if (num_iterations < 1) throw DataError("num_iterations must be >= 1");
  if (!(learning_rate > 0.0) || learning_rate > 1.0) {
    throw DataError("learning_rate must be in (0, 1]");
  }
  if (!(hessian_floor > 0.0)) throw DataError("hessian_floor must be > 0");
  switch (mode) {
    case UpdateMode::kGradient:
    case UpdateMode::kHybrid:
      if (tree.leaf_constraint != LeafConstraint::kRawCount) {
        throw DataError(to_string(mode) +
                        " mode requires the raw-count leaf constraint");
      }
      break;
    case UpdateMode::kNewton:
      if (tree.leaf_constraint == LeafConstraint::kRawCount) {
        throw DataError(
            "newton mode requires the equivalent-weighted or "
            "hessian-sum leaf constraint");
      }
      break;
  }
}

std::vector<double> init_scores(const LossSpec& loss,
                                std::span<const double> responses) {
  if (responses.empty()) throw DataError("init_scores: empty responses");
  loss.validate();
  validate_responses(loss, responses);
  const double n = static_cast<double>(responses.size());

  switch (loss.family) {
    case LossFamily::kSquaredError:
      return {mean(responses)};
    case LossFamily::kBinaryLogistic: {
      const double p = mean(responses);
      if (p <= 0.0 || p >= 1.0) {
        warn("binary responses are all one class; clamping F0 to +-15");
        return {p <= 0.0 ? -kDegenerateScore : kDegenerateScore};
      }
      return {std::log(p / (1.0 - p))};
    }
    case LossFamily::kMulticlassSoftmax: {
      std::vector<double> counts(loss.num_outputs, 0.0);
      for (const double yi : responses) counts[static_cast<int>(yi)] += 1.0;
      std::vector<double> f0(loss.num_outputs);
      for (int k = 0; k < loss.num_outputs; ++k) {
        if (counts[k] <= 0.0) {
          warn("class " + std::to_string(k) +
               " is absent; clamping its F0 to -15");
          f0[k] = -kDegenerateScore;
        } else {
          f0[k] = std::log(counts[k] / n);
        }
      }
      return f0;
    }
    case LossFamily::kPoisson: {
      const double m = mean(responses);
      if (m <= 0.0) {
        warn("all Poisson counts are zero; clamping F0 to -15");
        return {-kDegenerateScore};
      }
      return {std::log(m)};
    }
    case LossFamily::kGamma:
      return {std::log(mean(responses))};
    case LossFamily::kTobit:
      return {scalar_newton_init(loss, responses, mean(responses))};
    case LossFamily::kMeanScaleGaussian: {
      const double mu = mean(responses);
      double var = 0.0;
      for (const double yi : responses) var += (yi - mu) * (yi - mu);
      var /= n;
      if (var <= 0.0) {
        warn("responses have zero variance; clamping log-sd F0 to -15");
        return {mu, -kDegenerateScore};
      }
      return {mu, 0.5 * std::log(var)};
    }
  }
  throw DataError("unhandled loss family");
}

void pseudo_targets(UpdateMode mode, std::span<const double> gradients,
                    std::span<const double> hessians, double floor,
                    std::vector<double>* targets,
                    std::vector<double>* fit_weights) {
  const std::size_t n = gradients.size();
  if (hessians.size() != n) {
    throw DataError("pseudo_targets: gradient/hessian length mismatch");
  }
  targets->resize(n);
  fit_weights->resize(n);
  if (mode == UpdateMode::kNewton) {
    for (std::size_t i = 0; i < n; ++i) {
      const double h = std::max(hessians[i], floor);
      (*targets)[i] = -gradients[i] / h;
      (*fit_weights)[i] = h;
    }
  } else {
    // Gradient, and the structure pass of Hybrid.
    for (std::size_t i = 0; i < n; ++i) {
      (*targets)[i] = -gradients[i];
      (*fit_weights)[i] = 1.0;
    }
  }
}

std::vector<double> normalize_weights(std::span<const double> hessians) {
  const double n = static_cast<double>(hessians.size());
  double sum = 0.0;
  for (const double h : hessians) sum += h;
  if (!(sum > 0.0)) {
    throw DataError("normalize_weights: Hessians sum to zero");
  }
  std::vector<double> w(hessians.size());
  const double scale = n / sum;
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = hessians[i] * scale;
  // One renormalization pass after floating-point summation.
  double sum2 = 0.0;
  for (const double wi : w) sum2 += wi;
  const double scale2 = n / sum2;
  if (scale2 != 1.0) {
    for (double& wi : w) wi *= scale2;
  }
  return w;
}

namespace {

// Evaluates loss sum plus dimension-major gradients/Hessians at `scores`.
double eval_all(const LossSpec& loss, std::span<const double> y,
                const std::vector<double>& scores, std::int64_t n, int d,
                std::vector<double>* grad, std::vector<double>* hess) {
  double loss_sum = 0.0;
  std::vector<double> row_g(d), row_h(d);
  for (std::int64_t i = 0; i < n; ++i) {
    loss_sum += eval_loss_into(loss, y[i], scores.data() + i * d,
                               row_g.data(), row_h.data());
    for (int k = 0; k < d; ++k) {
      (*grad)[static_cast<std::size_t>(k) * n + i] = row_g[k];
      (*hess)[static_cast<std::size_t>(k) * n + i] = row_h[k];
    }
  }
  return loss_sum;
}

// Scores are clamped before exponentiation inside the losses, but a
// diverging fit can still push derivatives to inf/NaN (e.g. huge residuals
// against a collapsing scale). Catch that here so the abort names the
// iteration instead of surfacing as a tree-fitting error.
void check_state_finite(const std::vector<double>& scores,
                        const std::vector<double>& grad,
                        const std::vector<double>& hess, int iteration,
                        const LossSpec& loss, const FitConfig& config) {
  auto all_finite = [](const std::vector<double>& v) {
    for (const double x : v) {
      if (!std::isfinite(x)) return false;
    }
    return true;
  };
  if (all_finite(scores) && all_finite(grad) && all_finite(hess)) return;
  throw NumericError("fit: non-finite scores at iteration " +
                     std::to_string(iteration) + " (" +
                     to_string(loss.family) + ", " + to_string(config.mode) +
                     ")");
}

}  // namespace

BoostedModel fit(const Dataset& data, const LossSpec& loss,
                 const FitConfig& config) {
  loss.validate();
  config.validate();
  data.check_consistent();
  if (data.n_rows < 1) throw DataError("fit: empty dataset");
  validate_responses(loss, data.response);

  const std::int64_t n = data.n_rows;
  const int d = loss.num_outputs;
  const int m_total = config.num_iterations;
  const double nu = config.learning_rate;

  SplitContext ctx(data.feature_view());

  BoostedModel model;
  model.loss = loss;
  model.config = config;
  model.num_features = data.n_cols;
  model.feature_names = data.feature_names;
  model.f0 = init_scores(loss, data.response);
  model.trees.resize(static_cast<std::size_t>(m_total) * d);
  model.train_loss.reserve(m_total);

  std::vector<double> scores(static_cast<std::size_t>(n) * d);
  for (std::int64_t i = 0; i < n; ++i) {
    for (int k = 0; k < d; ++k) scores[i * d + k] = model.f0[k];
  }

  std::vector<double> grad(static_cast<std::size_t>(n) * d);
  std::vector<double> hess(static_cast<std::size_t>(n) * d);
  eval_all(loss, data.response, scores, n, d, &grad, &hess);

  for (int m = 0; m < m_total; ++m) {
    check_state_finite(scores, grad, hess, m + 1, loss, config);
    parallel_for(static_cast<std::size_t>(d), [&](std::size_t k) {
      std::span<const double> gk(grad.data() + k * n,
                                 static_cast<std::size_t>(n));
      std::span<const double> hk(hess.data() + k * n,
                                 static_cast<std::size_t>(n));

      std::vector<double> floored(static_cast<std::size_t>(n));
      for (std::int64_t i = 0; i < n; ++i) {
        floored[i] = std::max(hk[i], config.hessian_floor);
      }

      std::vector<double> targets;
      std::vector<double> weights;
      pseudo_targets(config.mode, gk, std::span<const double>(floored), 0.0,
                     &targets, &weights);
      if (config.mode == UpdateMode::kNewton) {
        if (config.tree.leaf_constraint == LeafConstraint::kEquivalentWeighted) {
          weights = normalize_weights(floored);
        }
        // kRawHessianSum fits and constrains on the raw floored Hessians.
      }

      TreeFit tf = fit_tree(ctx, targets, weights, config.tree);
      RegressionTree& tree = tf.tree;

      if (config.mode == UpdateMode::kHybrid) {
        // Newton refit of every leaf: weighted mean of -g/h with weights h,
        // i.e. -sum(g)/sum(h), accumulated in ascending sample order like
        // the fitter's own leaf values.
        std::vector<double> leaf_num(tree.node_count(), 0.0);
        std::vector<double> leaf_den(tree.node_count(), 0.0);
        for (std::int64_t i = 0; i < n; ++i) {
          const std::int64_t leaf = tf.leaf_of_sample[i];
          leaf_num[leaf] += floored[i] * (-gk[i] / floored[i]);
          leaf_den[leaf] += floored[i];
        }
        for (std::int64_t node = 0; node < tree.node_count(); ++node) {
          if (tree.is_leaf(node)) {
            tree.value[node] = leaf_num[node] / leaf_den[node];
          }
        }
      }

      if (nu != 1.0) {
        for (std::int64_t node = 0; node < tree.node_count(); ++node) {
          if (tree.is_leaf(node)) tree.value[node] *= nu;
        }
      }

      model.trees[static_cast<std::size_t>(m) * d + k] = tree;
      for (std::int64_t i = 0; i < n; ++i) {
        scores[i * d + k] += tree.value[tf.leaf_of_sample[i]];
      }
    });

    model.train_loss.push_back(
        eval_all(loss, data.response, scores, n, d, &grad, &hess));
  }
  check_state_finite(scores, grad, hess, m_total, loss, config);
  return model;
}

std::vector<double> predict(const BoostedModel& model, MatrixView features,
                            int upto) {
  const int m_total = model.iterations();
  if (upto < 0) upto = m_total;
  if (upto > m_total) {
    throw DataError("predict: upto=" + std::to_string(upto) +
                    " exceeds the model's " + std::to_string(m_total) +
                    " iterations");
  }
  if (features.cols != model.num_features) {
    throw DataError("predict: feature width " + std::to_string(features.cols) +
                    " does not match the model's " +
                    std::to_string(model.num_features));
  }
  const int d = model.loss.num_outputs;
  const std::int64_t n = features.rows;
  std::vector<double> scores(static_cast<std::size_t>(n) * d);
  for (std::int64_t i = 0; i < n; ++i) {
    for (int k = 0; k < d; ++k) scores[i * d + k] = model.f0[k];
  }
  for (int m = 0; m < upto; ++m) {
    for (int k = 0; k < d; ++k) {
      const RegressionTree& tree = model.tree_at(m, k);
      for (std::int64_t i = 0; i < n; ++i) {
        scores[i * d + k] += tree.predict_row(features.row(i));
      }
    }
  }
  return scores;
}

BoostedModel truncate(const BoostedModel& model, int upto) {
  if (upto < 0 || upto > model.iterations()) {
    throw DataError("truncate: invalid iteration count");
  }
  BoostedModel out = model;
  out.config.num_iterations = upto;
  out.trees.resize(static_cast<std::size_t>(upto) * model.loss.num_outputs);
  out.train_loss.resize(upto);
  return out;
}

}  // namespace triboost
