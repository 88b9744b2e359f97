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
#include "triboost/losses.hpp"

#include <algorithm>
#include <cmath>

#include "triboost/numeric.hpp"

namespace triboost {

using numeric::norm_hazard;
using numeric::norm_logcdf;
using numeric::safe_exp;
using numeric::sigmoid;

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

// lambda(z) * (z + lambda(z)) with lambda = phi/Phi. Direct evaluation
// cancels catastrophically deep in the left tail, where lambda ~ -z; switch
// to the tail series lambda = -z/S1, z + lambda = S2/(-z*S1) with
//   S1 = 1 - 1/z^2 + 3/z^4 - 15/z^6 + ...
//   S2 = 1 - 3/z^2 + 15/z^4 - 105/z^6 + ...
double censored_curvature(double z) {
  if (z > -30.0) {
    const double lam = norm_hazard(z);
    return std::max(0.0, lam * (z + lam));
  }
  const double inv_z2 = 1.0 / (z * z);
  double s1 = 1.0, s2 = 1.0;
  double coeff = 1.0, term = 1.0;
  for (int k = 1; k <= 8; ++k) {
    coeff *= static_cast<double>(2 * k - 1);
    term *= -inv_z2;
    s1 += coeff * term;
    s2 += coeff * static_cast<double>(2 * k + 1) * term;
  }
  return s2 / (s1 * s1);
}

void check_finite_scores(std::span<const double> scores) {
  for (const double f : scores) {
    if (!std::isfinite(f)) throw DataError("non-finite score passed to loss");
  }
}

[[noreturn]] void bad_response(const LossSpec& spec, double y) {
  throw DataError("response " + numeric::format_double(y) +
                  " is outside the domain of loss family '" +
                  to_string(spec.family) + "'");
}

}  // namespace

std::string to_string(LossFamily family) {
  switch (family) {
    case LossFamily::kSquaredError: return "squared_error";
    case LossFamily::kBinaryLogistic: return "binary_logistic";
    case LossFamily::kMulticlassSoftmax: return "multiclass_softmax";
    case LossFamily::kPoisson: return "poisson";
    case LossFamily::kGamma: return "gamma";
    case LossFamily::kTobit: return "tobit";
    case LossFamily::kMeanScaleGaussian: return "mean_scale";
  }
  return "unknown";
}

LossFamily loss_family_from_string(const std::string& name) {
  if (name == "squared_error" || name == "squared") {
    return LossFamily::kSquaredError;
  }
  if (name == "binary_logistic" || name == "binary") {
    return LossFamily::kBinaryLogistic;
  }
  if (name == "multiclass_softmax" || name == "multiclass") {
    return LossFamily::kMulticlassSoftmax;
  }
  if (name == "poisson") return LossFamily::kPoisson;
  if (name == "gamma") return LossFamily::kGamma;
  if (name == "tobit") return LossFamily::kTobit;
  if (name == "mean_scale" || name == "msr") {
    return LossFamily::kMeanScaleGaussian;
  }
  throw DataError("unknown loss family '" + name + "'");
}

LossSpec LossSpec::squared_error() {
  LossSpec s;
  s.family = LossFamily::kSquaredError;
  return s;
}

LossSpec LossSpec::binary_logistic() {
  LossSpec s;
  s.family = LossFamily::kBinaryLogistic;
  return s;
}

LossSpec LossSpec::multiclass_softmax(int num_classes) {
  LossSpec s;
  s.family = LossFamily::kMulticlassSoftmax;
  s.num_outputs = num_classes;
  s.validate();
  return s;
}

LossSpec LossSpec::poisson() {
  LossSpec s;
  s.family = LossFamily::kPoisson;
  return s;
}

LossSpec LossSpec::gamma_regression(double shape) {
  LossSpec s;
  s.family = LossFamily::kGamma;
  s.gamma = shape;
  s.validate();
  return s;
}

LossSpec LossSpec::tobit(double sigma, double y_lower, double y_upper) {
  LossSpec s;
  s.family = LossFamily::kTobit;
  s.sigma = sigma;
  s.y_lower = y_lower;
  s.y_upper = y_upper;
  s.validate();
  return s;
}

LossSpec LossSpec::mean_scale_gaussian() {
  LossSpec s;
  s.family = LossFamily::kMeanScaleGaussian;
  s.num_outputs = 2;
  return s;
}

void LossSpec::validate() const {
  if (family == LossFamily::kMulticlassSoftmax) {
    if (num_outputs < 2) throw DataError("multiclass needs num_outputs >= 2");
  } else if (family == LossFamily::kMeanScaleGaussian) {
    if (num_outputs != 2) throw DataError("mean-scale needs num_outputs == 2");
  } else if (num_outputs != 1) {
    throw DataError("scalar loss families need num_outputs == 1");
  }
  if (family == LossFamily::kGamma && !(gamma > 0.0)) {
    throw DataError("Gamma shape must be positive");
  }
  if (family == LossFamily::kTobit) {
    if (!(sigma > 0.0)) throw DataError("Tobit sigma must be positive");
    if (!(y_lower < y_upper)) {
      throw DataError("Tobit thresholds need y_lower < y_upper");
    }
  }
}

bool response_valid(const LossSpec& spec, double y) {
  if (!std::isfinite(y)) return false;
  switch (spec.family) {
    case LossFamily::kSquaredError:
    case LossFamily::kMeanScaleGaussian:
      return true;
    case LossFamily::kBinaryLogistic:
      return y == 0.0 || y == 1.0;
    case LossFamily::kMulticlassSoftmax:
      return y == std::floor(y) && y >= 0.0 && y < spec.num_outputs;
    case LossFamily::kPoisson:
      return y == std::floor(y) && y >= 0.0;
    case LossFamily::kGamma:
      return y > 0.0;
    case LossFamily::kTobit:
      return y >= spec.y_lower && y <= spec.y_upper;
  }
  return false;
}

void validate_responses(const LossSpec& spec, std::span<const double> y) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!response_valid(spec, y[i])) {
      throw DataError("observation " + std::to_string(i) + ": response " +
                      numeric::format_double(y[i]) +
                      " is invalid for loss family '" +
                      to_string(spec.family) + "'");
    }
  }
}

double eval_loss_into(const LossSpec& spec, double y, const double* scores,
                      double* gradient, double* hessian) {
  switch (spec.family) {
    case LossFamily::kSquaredError: {
      const double r = y - scores[0];
      gradient[0] = -r;
      hessian[0] = 1.0;
      return 0.5 * r * r;
    }
    case LossFamily::kBinaryLogistic: {
      const double f = scores[0];
      const double p = sigmoid(f);
      gradient[0] = p - y;
      hessian[0] = p * (1.0 - p);
      return -y * f + numeric::log1pexp(f);
    }
    case LossFamily::kMulticlassSoftmax: {
      const int k = spec.num_outputs;
      double max_f = scores[0];
      for (int j = 1; j < k; ++j) max_f = std::max(max_f, scores[j]);
      double sum = 0.0;
      for (int j = 0; j < k; ++j) sum += std::exp(scores[j] - max_f);
      const double lse = max_f + std::log(sum);
      const int label = static_cast<int>(y);
      for (int j = 0; j < k; ++j) {
        const double p = std::exp(scores[j] - max_f) / sum;
        gradient[j] = p - (j == label ? 1.0 : 0.0);
        hessian[j] = p * (1.0 - p);
      }
      return lse - scores[label];
    }
    case LossFamily::kPoisson: {
      const double f = scores[0];
      const double ef = safe_exp(f);
      gradient[0] = ef - y;
      hessian[0] = ef;
      return -y * f + ef;
    }
    case LossFamily::kGamma: {
      const double f = scores[0];
      const double g = spec.gamma;
      const double emy = safe_exp(-f) * y;
      gradient[0] = g * (1.0 - emy);
      hessian[0] = g * emy;
      // Constant terms kept so the reported loss is the full negative
      // log-likelihood; they do not affect derivatives.
      return g * (f + emy) - (g - 1.0) * std::log(y) - g * std::log(g) +
             std::lgamma(g);
    }
    case LossFamily::kTobit: {
      const double f = scores[0];
      const double s = spec.sigma;
      if (y == spec.y_lower) {
        const double z = (spec.y_lower - f) / s;
        const double lam = norm_hazard(z);
        gradient[0] = lam / s;
        hessian[0] = censored_curvature(z) / (s * s);
        return -norm_logcdf(z);
      }
      if (y == spec.y_upper) {
        // 1 - Phi((y_u - F)/sigma) = Phi((F - y_u)/sigma)
        const double w = (f - spec.y_upper) / s;
        const double lam = norm_hazard(w);
        gradient[0] = -lam / s;
        hessian[0] = censored_curvature(w) / (s * s);
        return -norm_logcdf(w);
      }
      const double r = y - f;
      gradient[0] = -r / (s * s);
      hessian[0] = 1.0 / (s * s);
      return 0.5 * r * r / (s * s) + std::log(s) + kHalfLog2Pi;
    }
    case LossFamily::kMeanScaleGaussian: {
      const double f1 = scores[0];
      const double f2 = scores[1];
      const double inv_s = safe_exp(-f2);
      const double u = (y - f1) * inv_s;  // standardized residual
      gradient[0] = -u * inv_s;
      gradient[1] = -u * u + 1.0;
      hessian[0] = inv_s * inv_s;
      hessian[1] = 2.0 * u * u;
      return 0.5 * u * u + f2 + kHalfLog2Pi;
    }
  }
  throw DataError("unhandled loss family");
}

LossTriplet eval_loss(const LossSpec& spec, double y,
                      std::span<const double> scores) {
  spec.validate();
  if (scores.size() != static_cast<std::size_t>(spec.num_outputs)) {
    throw DataError("score vector length does not match num_outputs");
  }
  check_finite_scores(scores);
  if (!response_valid(spec, y)) bad_response(spec, y);

  LossTriplet out;
  out.gradient.resize(spec.num_outputs);
  out.hessian.resize(spec.num_outputs);
  out.loss = eval_loss_into(spec, y, scores.data(), out.gradient.data(),
                            out.hessian.data());
  return out;
}

std::vector<double> score_to_response(const LossSpec& spec,
                                      std::span<const double> scores) {
  if (scores.size() != static_cast<std::size_t>(spec.num_outputs)) {
    throw DataError("score vector length does not match num_outputs");
  }
  check_finite_scores(scores);
  switch (spec.family) {
    case LossFamily::kSquaredError:
    case LossFamily::kTobit:
      return {scores[0]};
    case LossFamily::kBinaryLogistic:
      return {sigmoid(scores[0])};
    case LossFamily::kMulticlassSoftmax: {
      const int k = spec.num_outputs;
      double max_f = scores[0];
      for (int j = 1; j < k; ++j) max_f = std::max(max_f, scores[j]);
      double sum = 0.0;
      std::vector<double> p(k);
      for (int j = 0; j < k; ++j) {
        p[j] = std::exp(scores[j] - max_f);
        sum += p[j];
      }
      for (int j = 0; j < k; ++j) p[j] /= sum;
      return p;
    }
    case LossFamily::kPoisson:
    case LossFamily::kGamma:
      // Gamma mean is gamma/rate = e^F
      return {safe_exp(scores[0])};
    case LossFamily::kMeanScaleGaussian:
      return {scores[0], safe_exp(scores[1])};
  }
  throw DataError("unhandled loss family");
}

}  // namespace triboost
