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
#ifndef TRIBOOST_LOSSES_HPP_
#define TRIBOOST_LOSSES_HPP_

#include <span>
#include <string>
#include <vector>

#include "triboost/error.hpp"

namespace triboost {

enum class LossFamily {
  kSquaredError,
  kBinaryLogistic,
  kMulticlassSoftmax,
  kPoisson,
  kGamma,
  kTobit,
  kMeanScaleGaussian,
};

std::string to_string(LossFamily family);
LossFamily loss_family_from_string(const std::string& name);

// A loss family together with its fixed auxiliary parameters. Scores are
// vectors of length num_outputs (1 for scalar losses, K for multiclass,
// 2 for mean-scale: F1 = mean, F2 = log standard deviation).
struct LossSpec {
  LossFamily family = LossFamily::kSquaredError;
  int num_outputs = 1;
  double gamma = 10.0;   // Gamma shape
  double sigma = 1.0;    // Tobit latent standard deviation
  double y_lower = 0.0;  // Tobit censoring thresholds
  double y_upper = 1.0;

  static LossSpec squared_error();
  static LossSpec binary_logistic();
  static LossSpec multiclass_softmax(int num_classes);
  static LossSpec poisson();
  static LossSpec gamma_regression(double shape);
  static LossSpec tobit(double sigma, double y_lower, double y_upper);
  static LossSpec mean_scale_gaussian();

  // Throws DataError on violated invariants (non-positive gamma/sigma,
  // y_lower >= y_upper, num_outputs inconsistent with family).
  void validate() const;
};

// Per-observation loss value with gradient and diagonal Hessian. Off-diagonal
// Hessian terms are zero by construction for the multivariate families.
struct LossTriplet {
  double loss = 0.0;
  std::vector<double> gradient;
  std::vector<double> hessian;
};

// Loss, gradient and diagonal Hessian of L(y, F) at the given score vector.
// Throws DataError for a y outside the family's domain or non-finite scores.
LossTriplet eval_loss(const LossSpec& spec, double y,
                      std::span<const double> scores);

// Same evaluation writing into caller-provided buffers; returns the loss.
// Skips input validation: callers must have validated y (validate_response)
// and keep scores finite.
double eval_loss_into(const LossSpec& spec, double y, const double* scores,
                      double* gradient, double* hessian);

// Inverts the link: probabilities for classification, means for
// Poisson/Gamma, identity for squared/Tobit, (mean, sigma) for mean-scale.
std::vector<double> score_to_response(const LossSpec& spec,
                                      std::span<const double> scores);

// Checks a single response value against the family domain.
bool response_valid(const LossSpec& spec, double y);

// Throws DataError naming the first offending observation.
void validate_responses(const LossSpec& spec, std::span<const double> y);

}  // namespace triboost

#endif  // TRIBOOST_LOSSES_HPP_
