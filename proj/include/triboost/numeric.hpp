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
#ifndef TRIBOOST_NUMERIC_HPP_
#define TRIBOOST_NUMERIC_HPP_

#include <string>

namespace triboost {
namespace numeric {

// Exponent arguments are clamped to +-700 so e^x stays finite in double.
constexpr double kExpClamp = 700.0;

double safe_exp(double x);

// log(1 + e^x) without overflow for large |x|.
double log1pexp(double x);

// Logistic function, stable for large |x|.
double sigmoid(double x);

// Standard normal log density.
double norm_logpdf(double z);

// Standard normal log CDF, stable over the full double range. Uses erfc for
// z > -26 and the asymptotic tail expansion below that, where erfc
// underflows.
double norm_logcdf(double z);

// phi(z) / Phi(z), computed as exp(logpdf - logcdf); grows like -z in the
// left tail, never overflows.
double norm_hazard(double z);

// Chi-squared CDF with 10 degrees of freedom (closed form: the regularized
// incomplete gamma at integer shape 5).
double chi2_10_cdf(double x);

// Inverse of the above by bisection to ~1e-13 relative.
double chi2_10_quantile(double p);

// Shortest decimal form with %.17g: parses back to the identical double.
std::string format_double(double v);

}  // namespace numeric
}  // namespace triboost

#endif  // TRIBOOST_NUMERIC_HPP_
