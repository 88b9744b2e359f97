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
#include "triboost/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "triboost/numeric.hpp"

namespace triboost {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;

void check_range(double v, double lo, double hi, const char* what) {
  if (!(v >= lo) || !(v <= hi)) {
    throw DataError(std::string(what) + " out of range: " +
                    numeric::format_double(v));
  }
}
}  // namespace

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  cached_normal_ = r * std::sin(kTwoPi * u2);
  has_cached_normal_ = true;
  return r * std::cos(kTwoPi * u2);
}

std::int64_t Rng::poisson(double mean) {
  if (!(mean > 0.0)) throw DataError("poisson sampler needs a positive mean");
  if (mean > 30.0) {
    // exp(-mean) underflows for large means; a Poisson mean splits exactly.
    const double half = 0.5 * mean;
    return poisson(half) + poisson(mean - half);
  }
  const double limit = std::exp(-mean);
  std::int64_t k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= uniform();
  } while (p > limit);
  return k - 1;
}

double Rng::gamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw DataError("gamma sampler needs positive shape and rate");
  }
  if (shape < 1.0) {
    const double u = uniform();
    return gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
      return d * v / rate;
    }
  }
}

std::uint64_t Rng::bounded(std::uint64_t bound) {
  const std::uint64_t threshold = (-bound) % bound;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

double friedman1(std::span<const double> x) {
  if (x.size() != 10) throw DataError("friedman1 expects 10 coordinates");
  for (const double v : x) check_range(v, 0.0, 1.0, "friedman1 coordinate");
  return 10.0 * std::sin(kPi * x[0] * x[1]) +
         20.0 * (x[2] - 0.5) * (x[2] - 0.5) + 10.0 * x[3] + 5.0 * x[4];
}

double friedman3(std::span<const double> x) {
  if (x.size() != 4) throw DataError("friedman3 expects 4 coordinates");
  if (!(x[0] > 0.0) || !(x[0] <= 100.0)) {
    throw DataError("friedman3 X1 must be in (0, 100]");
  }
  check_range(x[1], 40.0 * kPi, 560.0 * kPi, "friedman3 X2");
  check_range(x[2], 0.0, 1.0, "friedman3 X3");
  check_range(x[3], 1.0, 11.0, "friedman3 X4");
  return 5.0 * std::atan((x[1] * x[2] - 1.0 - 1.0 / (x[1] * x[3])) / x[0]) +
         0.2;
}

double ridgeway(std::span<const double> x) {
  if (x.size() != 2) throw DataError("ridgeway expects 2 coordinates");
  for (const double v : x) check_range(v, 0.0, 1.0, "ridgeway coordinate");
  const double a = 3.0 * x[0] + 5.0 * x[0] * x[0];
  const double t = x[1] + 0.1;
  const double b = 3.0 * t + 5.0 * t * t;
  return std::exp(2.0 * std::sin(a) - 2.0 * std::sin(b));
}

int mean_function_dim(MeanFunction fn) {
  switch (fn) {
    case MeanFunction::kFriedman1: return 10;
    case MeanFunction::kFriedman3: return 4;
    case MeanFunction::kRidgeway: return 2;
  }
  return 0;
}

namespace {

double eval_mean_fn(MeanFunction fn, std::span<const double> x) {
  switch (fn) {
    case MeanFunction::kFriedman1: return friedman1(x);
    case MeanFunction::kFriedman3: return friedman3(x);
    case MeanFunction::kRidgeway: return ridgeway(x);
  }
  throw DataError("unhandled mean function");
}

void draw_features(MeanFunction fn, Rng& rng, double* row) {
  switch (fn) {
    case MeanFunction::kFriedman1:
      for (int j = 0; j < 10; ++j) row[j] = rng.uniform();
      return;
    case MeanFunction::kFriedman3:
      row[0] = 100.0 * (1.0 - rng.uniform());  // (0, 100]
      row[1] = 40.0 * kPi + 520.0 * kPi * rng.uniform();
      row[2] = rng.uniform();
      row[3] = 1.0 + 10.0 * rng.uniform();
      return;
    case MeanFunction::kRidgeway:
      row[0] = rng.uniform();
      row[1] = rng.uniform();
      return;
  }
  throw DataError("unhandled mean function");
}

std::vector<std::string> default_names(int p) {
  std::vector<std::string> names(p);
  for (int j = 0; j < p; ++j) names[j] = "x" + std::to_string(j + 1);
  return names;
}

}  // namespace

SimSpec SimSpec::from_name(const std::string& name) {
  SimSpec spec;
  if (name == "bin_classif_fht") {
    spec.response = ResponseKind::kFhtBinary;
    return spec;
  }
  if (name == "multi_classif_fht") {
    spec.response = ResponseKind::kFhtMulticlass;
    return spec;
  }
  const std::size_t sep = name.rfind('_');
  if (sep == std::string::npos) {
    throw DataError("unknown simulation spec '" + name + "'");
  }
  const std::string head = name.substr(0, sep);
  const std::string tail = name.substr(sep + 1);
  if (head == "poisson") {
    spec.response = ResponseKind::kPoisson;
  } else if (head == "gamma") {
    spec.response = ResponseKind::kGamma;
  } else if (head == "tobit") {
    spec.response = ResponseKind::kTobit;
  } else if (head == "msr") {
    spec.response = ResponseKind::kMeanScale;
  } else {
    throw DataError("unknown simulation spec '" + name + "'");
  }
  if (tail == "f1") {
    spec.mean_fn = MeanFunction::kFriedman1;
  } else if (tail == "f3") {
    spec.mean_fn = MeanFunction::kFriedman3;
  } else if (tail == "r") {
    spec.mean_fn = MeanFunction::kRidgeway;
  } else {
    throw DataError("unknown simulation spec '" + name + "'");
  }
  return spec;
}

std::string SimSpec::name() const {
  switch (response) {
    case ResponseKind::kFhtBinary: return "bin_classif_fht";
    case ResponseKind::kFhtMulticlass: return "multi_classif_fht";
    default: break;
  }
  std::string head;
  switch (response) {
    case ResponseKind::kPoisson: head = "poisson"; break;
    case ResponseKind::kGamma: head = "gamma"; break;
    case ResponseKind::kTobit: head = "tobit"; break;
    case ResponseKind::kMeanScale: head = "msr"; break;
    default: break;
  }
  switch (mean_fn) {
    case MeanFunction::kFriedman1: return head + "_f1";
    case MeanFunction::kFriedman3: return head + "_f3";
    case MeanFunction::kRidgeway: return head + "_r";
  }
  return head;
}

Dataset fht_binary(std::int64_t n, std::uint64_t seed, bool literal_sign) {
  if (n < 1) throw DataError("fht_binary needs n >= 1");
  Dataset data;
  data.n_rows = n;
  data.n_cols = 10;
  data.feature_names = default_names(10);
  data.family_tag = "binary_logistic";
  data.features.resize(static_cast<std::size_t>(n) * 10);
  data.response.resize(n);
  Rng rng(seed);
  for (std::int64_t i = 0; i < n; ++i) {
    double* row = data.features.data() + i * 10;
    for (int j = 0; j < 10; ++j) row[j] = rng.normal();
    double sum = 0.0;
    double signed_sum = 0.0;
    for (int l = 1; l <= 6; ++l) {
      sum += row[l - 1];
      const double sign = literal_sign ? -1.0 : (l % 2 == 0 ? 1.0 : -1.0);
      signed_sum += sign * row[l - 1];
    }
    const double f = 10.0 * sum * (1.0 + signed_sum);
    data.response[i] = rng.uniform() < numeric::sigmoid(f) ? 1.0 : 0.0;
  }
  return data;
}

Dataset fht_multiclass(std::int64_t n, std::uint64_t seed, int num_classes) {
  if (num_classes < 2) throw DataError("fht_multiclass needs K >= 2");
  if (n < num_classes) throw DataError("fht_multiclass needs n >= K");
  std::vector<double> thresholds(num_classes - 1);
  for (int k = 1; k < num_classes; ++k) {
    thresholds[k - 1] = numeric::chi2_10_quantile(
        static_cast<double>(k) / static_cast<double>(num_classes));
  }
  Dataset data;
  data.n_rows = n;
  data.n_cols = 10;
  data.feature_names = default_names(10);
  data.family_tag = "multiclass_softmax";
  data.features.resize(static_cast<std::size_t>(n) * 10);
  data.response.resize(n);
  Rng rng(seed);
  for (std::int64_t i = 0; i < n; ++i) {
    double* row = data.features.data() + i * 10;
    double r2 = 0.0;
    for (int j = 0; j < 10; ++j) {
      row[j] = rng.normal();
      r2 += row[j] * row[j];
    }
    int label = 0;
    while (label < num_classes - 1 && r2 >= thresholds[label]) ++label;
    data.response[i] = static_cast<double>(label);
  }
  return data;
}

SimData simulate(const SimSpec& spec) {
  if (spec.n < 1) throw DataError("simulate needs n >= 1");
  SimData out;
  out.tobit_lower = std::numeric_limits<double>::quiet_NaN();
  out.tobit_upper = std::numeric_limits<double>::quiet_NaN();

  if (spec.response == ResponseKind::kFhtBinary) {
    out.data = fht_binary(spec.n, spec.seed, spec.fht_literal_sign);
    return out;
  }
  if (spec.response == ResponseKind::kFhtMulticlass) {
    out.data = fht_multiclass(spec.n, spec.seed, spec.num_classes);
    return out;
  }

  const int p = mean_function_dim(spec.mean_fn);
  const bool mean_scale = spec.response == ResponseKind::kMeanScale;
  const int cols = mean_scale ? 2 * p : p;
  const std::int64_t n = spec.n;

  Dataset& data = out.data;
  data.n_rows = n;
  data.n_cols = cols;
  data.feature_names = default_names(cols);
  data.features.resize(static_cast<std::size_t>(n) * cols);
  data.response.resize(n);

  Rng rng(spec.seed);
  std::vector<double> mean_f(n);
  std::vector<double> scale_raw(mean_scale ? n : 0);
  for (std::int64_t i = 0; i < n; ++i) {
    double* row = data.features.data() + i * cols;
    draw_features(spec.mean_fn, rng, row);
    mean_f[i] = eval_mean_fn(spec.mean_fn, {row, static_cast<std::size_t>(p)});
    if (mean_scale) {
      draw_features(spec.mean_fn, rng, row + p);
      scale_raw[i] =
          eval_mean_fn(spec.mean_fn, {row + p, static_cast<std::size_t>(p)});
    }
  }

  switch (spec.response) {
    case ResponseKind::kPoisson: {
      data.family_tag = "poisson";
      for (std::int64_t i = 0; i < n; ++i) {
        if (!(mean_f[i] > 0.0)) {
          throw DataError("simulate: nonpositive Poisson mean at row " +
                          std::to_string(i));
        }
        data.response[i] = static_cast<double>(rng.poisson(mean_f[i]));
      }
      break;
    }
    case ResponseKind::kGamma: {
      data.family_tag = "gamma";
      for (std::int64_t i = 0; i < n; ++i) {
        if (!(mean_f[i] > 0.0)) {
          throw DataError("simulate: nonpositive Gamma mean at row " +
                          std::to_string(i));
        }
        data.response[i] = rng.gamma(spec.gamma, spec.gamma / mean_f[i]);
      }
      break;
    }
    case ResponseKind::kTobit: {
      data.family_tag = "tobit";
      if (n < 3) throw DataError("simulate: Tobit needs n >= 3");
      std::vector<double> latent(n);
      for (std::int64_t i = 0; i < n; ++i) {
        latent[i] = mean_f[i] + spec.sigma * rng.normal();
      }
      std::vector<double> sorted = latent;
      std::sort(sorted.begin(), sorted.end());
      // Thresholds at the empirical 1/3 and 2/3 latent quantiles, so about
      // one third of the points censor on each side.
      const auto k_lo = static_cast<std::int64_t>(
          std::llround(static_cast<double>(n) / 3.0));
      const auto k_hi = static_cast<std::int64_t>(
          std::llround(2.0 * static_cast<double>(n) / 3.0));
      const double y_l = sorted[std::max<std::int64_t>(k_lo, 1) - 1];
      const double y_u = sorted[std::min<std::int64_t>(k_hi, n) - 1];
      if (!(y_l < y_u)) {
        throw DataError("simulate: degenerate Tobit thresholds");
      }
      for (std::int64_t i = 0; i < n; ++i) {
        data.response[i] = std::clamp(latent[i], y_l, y_u);
      }
      out.tobit_lower = y_l;
      out.tobit_upper = y_u;
      break;
    }
    case ResponseKind::kMeanScale: {
      data.family_tag = "mean_scale";
      // The raw scale function can be large (exp of it overflows); map it
      // affinely onto [-1, 1] over its empirical range so sigma stays in
      // [e^-1, e^1].
      const auto [lo_it, hi_it] =
          std::minmax_element(scale_raw.begin(), scale_raw.end());
      const double lo = *lo_it;
      const double hi = *hi_it;
      for (std::int64_t i = 0; i < n; ++i) {
        const double log_sd =
            hi > lo ? -1.0 + 2.0 * (scale_raw[i] - lo) / (hi - lo) : 0.0;
        data.response[i] = mean_f[i] + std::exp(log_sd) * rng.normal();
      }
      break;
    }
    default:
      throw DataError("unhandled response kind");
  }
  return out;
}

}  // namespace triboost
