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
#ifndef TRIBOOST_DATAGEN_HPP_
#define TRIBOOST_DATAGEN_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <string>

#include "triboost/dataset.hpp"

namespace triboost {

// Deterministic portable sampler on top of std::mt19937_64. The standard
// pins the engine's output sequence; the distribution transforms here are
// our own (std::*_distribution is implementation-defined), so datasets are
// byte-identical across platforms and library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform();                         // [0, 1), 53-bit
  double normal();                          // Box-Muller, pair-cached
  std::int64_t poisson(double mean);        // Knuth with halving for large means
  double gamma(double shape, double rate);  // Marsaglia-Tsang
  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t bounded(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  bool has_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

enum class MeanFunction { kFriedman1, kFriedman3, kRidgeway };
enum class ResponseKind {
  kPoisson,
  kGamma,
  kTobit,
  kMeanScale,
  kFhtBinary,
  kFhtMulticlass,
};

// One simulated-dataset recipe. FHT responses ignore mean_fn (their score
// function is built in). Parsed from names like "poisson_f1", "msr_r",
// "bin_classif_fht", "multi_classif_fht".
struct SimSpec {
  MeanFunction mean_fn = MeanFunction::kFriedman1;
  ResponseKind response = ResponseKind::kPoisson;
  std::int64_t n = 1000;
  std::uint64_t seed = 42;
  double gamma = 10.0;  // Gamma shape
  double sigma = 1.0;   // Tobit latent std
  int num_classes = 5;  // FHT multiclass K
  // The source prints "(-1^l)" in the binary score function, which reads
  // literally as -1 for every l but almost certainly means alternating
  // (-1)^l. Default is the alternating reading; set true for the literal one.
  bool fht_literal_sign = false;

  static SimSpec from_name(const std::string& name);
  std::string name() const;
};

struct SimData {
  Dataset data;
  // Tobit censoring thresholds (empirical 1/3 and 2/3 latent quantiles);
  // NaN for other responses.
  double tobit_lower;
  double tobit_upper;
};

// Mean functions. All validate their input ranges (DataError outside).
double friedman1(std::span<const double> x);  // x in [0,1]^10
double friedman3(std::span<const double> x);  // ranges per the generator
double ridgeway(std::span<const double> x);   // x in [0,1]^2

int mean_function_dim(MeanFunction fn);

// Full simulation: draw features, evaluate the mean function, sample the
// response. Byte-identical output for identical specs.
SimData simulate(const SimSpec& spec);

Dataset fht_binary(std::int64_t n, std::uint64_t seed,
                   bool literal_sign = false);
Dataset fht_multiclass(std::int64_t n, std::uint64_t seed, int num_classes = 5);

}  // namespace triboost

#endif  // TRIBOOST_DATAGEN_HPP_
