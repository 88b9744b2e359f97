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
#ifndef TRIBOOST_MODEL_IO_HPP_
#define TRIBOOST_MODEL_IO_HPP_

#include <string>

#include "triboost/boosting.hpp"

namespace triboost {

inline constexpr int kModelSchemaVersion = 1;

// Versioned JSON with flat node arrays per tree. Doubles serialize in
// shortest round-trip form, so load(save(m)) predicts bit-identically.
std::string model_to_json(const BoostedModel& model);
BoostedModel model_from_json(const std::string& text);

// The learned content only (loss, f0, trees, trace) without the fit-config
// echo; two fits that learned the same model serialize identically here.
std::string model_core_json(const BoostedModel& model);

void save_model(const std::string& path, const BoostedModel& model);
BoostedModel load_model(const std::string& path);

}  // namespace triboost

#endif  // TRIBOOST_MODEL_IO_HPP_
