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
#include "triboost/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace triboost {

namespace {
using nlohmann::json;

json tree_to_json(const RegressionTree& tree) {
  return json{{"feature", tree.feature},
              {"threshold", tree.threshold},
              {"left", tree.left},
              {"right", tree.right},
              {"value", tree.value}};
}

RegressionTree tree_from_json(const json& j, std::int64_t num_features) {
  RegressionTree tree;
  tree.feature = j.at("feature").get<std::vector<int>>();
  tree.threshold = j.at("threshold").get<std::vector<double>>();
  tree.left = j.at("left").get<std::vector<int>>();
  tree.right = j.at("right").get<std::vector<int>>();
  tree.value = j.at("value").get<std::vector<double>>();
  tree.num_features = num_features;
  const std::size_t n = tree.feature.size();
  if (tree.threshold.size() != n || tree.left.size() != n ||
      tree.right.size() != n || tree.value.size() != n || n == 0) {
    throw DataError("model file: malformed tree node arrays");
  }
  return tree;
}

json loss_to_json(const LossSpec& loss) {
  return json{{"family", to_string(loss.family)},
              {"num_outputs", loss.num_outputs},
              {"gamma", loss.gamma},
              {"sigma", loss.sigma},
              {"y_lower", loss.y_lower},
              {"y_upper", loss.y_upper}};
}

LossSpec loss_from_json(const json& j) {
  LossSpec loss;
  loss.family = loss_family_from_string(j.at("family").get<std::string>());
  loss.num_outputs = j.at("num_outputs").get<int>();
  loss.gamma = j.at("gamma").get<double>();
  loss.sigma = j.at("sigma").get<double>();
  loss.y_lower = j.at("y_lower").get<double>();
  loss.y_upper = j.at("y_upper").get<double>();
  loss.validate();
  return loss;
}

json trees_to_json(const BoostedModel& model) {
  const int d = model.loss.num_outputs;
  json trees = json::array();
  for (int m = 0; m < model.iterations(); ++m) {
    json per_dim = json::array();
    for (int k = 0; k < d; ++k) {
      per_dim.push_back(tree_to_json(model.tree_at(m, k)));
    }
    trees.push_back(std::move(per_dim));
  }
  return trees;
}

}  // namespace

std::string model_to_json(const BoostedModel& model) {
  json j;
  j["schema_version"] = kModelSchemaVersion;
  j["loss"] = loss_to_json(model.loss);
  j["fit_config"] = json{
      {"mode", to_string(model.config.mode)},
      {"num_iterations", model.config.num_iterations},
      {"learning_rate", model.config.learning_rate},
      {"max_depth", model.config.tree.max_depth},
      {"leaf_constraint", to_string(model.config.tree.leaf_constraint)},
      {"min_per_leaf", model.config.tree.min_per_leaf},
      {"hessian_floor", model.config.hessian_floor}};
  j["num_features"] = model.num_features;
  j["feature_names"] = model.feature_names;
  j["f0"] = model.f0;
  j["trees"] = trees_to_json(model);
  j["train_loss"] = model.train_loss;
  return j.dump();
}

std::string model_core_json(const BoostedModel& model) {
  json j;
  j["loss"] = loss_to_json(model.loss);
  j["f0"] = model.f0;
  j["trees"] = trees_to_json(model);
  j["train_loss"] = model.train_loss;
  return j.dump();
}

BoostedModel model_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    const int version = j.at("schema_version").get<int>();
    if (version != kModelSchemaVersion) {
      throw DataError("model file: unsupported schema version " +
                      std::to_string(version));
    }
    BoostedModel model;
    model.loss = loss_from_json(j.at("loss"));
    const json& cfg = j.at("fit_config");
    model.config.mode =
        update_mode_from_string(cfg.at("mode").get<std::string>());
    model.config.num_iterations = cfg.at("num_iterations").get<int>();
    model.config.learning_rate = cfg.at("learning_rate").get<double>();
    model.config.tree.max_depth = cfg.at("max_depth").get<int>();
    model.config.tree.leaf_constraint =
        leaf_constraint_from_string(cfg.at("leaf_constraint").get<std::string>());
    model.config.tree.min_per_leaf = cfg.at("min_per_leaf").get<double>();
    model.config.hessian_floor = cfg.at("hessian_floor").get<double>();
    model.num_features = j.at("num_features").get<std::int64_t>();
    model.feature_names =
        j.at("feature_names").get<std::vector<std::string>>();
    model.f0 = j.at("f0").get<std::vector<double>>();
    model.train_loss = j.at("train_loss").get<std::vector<double>>();

    const json& trees = j.at("trees");
    const int d = model.loss.num_outputs;
    if (static_cast<int>(trees.size()) != model.config.num_iterations) {
      throw DataError("model file: tree count does not match iterations");
    }
    model.trees.reserve(trees.size() * d);
    for (const json& per_dim : trees) {
      if (static_cast<int>(per_dim.size()) != d) {
        throw DataError("model file: per-iteration tree count mismatch");
      }
      for (const json& t : per_dim) {
        model.trees.push_back(tree_from_json(t, model.num_features));
      }
    }
    return model;
  } catch (const json::exception& e) {
    throw DataError(std::string("model file: ") + e.what());
  }
}

void save_model(const std::string& path, const BoostedModel& model) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << model_to_json(model) << '\n';
  if (!out) throw DataError("failed writing '" + path + "'");
}

BoostedModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace triboost
