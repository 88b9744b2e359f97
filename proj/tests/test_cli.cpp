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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_util.hpp"
#include "triboost/csv.hpp"
#include "triboost/datagen.hpp"
#include "triboost/model_io.hpp"

using namespace triboost;
using triboost_test::TestRand;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / "triboost_test_XXXXXX";
    std::string tmpl = path_.string();
    REQUIRE(mkdtemp(tmpl.data()) != nullptr);
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  fs::path path_;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string cli_path() {
  const char* env = std::getenv("TRIBOOST_CLI");
  REQUIRE_MESSAGE(env != nullptr,
                  "set TRIBOOST_CLI to the triboost binary path");
  return env;
}

int run_cli(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("one-hot expansion grows the width by the level count") {
  TempDir dir;
  const std::string path = dir.file("cat.csv");
  write_file(path,
             "a,color,y\n"
             "1.5,red,0\n"
             "2.5,blue,1\n"
             "3.5,red,0\n");
  const Dataset d = ingest_csv(path, "y", "binary_logistic", true);
  CHECK(d.n_rows == 3);
  CHECK(d.n_cols == 3);  // a + two dummies, original column dropped
  REQUIRE(d.feature_names.size() == 3);
  CHECK(d.feature_names[0] == "a");
  CHECK(d.feature_names[1] == "color=red");   // first-appearance order
  CHECK(d.feature_names[2] == "color=blue");
  CHECK(d.x(0, 1) == 1.0);
  CHECK(d.x(0, 2) == 0.0);
  CHECK(d.x(1, 1) == 0.0);
  CHECK(d.x(1, 2) == 1.0);
  CHECK(d.x(2, 1) == 1.0);
}

TEST_CASE("missing target column names the available ones") {
  TempDir dir;
  const std::string path = dir.file("t.csv");
  write_file(path, "a,b\n1,2\n");
  try {
    ingest_csv(path, "label", "", false);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("label") != std::string::npos);
    CHECK(msg.find("a, b") != std::string::npos);
  }
}

TEST_CASE("all-numeric CSV passes values through exactly") {
  TempDir dir;
  const std::string path = dir.file("num.csv");
  write_file(path,
             "x1,x2,y\n"
             "0.25,-3.5,1\n"
             "1e-3,7,0\n");
  const Dataset d = ingest_csv(path, "y", "", false);
  CHECK(d.x(0, 0) == 0.25);
  CHECK(d.x(0, 1) == -3.5);
  CHECK(d.x(1, 0) == 1e-3);
  CHECK(d.x(1, 1) == 7.0);
  CHECK(d.response == std::vector<double>{1.0, 0.0});
}

TEST_CASE("rows with missing cells are dropped, not fatal") {
  TempDir dir;
  const std::string path = dir.file("gaps.csv");
  write_file(path,
             "a,y\n"
             "1,0\n"
             ",1\n"
             "3,0\n"
             "4\n");
  const Dataset d = ingest_csv(path, "y", "", false);
  CHECK(d.n_rows == 2);
  CHECK(d.x(0, 0) == 1.0);
  CHECK(d.x(1, 0) == 3.0);
}

TEST_CASE("csv ingestion errors") {
  TempDir dir;
  SUBCASE("empty file") {
    const std::string path = dir.file("empty.csv");
    write_file(path, "");
    CHECK_THROWS_AS(ingest_csv(path, "y", "", false), DataError);
  }
  SUBCASE("non-numeric column without one_hot") {
    const std::string path = dir.file("str.csv");
    write_file(path, "a,y\nfoo,1\n");
    CHECK_THROWS_AS(ingest_csv(path, "y", "", false), DataError);
  }
  SUBCASE("non-numeric target") {
    const std::string path = dir.file("strtarget.csv");
    write_file(path, "a,y\n1,foo\n");
    CHECK_THROWS_AS(ingest_csv(path, "y", "", true), DataError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(ingest_csv(dir.file("nope.csv"), "y", "", false),
                    DataError);
  }
}

TEST_CASE("dataset CSV round-trip preserves doubles exactly") {
  TempDir dir;
  TestRand rand(6);
  Dataset d;
  d.n_rows = 50;
  d.n_cols = 3;
  d.feature_names = {"x1", "x2", "x3"};
  d.features.resize(150);
  d.response.resize(50);
  for (auto& v : d.features) v = rand.uniform(-1e6, 1e6) / 3.0;
  for (auto& v : d.response) v = rand.uniform(-1, 1) * 1e-7;
  const std::string path = dir.file("roundtrip.csv");
  write_dataset_csv(path, d);
  const Dataset back = ingest_csv(path, "y", "", false);
  CHECK(back.features == d.features);
  CHECK(back.response == d.response);
  CHECK(back.feature_names == d.feature_names);
}

TEST_CASE("model save/load round-trip predicts bit-identically") {
  TempDir dir;
  const Dataset d = fht_multiclass(250, 17);
  FitConfig cfg;
  cfg.mode = UpdateMode::kHybrid;
  cfg.num_iterations = 15;
  cfg.learning_rate = 0.3;
  cfg.tree.max_depth = 4;
  cfg.tree.leaf_constraint = LeafConstraint::kRawCount;
  const auto loss = LossSpec::multiclass_softmax(5);
  const BoostedModel model = fit(d, loss, cfg);

  const std::string path = dir.file("model.json");
  save_model(path, model);
  const BoostedModel loaded = load_model(path);
  CHECK(predict(loaded, d.feature_view()) == predict(model, d.feature_view()));
  CHECK(model_to_json(loaded) == model_to_json(model));
  CHECK(loaded.train_loss == model.train_loss);
  CHECK(loaded.f0 == model.f0);
  CHECK(loaded.feature_names == model.feature_names);

  SUBCASE("malformed files are data errors") {
    const std::string bad = dir.file("bad.json");
    write_file(bad, "{\"schema_version\": 1}");
    CHECK_THROWS_AS(load_model(bad), DataError);
    write_file(bad, "not json");
    CHECK_THROWS_AS(load_model(bad), DataError);
  }
}

TEST_CASE("cli end-to-end pipeline") {
  TempDir dir;
  const std::string data = dir.file("d.csv");
  const std::string model = dir.file("m.json");
  const std::string preds = dir.file("p.csv");

  REQUIRE(run_cli("simulate --spec bin_classif_fht --n 400 --seed 9 --out " +
                  data) == 0);
  REQUIRE(run_cli("fit --data " + data +
                  " --loss binary_logistic --mode newton --iterations 30 "
                  "--learning-rate 0.5 --max-depth 3 --min-leaf 1 --out " +
                  model) == 0);
  REQUIRE(run_cli("evaluate --model " + model + " --data " + data) == 0);
  REQUIRE(run_cli("predict --model " + model + " --data " + data + " --out " +
                  preds) == 0);
  const CsvTable table = read_csv(preds);
  CHECK(table.header == std::vector<std::string>{"p"});
  CHECK(table.rows.size() == 400);

  SUBCASE("upto 0 emits the constant F0 response") {
    REQUIRE(run_cli("predict --model " + model + " --data " + data +
                    " --upto 0 --out " + preds) == 0);
    const CsvTable constant = read_csv(preds);
    for (const auto& row : constant.rows) {
      CHECK(row[0] == constant.rows[0][0]);
    }
  }
  SUBCASE("identical invocations give identical bytes") {
    const std::string preds2 = dir.file("p2.csv");
    REQUIRE(run_cli("predict --model " + model + " --data " + data +
                    " --out " + preds2) == 0);
    REQUIRE(run_cli("predict --model " + model + " --data " + data + " --out " +
                    preds) == 0);
    CHECK(read_file(preds) == read_file(preds2));
  }
}

TEST_CASE("cli exit codes") {
  TempDir dir;
  CHECK(run_cli("fit") == 1);                      // missing required options
  CHECK(run_cli("nonsense") == 1);                 // unknown subcommand
  CHECK(run_cli("simulate --spec what --n 10 --out " + dir.file("x.csv")) ==
        2);                                        // unknown spec name
  CHECK(run_cli("fit --data " + dir.file("missing.csv") +
                " --loss poisson --out " + dir.file("m.json")) == 2);
  const std::string data = dir.file("bad.csv");
  write_file(data, "x1,y\n1,0.5\n");               // invalid binary label
  CHECK(run_cli("fit --data " + data + " --loss binary_logistic --out " +
                dir.file("m.json")) == 2);
}

TEST_CASE("cli tune and trace write their tables") {
  TempDir dir;
  const std::string data = dir.file("mc.csv");
  REQUIRE(run_cli("simulate --spec multi_classif_fht --n 360 --seed 5 --out " +
                  data) == 0);
  const std::string table = dir.file("scores.csv");
  REQUIRE(run_cli("tune --data " + data +
                  " --loss multiclass_softmax --mode newton --seed 2 "
                  "--iterations-max 12 --learning-rates 0.5,0.1 "
                  "--min-leaf-values 1 --max-depth 3 --out " +
                  table) == 0);
  const CsvTable scores = read_csv(table);
  CHECK(scores.header ==
        std::vector<std::string>{"learning_rate", "min_leaf", "iteration",
                                 "valid_score"});
  CHECK(scores.rows.size() == 2 * 1 * 12);

  SUBCASE("trace emits one file per mode per split") {
    const std::string prefix = dir.file("trace");
    REQUIRE(run_cli("trace --spec multi_classif_fht --n 120 --splits 2 "
                    "--seed 4 --fixed-lr 0.3 --iterations 8 --max-depth 3 "
                    "--modes newton,gradient --out-prefix " +
                    prefix) == 0);
    for (const char* name :
         {"_newton_split0.csv", "_gradient_split0.csv", "_newton_split1.csv",
          "_gradient_split1.csv"}) {
      const CsvTable t = read_csv(prefix + name);
      CHECK(t.header == std::vector<std::string>{"iteration", "train_loss",
                                                 "test_score"});
      CHECK(t.rows.size() == 8);
    }
  }
}

TEST_CASE("cli benchmark determinism") {
  TempDir dir;
  const std::string out1 = dir.file("r1.csv");
  const std::string out2 = dir.file("r2.csv");
  const std::string args =
      "benchmark --spec multi_classif_fht --n 120 --splits 2 --seed 11 "
      "--modes newton,gradient --iterations-max 10 --learning-rates 0.5 "
      "--min-leaf-values 1 --max-depth 3 --out ";
  REQUIRE(run_cli(args + out1) == 0);
  REQUIRE(run_cli(args + out2) == 0);
  const std::string body = read_file(out1);
  CHECK(body == read_file(out2));
  const CsvTable rows = read_csv(out1);
  CHECK(rows.header ==
        std::vector<std::string>{"split_id", "mode", "learning_rate",
                                 "min_leaf", "constraint", "chosen_M",
                                 "valid_score", "test_score"});
  CHECK(rows.rows.size() == 4);
}
