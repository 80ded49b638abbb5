// tests/unit/test_cli.cpp

// Copyright 2026  The mdnn Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "mdnn/checkpoint.hpp"
#include "mdnn/cli.hpp"
#include "mdnn/dataset.hpp"
#include "mdnn/runner.hpp"
#include "test_util.hpp"

using namespace mdnn;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> Lines(const fs::path &path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Small synthetic container shared by the tests of one case.
fs::path MakeSynth(const fs::path &dir, const std::string &labels = "60") {
  const fs::path path = dir / "synth.mdnn";
  const Outcome o = Run({"generate", "synth", "--out", path.string(), "--d1", "6", "--d2", "5", "--n-train",
                         "120", "--n-test", "60", "--shared-dim", "2", "--labels", labels, "--seed", "2"});
  REQUIRE(o.code == kExitOk);
  return path;
}

}  // namespace

TEST_CASE("usage errors exit with the error code") {
  CHECK(Run({}).code == kExitError);
  CHECK(Run({"frobnicate"}).code == kExitError);
  const Outcome missing = Run({"train", "--data", "/nonexistent/data.mdnn", "--out", "/tmp/x.json"});
  CHECK(missing.code == kExitError);
  CHECK(missing.err.find("error") != std::string::npos);
}

TEST_CASE("generate writes a container with the requested labels") {
  const fs::path dir = test::TempDir("cli_generate");
  const fs::path path = MakeSynth(dir, "40");
  const DatasetManifest m = ReadManifest(path);
  CHECK(m.n == 180);
  const PairedDataset d = LoadDataset(path);
  CHECK(d.LabeledIndices(Split::kTrain).size() == 40);

  const fs::path all = dir / "all.mdnn";
  REQUIRE(Run({"generate", "synth", "--out", all.string(), "--n-train", "50", "--n-test", "10"}).code == kExitOk);
  CHECK(LoadDataset(all).LabeledIndices(Split::kTrain).size() == 50);
}

TEST_CASE("gradcheck is deterministic and reports corrupted gradients") {
  const Outcome a = Run({"gradcheck", "--seed", "7"});
  const Outcome b = Run({"gradcheck", "--seed", "7"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.find("correlation") != std::string::npos);
  const Outcome bad = Run({"gradcheck", "--seed", "7", "--corrupt-gradient", "0.01"});
  CHECK(bad.code == kExitCheckFailed);
  CHECK(bad.out.find("failing instance seed") != std::string::npos);
}

TEST_CASE("train, eval and rerun append identical accuracies") {
  const fs::path dir = test::TempDir("cli_train");
  const fs::path data = MakeSynth(dir);
  const fs::path ckpt = dir / "model.json";
  const fs::path results = dir / "results.csv";
  const Outcome train = Run({"train", "--data", data.string(), "--out", ckpt.string(), "--hidden", "8",
                             "--repr-dim", "2", "--epochs", "3", "--batch", "30", "--quiet"});
  REQUIRE(train.code == kExitOk);
  CHECK(fs::exists(ckpt));
  CHECK(fs::exists(dir / "model.json.record.json"));
  CHECK(LoadCheckpoint(ckpt).repr_dim() == 2);

  const std::vector<std::string> eval{"eval", "--checkpoint", ckpt.string(), "--data", data.string(),
                                      "--results", results.string(), "--svm-c", "1,0.1"};
  const Outcome first = Run(eval);
  const Outcome second = Run(eval);
  REQUIRE(first.code == kExitOk);
  CHECK(first.out.find("accuracy") != std::string::npos);
  const auto lines = Lines(results);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == kCsvHeader);
  auto accuracy = [](const std::string &row) {
    std::vector<std::string> fields;
    std::stringstream ss(row);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    return fields.at(11);
  };
  CHECK(accuracy(lines[1]) == accuracy(lines[2]));
  CHECK(lines[1].rfind("synth,mdnn,60,", 0) == 0);
}

TEST_CASE("config file and flags combine") {
  const fs::path dir = test::TempDir("cli_config");
  const fs::path data = MakeSynth(dir);
  std::ofstream(dir / "c.json") << R"({"hidden_layers": [5], "repr_dim": 2, "epochs": 1, "lambda": 3})";
  const fs::path ckpt = dir / "m.json";
  REQUIRE(Run({"train", "--data", data.string(), "--out", ckpt.string(), "--config",
               (dir / "c.json").string(), "--lambda", "7", "--batch", "30", "--quiet"})
              .code == kExitOk);
  const Checkpoint c = LoadCheckpoint(ckpt);
  CHECK(c.network->config.lambda == 7.0);
  CHECK(c.network->config.hidden_layers == std::vector<int>{5});
}

TEST_CASE("baselines fit and evaluate through the command line") {
  const fs::path dir = test::TempDir("cli_baselines");
  const fs::path data = MakeSynth(dir);
  const fs::path results = dir / "results.csv";
  for (const std::string method : {"cca", "lda", "kcca", "identity"}) {
    const fs::path ckpt = dir / (method + ".json");
    std::vector<std::string> fit{"fit-baseline", method, "--data", data.string(), "--out", ckpt.string()};
    if (method == "kcca") fit.insert(fit.end(), {"--n-features", "50"});
    REQUIRE(Run(fit).code == kExitOk);
    REQUIRE(Run({"eval", "--checkpoint", ckpt.string(), "--data", data.string(), "--results", results.string(),
                 "--svm-c", "1"})
                .code == kExitOk);
  }
  const auto lines = Lines(results);
  REQUIRE(lines.size() == 5);
  CHECK(lines[2].find(",lda,") != std::string::npos);
  CHECK(Run({"fit-baseline", "pca", "--data", data.string()}).code == kExitError);
}

TEST_CASE("eval rejects a checkpoint for other input dimensions") {
  const fs::path dir = test::TempDir("cli_dims");
  const fs::path data = MakeSynth(dir);
  const fs::path other = dir / "other.mdnn";
  REQUIRE(Run({"generate", "synth", "--out", other.string(), "--d1", "7", "--n-train", "30", "--n-test", "10"})
              .code == kExitOk);
  const fs::path ckpt = dir / "cca.json";
  REQUIRE(Run({"fit-baseline", "cca", "--data", data.string(), "--out", ckpt.string()}).code == kExitOk);
  CHECK(Run({"eval", "--checkpoint", ckpt.string(), "--data", other.string(), "--results",
             (dir / "r.csv").string()})
            .code == kExitError);
}

TEST_CASE("grid writes one row per point and selects a configuration") {
  const fs::path dir = test::TempDir("cli_grid");
  const fs::path data = MakeSynth(dir);
  const fs::path results = dir / "grid.csv";
  const Outcome o = Run({"grid", "--data", data.string(), "--results", results.string(), "--hidden", "6",
                         "--epochs", "1", "--batch", "30", "--lambdas", "1,10", "--alphas", "0.1,0.001",
                         "--repr-dim", "2", "--svm-c", "1", "--folds", "3", "--parallel", "2", "--select"});
  REQUIRE(o.code == kExitOk);
  CHECK(Lines(results).size() == 5);
  CHECK(o.out.find("best: lambda") != std::string::npos);
}
