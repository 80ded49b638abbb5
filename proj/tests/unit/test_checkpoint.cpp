// tests/unit/test_checkpoint.cpp

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

#include "mdnn/checkpoint.hpp"
#include "mdnn/error.hpp"
#include "mdnn/io.hpp"
#include "test_util.hpp"

using namespace mdnn;
using test::Gaussian;
namespace fs = std::filesystem;

namespace {

Checkpoint NetworkCheckpoint(TrainMode mode) {
  TrainConfig c;
  c.mode = mode;
  c.hidden_layers = {7, 5};
  c.repr_dim = 3;
  c.lambda = 0.37;
  c.alpha = 1.0 / 3.0;
  c.seed = 12;
  Checkpoint ckpt;
  ckpt.kind = CheckpointKind::kNetwork;
  ckpt.network = InitModel(c, 6, 4);
  // Non-zero biases so they take part in the round trip.
  Rng rng(81);
  for (Layer &l : ckpt.network->view1.layers) l.b = Gaussian(static_cast<int>(l.b.size()), 1, &rng);
  ckpt.input_dim1 = 6;
  ckpt.input_dim2 = 4;
  ckpt.dataset = "synth";
  ckpt.labels = 200;
  ckpt.label_seed = 3;
  return ckpt;
}

void CheckSameNetwork(const Network &a, const Network &b) {
  REQUIRE(a.layers.size() == b.layers.size());
  for (std::size_t l = 0; l < a.layers.size(); ++l) {
    CHECK(a.layers[l].W == b.layers[l].W);
    CHECK(a.layers[l].b == b.layers[l].b);
    CHECK(a.layers[l].activation == b.layers[l].activation);
  }
}

}  // namespace

TEST_CASE("network checkpoints round trip bit exactly") {
  const fs::path dir = test::TempDir("ckpt_network");
  for (TrainMode mode : {TrainMode::kMdnn, TrainMode::kDcca, TrainMode::kDlda}) {
    const Checkpoint ckpt = NetworkCheckpoint(mode);
    SaveCheckpoint(ckpt, dir / "model.json");
    const Checkpoint back = LoadCheckpoint(dir / "model.json");
    CHECK(back.kind == CheckpointKind::kNetwork);
    CHECK(back.ModelName() == TrainModeName(mode));
    CHECK(back.repr_dim() == 3);
    CHECK(back.dataset == "synth");
    CHECK(back.labels == 200);
    CHECK(back.label_seed == 3);
    CHECK(back.input_dim2 == 4);
    CHECK(back.network->config.lambda == ckpt.network->config.lambda);
    CHECK(back.network->config.alpha == ckpt.network->config.alpha);
    CHECK(back.network->config.hidden_layers == ckpt.network->config.hidden_layers);
    CheckSameNetwork(back.network->view1, ckpt.network->view1);
    CHECK(back.network->view2.has_value() == ckpt.network->view2.has_value());
    if (ckpt.network->view2) CheckSameNetwork(*back.network->view2, *ckpt.network->view2);
    CHECK(!fs::exists(dir / "model.json.tmp"));
  }
}

TEST_CASE("linear and identity checkpoints round trip") {
  const fs::path dir = test::TempDir("ckpt_linear");
  Rng rng(82);
  LinearProjection p;
  p.method = ProjectionMethod::kRffKcca;
  p.w1 = Gaussian(5, 2, &rng);
  p.w2 = Gaussian(5, 2, &rng);
  p.mean1 = Gaussian(5, 1, &rng);
  p.mean2 = Gaussian(5, 1, &rng);
  p.values = Gaussian(2, 1, &rng);
  p.map1 = MakeRandomFeatureMap(3, 5, 0.7, &rng);
  p.map2 = MakeRandomFeatureMap(4, 5, 1.3, &rng);
  Checkpoint ckpt;
  ckpt.kind = CheckpointKind::kLinear;
  ckpt.linear = p;
  ckpt.input_dim1 = 3;
  ckpt.input_dim2 = 4;
  SaveCheckpoint(ckpt, dir / "kcca.json");
  const Checkpoint back = LoadCheckpoint(dir / "kcca.json");
  CHECK(back.ModelName() == "kcca");
  CHECK(back.linear->w1 == p.w1);
  CHECK(back.linear->mean2 == p.mean2);
  CHECK(back.linear->map1->omega == p.map1->omega);
  CHECK(back.linear->map2->phase == p.map2->phase);
  CHECK(back.linear->map2->bandwidth == p.map2->bandwidth);
  const Matrix x = Gaussian(3, 4, &rng);
  CHECK(MakeProjector(back, 1)(x) == MakeProjector(ckpt, 1)(x));

  Checkpoint identity;
  identity.kind = CheckpointKind::kIdentity;
  identity.input_dim1 = 3;
  SaveCheckpoint(identity, dir / "identity.json");
  const Checkpoint id = LoadCheckpoint(dir / "identity.json");
  CHECK(id.ModelName() == "identity");
  CHECK(id.repr_dim() == 3);
  CHECK(MakeProjector(id)(x) == x);
}

TEST_CASE("saving twice gives identical files") {
  const fs::path dir = test::TempDir("ckpt_stable");
  const Checkpoint ckpt = NetworkCheckpoint(TrainMode::kMdnn);
  SaveCheckpoint(ckpt, dir / "a.json");
  SaveCheckpoint(LoadCheckpoint(dir / "a.json"), dir / "b.json");
  CHECK(ReadFile(dir / "a.json") == ReadFile(dir / "b.json"));
}

TEST_CASE("network projector matches the trainer projection") {
  const Checkpoint ckpt = NetworkCheckpoint(TrainMode::kMdnn);
  Rng rng(83);
  const Matrix x2 = Gaussian(4, 5, &rng);
  CHECK(MakeProjector(ckpt, 2)(x2) == Project(*ckpt.network, x2, 2));
}

TEST_CASE("malformed checkpoints are rejected") {
  const fs::path dir = test::TempDir("ckpt_bad");
  std::ofstream(dir / "garbage.json") << "{not json";
  CHECK_THROWS_AS(LoadCheckpoint(dir / "garbage.json"), Error);
  std::ofstream(dir / "other.json") << R"({"format": "something-else", "version": 1})";
  CHECK_THROWS_AS(LoadCheckpoint(dir / "other.json"), Error);
  nlohmann::json j = CheckpointToJson(NetworkCheckpoint(TrainMode::kMdnn));
  j["version"] = 2;
  CHECK_THROWS_AS(CheckpointFromJson(j), Error);
  CHECK_THROWS_AS(LoadCheckpoint(dir / "missing.json"), Error);
}

TEST_CASE("config files override defaults and reject unknown keys") {
  const fs::path dir = test::TempDir("ckpt_config");
  std::ofstream(dir / "c.json") << R"({"lambda": 100, "hidden_layers": [32, 16], "mode": "dcca"})";
  const TrainConfig c = LoadConfigFile(dir / "c.json");
  CHECK(c.lambda == 100.0);
  CHECK(c.hidden_layers == std::vector<int>{32, 16});
  CHECK(c.mode == TrainMode::kDcca);
  CHECK(c.alpha == TrainConfig{}.alpha);
  CHECK(ConfigFromJson(ConfigToJson(c)).hidden_layers == c.hidden_layers);

  try {
    ConfigFromJson(nlohmann::json{{"lamda", 1.0}});
    FAIL("expected config error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kConfig);
  }
}
