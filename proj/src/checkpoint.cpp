// src/checkpoint.cpp

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

#include "mdnn/checkpoint.hpp"

#include <set>

#include "mdnn/error.hpp"
#include "mdnn/io.hpp"

namespace mdnn {

using nlohmann::json;

namespace {

// Matrices are stored column-major; doubles print with round-trip precision.
json MatrixToJson(const Matrix &m) {
  return json{{"rows", m.rows()}, {"cols", m.cols()},
              {"data", std::vector<double>(m.data(), m.data() + m.size())}};
}

Matrix MatrixFromJson(const json &j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto data = j.at("data").get<std::vector<double>>();
  if (rows < 0 || cols < 0 || static_cast<std::size_t>(rows * cols) != data.size())
    Fail(ErrorKind::kFormat, "checkpoint matrix has inconsistent shape");
  Matrix m(rows, cols);
  std::copy(data.begin(), data.end(), m.data());
  return m;
}

json VectorToJson(const Vector &v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Vector VectorFromJson(const json &j) {
  const auto data = j.get<std::vector<double>>();
  return Eigen::Map<const Vector>(data.data(), static_cast<Eigen::Index>(data.size()));
}

json NetworkToJson(const Network &net) {
  json layers = json::array();
  for (const auto &layer : net.layers) {
    layers.push_back({{"activation", layer.activation == Activation::kRelu ? "relu" : "identity"},
                      {"W", MatrixToJson(layer.W)},
                      {"b", VectorToJson(layer.b)}});
  }
  return json{{"layers", layers}};
}

Network NetworkFromJson(const json &j) {
  Network net;
  for (const auto &jl : j.at("layers")) {
    Layer layer;
    const auto act = jl.at("activation").get<std::string>();
    if (act == "relu") layer.activation = Activation::kRelu;
    else if (act == "identity") layer.activation = Activation::kIdentity;
    else Fail(ErrorKind::kFormat, "unknown activation '" + act + "' in checkpoint");
    layer.W = MatrixFromJson(jl.at("W"));
    layer.b = VectorFromJson(jl.at("b"));
    if (layer.b.size() != layer.W.rows() ||
        (!net.layers.empty() && net.layers.back().W.rows() != layer.W.cols()))
      Fail(ErrorKind::kFormat, "checkpoint network layers do not chain");
    net.layers.push_back(std::move(layer));
  }
  if (net.layers.empty()) Fail(ErrorKind::kFormat, "checkpoint network has no layers");
  return net;
}

json FeatureMapToJson(const RandomFeatureMap &map) {
  return json{{"omega", MatrixToJson(map.omega)}, {"phase", VectorToJson(map.phase)},
              {"bandwidth", map.bandwidth}};
}

RandomFeatureMap FeatureMapFromJson(const json &j) {
  RandomFeatureMap map;
  map.omega = MatrixFromJson(j.at("omega"));
  map.phase = VectorFromJson(j.at("phase"));
  map.bandwidth = j.at("bandwidth").get<double>();
  return map;
}

json LinearToJson(const LinearProjection &p) {
  json j{{"method", ProjectionMethodName(p.method)},
         {"w1", MatrixToJson(p.w1)},
         {"mean1", VectorToJson(p.mean1)},
         {"w2", MatrixToJson(p.w2)},
         {"mean2", VectorToJson(p.mean2)},
         {"values", VectorToJson(p.values)}};
  if (p.map1) j["map1"] = FeatureMapToJson(*p.map1);
  if (p.map2) j["map2"] = FeatureMapToJson(*p.map2);
  return j;
}

LinearProjection LinearFromJson(const json &j) {
  LinearProjection p;
  p.method = ParseProjectionMethod(j.at("method").get<std::string>());
  p.w1 = MatrixFromJson(j.at("w1"));
  p.mean1 = VectorFromJson(j.at("mean1"));
  p.w2 = MatrixFromJson(j.at("w2"));
  p.mean2 = VectorFromJson(j.at("mean2"));
  p.values = VectorFromJson(j.at("values"));
  if (j.contains("map1")) p.map1 = FeatureMapFromJson(j.at("map1"));
  if (j.contains("map2")) p.map2 = FeatureMapFromJson(j.at("map2"));
  return p;
}

const char *KindName(CheckpointKind kind) {
  switch (kind) {
    case CheckpointKind::kNetwork: return "network";
    case CheckpointKind::kLinear: return "linear";
    case CheckpointKind::kIdentity: return "identity";
  }
  return "?";
}

CheckpointKind ParseKind(const std::string &name) {
  if (name == "network") return CheckpointKind::kNetwork;
  if (name == "linear") return CheckpointKind::kLinear;
  if (name == "identity") return CheckpointKind::kIdentity;
  Fail(ErrorKind::kFormat, "unknown checkpoint kind '" + name + "'");
}

}  // namespace

std::string Checkpoint::ModelName() const {
  switch (kind) {
    case CheckpointKind::kNetwork:
      return network ? TrainModeName(network->config.mode) : "network";
    case CheckpointKind::kLinear:
      return linear ? ProjectionMethodName(linear->method) : "linear";
    case CheckpointKind::kIdentity:
      return "identity";
  }
  return "?";
}

int Checkpoint::repr_dim() const {
  if (network) return network->view1.output_dim();
  if (linear) return linear->k();
  return input_dim1;
}

json ConfigToJson(const TrainConfig &c) {
  return json{{"mode", TrainModeName(c.mode)},
              {"lambda", c.lambda},
              {"alpha", c.alpha},
              {"r", c.r},
              {"epochs", c.epochs},
              {"batch_size", c.batch_size},
              {"learning_rate", c.learning_rate},
              {"seed", c.seed},
              {"hidden_layers", c.hidden_layers},
              {"repr_dim", c.repr_dim}};
}

TrainConfig ConfigFromJson(const json &j, TrainConfig c) {
  if (!j.is_object()) Fail(ErrorKind::kConfig, "config must be a JSON object");
  static const std::set<std::string> known{"mode",          "lambda", "alpha",
                                           "r",             "epochs", "batch_size",
                                           "learning_rate", "seed",   "hidden_layers",
                                           "repr_dim"};
  for (const auto &[key, value] : j.items())
    if (!known.count(key)) Fail(ErrorKind::kConfig, "unknown config key '" + key + "'");
  try {
    if (j.contains("mode")) c.mode = ParseTrainMode(j["mode"].get<std::string>());
    if (j.contains("lambda")) c.lambda = j["lambda"].get<double>();
    if (j.contains("alpha")) c.alpha = j["alpha"].get<double>();
    if (j.contains("r")) c.r = j["r"].get<double>();
    if (j.contains("epochs")) c.epochs = j["epochs"].get<int>();
    if (j.contains("batch_size")) c.batch_size = j["batch_size"].get<int>();
    if (j.contains("learning_rate")) c.learning_rate = j["learning_rate"].get<double>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("hidden_layers")) c.hidden_layers = j["hidden_layers"].get<std::vector<int>>();
    if (j.contains("repr_dim")) c.repr_dim = j["repr_dim"].get<int>();
  } catch (const json::exception &e) {
    Fail(ErrorKind::kConfig, std::string("bad config value: ") + e.what());
  }
  return c;
}

TrainConfig LoadConfigFile(const std::filesystem::path &path, TrainConfig base) {
  const auto bytes = ReadFile(path);
  json j;
  try {
    j = json::parse(bytes.begin(), bytes.end());
  } catch (const json::exception &e) {
    Fail(ErrorKind::kConfig, path.string() + ": " + e.what());
  }
  return ConfigFromJson(j, std::move(base));
}

json CheckpointToJson(const Checkpoint &ckpt) {
  json j{{"format", "mdnn-checkpoint"},
         {"version", kCheckpointVersion},
         {"kind", KindName(ckpt.kind)},
         {"model", ckpt.ModelName()},
         {"input_dim1", ckpt.input_dim1},
         {"input_dim2", ckpt.input_dim2},
         {"dataset", ckpt.dataset},
         {"labels", ckpt.labels},
         {"label_seed", ckpt.label_seed}};
  if (ckpt.network) {
    j["config"] = ConfigToJson(ckpt.network->config);
    j["view1"] = NetworkToJson(ckpt.network->view1);
    if (ckpt.network->view2) j["view2"] = NetworkToJson(*ckpt.network->view2);
  }
  if (ckpt.linear) j["linear"] = LinearToJson(*ckpt.linear);
  return j;
}

Checkpoint CheckpointFromJson(const json &j) {
  try {
    if (j.at("format").get<std::string>() != "mdnn-checkpoint")
      Fail(ErrorKind::kFormat, "not an mdnn checkpoint");
    const int version = j.at("version").get<int>();
    if (version != kCheckpointVersion)
      Fail(ErrorKind::kFormat, "unsupported checkpoint version " + std::to_string(version));
    Checkpoint ckpt;
    ckpt.kind = ParseKind(j.at("kind").get<std::string>());
    ckpt.input_dim1 = j.at("input_dim1").get<int>();
    ckpt.input_dim2 = j.at("input_dim2").get<int>();
    ckpt.dataset = j.at("dataset").get<std::string>();
    ckpt.labels = j.at("labels").get<int>();
    ckpt.label_seed = j.at("label_seed").get<std::uint64_t>();
    if (ckpt.kind == CheckpointKind::kNetwork) {
      Model model;
      model.config = ConfigFromJson(j.at("config"));
      model.view1 = NetworkFromJson(j.at("view1"));
      if (j.contains("view2")) model.view2 = NetworkFromJson(j.at("view2"));
      ckpt.network = std::move(model);
    } else if (ckpt.kind == CheckpointKind::kLinear) {
      ckpt.linear = LinearFromJson(j.at("linear"));
    }
    return ckpt;
  } catch (const json::exception &e) {
    Fail(ErrorKind::kFormat, std::string("malformed checkpoint: ") + e.what());
  }
}

void SaveCheckpoint(const Checkpoint &ckpt, const std::filesystem::path &path) {
  WriteFileAtomic(path, CheckpointToJson(ckpt).dump());
}

Checkpoint LoadCheckpoint(const std::filesystem::path &path) {
  const auto bytes = ReadFile(path);
  json j;
  try {
    j = json::parse(bytes.begin(), bytes.end());
  } catch (const json::exception &e) {
    Fail(ErrorKind::kFormat, path.string() + ": " + e.what());
  }
  return CheckpointFromJson(j);
}

Projector MakeProjector(const Checkpoint &ckpt, int view) {
  switch (ckpt.kind) {
    case CheckpointKind::kNetwork: {
      if (!ckpt.network) Fail(ErrorKind::kFormat, "network checkpoint without weights");
      auto model = std::make_shared<const Model>(*ckpt.network);
      return [model, view](const Matrix &x) { return Project(*model, x, view); };
    }
    case CheckpointKind::kLinear: {
      if (!ckpt.linear) Fail(ErrorKind::kFormat, "linear checkpoint without projection");
      auto proj = std::make_shared<const LinearProjection>(*ckpt.linear);
      return [proj, view](const Matrix &x) { return ProjectLinear(*proj, x, view); };
    }
    case CheckpointKind::kIdentity: {
      const int dim = view == 1 ? ckpt.input_dim1 : ckpt.input_dim2;
      return [dim](const Matrix &x) {
        if (x.rows() != dim) Fail(ErrorKind::kShape, "identity representation dimension mismatch");
        return x;
      };
    }
  }
  Fail(ErrorKind::kContract, "unhandled checkpoint kind");
}

}  // namespace mdnn
