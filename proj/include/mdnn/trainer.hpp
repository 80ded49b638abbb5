// include/mdnn/trainer.hpp

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

#ifndef MDNN_TRAINER_HPP_
#define MDNN_TRAINER_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mdnn/dataset.hpp"
#include "mdnn/discriminative.hpp"
#include "mdnn/network.hpp"

namespace mdnn {

// kMdnn:  C(Z1,Z2) + lambda (G(Z1) + G(Z2)) - alpha ||Theta||^2
// kDcca:  the same with lambda = 0 (G is never evaluated)
// kDlda:  one network on view 1 only, lambda G(Z1) - alpha ||Theta||^2
enum class TrainMode { kMdnn, kDcca, kDlda };

const char *TrainModeName(TrainMode mode);
TrainMode ParseTrainMode(const std::string &name);

struct TrainConfig {
  TrainMode mode = TrainMode::kMdnn;
  double lambda = 10.0;
  double alpha = 1e-4;
  double r = 1e-4;
  int epochs = 150;
  int batch_size = 400;
  double learning_rate = 1e-3;
  std::uint64_t seed = 0;
  std::vector<int> hidden_layers{1024, 1024, 1024};
  int repr_dim = 10;
};

// Throws kConfig on invalid values; warns when batch_size <= repr_dim.
void ValidateConfig(const TrainConfig &config);

// Lambda actually applied to G for the configured mode.
double EffectiveLambda(const TrainConfig &config);

struct Model {
  TrainConfig config;
  Network view1;
  std::optional<Network> view2;  // absent in kDlda mode
};

// Deterministic in config.seed.
Model InitModel(const TrainConfig &config, int input_dim1, int input_dim2);

struct BatchObjective {
  std::optional<double> corr;
  std::optional<double> g1;
  std::optional<double> g2;
  double weight_penalty = 0.0;  // alpha * (||W1||^2 + ||W2||^2)
  double total = 0.0;
  NetworkGrads grad1;  // ascent direction for view 1
  NetworkGrads grad2;  // ascent direction for view 2 (empty in kDlda)
};

// Objective and parameter gradients on one batch. `labels` is null for an
// unlabeled batch, in which case only the correlation term is used.
BatchObjective EvaluateBatch(const Model &model, const Matrix &x1, const Matrix &x2,
                             const LabelVector *labels);

struct EpochMetrics {
  int epoch = 0;
  std::optional<double> corr;  // mean over batches where C was evaluated
  std::optional<double> g1;    // mean over labeled batches
  std::optional<double> g2;
  double objective = 0.0;      // mean total objective
  int labeled_batches = 0;
  int unlabeled_batches = 0;
};

struct TrainResult {
  Model model;
  std::vector<EpochMetrics> history;
};

using EpochCallback = std::function<void(const EpochMetrics &)>;

TrainResult Train(const TrainConfig &config, const PairedDataset &data,
                  const EpochCallback &on_epoch = {});

// Embeds the samples of one view (1 or 2).
Matrix Project(const Model &model, const Matrix &x, int view);

}  // namespace mdnn

#endif  // MDNN_TRAINER_HPP_
