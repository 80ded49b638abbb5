// src/trainer.cpp

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

#include "mdnn/trainer.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "mdnn/correlation.hpp"
#include "mdnn/error.hpp"
#include "mdnn/sampler.hpp"

namespace mdnn {

const char *TrainModeName(TrainMode mode) {
  switch (mode) {
    case TrainMode::kMdnn: return "mdnn";
    case TrainMode::kDcca: return "dcca";
    case TrainMode::kDlda: return "dlda";
  }
  return "?";
}

TrainMode ParseTrainMode(const std::string &name) {
  if (name == "mdnn") return TrainMode::kMdnn;
  if (name == "dcca") return TrainMode::kDcca;
  if (name == "dlda") return TrainMode::kDlda;
  Fail(ErrorKind::kConfig, "unknown training mode '" + name + "' (mdnn, dcca, dlda)");
}

void ValidateConfig(const TrainConfig &c) {
  std::ostringstream os;
  if (c.lambda < 0) os << "lambda must be >= 0; ";
  if (c.alpha < 0) os << "alpha must be >= 0; ";
  if (!(c.r > 0)) os << "r must be > 0; ";
  if (c.epochs < 1) os << "epochs must be >= 1; ";
  if (c.batch_size < 2) os << "batch size must be >= 2; ";
  if (!(c.learning_rate > 0)) os << "learning rate must be > 0; ";
  if (c.repr_dim < 1) os << "repr_dim must be >= 1; ";
  for (int w : c.hidden_layers)
    if (w < 1) os << "hidden layer widths must be >= 1; ";
  if (c.mode == TrainMode::kDlda && !(c.lambda > 0)) os << "dlda mode needs lambda > 0; ";
  if (!os.str().empty()) Fail(ErrorKind::kConfig, os.str());
  if (c.batch_size <= c.repr_dim) {
    Warn("batch size " + std::to_string(c.batch_size) + " does not exceed repr_dim " +
         std::to_string(c.repr_dim) + "; batch covariances will be rank deficient");
  }
}

double EffectiveLambda(const TrainConfig &config) {
  return config.mode == TrainMode::kDcca ? 0.0 : config.lambda;
}

Model InitModel(const TrainConfig &config, int input_dim1, int input_dim2) {
  ValidateConfig(config);
  Model model;
  model.config = config;
  Rng rng1 = MakeRng(config.seed, 11);
  model.view1 = InitNetwork(input_dim1, config.hidden_layers, config.repr_dim, &rng1);
  if (config.mode != TrainMode::kDlda) {
    Rng rng2 = MakeRng(config.seed, 12);
    model.view2 = InitNetwork(input_dim2, config.hidden_layers, config.repr_dim, &rng2);
  }
  return model;
}

BatchObjective EvaluateBatch(const Model &model, const Matrix &x1, const Matrix &x2,
                             const LabelVector *labels) {
  const TrainConfig &cfg = model.config;
  const double lambda = EffectiveLambda(cfg);
  const bool two_views = model.view2.has_value();
  const bool use_g = labels != nullptr && lambda > 0;

  BatchObjective out;
  ForwardCache cache1, cache2;
  Matrix z1 = Forward(model.view1, x1, &cache1);
  Matrix dz1 = Matrix::Zero(z1.rows(), z1.cols());
  Matrix z2, dz2;
  if (two_views) {
    z2 = Forward(*model.view2, x2, &cache2);
    dz2 = Matrix::Zero(z2.rows(), z2.cols());
    CorrContext ctx = CorrValue(z1, z2, cfg.r);
    CorrGradient g = CorrGrad(ctx);
    out.corr = ctx.value;
    dz1 += g.dz1;
    dz2 += g.dz2;
  }
  if (use_g) {
    ScatterStats s1 = ComputeScatter(z1, *labels);
    out.g1 = DiscValue(s1, cfg.r);
    dz1 += lambda * DiscGrad(z1, s1, cfg.r);
    if (two_views) {
      ScatterStats s2 = ComputeScatter(z2, *labels);
      out.g2 = DiscValue(s2, cfg.r);
      dz2 += lambda * DiscGrad(z2, s2, cfg.r);
    }
  }

  out.weight_penalty = cfg.alpha * SquaredWeightNorm(model.view1);
  out.grad1 = Backward(model.view1, cache1, dz1);
  AddWeightDecay(model.view1, cfg.alpha, &out.grad1);
  if (two_views) {
    out.weight_penalty += cfg.alpha * SquaredWeightNorm(*model.view2);
    out.grad2 = Backward(*model.view2, cache2, dz2);
    AddWeightDecay(*model.view2, cfg.alpha, &out.grad2);
  }
  out.total = out.corr.value_or(0.0) + lambda * (out.g1.value_or(0.0) + out.g2.value_or(0.0)) -
              out.weight_penalty;
  return out;
}

namespace {

Matrix Columns(const Matrix &m, const std::vector<int> &indices) {
  Matrix out(m.rows(), static_cast<Eigen::Index>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = m.col(indices[k]);
  return out;
}

}  // namespace

TrainResult Train(const TrainConfig &config, const PairedDataset &data,
                  const EpochCallback &on_epoch) {
  data.Validate();
  TrainResult result;
  result.model = InitModel(config, static_cast<int>(data.x1.rows()), static_cast<int>(data.x2.rows()));
  Model &model = result.model;
  const double lambda = EffectiveLambda(config);

  if (lambda > 0 && data.LabeledIndices(Split::kTrain).empty())
    Fail(ErrorKind::kConfig, "lambda > 0 but the train split has no labeled samples");
  if (config.mode == TrainMode::kDlda && data.LabeledIndices(Split::kTrain).size() < 2)
    Fail(ErrorKind::kConfig, "dlda mode needs labeled train samples");

  AdamState adam1 = InitAdam(model.view1);
  std::optional<AdamState> adam2;
  if (model.view2) adam2 = InitAdam(*model.view2);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    BatchSchedule schedule = MakeSchedule(data, config.batch_size, epoch, config.seed, config.repr_dim);
    EpochMetrics metrics;
    metrics.epoch = epoch;
    double corr_sum = 0, g1_sum = 0, g2_sum = 0, total_sum = 0;
    int corr_n = 0, g_n = 0, total_n = 0;

    for (std::size_t b = 0; b < schedule.batches.size(); ++b) {
      const Batch &batch = schedule.batches[b];
      const bool labeled = batch.kind == BatchKind::kLabeled;
      if (config.mode == TrainMode::kDlda && !labeled) continue;
      if (labeled) ++metrics.labeled_batches;
      else ++metrics.unlabeled_batches;

      Matrix x1 = Columns(data.x1, batch.indices);
      Matrix x2 = model.view2 ? Columns(data.x2, batch.indices) : Matrix();
      LabelVector y;
      bool use_labels = labeled;
      if (labeled) {
        for (int i : batch.indices) y.push_back(data.labels[i]);
        // A batch drawn from a single class carries no between-class signal.
        if (std::adjacent_find(y.begin(), y.end(), std::not_equal_to<>()) == y.end()) {
          use_labels = false;
          Warn("epoch " + std::to_string(epoch) + ", batch " + std::to_string(b) +
               ": labeled batch holds a single class; using the correlation term only");
        }
      }

      if (!use_labels && !model.view2) continue;

      try {
        BatchObjective obj = EvaluateBatch(model, x1, x2, use_labels ? &y : nullptr);
        AdamStep(&adam1, &model.view1, obj.grad1, config.learning_rate);
        if (model.view2) AdamStep(&*adam2, &*model.view2, obj.grad2, config.learning_rate);

        if (obj.corr) { corr_sum += *obj.corr; ++corr_n; }
        if (obj.g1) {
          g1_sum += *obj.g1;
          g2_sum += obj.g2.value_or(0.0);
          ++g_n;
        }
        total_sum += obj.total;
        ++total_n;
      } catch (const Error &e) {
        std::ostringstream os;
        os << "epoch " << epoch << ", batch " << b << " ("
           << (labeled ? "labeled" : "unlabeled") << ", " << batch.indices.size()
           << " samples): " << e.what();
        throw Error(e.kind(), os.str());
      }
    }

    if (corr_n > 0) metrics.corr = corr_sum / corr_n;
    if (g_n > 0) {
      metrics.g1 = g1_sum / g_n;
      if (model.view2) metrics.g2 = g2_sum / g_n;
    }
    metrics.objective = total_n > 0 ? total_sum / total_n : 0.0;
    result.history.push_back(metrics);
    if (on_epoch) on_epoch(metrics);
  }
  return result;
}

Matrix Project(const Model &model, const Matrix &x, int view) {
  if (view == 1) return Forward(model.view1, x);
  if (view == 2) {
    if (!model.view2) Fail(ErrorKind::kConfig, "this model has no view-2 network");
    return Forward(*model.view2, x);
  }
  Fail(ErrorKind::kConfig, "view index must be 1 or 2, got " + std::to_string(view));
}

}  // namespace mdnn
