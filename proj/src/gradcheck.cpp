// src/gradcheck.cpp

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

#include "mdnn/gradcheck.hpp"

#include <algorithm>
#include <functional>

#include "mdnn/correlation.hpp"
#include "mdnn/discriminative.hpp"
#include "mdnn/random.hpp"
#include "mdnn/trainer.hpp"

namespace mdnn {

namespace {

Matrix RandomMatrix(Eigen::Index rows, Eigen::Index cols, Rng *rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = gauss(*rng);
  return m;
}

int UniformInt(int lo, int hi, Rng *rng) { return std::uniform_int_distribution<int>(lo, hi)(*rng); }

// Every class appears at least once.
LabelVector RandomLabels(int n, int classes, Rng *rng) {
  LabelVector y(n);
  for (int i = 0; i < n; ++i) y[i] = i < classes ? i : UniformInt(0, classes - 1, rng);
  Shuffle(&y, rng);
  return y;
}

// Central differences of f over every entry of *x.
Matrix NumericGradient(Matrix *x, double h, const std::function<double()> &f) {
  Matrix g(x->rows(), x->cols());
  for (Eigen::Index j = 0; j < x->cols(); ++j) {
    for (Eigen::Index i = 0; i < x->rows(); ++i) {
      const double saved = (*x)(i, j);
      (*x)(i, j) = saved + h;
      const double up = f();
      (*x)(i, j) = saved - h;
      const double down = f();
      (*x)(i, j) = saved;
      g(i, j) = (up - down) / (2.0 * h);
    }
  }
  return g;
}

void Record(GradcheckSuite *suite, double error, std::uint64_t seed) {
  if (suite->errors.empty() || error > suite->max_error) {
    suite->max_error = error;
    suite->worst_seed = seed;
  }
  suite->errors.push_back(error);
  ++suite->instances;
}

}  // namespace

double RelativeError(const Matrix &analytic, const Matrix &numeric) {
  const double scale = std::max({analytic.lpNorm<Eigen::Infinity>(),
                                 numeric.lpNorm<Eigen::Infinity>(), 1e-12});
  return (analytic - numeric).lpNorm<Eigen::Infinity>() / scale;
}

std::uint64_t InstanceSeed(std::uint64_t seed, int suite, int instance) {
  return MixSeed(seed, static_cast<std::uint64_t>(suite) * 100000 + static_cast<std::uint64_t>(instance));
}

GradcheckSuite CheckCorrelationGradient(const GradcheckOptions &opts) {
  GradcheckSuite suite;
  suite.name = "correlation";
  suite.threshold = 1e-5;
  const double r = 1e-3, h = 1e-5;
  for (int k = 0; k < opts.corr_instances; ++k) {
    const std::uint64_t seed = InstanceSeed(opts.seed, 1, k);
    Rng rng(seed);
    const int d = UniformInt(1, 5, &rng);
    const int n = UniformInt(10, 50, &rng);
    Matrix z1 = RandomMatrix(d, n, &rng);
    Matrix z2 = RandomMatrix(d, n, &rng) + 0.5 * z1;
    const CorrGradient g = CorrGrad(CorrValue(z1, z2, r));
    auto value = [&] { return CorrValue(z1, z2, r).value; };
    const Matrix n1 = NumericGradient(&z1, h, value);
    const Matrix n2 = NumericGradient(&z2, h, value);
    Matrix analytic(d, 2 * n), numeric(d, 2 * n);
    analytic << g.dz1, g.dz2;
    numeric << n1, n2;
    Record(&suite, RelativeError((1.0 + opts.corrupt) * analytic, numeric), seed);
  }
  return suite;
}

GradcheckSuite CheckDiscriminativeGradient(const GradcheckOptions &opts) {
  GradcheckSuite suite;
  suite.name = "discriminative";
  suite.threshold = 1e-4;
  const double r = 1e-3, h = 1e-5;
  for (int k = 0; k < opts.disc_instances; ++k) {
    const std::uint64_t seed = InstanceSeed(opts.seed, 2, k);
    Rng rng(seed);
    const int d = UniformInt(1, 4, &rng);
    const int classes = UniformInt(2, 3, &rng);
    const int n = UniformInt(6, 30, &rng);
    const LabelVector y = RandomLabels(n, classes, &rng);
    Matrix z = RandomMatrix(d, n, &rng);
    for (int i = 0; i < n; ++i) z(0, i) += 1.5 * y[i];
    const Matrix analytic = DiscGrad(z, y, r);
    const Matrix numeric = NumericGradient(&z, h, [&] { return DiscValue(ComputeScatter(z, y), r); });
    Record(&suite, RelativeError((1.0 + opts.corrupt) * analytic, numeric), seed);
  }
  return suite;
}

GradcheckSuite CheckNetworkGradient(const GradcheckOptions &opts) {
  GradcheckSuite suite;
  suite.name = "network";
  suite.threshold = 1e-3;
  const double h = 1e-4;
  const int samples = 16, sampled_params = 50;
  for (int k = 0; k < opts.network_instances; ++k) {
    const std::uint64_t seed = InstanceSeed(opts.seed, 3, k);
    Rng rng(seed);
    TrainConfig cfg;
    cfg.lambda = 1.0;
    cfg.alpha = 1e-3;
    cfg.r = 1e-3;
    cfg.hidden_layers = {5, 4};
    cfg.repr_dim = 3;
    cfg.batch_size = samples;
    cfg.seed = seed;
    Model model = InitModel(cfg, 6, 6);
    for (Network *net : {&model.view1, &*model.view2})
      for (auto &layer : net->layers) layer.b = 0.1 * RandomMatrix(layer.b.size(), 1, &rng);

    LabelVector y(samples);
    for (int i = 0; i < samples; ++i) y[i] = i % 2;
    Matrix x1 = RandomMatrix(6, samples, &rng);
    Matrix x2 = RandomMatrix(6, samples, &rng) + 0.5 * x1;
    for (int i = 0; i < samples; ++i) {
      x1(0, i) += y[i];
      x2(1, i) -= y[i];
    }

    const BatchObjective obj = EvaluateBatch(model, x1, x2, &y);
    // Parameter slots: (view, layer, is_bias, flat index).
    struct Slot { int view, layer; bool bias; Eigen::Index index; };
    std::vector<Slot> slots;
    for (int v = 0; v < 2; ++v) {
      const Network &net = v == 0 ? model.view1 : *model.view2;
      for (int l = 0; l < static_cast<int>(net.layers.size()); ++l) {
        for (Eigen::Index i = 0; i < net.layers[l].W.size(); ++i) slots.push_back({v, l, false, i});
        for (Eigen::Index i = 0; i < net.layers[l].b.size(); ++i) slots.push_back({v, l, true, i});
      }
    }
    Shuffle(&slots, &rng);
    slots.resize(std::min<std::size_t>(slots.size(), sampled_params));

    Matrix analytic(sampled_params, 1), numeric(sampled_params, 1);
    for (int s = 0; s < static_cast<int>(slots.size()); ++s) {
      const Slot &slot = slots[s];
      Network &net = slot.view == 0 ? model.view1 : *model.view2;
      const NetworkGrads &grads = slot.view == 0 ? obj.grad1 : obj.grad2;
      double *param = slot.bias ? net.layers[slot.layer].b.data() + slot.index
                                : net.layers[slot.layer].W.data() + slot.index;
      analytic(s) = slot.bias ? grads[slot.layer].db(slot.index) : grads[slot.layer].dW(slot.index);
      const double saved = *param;
      *param = saved + h;
      const double up = EvaluateBatch(model, x1, x2, &y).total;
      *param = saved - h;
      const double down = EvaluateBatch(model, x1, x2, &y).total;
      *param = saved;
      numeric(s) = (up - down) / (2.0 * h);
    }
    Record(&suite, RelativeError((1.0 + opts.corrupt) * analytic, numeric), seed);
  }
  return suite;
}

std::vector<GradcheckSuite> RunGradcheck(const GradcheckOptions &opts) {
  return {CheckCorrelationGradient(opts), CheckDiscriminativeGradient(opts), CheckNetworkGradient(opts)};
}

}  // namespace mdnn
