// src/eval.cpp

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

#include "mdnn/eval.hpp"

#include <map>
#include <sstream>

#include "mdnn/error.hpp"
#include "mdnn/parallel.hpp"
#include "mdnn/random.hpp"

namespace mdnn {

namespace {

Matrix Columns(const Matrix &m, const std::vector<int> &idx) {
  Matrix out(m.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = m.col(idx[k]);
  return out;
}

LabelVector Pick(const LabelVector &y, const std::vector<int> &idx) {
  LabelVector out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(y[i]);
  return out;
}

}  // namespace

Standardizer Standardizer::Fit(const Matrix &z) {
  Standardizer s;
  s.mean = RowMeans(z);
  s.scale = Vector::Ones(z.rows());
  if (z.cols() > 1) {
    const Matrix c = z.colwise() - s.mean;
    for (Eigen::Index r = 0; r < z.rows(); ++r) {
      const double sd = std::sqrt(c.row(r).squaredNorm() / static_cast<double>(z.cols() - 1));
      if (sd > 1e-12) s.scale(r) = sd;
    }
  }
  return s;
}

Matrix Standardizer::Apply(const Matrix &z) const {
  if (z.rows() != mean.size()) Fail(ErrorKind::kShape, "standardizer dimension mismatch");
  Matrix out = z.colwise() - mean;
  return scale.cwiseInverse().asDiagonal() * out;
}

std::vector<int> StratifiedFolds(const LabelVector &y, int folds, std::uint64_t seed) {
  if (folds < 2) Fail(ErrorKind::kConfig, "cross-validation needs at least 2 folds");
  std::map<int, std::vector<int>> by_class;
  for (std::size_t i = 0; i < y.size(); ++i) by_class[y[i]].push_back(static_cast<int>(i));
  Rng rng = MakeRng(seed, 606);
  std::vector<int> fold(y.size(), 0);
  int next = 0;
  for (auto &[label, members] : by_class) {
    Shuffle(&members, &rng);
    for (int i : members) fold[i] = next++ % folds;
  }
  return fold;
}

std::vector<double> CrossValidate(const Matrix &z, const LabelVector &y, const EvalOptions &opts) {
  const int n = static_cast<int>(y.size());
  const int folds = std::min(opts.folds, n);
  const std::vector<int> fold = StratifiedFolds(y, folds, opts.seed);
  const int grid = static_cast<int>(opts.c_grid.size());
  std::vector<double> fold_acc(static_cast<std::size_t>(grid * folds), -1.0);

  ParallelFor(grid * folds, opts.threads, [&](int task) {
    const int g = task / folds;
    const int f = task % folds;
    std::vector<int> train, held;
    for (int i = 0; i < n; ++i) (fold[i] == f ? held : train).push_back(i);
    const LabelVector ytr = Pick(y, train);
    bool two_classes = false;
    for (int label : ytr) two_classes = two_classes || label != ytr.front();
    if (held.empty() || !two_classes) return;
    SvmModel model = SvmFit(Columns(z, train), ytr, opts.c_grid[g], opts.seed, opts.svm);
    fold_acc[task] = Accuracy(SvmPredict(model, Columns(z, held)), Pick(y, held));
  });

  std::vector<double> mean(grid, 0.0);
  for (int g = 0; g < grid; ++g) {
    int used = 0;
    for (int f = 0; f < folds; ++f) {
      const double a = fold_acc[static_cast<std::size_t>(g * folds + f)];
      if (a >= 0) { mean[g] += a; ++used; }
    }
    mean[g] = used > 0 ? mean[g] / used : 0.0;
  }
  return mean;
}

EvalResult CrossViewEval(const Projector &project, const PairedDataset &data,
                         const EvalOptions &opts) {
  if (opts.c_grid.empty()) Fail(ErrorKind::kConfig, "SVM C grid is empty");
  const std::vector<int> train = data.LabeledIndices(Split::kTrain);
  const std::vector<int> test = data.Indices(Split::kTest);
  if (test.empty()) Fail(ErrorKind::kConfig, "dataset has no test samples");
  if (train.empty()) Fail(ErrorKind::kConfig, "dataset has no labeled training samples");
  LabelVector y_test = Pick(data.labels, test);
  for (int label : y_test)
    if (label < 0) Fail(ErrorKind::kDegenerateLabels, "test samples must all carry labels");

  const Matrix z_train_raw = project(Columns(data.x1, train));
  const Matrix z_test_raw = project(Columns(data.x1, test));
  RequireFinite(z_train_raw, "projected training samples");
  RequireFinite(z_test_raw, "projected test samples");
  const Standardizer standardizer = Standardizer::Fit(z_train_raw);
  const Matrix z_train = standardizer.Apply(z_train_raw);
  const Matrix z_test = standardizer.Apply(z_test_raw);
  const LabelVector y_train = Pick(data.labels, train);

  EvalResult result;
  result.n_train = static_cast<int>(train.size());
  result.n_test = static_cast<int>(test.size());
  std::size_t best = 0;
  if (train.size() >= 2) {
    result.cv_accuracy = CrossValidate(z_train, y_train, opts);
    for (std::size_t g = 1; g < opts.c_grid.size(); ++g) {
      const double a = result.cv_accuracy[g], b = result.cv_accuracy[best];
      if (a > b || (a == b && opts.c_grid[g] < opts.c_grid[best])) best = g;
    }
    result.validation_accuracy = result.cv_accuracy[best];
  }
  result.chosen_c = opts.c_grid[best];
  const SvmModel model = SvmFit(z_train, y_train, result.chosen_c, opts.seed, opts.svm);
  result.train_accuracy = model.train_accuracy;
  result.accuracy = Accuracy(SvmPredict(model, z_test), y_test);
  return result;
}

}  // namespace mdnn
