// src/svm.cpp

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

#include "mdnn/svm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "mdnn/error.hpp"
#include "mdnn/random.hpp"

namespace mdnn {

namespace {

double Score(const Vector &w, const Matrix &z, Eigen::Index i) {
  const Eigen::Index k = z.rows();
  return w.head(k).dot(z.col(i)) + w(k);
}

struct BinaryFit {
  Vector w;
  double objective = 0.0;
  bool converged = false;
};

BinaryFit FitBinary(const Matrix &z, const std::vector<int> &sign, double C, std::uint64_t seed,
                    const SvmOptions &opts) {
  const Eigen::Index k = z.rows();
  const int n = static_cast<int>(z.cols());
  const double lambda = 1.0 / (C * n);
  const double radius = 1.0 / std::sqrt(lambda);
  Rng rng = MakeRng(seed, 505);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;

  Vector w = Vector::Zero(k + 1);
  Vector avg = Vector::Zero(k + 1);
  long avg_count = 0;
  const int avg_from = opts.max_epochs / 2;
  std::vector<double> tail;
  long t = 0;
  for (int epoch = 0; epoch < opts.max_epochs; ++epoch) {
    Shuffle(&order, &rng);
    for (int i : order) {
      ++t;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const double margin = sign[i] * Score(w, z, i);
      w *= 1.0 - eta * lambda;
      if (margin < 1.0) {
        w.head(k) += (eta * sign[i]) * z.col(i);
        w(k) += eta * sign[i];
      }
      const double norm = w.norm();
      if (norm > radius) w *= radius / norm;
      if (epoch >= avg_from) {
        ++avg_count;
        avg += (w - avg) / static_cast<double>(avg_count);
      }
    }
    if (epoch + 10 >= opts.max_epochs) {
      const double current = HingeObjective(w, z, sign, C);
      tail.push_back(avg_count > 0 ? std::min(current, HingeObjective(avg, z, sign, C)) : current);
    }
  }

  BinaryFit out;
  const double last = HingeObjective(w, z, sign, C);
  const double averaged = avg_count > 0 ? HingeObjective(avg, z, sign, C) : last;
  out.w = averaged < last ? avg : w;
  out.objective = std::min(last, averaged);
  const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
  out.converged = !tail.empty() && (*hi - *lo) <= opts.tolerance * std::max(std::abs(*hi), 1e-12);
  return out;
}

}  // namespace

double HingeObjective(const Vector &w, const Matrix &z, const std::vector<int> &sign, double C) {
  double hinge = 0.0;
  for (Eigen::Index i = 0; i < z.cols(); ++i)
    hinge += std::max(0.0, 1.0 - sign[static_cast<std::size_t>(i)] * Score(w, z, i));
  return 0.5 * w.squaredNorm() + C * hinge;
}

SvmModel SvmFit(const Matrix &z, const LabelVector &y, double C, std::uint64_t seed,
                const SvmOptions &opts) {
  if (static_cast<Eigen::Index>(y.size()) != z.cols())
    Fail(ErrorKind::kShape, "SVM label count does not match sample count");
  if (!(C > 0)) Fail(ErrorKind::kConfig, "SVM C must be positive");
  if (opts.max_epochs < 1) Fail(ErrorKind::kConfig, "SVM needs at least one epoch");
  RequireFinite(z, "SVM features");
  std::map<int, int> counts;
  for (int label : y) {
    if (label < 0) Fail(ErrorKind::kDegenerateLabels, "SVM labels must be non-negative");
    ++counts[label];
  }
  if (counts.size() < 2) {
    Fail(ErrorKind::kDegenerateLabels,
         "SVM needs at least 2 classes, got " + std::to_string(counts.size()));
  }

  SvmModel model;
  model.C = C;
  model.epochs = opts.max_epochs;
  for (const auto &[label, count] : counts) model.classes.push_back(label);
  const bool binary = model.classes.size() == 2;
  const int rows = binary ? 1 : static_cast<int>(model.classes.size());
  model.weights.resize(rows, z.rows() + 1);
  model.converged = true;
  std::vector<int> sign(y.size());
  for (int c = 0; c < rows; ++c) {
    const int positive = model.classes[binary ? 1 : c];
    for (std::size_t i = 0; i < y.size(); ++i) sign[i] = y[i] == positive ? 1 : -1;
    BinaryFit fit = FitBinary(z, sign, C, seed, opts);
    model.weights.row(c) = fit.w.transpose();
    model.objective += fit.objective;
    model.converged = model.converged && fit.converged;
  }
  model.train_accuracy = Accuracy(SvmPredict(model, z), y);
  return model;
}

LabelVector SvmPredict(const SvmModel &model, const Matrix &z) {
  if (z.rows() != model.feature_dim()) {
    std::ostringstream os;
    os << "SVM expects " << model.feature_dim() << " features, got " << z.rows();
    Fail(ErrorKind::kShape, os.str());
  }
  const Eigen::Index k = z.rows();
  Matrix scores = model.weights.leftCols(k) * z;
  scores.colwise() += model.weights.col(k);
  LabelVector out(static_cast<std::size_t>(z.cols()));
  for (Eigen::Index i = 0; i < z.cols(); ++i) {
    if (model.weights.rows() == 1) {
      out[i] = scores(0, i) > 0.0 ? model.classes[1] : model.classes[0];
      continue;
    }
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < scores.rows(); ++c)
      if (scores(c, i) > scores(best, i)) best = c;
    out[i] = model.classes[best];
  }
  return out;
}

double Accuracy(const LabelVector &predicted, const LabelVector &truth) {
  if (predicted.size() != truth.size()) Fail(ErrorKind::kShape, "prediction and label counts differ");
  if (truth.empty()) Fail(ErrorKind::kDegenerateLabels, "accuracy of an empty set");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) correct += predicted[i] == truth[i];
  return static_cast<double>(correct) / static_cast<double>(truth.size());
}

}  // namespace mdnn
