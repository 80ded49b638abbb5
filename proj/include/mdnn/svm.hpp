// include/mdnn/svm.hpp

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

#ifndef MDNN_SVM_HPP_
#define MDNN_SVM_HPP_

#include <cstdint>
#include <vector>

#include "mdnn/discriminative.hpp"
#include "mdnn/linalg.hpp"

namespace mdnn {

/// Linear one-vs-rest SVM. Row c of `weights` scores classes[c]; binary
/// problems keep a single row that scores classes[1] against classes[0].
/// The last column is the bias, which is regularized like the weights.
struct SvmModel {
  std::vector<int> classes;
  Matrix weights;  // rows x (k + 1)
  double C = 1.0;
  double objective = 0.0;  // summed over the one-vs-rest problems
  double train_accuracy = 0.0;
  int epochs = 0;
  bool converged = false;

  int feature_dim() const { return static_cast<int>(weights.cols()) - 1; }
};

struct SvmOptions {
  int max_epochs = 200;
  // Converged when the objective moves by less than this relative amount
  // across the final ten epochs.
  double tolerance = 1e-3;
};

// (1/2)||w||^2 + C * sum_i max(0, 1 - y_i (w . [z_i; 1])), y_i in {-1, +1}.
double HingeObjective(const Vector &w, const Matrix &z, const std::vector<int> &sign, double C);

// Stochastic subgradient descent with step 1 / (lambda t), lambda = 1 / (C n),
// visiting samples in a seed-determined order each epoch. Returns the better
// of the final iterate and the average over the second half of the run.
SvmModel SvmFit(const Matrix &z, const LabelVector &y, double C, std::uint64_t seed,
                const SvmOptions &opts = {});

// Scores are weights * [z; 1]; ties go to the lowest class index.
LabelVector SvmPredict(const SvmModel &model, const Matrix &z);

double Accuracy(const LabelVector &predicted, const LabelVector &truth);

}  // namespace mdnn

#endif  // MDNN_SVM_HPP_
