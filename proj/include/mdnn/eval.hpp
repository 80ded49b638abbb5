// include/mdnn/eval.hpp

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

#ifndef MDNN_EVAL_HPP_
#define MDNN_EVAL_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "mdnn/dataset.hpp"
#include "mdnn/svm.hpp"

namespace mdnn {

// Maps view-1 samples (d1 x N) to representations (k x N).
using Projector = std::function<Matrix(const Matrix &)>;

inline const std::vector<double> kDefaultSvmGrid{10.0, 1.0, 0.1, 0.01, 0.001};

struct EvalOptions {
  std::vector<double> c_grid = kDefaultSvmGrid;
  int folds = 5;
  std::uint64_t seed = 0;
  int threads = 1;
  SvmOptions svm;
};

struct EvalResult {
  double accuracy = 0.0;
  double chosen_c = 0.0;
  std::vector<double> cv_accuracy;  // mean fold accuracy per grid entry
  double validation_accuracy = 0.0; // cv_accuracy at chosen_c
  double train_accuracy = 0.0;
  int n_train = 0;
  int n_test = 0;
};

// Per-feature standardization with statistics of the training features;
// constant features keep unit scale.
struct Standardizer {
  Vector mean;
  Vector scale;
  static Standardizer Fit(const Matrix &z);
  Matrix Apply(const Matrix &z) const;
};

// Class-stratified fold index per sample, deterministic in seed.
std::vector<int> StratifiedFolds(const LabelVector &y, int folds, std::uint64_t seed);

// Mean k-fold accuracy for every C in the grid, on already standardized
// features. Ties in the best C go to the smaller C.
std::vector<double> CrossValidate(const Matrix &z, const LabelVector &y, const EvalOptions &opts);

// Fits a linear SVM on the projected view 1 of the labeled training samples
// and reports its accuracy on the projected view 1 of the test samples.
EvalResult CrossViewEval(const Projector &project, const PairedDataset &data,
                         const EvalOptions &opts);

}  // namespace mdnn

#endif  // MDNN_EVAL_HPP_
