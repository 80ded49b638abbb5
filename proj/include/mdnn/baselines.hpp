// include/mdnn/baselines.hpp

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

#ifndef MDNN_BASELINES_HPP_
#define MDNN_BASELINES_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "mdnn/discriminative.hpp"
#include "mdnn/linalg.hpp"
#include "mdnn/random.hpp"

namespace mdnn {

/// Random Fourier features for the Gaussian kernel
/// k(x, y) = exp(-||x - y||^2 / (2 bandwidth^2)):
///   phi(x) = sqrt(2 / D) cos(Omega x + phase),
/// Omega ~ N(0, 1 / bandwidth^2), phase ~ U[0, 2 pi).
struct RandomFeatureMap {
  Matrix omega;   // D x d
  Vector phase;   // D
  double bandwidth = 1.0;

  int n_features() const { return static_cast<int>(omega.rows()); }
  Matrix Apply(const Matrix &x) const;
};

RandomFeatureMap MakeRandomFeatureMap(int input_dim, int n_features, double bandwidth, Rng *rng);

// Median pairwise distance over at most `max_samples` randomly chosen
// columns; 1.0 if that median is zero.
double MedianBandwidth(const Matrix &x, int max_samples, Rng *rng);

enum class ProjectionMethod { kLinearCca, kLda, kRffKcca };

const char *ProjectionMethodName(ProjectionMethod method);
ProjectionMethod ParseProjectionMethod(const std::string &name);

/// Closed-form projections of one or two views. Samples are centered by the
/// stored means (in feature space when a random feature map is present) and
/// then mapped with w^T.
struct LinearProjection {
  ProjectionMethod method = ProjectionMethod::kLinearCca;
  Matrix w1;      // d1 x k
  Vector mean1;
  Matrix w2;      // d2 x k, empty for LDA
  Vector mean2;
  Vector values;  // canonical correlations or LDA eigenvalues, descending
  std::optional<RandomFeatureMap> map1;
  std::optional<RandomFeatureMap> map2;

  int k() const { return static_cast<int>(w1.cols()); }
};

// Top-k canonical directions: V_i = Sigma_ii^{-1/2} * (singular vectors of
// R), so that V_i^T Sigma_ii V_i = I with the +rI regularized covariances.
LinearProjection LinearCcaFit(const Matrix &x1, const Matrix &x2, int k, double r);

// Top-k generalized eigenvectors of (S_W + rI)^{-1} S_B, scaled to
// w^T (S_W + rI) w = 1.
LinearProjection LdaFit(const Matrix &x, const LabelVector &y, int k, double r);

struct RffOptions {
  int n_features = 2000;
  double bandwidth = 0.0;  // <= 0 selects the median heuristic per view
  int bandwidth_samples = 1000;
  double r = 1e-4;
  std::uint64_t seed = 0;
};

// Linear CCA on random Fourier features of both views.
LinearProjection RffKccaFit(const Matrix &x1, const Matrix &x2, int k, const RffOptions &opts);

Matrix ProjectLinear(const LinearProjection &model, const Matrix &x, int view = 1);

}  // namespace mdnn

#endif  // MDNN_BASELINES_HPP_
