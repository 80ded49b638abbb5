// src/baselines.cpp

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

#include "mdnn/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mdnn/correlation.hpp"
#include "mdnn/error.hpp"

namespace mdnn {

Matrix RandomFeatureMap::Apply(const Matrix &x) const {
  if (x.rows() != omega.cols()) Fail(ErrorKind::kShape, "random feature map input dimension mismatch");
  Matrix arg = omega * x;
  arg.colwise() += phase;
  return std::sqrt(2.0 / n_features()) * arg.array().cos().matrix();
}

RandomFeatureMap MakeRandomFeatureMap(int input_dim, int n_features, double bandwidth, Rng *rng) {
  if (n_features < 1 || input_dim < 1 || !(bandwidth > 0))
    Fail(ErrorKind::kConfig, "invalid random feature map parameters");
  RandomFeatureMap map;
  map.bandwidth = bandwidth;
  std::normal_distribution<double> gauss(0.0, 1.0 / bandwidth);
  std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
  map.omega.resize(n_features, input_dim);
  for (Eigen::Index j = 0; j < map.omega.cols(); ++j)
    for (Eigen::Index i = 0; i < map.omega.rows(); ++i) map.omega(i, j) = gauss(*rng);
  map.phase.resize(n_features);
  for (Eigen::Index i = 0; i < n_features; ++i) map.phase(i) = uniform(*rng);
  return map;
}

double MedianBandwidth(const Matrix &x, int max_samples, Rng *rng) {
  std::vector<int> idx(static_cast<std::size_t>(x.cols()));
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  Shuffle(&idx, rng);
  if (static_cast<int>(idx.size()) > max_samples) idx.resize(max_samples);
  std::vector<double> dist;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) dist.push_back((x.col(idx[a]) - x.col(idx[b])).norm());
  if (dist.empty()) return 1.0;
  auto mid = dist.begin() + static_cast<std::ptrdiff_t>(dist.size() / 2);
  std::nth_element(dist.begin(), mid, dist.end());
  return *mid > 0 ? *mid : 1.0;
}

const char *ProjectionMethodName(ProjectionMethod method) {
  switch (method) {
    case ProjectionMethod::kLinearCca: return "cca";
    case ProjectionMethod::kLda: return "lda";
    case ProjectionMethod::kRffKcca: return "kcca";
  }
  return "?";
}

ProjectionMethod ParseProjectionMethod(const std::string &name) {
  if (name == "cca") return ProjectionMethod::kLinearCca;
  if (name == "lda") return ProjectionMethod::kLda;
  if (name == "kcca") return ProjectionMethod::kRffKcca;
  Fail(ErrorKind::kConfig, "unknown baseline '" + name + "' (cca, lda, kcca)");
}

LinearProjection LinearCcaFit(const Matrix &x1, const Matrix &x2, int k, double r) {
  if (x1.cols() != x2.cols()) Fail(ErrorKind::kShape, "views have different sample counts");
  if (k < 1 || k > std::min(x1.rows(), x2.rows())) {
    std::ostringstream os;
    os << "k = " << k << " must lie in [1, min(d1, d2) = " << std::min(x1.rows(), x2.rows()) << "]";
    Fail(ErrorKind::kConfig, os.str());
  }
  LinearProjection model;
  model.method = ProjectionMethod::kLinearCca;
  model.mean1 = RowMeans(x1);
  model.mean2 = RowMeans(x2);
  const Matrix c1 = Center(x1);
  const Matrix c2 = Center(x2);
  const Matrix s11_is = InvSqrtSpd(Covariance(c1, c1, r, true));
  const Matrix s22_is = InvSqrtSpd(Covariance(c2, c2, r, true));
  const Matrix R = s11_is * Covariance(c1, c2, r, false) * s22_is;
  const ThinSvd svd = SvdThin(R);
  model.w1 = s11_is * svd.U.leftCols(k);
  model.w2 = s22_is * svd.V.leftCols(k);
  model.values = svd.S.head(k);
  return model;
}

LinearProjection LdaFit(const Matrix &x, const LabelVector &y, int k, double r) {
  const ScatterStats stats = ComputeScatter(x, y);
  const int classes = static_cast<int>(stats.classes.size());
  if (k < 1 || k > x.rows()) Fail(ErrorKind::kConfig, "LDA dimension k out of range");
  if (k > classes - 1) {
    Warn("LDA with k = " + std::to_string(k) + " exceeds |C| - 1 = " + std::to_string(classes - 1) +
         "; trailing directions carry no between-class signal");
  }
  Matrix sw = stats.SW;
  sw.diagonal().array() += r;
  Eigen::LLT<Matrix> llt(sw);
  if (llt.info() != Eigen::Success)
    Fail(ErrorKind::kNotSpd, "within-class scatter + rI is not positive definite; increase r");
  const Matrix L = llt.matrixL();
  // M = L^{-1} S_B L^{-T}, symmetric with the same spectrum as Sw^{-1} S_B.
  const Matrix tmp = L.triangularView<Eigen::Lower>().solve(stats.SB);
  const Matrix M = L.triangularView<Eigen::Lower>().solve(tmp.transpose());
  const SymEig eig = SymmetricEig(M);

  LinearProjection model;
  model.method = ProjectionMethod::kLda;
  model.mean1 = RowMeans(x);
  model.w1 = L.transpose().triangularView<Eigen::Upper>().solve(eig.eigenvectors.leftCols(k));
  NormalizeColumnSigns(&model.w1);
  model.values = eig.eigenvalues.head(k);
  return model;
}

LinearProjection RffKccaFit(const Matrix &x1, const Matrix &x2, int k, const RffOptions &opts) {
  if (opts.n_features < k) Fail(ErrorKind::kConfig, "n_features must be at least k");
  Rng rng = MakeRng(opts.seed, 404);
  const double bw1 = opts.bandwidth > 0 ? opts.bandwidth : MedianBandwidth(x1, opts.bandwidth_samples, &rng);
  const double bw2 = opts.bandwidth > 0 ? opts.bandwidth : MedianBandwidth(x2, opts.bandwidth_samples, &rng);
  RandomFeatureMap map1 = MakeRandomFeatureMap(static_cast<int>(x1.rows()), opts.n_features, bw1, &rng);
  RandomFeatureMap map2 = MakeRandomFeatureMap(static_cast<int>(x2.rows()), opts.n_features, bw2, &rng);
  LinearProjection model = LinearCcaFit(map1.Apply(x1), map2.Apply(x2), k, opts.r);
  model.method = ProjectionMethod::kRffKcca;
  model.map1 = std::move(map1);
  model.map2 = std::move(map2);
  return model;
}

Matrix ProjectLinear(const LinearProjection &model, const Matrix &x, int view) {
  if (view != 1 && view != 2) Fail(ErrorKind::kConfig, "view index must be 1 or 2");
  const Matrix &w = view == 1 ? model.w1 : model.w2;
  const Vector &mean = view == 1 ? model.mean1 : model.mean2;
  const auto &map = view == 1 ? model.map1 : model.map2;
  if (w.size() == 0) Fail(ErrorKind::kConfig, "projection has no map for view " + std::to_string(view));
  Matrix features = map ? map->Apply(x) : x;
  if (features.rows() != w.rows()) {
    std::ostringstream os;
    os << "projection expects " << (map ? map->omega.cols() : w.rows()) << " input features, got "
       << x.rows();
    Fail(ErrorKind::kShape, os.str());
  }
  features.colwise() -= mean;
  return w.transpose() * features;
}

}  // namespace mdnn
