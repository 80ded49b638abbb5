// src/discriminative.cpp

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

#include "mdnn/discriminative.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "mdnn/error.hpp"

namespace mdnn {

namespace {

Matrix RidgeInverse(const Matrix &st, double r) {
  Matrix reg = st;
  reg.diagonal().array() += r;
  Eigen::LDLT<Matrix> ldlt(reg);
  if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
    Matrix inv = ldlt.solve(Matrix::Identity(reg.rows(), reg.cols()));
    if (inv.allFinite()) return 0.5 * (inv + inv.transpose());
  }
  // Singular S_T with r = 0: fall back to the pseudo-inverse.
  return reg.completeOrthogonalDecomposition().pseudoInverse();
}

}  // namespace

ScatterStats ComputeScatter(const Matrix &z, const LabelVector &y) {
  if (static_cast<Eigen::Index>(y.size()) != z.cols()) {
    std::ostringstream os;
    os << "batch has " << z.cols() << " samples but " << y.size() << " labels";
    Fail(ErrorKind::kShape, os.str());
  }
  std::map<int, int> histogram;
  for (int label : y) {
    if (label < 0) Fail(ErrorKind::kDegenerateLabels, "negative class index in labeled batch");
    ++histogram[label];
  }
  if (histogram.size() < 2) {
    Fail(ErrorKind::kDegenerateLabels,
         "scatter statistics need at least 2 classes, got " +
             std::to_string(histogram.size()));
  }

  ScatterStats s;
  s.L = static_cast<int>(y.size());
  std::map<int, int> position;
  for (const auto &[label, count] : histogram) {
    position[label] = static_cast<int>(s.classes.size());
    s.classes.push_back(label);
    s.counts.push_back(count);
  }
  const Eigen::Index d = z.rows();
  const Eigen::Index k = static_cast<Eigen::Index>(s.classes.size());
  s.slot.resize(y.size());
  s.means = Matrix::Zero(d, k);
  for (std::size_t n = 0; n < y.size(); ++n) {
    s.slot[n] = position[y[n]];
    s.means.col(s.slot[n]) += z.col(static_cast<Eigen::Index>(n));
  }
  for (Eigen::Index c = 0; c < k; ++c) s.means.col(c) /= s.counts[c];

  Matrix deviations(d, z.cols());
  for (Eigen::Index n = 0; n < z.cols(); ++n)
    deviations.col(n) = z.col(n) - s.means.col(s.slot[n]);
  s.SW = deviations * deviations.transpose() / static_cast<double>(s.L);

  s.SB = Matrix::Zero(d, d);
  const double pair_scale = 1.0 / (2.0 * s.L * static_cast<double>(s.L));
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      if (i == j) continue;
      Vector diff = s.means.col(i) - s.means.col(j);
      s.SB.noalias() += (pair_scale * s.counts[i] * s.counts[j]) * diff * diff.transpose();
    }
  }
  s.ST = s.SW + s.SB;
  return s;
}

double DiscValue(const ScatterStats &stats, double r) {
  Matrix inv = RidgeInverse(stats.ST, r);
  return (inv * stats.SB).trace();
}

Matrix DiscGrad(const Matrix &z, const LabelVector &y, double r) {
  return DiscGrad(z, ComputeScatter(z, y), r);
}

Matrix DiscGrad(const Matrix &z, const ScatterStats &stats, double r) {
  const Eigen::Index d = z.rows();
  const Eigen::Index n = z.cols();
  const double L = static_cast<double>(stats.L);
  const Eigen::Index k = stats.means.cols();

  Matrix st_inv = RidgeInverse(stats.ST, r);
  Matrix st_inv_sb = st_inv * stats.SB;

  // Column n of M holds the mean of its class; column n of sum_j M^j holds
  // sum_j L_j (m_j - m_{class(n)}).
  Matrix class_means(d, n);
  Matrix pair_sum(d, n);
  Matrix per_class_pair_sum = Matrix::Zero(d, k);
  for (Eigen::Index q = 0; q < k; ++q) {
    for (Eigen::Index j = 0; j < k; ++j)
      per_class_pair_sum.col(q) += stats.counts[j] * (stats.means.col(j) - stats.means.col(q));
  }
  for (Eigen::Index c = 0; c < n; ++c) {
    class_means.col(c) = stats.means.col(stats.slot[c]);
    pair_sum.col(c) = per_class_pair_sum.col(stats.slot[c]);
  }

  Matrix identity = Matrix::Identity(d, d);
  Matrix grad = (2.0 / (L * L)) * (st_inv_sb - identity) * st_inv * pair_sum -
                (2.0 / L) * st_inv_sb * st_inv * (z - class_means);
  return grad;
}

}  // namespace mdnn
