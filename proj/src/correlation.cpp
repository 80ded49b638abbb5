// src/correlation.cpp

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

#include "mdnn/correlation.hpp"

#include <sstream>

#include "mdnn/error.hpp"

namespace mdnn {

Matrix Covariance(const Matrix &zi_centered, const Matrix &zj_centered,
                  double r, bool regularize) {
  const Eigen::Index n = zi_centered.cols();
  if (zj_centered.cols() != n) {
    std::ostringstream os;
    os << "covariance operands have " << n << " and " << zj_centered.cols()
       << " samples";
    Fail(ErrorKind::kShape, os.str());
  }
  if (n < 2) {
    Fail(ErrorKind::kDegenerateBatch,
         "covariance needs at least 2 samples, got " + std::to_string(n));
  }
  Matrix cov = (zi_centered * zj_centered.transpose()) / static_cast<double>(n - 1);
  if (regularize) {
    if (cov.rows() != cov.cols())
      Fail(ErrorKind::kShape, "only square covariances can be regularized");
    cov.diagonal().array() += r;
  }
  return cov;
}

CorrContext CorrValue(const Matrix &z1, const Matrix &z2, double r) {
  if (z1.cols() != z2.cols()) {
    std::ostringstream os;
    os << "views have " << z1.cols() << " and " << z2.cols() << " samples";
    Fail(ErrorKind::kShape, os.str());
  }
  if (z1.rows() < 1 || z2.rows() < 1)
    Fail(ErrorKind::kShape, "correlation needs at least one output dimension");
  if (z1.cols() < 2) {
    Fail(ErrorKind::kDegenerateBatch,
         "correlation needs at least 2 samples, got " + std::to_string(z1.cols()));
  }
  if (z1.cols() <= std::max(z1.rows(), z2.rows())) {
    std::ostringstream os;
    os << "batch of " << z1.cols() << " samples is not larger than output dim "
       << std::max(z1.rows(), z2.rows()) << "; covariances are rank deficient";
    Warn(os.str());
  }

  CorrContext ctx;
  ctx.r = r;
  ctx.z1_centered = Center(z1);
  ctx.z2_centered = Center(z2);
  ctx.sigma11 = Covariance(ctx.z1_centered, ctx.z1_centered, r, true);
  ctx.sigma22 = Covariance(ctx.z2_centered, ctx.z2_centered, r, true);
  ctx.sigma12 = Covariance(ctx.z1_centered, ctx.z2_centered, r, false);
  ctx.sigma11_inv_sqrt = InvSqrtSpd(ctx.sigma11);
  ctx.sigma22_inv_sqrt = InvSqrtSpd(ctx.sigma22);
  ctx.R = ctx.sigma11_inv_sqrt * ctx.sigma12 * ctx.sigma22_inv_sqrt;
  ctx.svd = SvdThin(ctx.R);
  ctx.value = ctx.svd.S.sum();
  ctx.frobenius = ctx.R.norm();
  return ctx;
}

CorrGradient CorrGrad(const CorrContext &ctx) {
  const double scale = 1.0 / static_cast<double>(ctx.z1_centered.cols() - 1);
  const Matrix &U = ctx.svd.U;
  const Matrix &V = ctx.svd.V;
  const auto D = ctx.svd.S.asDiagonal();

  Matrix nabla12 = ctx.sigma11_inv_sqrt * U * V.transpose() * ctx.sigma22_inv_sqrt;
  // The singular values weight the auto-covariance terms; dropping them gives
  // a direction that disagrees with finite differences.
  Matrix nabla11 = -0.5 * ctx.sigma11_inv_sqrt * U * D * U.transpose() *
                   ctx.sigma11_inv_sqrt;
  Matrix nabla22 = -0.5 * ctx.sigma22_inv_sqrt * V * D * V.transpose() *
                   ctx.sigma22_inv_sqrt;

  CorrGradient grad;
  grad.dz1 = scale * (2.0 * nabla11 * ctx.z1_centered + nabla12 * ctx.z2_centered);
  grad.dz2 = scale * (2.0 * nabla22 * ctx.z2_centered +
                      nabla12.transpose() * ctx.z1_centered);
  return grad;
}

}  // namespace mdnn
