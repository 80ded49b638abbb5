// include/mdnn/correlation.hpp

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

#ifndef MDNN_CORRELATION_HPP_
#define MDNN_CORRELATION_HPP_

#include "mdnn/linalg.hpp"

namespace mdnn {

/// Everything computed while evaluating the inter-view correlation term on a
/// batch, kept so the gradient can be formed without recomputation.
///
/// The objective is the trace norm of
///   R = Sigma11^{-1/2} Sigma12 Sigma22^{-1/2},
/// i.e. the sum of the canonical correlations of the two batches. The
/// auto-covariances carry +rI; the cross-covariance does not.
struct CorrContext {
  Matrix z1_centered;  // d1 x N
  Matrix z2_centered;  // d2 x N
  Matrix sigma11;
  Matrix sigma22;
  Matrix sigma12;
  Matrix sigma11_inv_sqrt;
  Matrix sigma22_inv_sqrt;
  Matrix R;
  ThinSvd svd;           // of R
  double r = 0.0;
  double value = 0.0;      // sum of singular values of R
  double frobenius = 0.0;  // ||R||_F, for logging only
};

// (1/(N-1)) * zi * zj^T (+ rI when regularize). Inputs must already be
// centered and share a column count N >= 2.
Matrix Covariance(const Matrix &zi_centered, const Matrix &zj_centered,
                  double r, bool regularize);

// Evaluates the correlation objective on raw (uncentered) outputs.
CorrContext CorrValue(const Matrix &z1, const Matrix &z2, double r);

struct CorrGradient {
  Matrix dz1;
  Matrix dz2;
};

// Gradient of CorrContext::value with respect to the raw z1, z2 it was built
// from.
CorrGradient CorrGrad(const CorrContext &ctx);

}  // namespace mdnn

#endif  // MDNN_CORRELATION_HPP_
