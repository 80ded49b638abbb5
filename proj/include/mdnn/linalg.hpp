// include/mdnn/linalg.hpp

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

#ifndef MDNN_LINALG_HPP_
#define MDNN_LINALG_HPP_

#include <Eigen/Dense>

#include <string_view>

namespace mdnn {

// Batches are stored one sample per column, so a d x N matrix holds N samples
// of dimension d and a covariance reads (1/(N-1)) * Zc * Zc^T.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct SymEig {
  Vector eigenvalues;   // descending
  Matrix eigenvectors;  // orthonormal columns, matching eigenvalues
};

struct ThinSvd {
  Matrix U;  // rows(M) x k
  Vector S;  // k = min(rows, cols), descending, non-negative
  Matrix V;  // cols(M) x k
};

// Throws kNonFinite naming `what` if any entry is NaN or Inf.
void RequireFinite(const Matrix &m, std::string_view what);

// Subtracts each row's mean. Requires at least two columns.
Matrix Center(const Matrix &z);

// Row means of z as a column vector.
Vector RowMeans(const Matrix &z);

// Eigendecomposition of (A + A^T) / 2 with eigenvalues sorted descending.
SymEig SymmetricEig(const Matrix &a);

// B = A^{-1/2} for symmetric positive definite A. Eigenvalues below `floor`
// are clamped to it; eigenvalues below -1e-8 * ||A||_F raise kNotSpd.
Matrix InvSqrtSpd(const Matrix &a, double floor = 1e-12);

ThinSvd SvdThin(const Matrix &m);

// Flips column signs so the largest-magnitude entry of every column is
// positive. Returns the applied signs (+1/-1) so paired bases can follow.
Vector NormalizeColumnSigns(Matrix *columns);

}  // namespace mdnn

#endif  // MDNN_LINALG_HPP_
