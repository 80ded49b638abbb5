// src/linalg.cpp

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

#include "mdnn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "mdnn/error.hpp"

namespace mdnn {

void RequireFinite(const Matrix &m, std::string_view what) {
  if (!m.allFinite()) {
    std::ostringstream os;
    os << what << " (" << m.rows() << "x" << m.cols()
       << ") contains NaN or Inf entries";
    Fail(ErrorKind::kNonFinite, os.str());
  }
}

Vector RowMeans(const Matrix &z) {
  if (z.cols() == 0) Fail(ErrorKind::kDegenerateBatch, "empty batch");
  return z.rowwise().mean();
}

Matrix Center(const Matrix &z) {
  if (z.cols() < 2) {
    Fail(ErrorKind::kDegenerateBatch,
         "centering needs at least 2 samples, got " + std::to_string(z.cols()));
  }
  Matrix out = z.colwise() - z.rowwise().mean();
  return out;
}

Vector NormalizeColumnSigns(Matrix *columns) {
  Vector signs = Vector::Ones(columns->cols());
  for (Eigen::Index j = 0; j < columns->cols(); ++j) {
    Eigen::Index arg = 0;
    columns->col(j).cwiseAbs().maxCoeff(&arg);
    if ((*columns)(arg, j) < 0.0) {
      columns->col(j) *= -1.0;
      signs(j) = -1.0;
    }
  }
  return signs;
}

SymEig SymmetricEig(const Matrix &a) {
  if (a.rows() != a.cols()) {
    std::ostringstream os;
    os << "symmetric eigendecomposition needs a square matrix, got "
       << a.rows() << "x" << a.cols();
    Fail(ErrorKind::kShape, os.str());
  }
  const Eigen::Index n = a.rows();
  SymEig out;
  if (n == 0) return out;
  Matrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success)
    Fail(ErrorKind::kNonFinite, "symmetric eigensolver did not converge");

  // Eigen returns ascending order.
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return solver.eigenvalues()(i) > solver.eigenvalues()(j);
  });
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = solver.eigenvalues()(order[k]);
    out.eigenvectors.col(k) = solver.eigenvectors().col(order[k]);
  }
  NormalizeColumnSigns(&out.eigenvectors);
  return out;
}

Matrix InvSqrtSpd(const Matrix &a, double floor) {
  SymEig eig = SymmetricEig(a);
  const double scale = a.norm();
  if (eig.eigenvalues.size() > 0 &&
      eig.eigenvalues(eig.eigenvalues.size() - 1) < -1e-8 * scale) {
    std::ostringstream os;
    os << "matrix has eigenvalue " << eig.eigenvalues(eig.eigenvalues.size() - 1)
       << " (norm " << scale << ")";
    Fail(ErrorKind::kNotSpd, os.str());
  }
  Vector inv_sqrt = eig.eigenvalues.unaryExpr(
      [floor](double v) { return 1.0 / std::sqrt(std::max(v, floor)); });
  Matrix out = eig.eigenvectors * inv_sqrt.asDiagonal() *
               eig.eigenvectors.transpose();
  return 0.5 * (out + out.transpose());
}

ThinSvd SvdThin(const Matrix &m) {
  ThinSvd out;
  const Eigen::Index k = std::min(m.rows(), m.cols());
  if (k == 0) {
    out.U.resize(m.rows(), 0);
    out.V.resize(m.cols(), 0);
    return out;
  }
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  out.U = svd.matrixU();
  out.S = svd.singularValues();
  out.V = svd.matrixV();
  Vector signs = NormalizeColumnSigns(&out.U);
  out.V = out.V * signs.asDiagonal();
  return out;
}

}  // namespace mdnn
