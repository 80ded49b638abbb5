// tests/unit/test_util.hpp

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

#ifndef MDNN_TESTS_TEST_UTIL_HPP_
#define MDNN_TESTS_TEST_UTIL_HPP_

#include <filesystem>
#include <functional>
#include <random>
#include <string>

#include "mdnn/linalg.hpp"
#include "mdnn/random.hpp"

namespace mdnn::test {

inline Matrix Gaussian(Eigen::Index rows, Eigen::Index cols, Rng *rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = g(*rng);
  return m;
}

inline Matrix RandomSpd(Eigen::Index n, Rng *rng) {
  const Matrix a = Gaussian(n, n, rng);
  return a * a.transpose() + 0.5 * Matrix::Identity(n, n);
}

inline Matrix RandomOrthogonal(Eigen::Index n, Rng *rng) {
  Eigen::HouseholderQR<Matrix> qr(Gaussian(n, n, rng));
  return qr.householderQ() * Matrix::Identity(n, n);
}

// Central differences of f with respect to every entry of *x.
inline Matrix NumericGradient(Matrix *x, double h, const std::function<double()> &f) {
  Matrix g(x->rows(), x->cols());
  for (Eigen::Index j = 0; j < x->cols(); ++j)
    for (Eigen::Index i = 0; i < x->rows(); ++i) {
      const double saved = (*x)(i, j);
      (*x)(i, j) = saved + h;
      const double up = f();
      (*x)(i, j) = saved - h;
      const double down = f();
      (*x)(i, j) = saved;
      g(i, j) = (up - down) / (2.0 * h);
    }
  return g;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path TempDir(const std::string &name) {
  auto dir = std::filesystem::temp_directory_path() / ("mdnn_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace mdnn::test

#endif  // MDNN_TESTS_TEST_UTIL_HPP_
