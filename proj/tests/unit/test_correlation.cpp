// tests/unit/test_correlation.cpp

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mdnn/correlation.hpp"
#include "mdnn/error.hpp"
#include "mdnn/gradcheck.hpp"
#include "test_util.hpp"

using namespace mdnn;
using test::Gaussian;

namespace {

// Canonical correlations by explicit whitening: Cholesky factors of the
// regularized auto-covariances, then the singular values of the whitened
// cross-covariance.
double WhitenedCorrelationSum(const Matrix &z1, const Matrix &z2, double r) {
  const double n = static_cast<double>(z1.cols());
  const Matrix c1 = z1.colwise() - z1.rowwise().mean();
  const Matrix c2 = z2.colwise() - z2.rowwise().mean();
  Matrix s11 = c1 * c1.transpose() / (n - 1);
  Matrix s22 = c2 * c2.transpose() / (n - 1);
  s11.diagonal().array() += r;
  s22.diagonal().array() += r;
  const Matrix s12 = c1 * c2.transpose() / (n - 1);
  const Matrix l1 = s11.llt().matrixL();
  const Matrix l2 = s22.llt().matrixL();
  const Matrix t = l1.triangularView<Eigen::Lower>().solve(s12);
  const Matrix w = l2.triangularView<Eigen::Lower>().solve(t.transpose()).transpose();
  Eigen::JacobiSVD<Matrix> svd(w);
  return svd.singularValues().sum();
}

}  // namespace

TEST_CASE("covariance") {
  Matrix z(1, 2);
  z << 1, -1;
  CHECK(Covariance(z, z, 0.0, true)(0, 0) == doctest::Approx(2.0));
  CHECK(Covariance(z, z, 0.5, true)(0, 0) == doctest::Approx(2.5));
  Matrix a(1, 4), b(1, 4);
  a << 1, -1, 1, -1;
  b << 1, 1, -1, -1;
  CHECK(Covariance(a, b, 0.0, false)(0, 0) == 0.0);
  CHECK_THROWS_AS(Covariance(Matrix::Ones(2, 1), Matrix::Ones(2, 1), 0.0, true), Error);
}

TEST_CASE("perfectly correlated views reach the dimension") {
  Rng rng(11);
  const Matrix z = Gaussian(2, 50, &rng);
  CHECK(CorrValue(z, z, 0.0).value == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("uncorrelated sign patterns give zero") {
  Matrix a(1, 4), b(1, 4);
  a << 1, -1, 1, -1;
  b << 1, 1, -1, -1;
  CHECK(std::abs(CorrValue(a, b, 0.0).value) < 1e-12);
}

TEST_CASE("value agrees with explicit whitening") {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix z1 = Gaussian(3, 40, &rng);
    const Matrix z2 = Gaussian(3, 40, &rng) + 0.7 * z1;
    const CorrContext ctx = CorrValue(z1, z2, 1e-4);
    CHECK(std::abs(ctx.value - WhitenedCorrelationSum(z1, z2, 1e-4)) < 1e-8);
    CHECK(ctx.frobenius == doctest::Approx(ctx.R.norm()));
  }
}

TEST_CASE("value properties") {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 1 + trial % 4;
    const Matrix z1 = Gaussian(d, 60, &rng);
    const Matrix z2 = Gaussian(d, 60, &rng) + 0.3 * z1;
    const double v = CorrValue(z1, z2, 0.0).value;
    CHECK(v >= 0.0);
    CHECK(v <= d + 1e-10);
    CHECK(std::abs(v - CorrValue(z2, z1, 0.0).value) < 1e-10);
    const Vector shift = Gaussian(d, 1, &rng);
    const Matrix moved = (2.5 * z1).colwise() + shift;
    CHECK(std::abs(v - CorrValue(moved, z2, 0.0).value) < 1e-8);
  }
}

TEST_CASE("gradient matches finite differences on a 3x20 batch") {
  Rng rng(14);
  Matrix z1 = Gaussian(3, 20, &rng);
  Matrix z2 = Gaussian(3, 20, &rng) + 0.5 * z1;
  const double r = 1e-3;
  const CorrGradient g = CorrGrad(CorrValue(z1, z2, r));
  auto f = [&] { return CorrValue(z1, z2, r).value; };
  CHECK(RelativeError(g.dz1, test::NumericGradient(&z1, 1e-5, f)) < 1e-5);
  CHECK(RelativeError(g.dz2, test::NumericGradient(&z2, 1e-5, f)) < 1e-5);
}

TEST_CASE("gradient is finite and consistent for identical views") {
  Rng rng(15);
  Matrix z1 = Gaussian(2, 30, &rng);
  Matrix z2 = z1;
  const CorrGradient g = CorrGrad(CorrValue(z1, z2, 0.0));
  CHECK(g.dz1.allFinite());
  CHECK(g.dz2.allFinite());
  auto f = [&] { return CorrValue(z1, z2, 0.0).value; };
  // At the maximum the gradient vanishes; finite differences agree in
  // absolute terms.
  CHECK((g.dz1 - test::NumericGradient(&z1, 1e-5, f)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("gradient is orthogonal to joint rescaling and to translation") {
  Rng rng(16);
  const Matrix z1 = Gaussian(3, 25, &rng);
  const Matrix z2 = Gaussian(3, 25, &rng) + 0.4 * z1;
  const CorrGradient g = CorrGrad(CorrValue(z1, z2, 0.0));
  const double directional = (g.dz1.cwiseProduct(z1)).sum() + (g.dz2.cwiseProduct(z2)).sum();
  CHECK(std::abs(directional) < 1e-6);
  CHECK(g.dz1.rowwise().sum().cwiseAbs().maxCoeff() < 1e-10);
  CHECK(g.dz2.rowwise().sum().cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("gradient check suite over random instances") {
  GradcheckOptions opts;
  const GradcheckSuite suite = CheckCorrelationGradient(opts);
  CHECK(suite.instances == 20);
  CHECK(suite.pass());
}

TEST_CASE("shape mismatch is rejected") {
  CHECK_THROWS_AS(CorrValue(Matrix::Ones(2, 10), Matrix::Ones(2, 9), 1e-3), Error);
}
