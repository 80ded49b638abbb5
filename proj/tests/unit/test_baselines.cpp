// tests/unit/test_baselines.cpp

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

#include <Eigen/Eigenvalues>

#include "mdnn/baselines.hpp"
#include "mdnn/error.hpp"
#include "test_util.hpp"

using namespace mdnn;
using test::Gaussian;

namespace {

Matrix Cov(const Matrix &a, const Matrix &b) {
  const Matrix ca = a.colwise() - a.rowwise().mean();
  const Matrix cb = b.colwise() - b.rowwise().mean();
  return ca * cb.transpose() / static_cast<double>(a.cols() - 1);
}

// Canonical correlations from the symmetric-definite pencil
// [0 S12; S21 0] v = rho [S11 0; 0 S22] v, largest first.
Vector PencilCorrelations(const Matrix &x1, const Matrix &x2, double r) {
  const Eigen::Index d1 = x1.rows(), d2 = x2.rows(), d = d1 + d2;
  Matrix a = Matrix::Zero(d, d), b = Matrix::Zero(d, d);
  a.topRightCorner(d1, d2) = Cov(x1, x2);
  a.bottomLeftCorner(d2, d1) = Cov(x2, x1);
  b.topLeftCorner(d1, d1) = Cov(x1, x1) + r * Matrix::Identity(d1, d1);
  b.bottomRightCorner(d2, d2) = Cov(x2, x2) + r * Matrix::Identity(d2, d2);
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(a, b);
  return es.eigenvalues().reverse();
}

double Correlation(const Matrix &a, const Matrix &b) {
  const Matrix c = Cov(a, b);
  return c(0, 0) / std::sqrt(Cov(a, a)(0, 0) * Cov(b, b)(0, 0));
}

// Within-class and between-class scatter, each normalized by the sample count.
std::pair<Matrix, Matrix> Scatter(const Matrix &x, const LabelVector &y) {
  const Eigen::Index d = x.rows();
  const double n = static_cast<double>(x.cols());
  const Vector mu = x.rowwise().mean();
  Matrix sw = Matrix::Zero(d, d), sb = Matrix::Zero(d, d);
  const int classes = *std::max_element(y.begin(), y.end()) + 1;
  for (int c = 0; c < classes; ++c) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < x.cols(); ++i)
      if (y[i] == c) idx.push_back(i);
    Matrix xc(d, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) xc.col(static_cast<Eigen::Index>(j)) = x.col(idx[j]);
    const Vector mc = xc.rowwise().mean();
    const Matrix centered = xc.colwise() - mc;
    sw += centered * centered.transpose() / n;
    sb += static_cast<double>(idx.size()) / n * (mc - mu) * (mc - mu).transpose();
  }
  return {sw, sb};
}

LabelVector ClassLabels(int n, int classes) {
  LabelVector y(n);
  for (int i = 0; i < n; ++i) y[i] = i % classes;
  return y;
}

Matrix ClassData(const LabelVector &y, int d, double separation, Rng *rng) {
  const int classes = *std::max_element(y.begin(), y.end()) + 1;
  const Matrix centers = separation * Gaussian(d, classes, rng);
  Matrix x = Gaussian(d, static_cast<int>(y.size()), rng);
  for (std::size_t i = 0; i < y.size(); ++i) x.col(i) += centers.col(y[i]);
  return x;
}

}  // namespace

TEST_CASE("canonical correlations match the generalized eigenproblem") {
  Rng rng(51);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix shared = Gaussian(2, 200, &rng);
    const Matrix x1 = Gaussian(4, 4, &rng) * Gaussian(4, 200, &rng) + Gaussian(4, 2, &rng) * shared;
    const Matrix x2 = Gaussian(3, 3, &rng) * Gaussian(3, 200, &rng) + Gaussian(3, 2, &rng) * shared;
    const double r = 1e-4;
    const LinearProjection cca = LinearCcaFit(x1, x2, 3, r);
    const Vector oracle = PencilCorrelations(x1, x2, r);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(cca.values(k) - oracle(k)) < 1e-8);

    // Whitening constraint and paired correlations.
    Matrix s11 = Cov(x1, x1) + r * Matrix::Identity(4, 4);
    CHECK((cca.w1.transpose() * s11 * cca.w1 - Matrix::Identity(3, 3)).norm() < 1e-8);
    const Matrix z1 = ProjectLinear(cca, x1, 1);
    const Matrix z2 = ProjectLinear(cca, x2, 2);
    const Matrix c12 = Cov(z1, z2);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(c12(k, k) - cca.values(k)) < 1e-8);
  }
}

TEST_CASE("a linearly related second view is perfectly correlated") {
  Rng rng(52);
  const Matrix x1 = Gaussian(3, 100, &rng);
  const Matrix a = Gaussian(3, 3, &rng);
  const LinearProjection cca = LinearCcaFit(x1, a * x1, 3, 1e-10);
  for (int k = 0; k < 3; ++k) CHECK(cca.values(k) > 1.0 - 1e-6);
}

TEST_CASE("independent views are weakly correlated") {
  Rng rng(53);
  const LinearProjection cca = LinearCcaFit(Gaussian(2, 2000, &rng), Gaussian(2, 2000, &rng), 1, 1e-4);
  CHECK(cca.values(0) < 0.15);
}

TEST_CASE("CCA is invariant to affine maps of a view") {
  Rng rng(54);
  const Matrix shared = Gaussian(1, 150, &rng);
  const Matrix x1 = Gaussian(3, 150, &rng) + Gaussian(3, 1, &rng) * shared;
  const Matrix x2 = Gaussian(3, 150, &rng) + Gaussian(3, 1, &rng) * shared;
  const Matrix a = test::RandomSpd(3, &rng);
  const Vector b = Gaussian(3, 1, &rng);
  const LinearProjection base = LinearCcaFit(x1, x2, 2, 0.0);
  const LinearProjection moved = LinearCcaFit((a * x1).colwise() + b, x2, 2, 0.0);
  CHECK((base.values - moved.values).cwiseAbs().maxCoeff() < 1e-8);
  const Matrix z = ProjectLinear(base, x1, 1);
  const Matrix zm = ProjectLinear(moved, (a * x1).colwise() + b, 1);
  CHECK(std::abs(std::abs(Correlation(z.row(0), zm.row(0))) - 1.0) < 1e-8);
}

TEST_CASE("two-class LDA recovers the Fisher direction") {
  Rng rng(55);
  const LabelVector y = ClassLabels(400, 2);
  const Matrix x = ClassData(y, 5, 2.0, &rng);
  const LinearProjection lda = LdaFit(x, y, 1, 0.0);
  const auto [sw, sb] = Scatter(x, y);
  Vector m0 = Vector::Zero(5), m1 = Vector::Zero(5);
  for (int i = 0; i < 400; ++i) (y[i] ? m1 : m0) += x.col(i) / 200.0;
  const Vector fisher = sw.ldlt().solve(m1 - m0);
  const double cosine = std::abs(fisher.normalized().dot(lda.w1.col(0).normalized()));
  CHECK(std::acos(std::min(1.0, cosine)) < 1e-3);
  CHECK(std::abs(lda.w1.col(0).transpose() * sw * lda.w1.col(0) - 1.0) < 1e-8);
}

TEST_CASE("LDA top direction maximizes the Fisher ratio") {
  Rng rng(56);
  const LabelVector y = ClassLabels(300, 3);
  const Matrix x = ClassData(y, 4, 1.5, &rng);
  const double r = 1e-3;
  const LinearProjection lda = LdaFit(x, y, 2, r);
  auto [sw, sb] = Scatter(x, y);
  sw.diagonal().array() += r;
  auto ratio = [&](const Vector &w) { return (w.transpose() * sb * w)(0) / (w.transpose() * sw * w)(0); };
  const double top = ratio(lda.w1.col(0));
  CHECK(std::abs(top - lda.values(0)) < 1e-8);
  CHECK(lda.values(0) >= lda.values(1));
  for (int trial = 0; trial < 100; ++trial) CHECK(ratio(Gaussian(4, 1, &rng)) <= top + 1e-12);
}

TEST_CASE("LDA ignores class relabeling") {
  Rng rng(57);
  const LabelVector y = ClassLabels(120, 3);
  const Matrix x = ClassData(y, 4, 1.0, &rng);
  LabelVector permuted = y;
  for (int &label : permuted) label = (label + 1) % 3;
  const LinearProjection a = LdaFit(x, y, 2, 1e-4);
  const LinearProjection b = LdaFit(x, permuted, 2, 1e-4);
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((a.w1 - b.w1).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("LDA tolerates a constant feature") {
  Rng rng(58);
  const LabelVector y = ClassLabels(90, 3);
  Matrix x = ClassData(y, 3, 1.0, &rng);
  x.row(1).setConstant(4.0);
  const LinearProjection lda = LdaFit(x, y, 2, 1e-4);
  CHECK(lda.w1.allFinite());
  CHECK(ProjectLinear(lda, x).allFinite());
}

TEST_CASE("random features approximate the Gaussian kernel") {
  Rng rng(59);
  const Matrix x = 0.5 * Gaussian(3, 40, &rng);
  const double bandwidth = 1.0;
  const RandomFeatureMap map = MakeRandomFeatureMap(3, 2000, bandwidth, &rng);
  const Matrix phi = map.Apply(x);
  CHECK(phi.rows() == 2000);
  double total = 0.0;
  int pairs = 0;
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 40; ++j) {
      const double exact = std::exp(-(x.col(i) - x.col(j)).squaredNorm() / (2 * bandwidth * bandwidth));
      total += std::abs(phi.col(i).dot(phi.col(j)) - exact);
      ++pairs;
    }
  CHECK(total / pairs < 0.05);
}

TEST_CASE("median bandwidth") {
  Matrix x(1, 3);
  x << 0, 1, 3;
  Rng rng(60);
  CHECK(MedianBandwidth(x, 1000, &rng) == doctest::Approx(2.0));
  CHECK(MedianBandwidth(Matrix::Ones(2, 5), 1000, &rng) == 1.0);
}

TEST_CASE("kernel CCA with a very wide kernel behaves like linear CCA") {
  Rng rng(61);
  const Matrix shared = Gaussian(1, 300, &rng);
  const Matrix x1 = 0.3 * Gaussian(2, 300, &rng) + Gaussian(2, 1, &rng) * shared;
  const Matrix x2 = 0.3 * Gaussian(2, 300, &rng) + Gaussian(2, 1, &rng) * shared;
  RffOptions opts;
  opts.n_features = 500;
  opts.bandwidth = 200.0;
  opts.r = 1e-8;
  opts.seed = 3;
  const LinearProjection kcca = RffKccaFit(x1, x2, 1, opts);
  const LinearProjection cca = LinearCcaFit(x1, x2, 1, 1e-8);
  CHECK(std::abs(kcca.values(0) - cca.values(0)) < 0.02);
  const double agreement = std::abs(Correlation(ProjectLinear(kcca, x1, 1), ProjectLinear(cca, x1, 1)));
  CHECK(agreement > 0.98);
}

TEST_CASE("kernel CCA is deterministic in the seed") {
  Rng rng(62);
  const Matrix x1 = Gaussian(3, 80, &rng);
  const Matrix x2 = Gaussian(2, 80, &rng) + x1.topRows(2);
  RffOptions opts;
  opts.n_features = 100;
  opts.seed = 7;
  const LinearProjection a = RffKccaFit(x1, x2, 2, opts);
  const LinearProjection b = RffKccaFit(x1, x2, 2, opts);
  CHECK(a.w1 == b.w1);
  CHECK(a.map1->omega == b.map1->omega);
  CHECK(ProjectLinear(a, x1, 1) == ProjectLinear(b, x1, 1));
  CHECK(ProjectLinear(a, x2, 2).rows() == 2);
}

TEST_CASE("method names and argument errors") {
  CHECK(ParseProjectionMethod("kcca") == ProjectionMethod::kRffKcca);
  CHECK(std::string(ProjectionMethodName(ProjectionMethod::kLda)) == "lda");
  CHECK_THROWS_AS(ParseProjectionMethod("pca"), Error);
  Rng rng(63);
  CHECK_THROWS_AS(LinearCcaFit(Gaussian(2, 10, &rng), Gaussian(2, 9, &rng), 1, 1e-4), Error);
  CHECK_THROWS_AS(LinearCcaFit(Gaussian(2, 10, &rng), Gaussian(2, 10, &rng), 3, 1e-4), Error);
  const LinearProjection lda = LdaFit(Gaussian(2, 10, &rng), ClassLabels(10, 2), 1, 1e-4);
  CHECK_THROWS_AS(ProjectLinear(lda, Gaussian(2, 3, &rng), 2), Error);
}
