// tests/unit/test_linalg.cpp

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

#include <limits>

#include "mdnn/error.hpp"
#include "mdnn/linalg.hpp"
#include "test_util.hpp"

using namespace mdnn;
using test::Gaussian;

TEST_CASE("center subtracts row means") {
  Matrix a(1, 2);
  a << 1, -1;
  CHECK(Center(a).isApprox(a));
  Matrix b(1, 2);
  b << 2, 4;
  Matrix expected(1, 2);
  expected << -1, 1;
  CHECK(Center(b).isApprox(expected));

  Rng rng(1);
  const Matrix z = Gaussian(5, 20, &rng);
  const Matrix c = Center(z);
  for (Eigen::Index r = 0; r < c.rows(); ++r) CHECK(std::abs(c.row(r).sum()) < 1e-12);
  CHECK((Center(c) - c).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("center rejects a single sample") {
  Matrix one(3, 1);
  one.setOnes();
  CHECK_THROWS_AS(Center(one), Error);
  try {
    Center(one);
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kDegenerateBatch);
  }
}

TEST_CASE("symmetric eigendecomposition") {
  SymEig id = SymmetricEig(Matrix::Identity(3, 3));
  CHECK(id.eigenvalues.isApprox(Vector::Ones(3)));

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = 4;
  SymEig e = SymmetricEig(d);
  CHECK(e.eigenvalues(0) == doctest::Approx(4));
  CHECK(e.eigenvalues(1) == doctest::Approx(1));
  CHECK(std::abs(e.eigenvectors(1, 0)) == doctest::Approx(1));
  CHECK(std::abs(e.eigenvectors(0, 1)) == doctest::Approx(1));

  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = test::RandomSpd(6, &rng);
    const SymEig s = SymmetricEig(a);
    const Matrix recon = s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.transpose();
    CHECK((a - recon).norm() <= 1e-8 * a.norm());
    CHECK((s.eigenvectors.transpose() * s.eigenvectors - Matrix::Identity(6, 6)).norm() < 1e-10);
    for (int k = 0; k + 1 < 6; ++k) CHECK(s.eigenvalues(k) >= s.eigenvalues(k + 1));
    for (int k = 0; k < 6; ++k)
      CHECK((a * s.eigenvectors.col(k) - s.eigenvalues(k) * s.eigenvectors.col(k)).norm() <= 1e-8 * a.norm());
  }
  CHECK_THROWS_AS(SymmetricEig(Matrix::Zero(2, 3)), Error);
}

TEST_CASE("eigenvector signs are deterministic") {
  Rng rng(3);
  const Matrix a = test::RandomSpd(5, &rng);
  const SymEig s = SymmetricEig(a);
  for (Eigen::Index k = 0; k < 5; ++k) {
    Eigen::Index arg;
    s.eigenvectors.col(k).cwiseAbs().maxCoeff(&arg);
    CHECK(s.eigenvectors(arg, k) > 0);
  }
}

TEST_CASE("inverse square root of SPD matrices") {
  CHECK(InvSqrtSpd(Matrix::Identity(3, 3)).isApprox(Matrix::Identity(3, 3)));
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 4;
  d(1, 1) = 9;
  const Matrix b = InvSqrtSpd(d);
  CHECK(b(0, 0) == doctest::Approx(0.5));
  CHECK(b(1, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(std::abs(b(0, 1)) < 1e-15);

  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = test::RandomSpd(5, &rng);
    const Matrix s = InvSqrtSpd(a);
    CHECK((s - s.transpose()).norm() == 0.0);
    CHECK((s * a * s - Matrix::Identity(5, 5)).norm() < 1e-6);
    CHECK((s * s * a - Matrix::Identity(5, 5)).norm() < 1e-5);
  }
}

TEST_CASE("inverse square root clamps tiny eigenvalues and rejects negative ones") {
  Matrix singular = Matrix::Zero(2, 2);
  singular(0, 0) = 1.0;
  const Matrix s = InvSqrtSpd(singular, 1e-12);
  CHECK(s.allFinite());
  CHECK(s(1, 1) == doctest::Approx(1e6));

  Matrix negative = Matrix::Identity(2, 2);
  negative(1, 1) = -0.5;
  try {
    InvSqrtSpd(negative);
    FAIL("expected not-SPD error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kNotSpd);
  }
}

TEST_CASE("thin SVD") {
  const ThinSvd zero = SvdThin(Matrix::Zero(3, 3));
  CHECK(zero.S.isZero());

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3;
  d(1, 1) = 2;
  const ThinSvd diag = SvdThin(d);
  CHECK(diag.S(0) == doctest::Approx(3));
  CHECK(diag.S(1) == doctest::Approx(2));

  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = Gaussian(4, 6, &rng);
    const ThinSvd svd = SvdThin(m);
    CHECK(svd.U.cols() == 4);
    CHECK(svd.V.cols() == 4);
    CHECK((m - svd.U * svd.S.asDiagonal() * svd.V.transpose()).norm() <= 1e-8 * m.norm());
    CHECK((svd.U.transpose() * svd.U - Matrix::Identity(4, 4)).norm() < 1e-10);
    CHECK((svd.V.transpose() * svd.V - Matrix::Identity(4, 4)).norm() < 1e-10);
    // Singular values are the square roots of the eigenvalues of M^T M.
    const SymEig e = SymmetricEig(m.transpose() * m);
    for (int k = 0; k < 4; ++k)
      CHECK(std::abs(svd.S(k) - std::sqrt(e.eigenvalues(k))) <= 1e-8 * svd.S(k));
  }
}

TEST_CASE("non-finite input is reported") {
  Matrix m = Matrix::Ones(2, 2);
  m(1, 0) = std::numeric_limits<double>::quiet_NaN();
  try {
    RequireFinite(m, "batch");
    FAIL("expected non-finite error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kNonFinite);
  }
}
