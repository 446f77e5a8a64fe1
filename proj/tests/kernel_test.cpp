//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.h"
#include "protfold/error.h"
#include "protfold/kernel.h"

using namespace protfold;

namespace {

Eigen::MatrixXd euclidean(const Eigen::MatrixXd &x) {
  Eigen::MatrixXd d(x.rows(), x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.rows(); ++j) d(i, j) = (x.row(i) - x.row(j)).norm();
  }
  return d;
}

std::string random_string(std::mt19937_64 &rng, int len) {
  std::uniform_int_distribution<int> pick(0, 4);
  std::string s;
  for (int i = 0; i < len; ++i) s.push_back("ACDEF"[pick(rng)]);
  return s;
}

}  // namespace

TEST(Centering, TwoPointsOnALine) {
  Eigen::MatrixXd d(2, 2);
  d << 0, 1, 1, 0;
  auto k = center_to_kernel(d).kernel.values;
  Eigen::MatrixXd expected(2, 2);
  expected << 0.25, -0.25, -0.25, 0.25;
  EXPECT_TRUE(k.isApprox(expected, 1e-15));
}

TEST(Centering, ZeroDistances) {
  auto k = center_to_kernel(Eigen::MatrixXd::Zero(4, 4)).kernel;
  EXPECT_TRUE(k.values.isZero());
  EXPECT_TRUE(k.is_psd);
}

TEST(Centering, EuclideanMatchesCenteredGram) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> n;
  for (int t = 0; t < 20; ++t) {
    Eigen::MatrixXd x(10, 4);
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 4; ++j) x(i, j) = n(rng);
    }
    auto k = center_to_kernel(euclidean(x)).kernel;
    EXPECT_LT((k.values - oracle::centered_gram(x)).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_TRUE(k.is_psd);
    EXPECT_LT(k.values.rowwise().sum().cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Centering, IndefiniteFlaggedNotCorrected) {
  // Distances violating the triangle inequality cannot be embedded.
  Eigen::MatrixXd d(3, 3);
  d << 0, 1, 5, 1, 0, 1, 5, 1, 0;
  auto c = center_to_kernel(d);
  EXPECT_FALSE(c.kernel.is_psd);
  EXPECT_LT(c.kernel.min_eigenvalue, 0.0);
  Eigen::MatrixXd c_mat = Eigen::MatrixXd::Identity(3, 3) - Eigen::MatrixXd::Constant(3, 3, 1.0 / 3);
  Eigen::MatrixXd expected = -0.5 * c_mat * d.cwiseProduct(d) * c_mat;
  EXPECT_LT((c.kernel.values - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Centering, Errors) {
  EXPECT_THROW(center_to_kernel(Eigen::MatrixXd::Zero(1, 1)), DataError);
  Eigen::MatrixXd asym(2, 2);
  asym << 0, 1, 2, 0;
  EXPECT_THROW(center_to_kernel(asym), DataError);
}

TEST(KernelRow, TrainingPatternReproducesColumn) {
  std::mt19937_64 rng(32);
  std::vector<std::string> train;
  for (int i = 0; i < 6; ++i) train.push_back(random_string(rng, 5 + i % 3));
  const auto scheme = CostScheme::unit();
  auto centered = center_to_kernel(pairwise_distances(train, scheme), scheme.fingerprint());
  for (int k = 0; k < 6; ++k) {
    Eigen::VectorXd row = kernel_row(train[k], train, scheme, centered.stats);
    EXPECT_LT((row - centered.kernel.values.col(k)).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(KernelRow, MatchesExtendedMatrixOracle) {
  std::mt19937_64 rng(33);
  const auto scheme = CostScheme::unit();
  for (int t = 0; t < 20; ++t) {
    std::vector<std::string> train;
    for (int i = 0; i < 5; ++i) train.push_back(random_string(rng, 4 + i));
    const std::string probe = random_string(rng, 6);
    auto centered = center_to_kernel(pairwise_distances(train, scheme), scheme.fingerprint());
    std::vector<std::string> extended = train;
    extended.push_back(probe);
    Eigen::VectorXd expected =
        oracle::extended_centering_row(pairwise_distances(extended, scheme));
    Eigen::VectorXd got = kernel_row(probe, train, scheme, centered.stats);
    EXPECT_LT((got - expected).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(KernelRow, Errors) {
  const auto scheme = CostScheme::unit();
  std::vector<std::string> train {"AC", "DE", "FA"};
  auto centered = center_to_kernel(pairwise_distances(train, scheme), scheme.fingerprint());
  EXPECT_THROW(kernel_row("AC", train, CostScheme::unit(2.0), centered.stats), ConfigError);
  std::vector<std::string> none;
  EXPECT_THROW(kernel_row("AC", none, scheme, centered.stats), DataError);
  CenteringStats empty;
  std::vector<double> nothing;
  EXPECT_THROW(kernel_row(nothing, empty), DataError);
}

TEST(Gaussian, FormulaAndLimits) {
  Eigen::MatrixXd x(3, 2);
  x << 0, 0, 1, 0, 0, 2;
  auto k = gaussian_kernel(x, 1.0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double d2 = (x.row(i) - x.row(j)).squaredNorm();
      EXPECT_NEAR(k.values(i, j), std::exp(-d2 / 2.0), 1e-15);
    }
    EXPECT_EQ(k.values(i, i), 1.0);
  }
  EXPECT_TRUE(k.is_psd);
  auto wide = gaussian_kernel(x, 1e6);
  EXPECT_LT((wide.values - Eigen::MatrixXd::Ones(3, 3)).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_THROW(gaussian_kernel(x, 0.0), ConfigError);
  EXPECT_THROW(gaussian_kernel(x, -1.0), ConfigError);
}

TEST(Gaussian, AlwaysPsdOnRandomInputs) {
  std::mt19937_64 rng(34);
  std::normal_distribution<double> n;
  for (int t = 0; t < 20; ++t) {
    Eigen::MatrixXd x(15, 3);
    for (int i = 0; i < 15; ++i) {
      for (int j = 0; j < 3; ++j) x(i, j) = n(rng);
    }
    EXPECT_TRUE(gaussian_kernel(x, 0.3 + t * 0.1).is_psd);
  }
}

TEST(MatrixIo, BinaryRoundTripAndHeader) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Random(5, 5);
  std::stringstream buf;
  write_matrix_binary(buf, m);
  const std::string bytes = buf.str();
  EXPECT_EQ(bytes.size(), 8u + 25u * 8u);
  EXPECT_EQ(bytes.substr(0, 4), "PFKM");
  std::istringstream in(bytes);
  EXPECT_EQ(read_matrix_binary(in), m);
  std::istringstream bad("nope");
  EXPECT_THROW(read_matrix_binary(bad), DataError);
}
