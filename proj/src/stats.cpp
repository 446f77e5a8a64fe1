//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "protfold/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>

#include <fmt/format.h>

#include "protfold/error.h"
#include "protfold/util.h"

namespace protfold {
namespace {

Eigen::MatrixXd centered(const Eigen::MatrixXd &x) {
  return x.rowwise() - x.colwise().mean();
}

// Flips each column so that its largest-magnitude entry is positive.
void fix_column_signs(Eigen::MatrixXd &m, Eigen::MatrixXd *companion1 = nullptr,
                      Eigen::MatrixXd *companion2 = nullptr,
                      Eigen::MatrixXd *companion3 = nullptr) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Eigen::Index arg = 0;
    m.col(c).cwiseAbs().maxCoeff(&arg);
    if (m(arg, c) < 0.0) {
      m.col(c) *= -1.0;
      for (auto *other : {companion1, companion2, companion3}) {
        if (other != nullptr) other->col(c) *= -1.0;
      }
    }
  }
}

struct InverseSqrt {
  Eigen::MatrixXd value;
  bool ridged = false;
};

// C^{-1/2} of a covariance block, ridged when not numerically PD.
InverseSqrt inverse_sqrt(const Eigen::MatrixXd &cov, double ridge_factor, const char *block) {
  const auto dim = cov.rows();
  const double trace = cov.trace();
  if (!(trace > 0.0)) {
    throw NumericError(fmt::format("CCA: {} block has zero variance", block));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  InverseSqrt out;
  Eigen::VectorXd values = eig.eigenvalues();
  if (values.minCoeff() <= 1e-12 * values.maxCoeff()) {
    const double lambda = ridge_factor * trace / static_cast<double>(dim);
    values.array() += lambda;
    out.ridged = true;
    if (!(values.minCoeff() > 0.0)) {
      throw NumericError(
          fmt::format("CCA: {} block is rank deficient beyond ridge repair", block));
    }
  }
  out.value = eig.eigenvectors() * values.cwiseInverse().cwiseSqrt().asDiagonal()
              * eig.eigenvectors().transpose();
  return out;
}

Eigen::MatrixXd column_correlations(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b) {
  Eigen::MatrixXd ac = centered(a), bc = centered(b);
  Eigen::VectorXd sa = ac.colwise().norm(), sb = bc.colwise().norm();
  Eigen::MatrixXd r = ac.transpose() * bc;
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    for (Eigen::Index j = 0; j < r.cols(); ++j) {
      double denom = sa[i] * sb[j];
      r(i, j) = denom > 0.0 ? std::clamp(r(i, j) / denom, -1.0, 1.0) : 0.0;
    }
  }
  return r;
}

void check_cca_inputs(const Eigen::MatrixXd &x, const Eigen::MatrixXd &y) {
  if (x.rows() != y.rows()) {
    throw DataError(fmt::format("CCA: blocks have {} and {} rows", x.rows(), y.rows()));
  }
  if (x.rows() < 2 || x.cols() < 1 || y.cols() < 1) {
    throw DataError("CCA needs at least 2 observations and 1 variable per block");
  }
}

}  // namespace

PcaResult pca(const Eigen::MatrixXd &x, int k, bool standardize) {
  const auto n = x.rows(), d = x.cols();
  if (n < 2) throw DataError("PCA needs at least 2 observations");
  if (k < 1 || k > std::min<Eigen::Index>(n - 1, d)) {
    throw ConfigError(fmt::format("PCA: k = {} outside [1, min(n - 1, d) = {}]", k,
                                  std::min<Eigen::Index>(n - 1, d)));
  }
  if (!x.allFinite()) throw DataError("PCA input contains non-finite values");

  PcaResult out;
  out.mean = x.colwise().mean();
  Eigen::MatrixXd xc = x.rowwise() - out.mean;
  out.scale = Eigen::RowVectorXd::Ones(d);
  if (standardize) {
    for (Eigen::Index c = 0; c < d; ++c) {
      double sd = xc.col(c).norm() / std::sqrt(static_cast<double>(n - 1));
      if (!(sd > 1e-12 * std::max(1.0, std::abs(out.mean[c])))) {
        throw DataError(fmt::format("PCA: column {} has zero variance", c));
      }
      out.scale[c] = sd;
    }
    xc = xc.array().rowwise() / out.scale.array();
  }

  Eigen::MatrixXd cov = xc.transpose() * xc / static_cast<double>(n - 1);
  if (!(cov.trace() > 0.0)) throw NumericError("PCA: data has zero variance");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success) throw NumericError("PCA eigensolver failed");

  out.eigenvalues = eig.eigenvalues().reverse().cwiseMax(0.0);
  const double total = out.eigenvalues.sum();
  out.explained_fraction = out.eigenvalues.head(k) / total;
  out.loadings = eig.eigenvectors().rowwise().reverse().leftCols(k);
  fix_column_signs(out.loadings);
  out.scores = xc * out.loadings;
  return out;
}

PcaResult components_of_cost_matrix(const CostMatrix &costs, int k, bool standardize) {
  return pca(Eigen::MatrixXd(costs.matrix()), k, standardize);
}

Eigen::VectorXd CcaResult::approx_std_error() const {
  const double root = std::sqrt(static_cast<double>(observations) - 1.0);
  return (1.0 - correlations.array().square()) / root;
}

CcaResult cca(const Eigen::MatrixXd &x, const Eigen::MatrixXd &y, const CcaOptions &options) {
  check_cca_inputs(x, y);
  const auto n = x.rows();
  Eigen::MatrixXd xc = centered(x), yc = centered(y);
  const double denom = static_cast<double>(n - 1);
  Eigen::MatrixXd cxx = xc.transpose() * xc / denom;
  Eigen::MatrixXd cyy = yc.transpose() * yc / denom;
  Eigen::MatrixXd cxy = xc.transpose() * yc / denom;

  auto wx_half = inverse_sqrt(cxx, options.ridge_factor, "X");
  auto wy_half = inverse_sqrt(cyy, options.ridge_factor, "Y");
  Eigen::MatrixXd m = wx_half.value * cxy * wy_half.value;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto dims = std::min(x.cols(), y.cols());

  CcaResult out;
  out.observations = static_cast<std::size_t>(n);
  out.x_ridged = wx_half.ridged;
  out.y_ridged = wy_half.ridged;
  out.correlations = svd.singularValues().head(dims).cwiseMin(1.0).cwiseMax(0.0);
  out.x_weights = wx_half.value * svd.matrixU().leftCols(dims);
  out.y_weights = wy_half.value * svd.matrixV().leftCols(dims);
  out.x_scores = xc * out.x_weights;
  out.y_scores = yc * out.y_weights;
  out.x_structure = column_correlations(x, out.x_scores);
  fix_column_signs(out.x_structure, &out.x_weights, &out.x_scores);
  // Keep each pair positively correlated after the X-side sign choice.
  for (Eigen::Index c = 0; c < dims; ++c) {
    if (out.x_scores.col(c).dot(out.y_scores.col(c)) < 0.0) {
      out.y_weights.col(c) *= -1.0;
      out.y_scores.col(c) *= -1.0;
    }
  }
  out.y_structure = column_correlations(y, out.y_scores);
  return out;
}

Eigen::VectorXd cca_permutation_test(const Eigen::MatrixXd &x, const Eigen::MatrixXd &y,
                                     int permutations, std::uint64_t seed,
                                     const CcaOptions &options) {
  if (permutations < 1) throw ConfigError("permutation count must be positive");
  const Eigen::VectorXd observed = cca(x, y, options).correlations;
  Eigen::VectorXd exceed = Eigen::VectorXd::Zero(observed.size());

  std::vector<Eigen::Index> rows(static_cast<std::size_t>(x.rows()));
  for (int p = 0; p < permutations; ++p) {
    std::iota(rows.begin(), rows.end(), Eigen::Index {0});
    std::mt19937_64 rng(stage_seed(seed, fmt::format("permutation-{}", p)));
    std::shuffle(rows.begin(), rows.end(), rng);
    Eigen::MatrixXd shuffled(y.rows(), y.cols());
    for (Eigen::Index r = 0; r < y.rows(); ++r) shuffled.row(r) = y.row(rows[r]);
    Eigen::VectorXd r = cca(x, shuffled, options).correlations;
    for (Eigen::Index k = 0; k < observed.size(); ++k) {
      if (r[k] >= observed[k]) exceed[k] += 1.0;
    }
  }
  return (exceed.array() + 1.0) / (permutations + 1.0);
}

void write_cca_table(std::ostream &out, const CcaResult &result,
                     const Eigen::VectorXd &p_values) {
  const Eigen::VectorXd se = result.approx_std_error();
  out << "variate,canonical_correlation,approx_std_error,squared_cc";
  if (p_values.size() > 0) out << ",p_value";
  out << '\n';
  for (Eigen::Index k = 0; k < result.correlations.size(); ++k) {
    const double r = result.correlations[k];
    out << fmt::format("{},{:.6f},{:.6f},{:.6f}", k + 1, r, se[k], r * r);
    if (p_values.size() > 0) out << fmt::format(",{:.4f}", p_values[k]);
    out << '\n';
  }
}

void write_structure_table(std::ostream &out, const Eigen::MatrixXd &structure,
                           const std::vector<std::string> &variable_names) {
  out << "variable";
  for (Eigen::Index c = 0; c < structure.cols(); ++c) out << ",variate_" << c + 1;
  out << '\n';
  for (Eigen::Index r = 0; r < structure.rows(); ++r) {
    out << (static_cast<std::size_t>(r) < variable_names.size()
                ? variable_names[static_cast<std::size_t>(r)]
                : fmt::format("v{}", r + 1));
    for (Eigen::Index c = 0; c < structure.cols(); ++c) {
      out << fmt::format(",{:.4f}", structure(r, c));
    }
    out << '\n';
  }
}

void write_pca_table(std::ostream &out, const PcaResult &result) {
  out << "component,eigenvalue,explained_fraction,cumulative_fraction\n";
  double cumulative = 0.0;
  for (Eigen::Index k = 0; k < result.explained_fraction.size(); ++k) {
    cumulative += result.explained_fraction[k];
    out << fmt::format("{},{:.6f},{:.6f},{:.6f}\n", k + 1, result.eigenvalues[k],
                       result.explained_fraction[k], cumulative);
  }
}

namespace {

nlohmann::json matrix_json(const Eigen::MatrixXd &m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    std::vector<double> row(m.cols());
    for (Eigen::Index c = 0; c < m.cols(); ++c) row[c] = m(r, c);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> vector_json(const Eigen::VectorXd &v) {
  return {v.data(), v.data() + v.size()};
}

}  // namespace

nlohmann::json pca_to_json(const PcaResult &result) {
  return {{"explained_fraction", vector_json(result.explained_fraction)},
          {"eigenvalues", vector_json(result.eigenvalues)},
          {"loadings", matrix_json(result.loadings)},
          {"scores", matrix_json(result.scores)}};
}

nlohmann::json cca_to_json(const CcaResult &result) {
  return {{"correlations", vector_json(result.correlations)},
          {"approx_std_error", vector_json(result.approx_std_error())},
          {"x_weights", matrix_json(result.x_weights)},
          {"y_weights", matrix_json(result.y_weights)},
          {"x_structure", matrix_json(result.x_structure)},
          {"y_structure", matrix_json(result.y_structure)},
          {"observations", result.observations},
          {"x_ridged", result.x_ridged},
          {"y_ridged", result.y_ridged}};
}

}  // namespace protfold
