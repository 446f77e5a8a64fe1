//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROTFOLD_STATS_H_
#define PROTFOLD_STATS_H_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "protfold/seqdist.h"

namespace protfold {

struct PcaResult {
  Eigen::MatrixXd loadings;            // d x k, unit columns
  Eigen::MatrixXd scores;              // n x k
  Eigen::VectorXd explained_fraction;  // k, non-increasing
  Eigen::VectorXd eigenvalues;         // all d, descending
  Eigen::RowVectorXd mean;
  Eigen::RowVectorXd scale;  // column stddevs when standardized, else ones
};

/// Principal components of the rows of X. Columns are centered (and scaled to
/// unit variance when `standardize`). Each loading column is signed so that
/// its largest-magnitude entry is positive.
PcaResult pca(const Eigen::MatrixXd &x, int k, bool standardize);

// PCA with amino acids as observations and substitution targets as variables.
PcaResult components_of_cost_matrix(const CostMatrix &costs, int k, bool standardize = false);

struct CcaOptions {
  // Ridge lambda = ridge_factor * trace / dim, added to a covariance block
  // only when that block is not numerically positive definite.
  double ridge_factor = 1e-8;
};

struct CcaResult {
  Eigen::VectorXd correlations;  // m = min(p, q), non-increasing
  Eigen::MatrixXd x_weights;     // p x m
  Eigen::MatrixXd y_weights;     // q x m
  Eigen::MatrixXd x_scores;      // n x m, unit variance
  Eigen::MatrixXd y_scores;      // n x m
  Eigen::MatrixXd x_structure;   // p x m, corr(X_j, U_k)
  Eigen::MatrixXd y_structure;   // q x m, corr(Y_j, V_k)
  std::size_t observations = 0;
  bool x_ridged = false;
  bool y_ridged = false;

  // (1 - r^2) / sqrt(n - 1)
  Eigen::VectorXd approx_std_error() const;
};

CcaResult cca(const Eigen::MatrixXd &x, const Eigen::MatrixXd &y, const CcaOptions &options = {});

/// Permutation p-values for each canonical correlation: rows of Y are
/// shuffled `permutations` times; p_k = (1 + #{r_k* >= r_k}) / (1 + permutations).
Eigen::VectorXd cca_permutation_test(const Eigen::MatrixXd &x, const Eigen::MatrixXd &y,
                                     int permutations, std::uint64_t seed,
                                     const CcaOptions &options = {});

// Table writers: canonical correlations (with std err and squared CC), and
// structure correlations for one block.
void write_cca_table(std::ostream &out, const CcaResult &result,
                     const Eigen::VectorXd &p_values = {});
void write_structure_table(std::ostream &out, const Eigen::MatrixXd &structure,
                           const std::vector<std::string> &variable_names);
void write_pca_table(std::ostream &out, const PcaResult &result);

nlohmann::json pca_to_json(const PcaResult &result);
nlohmann::json cca_to_json(const CcaResult &result);

}  // namespace protfold

#endif  // PROTFOLD_STATS_H_
