//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROTFOLD_SVM_H_
#define PROTFOLD_SVM_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace protfold {

struct SvmConfig {
  double c = 2.0;
  double tol = 1e-3;         // maximal KKT violation at convergence
  std::size_t max_iter = 0;  // pair updates; 0 means 10^4 * n
  // Per-class multipliers of C (class imbalance); 1 leaves plain C-SVM.
  double positive_weight = 1.0;
  double negative_weight = 1.0;
};

/// Binary C-SVM decision function over a precomputed training kernel.
/// Labels are +1 (soluble) / -1 (insoluble).
struct SvmModel {
  std::vector<std::size_t> support;  // training indices with alpha > 1e-12
  std::vector<double> coef;          // alpha_i * y_i, aligned with support
  double bias = 0.0;
  double c = 0.0;
  std::size_t training_size = 0;
  std::string kernel_fingerprint;
  bool converged = false;
  bool indefinite_steps = false;  // a non-positive curvature step was clamped
  std::size_t iterations = 0;
  double dual_objective = 0.0;  // sum(alpha) - 1/2 alpha' Q alpha
};

struct TrainTrace {
  std::vector<double> objective;  // dual objective after every pair update
  std::vector<double> alpha;      // final dual variables
};

/// Sequential two-variable dual optimization with maximal-violating-pair
/// selection. Stops when the KKT violation is below `tol`, or after
/// `max_iter` updates with converged = false.
SvmModel train(const Eigen::MatrixXd &k, std::span<const int> labels, const SvmConfig &config,
               TrainTrace *trace = nullptr);

struct Prediction {
  int label;  // sign(score), with sign(0) = +1
  double score;
};

Prediction predict(const SvmModel &model, std::span<const double> k_row);

/// Table-style error counts. "Positive" is soluble (+1), "negative" insoluble.
struct ErrorReport {
  std::size_t errors_negative = 0;
  std::size_t count_negative = 0;
  std::size_t errors_positive = 0;
  std::size_t count_positive = 0;

  // Rates are 0 for an empty class.
  double rate_negative() const;
  double rate_positive() const;
  double global_rate() const;
  double accuracy() const { return 1.0 - global_rate(); }
  double balanced_accuracy() const;
};

ErrorReport error_report(std::span<const int> predicted, std::span<const int> truth);

// Each row of `rows` holds kernel values of one test pattern vs the training set.
ErrorReport evaluate(const SvmModel &model, const Eigen::MatrixXd &rows,
                     std::span<const int> labels);

std::string kernel_fingerprint(const Eigen::MatrixXd &k);

nlohmann::json model_to_json(const SvmModel &model);
SvmModel model_from_json(const nlohmann::json &j);

}  // namespace protfold

#endif  // PROTFOLD_SVM_H_
