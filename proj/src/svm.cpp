//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "protfold/svm.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "protfold/error.h"
#include "protfold/util.h"

namespace protfold {
namespace {

constexpr double kTau = 1e-12;  // curvature floor for non-positive steps
constexpr double kSupportEps = 1e-12;

double dual_objective(const std::vector<double> &alpha, const std::vector<double> &grad) {
  // With G = Q alpha - 1: sum(alpha) - 1/2 alpha'Q alpha = -1/2 alpha'(G - 1).
  double f = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) f += alpha[i] * (grad[i] - 1.0);
  return -0.5 * f;
}

}  // namespace

std::string kernel_fingerprint(const Eigen::MatrixXd &k) {
  std::string_view bytes(reinterpret_cast<const char *>(k.data()),
                         sizeof(double) * static_cast<std::size_t>(k.size()));
  return sha256_hex(bytes).substr(0, 16);
}

SvmModel train(const Eigen::MatrixXd &k, std::span<const int> labels, const SvmConfig &config,
               TrainTrace *trace) {
  const auto n = static_cast<std::size_t>(k.rows());
  if (k.rows() != k.cols()) throw DataError("SVM kernel must be square");
  if (n < 2) throw DataError("SVM training needs at least 2 patterns");
  if (labels.size() != n) {
    throw DataError(fmt::format("SVM: {} labels for {} patterns", labels.size(), n));
  }
  if (!(config.c > 0.0)) throw ConfigError(fmt::format("SVM C must be > 0, got {}", config.c));
  if (!(config.positive_weight > 0.0) || !(config.negative_weight > 0.0)) {
    throw ConfigError("SVM class weights must be > 0");
  }
  bool has_pos = false, has_neg = false;
  for (int y : labels) {
    if (y == 1) has_pos = true;
    else if (y == -1) has_neg = true;
    else throw DataError(fmt::format("SVM labels must be +1/-1, got {}", y));
  }
  if (!has_pos || !has_neg) throw DataError("SVM training data contains a single class");

  std::vector<double> upper(n);
  for (std::size_t i = 0; i < n; ++i) {
    upper[i] = config.c * (labels[i] > 0 ? config.positive_weight : config.negative_weight);
  }
  const std::size_t max_iter = config.max_iter > 0 ? config.max_iter : 10000 * n;
  std::vector<double> alpha(n, 0.0), grad(n, -1.0);
  auto y = [&](std::size_t i) { return static_cast<double>(labels[i]); };
  auto q = [&](std::size_t i, std::size_t j) {
    return y(i) * y(j) * k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  };
  auto in_up = [&](std::size_t t) {
    return (labels[t] > 0 && alpha[t] < upper[t]) || (labels[t] < 0 && alpha[t] > 0.0);
  };
  auto in_low = [&](std::size_t t) {
    return (labels[t] > 0 && alpha[t] > 0.0) || (labels[t] < 0 && alpha[t] < upper[t]);
  };

  SvmModel model;
  model.c = config.c;
  model.training_size = n;
  model.kernel_fingerprint = kernel_fingerprint(k);

  std::size_t iter = 0;
  for (;; ++iter) {
    double g_max = -std::numeric_limits<double>::infinity();
    double g_min = std::numeric_limits<double>::infinity();
    std::size_t i = n, j = n;
    for (std::size_t t = 0; t < n; ++t) {
      const double v = -y(t) * grad[t];
      if (in_up(t) && v > g_max) {
        g_max = v;
        i = t;
      }
      if (in_low(t) && v < g_min) {
        g_min = v;
        j = t;
      }
    }
    if (i == n || j == n || g_max - g_min < config.tol) {
      model.converged = true;
      break;
    }
    if (iter >= max_iter) break;

    double curvature = k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i))
                       + k(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j))
                       - 2.0 * k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    if (curvature <= 0.0) {
      curvature = kTau;
      model.indefinite_steps = true;
    }

    const double old_ai = alpha[i], old_aj = alpha[j];
    const double ci = upper[i], cj = upper[j];
    if (labels[i] != labels[j]) {
      double delta = (-grad[i] - grad[j]) / curvature;
      double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > ci - cj) {
        if (alpha[i] > ci) {
          alpha[i] = ci;
          alpha[j] = ci - diff;
        }
      } else if (alpha[j] > cj) {
        alpha[j] = cj;
        alpha[i] = cj + diff;
      }
    } else {
      double delta = (grad[i] - grad[j]) / curvature;
      double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > ci) {
        if (alpha[i] > ci) {
          alpha[i] = ci;
          alpha[j] = sum - ci;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > cj) {
        if (alpha[j] > cj) {
          alpha[j] = cj;
          alpha[i] = sum - cj;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }

    const double dai = alpha[i] - old_ai, daj = alpha[j] - old_aj;
    for (std::size_t t = 0; t < n; ++t) grad[t] += q(t, i) * dai + q(t, j) * daj;
    if (trace != nullptr) trace->objective.push_back(dual_objective(alpha, grad));
  }
  model.iterations = iter;
  model.dual_objective = dual_objective(alpha, grad);

  // Bias from free vectors; midpoint of the feasible interval otherwise.
  double free_sum = 0.0;
  std::size_t free_count = 0;
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y(t) * grad[t];
    if (alpha[t] >= upper[t]) {
      if (labels[t] < 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (alpha[t] <= 0.0) {
      if (labels[t] > 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      free_sum += yg;
      ++free_count;
    }
  }
  const double r = free_count > 0 ? free_sum / static_cast<double>(free_count) : 0.5 * (ub + lb);
  model.bias = -r;

  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > kSupportEps) {
      model.support.push_back(t);
      model.coef.push_back(alpha[t] * y(t));
    }
  }
  if (trace != nullptr) trace->alpha = alpha;
  return model;
}

Prediction predict(const SvmModel &model, std::span<const double> k_row) {
  if (k_row.size() != model.training_size) {
    throw DataError(fmt::format("kernel row has {} entries, model expects {}", k_row.size(),
                                model.training_size));
  }
  double score = model.bias;
  for (std::size_t s = 0; s < model.support.size(); ++s) {
    score += model.coef[s] * k_row[model.support[s]];
  }
  return {score >= 0.0 ? 1 : -1, score};
}

double ErrorReport::rate_negative() const {
  return count_negative > 0 ? static_cast<double>(errors_negative) / static_cast<double>(count_negative) : 0.0;
}

double ErrorReport::rate_positive() const {
  return count_positive > 0 ? static_cast<double>(errors_positive) / static_cast<double>(count_positive) : 0.0;
}

double ErrorReport::global_rate() const {
  const auto total = count_negative + count_positive;
  return total > 0 ? static_cast<double>(errors_negative + errors_positive) / static_cast<double>(total) : 0.0;
}

double ErrorReport::balanced_accuracy() const {
  return 1.0 - 0.5 * (rate_negative() + rate_positive());
}

ErrorReport error_report(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) throw DataError("prediction / label count mismatch");
  if (truth.empty()) throw DataError("cannot evaluate an empty test set");
  ErrorReport r;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool wrong = predicted[i] != truth[i];
    if (truth[i] > 0) {
      ++r.count_positive;
      r.errors_positive += wrong;
    } else {
      ++r.count_negative;
      r.errors_negative += wrong;
    }
  }
  return r;
}

ErrorReport evaluate(const SvmModel &model, const Eigen::MatrixXd &rows,
                     std::span<const int> labels) {
  if (rows.rows() == 0 || labels.empty()) throw DataError("cannot evaluate an empty test set");
  if (static_cast<std::size_t>(rows.rows()) != labels.size()) {
    throw DataError(fmt::format("{} kernel rows for {} labels", rows.rows(), labels.size()));
  }
  std::vector<int> predicted(labels.size());
  Eigen::VectorXd row;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    row = rows.row(i).transpose();
    predicted[static_cast<std::size_t>(i)] =
        predict(model, {row.data(), static_cast<std::size_t>(row.size())}).label;
  }
  return error_report(predicted, labels);
}

nlohmann::json model_to_json(const SvmModel &model) {
  return {{"support", model.support},
          {"coef", model.coef},
          {"bias", model.bias},
          {"c", model.c},
          {"training_size", model.training_size},
          {"kernel_fingerprint", model.kernel_fingerprint},
          {"converged", model.converged},
          {"indefinite_steps", model.indefinite_steps},
          {"iterations", model.iterations},
          {"dual_objective", model.dual_objective}};
}

SvmModel model_from_json(const nlohmann::json &j) {
  try {
    SvmModel m;
    m.support = j.at("support").get<std::vector<std::size_t>>();
    m.coef = j.at("coef").get<std::vector<double>>();
    m.bias = j.at("bias").get<double>();
    m.c = j.at("c").get<double>();
    m.training_size = j.at("training_size").get<std::size_t>();
    m.kernel_fingerprint = j.at("kernel_fingerprint").get<std::string>();
    m.converged = j.at("converged").get<bool>();
    m.indefinite_steps = j.at("indefinite_steps").get<bool>();
    m.iterations = j.at("iterations").get<std::size_t>();
    m.dual_objective = j.at("dual_objective").get<double>();
    if (m.support.size() != m.coef.size()) throw DataError("model json: support/coef mismatch");
    for (auto s : m.support) {
      if (s >= m.training_size) throw DataError("model json: support index out of range");
    }
    return m;
  } catch (const nlohmann::json::exception &ex) {
    throw DataError(fmt::format("model json: {}", ex.what()));
  }
}

}  // namespace protfold
