//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Reference implementations used only by tests. Each one computes its answer
// by a different route than the library (enumeration, iteration or a
// closed form) so agreement is meaningful.
//

#ifndef PROTFOLD_TESTS_ORACLES_H_
#define PROTFOLD_TESTS_ORACLES_H_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "protfold/datamodel.h"
#include "protfold/graph.h"
#include "protfold/types.h"

namespace oracle {

// Minimum cost over every edit script, by plain recursion with no table.
double edit_distance(const std::string &a, const std::string &b,
                     const std::function<double(char, char)> &substitution, double indel);

// All pairs (i < j) with r_min < |p_i - p_j| < r_max.
std::vector<std::pair<int, int>> contact_pairs(std::span<const protfold::Vec3> positions,
                                               double r_min, double r_max);

// Stationary distribution of the row-stochastic matrix by power iteration on
// the lazy chain (I + T) / 2.
Eigen::VectorXd stationary_by_power_iteration(const Eigen::MatrixXd &transition,
                                              int max_iter = 200000, double tol = 1e-15);

// Gram matrix of the centered rows of x.
Eigen::MatrixXd centered_gram(const Eigen::MatrixXd &x);

// Kernel row of an out-of-sample point from the (m + 1) x (m + 1) distance
// matrix whose last row/column is the new point, centered with weights that
// put all mass on the m training points.
Eigen::VectorXd extended_centering_row(const Eigen::MatrixXd &extended_distances);

// Maximum of sum(a) - a'Qa/2 subject to y'a = 0, 0 <= a <= c, found by
// solving the stationarity system on every assignment of variables to
// {lower bound, free, upper bound} and keeping the best feasible point.
struct QpSolution {
  double objective;
  Eigen::VectorXd alpha;
};
QpSolution svm_dual_by_enumeration(const Eigen::MatrixXd &k, const std::vector<int> &y, double c);

// Threshold search over every integer t in [min length, max length + 1].
struct BruteBaseline {
  std::size_t min_errors;
  std::size_t smallest_threshold;
  std::vector<int> predictions_at_smallest;  // +1 soluble
};
BruteBaseline baseline_by_scan(std::span<const std::pair<std::size_t, protfold::SolubilityClass>> train);

// Fuzzy memberships from the block formulas, written out directly.
std::vector<double> memberships(const protfold::LabeledGraph &g, const std::vector<int> &blocks);
double de_luca_termini(const std::vector<double> &mu);

// Union-find check that every block is connected and that only isolated
// vertices sit alone.
bool admissible(const protfold::LabeledGraph &g, const std::vector<int> &blocks);

// Minimum entropy over all admissible set partitions, enumerated recursively.
double ambiguity_by_enumeration(const protfold::LabeledGraph &g);

}  // namespace oracle

#endif  // PROTFOLD_TESTS_ORACLES_H_
