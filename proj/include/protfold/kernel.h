//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROTFOLD_KERNEL_H_
#define PROTFOLD_KERNEL_H_

#include <iosfwd>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "protfold/seqdist.h"

namespace protfold {

struct KernelMatrix {
  Eigen::MatrixXd values;
  bool is_psd = false;
  double min_eigenvalue = 0.0;
};

/// Training-side statistics of the squared distances, kept so that new
/// patterns can be centered against the training set.
struct CenteringStats {
  Eigen::VectorXd column_means;  // mean_i D2(i, j)
  double grand_mean = 0.0;       // mean_ij D2(i, j)
  std::string scheme_fingerprint;
};

struct CenteredKernel {
  KernelMatrix kernel;
  CenteringStats stats;
};

// Throws unless d is square, symmetric, non-negative with a zero diagonal.
void validate_distance_matrix(const Eigen::MatrixXd &d);

/// K = -1/2 C (D o D) C with C = I - 11'/n. The result is symmetrized against
/// round-off and never corrected when indefinite; is_psd reports whether the
/// smallest eigenvalue is >= -1e-8 * max |eigenvalue|.
CenteredKernel center_to_kernel(const Eigen::MatrixXd &d, std::string scheme_fingerprint = {});

/// Out-of-sample kernel row for a pattern with distances `to_train` to the
/// training patterns:
///   k_j = -1/2 (s_j - mean(s) - column_means_j + grand_mean),  s = to_train^2.
/// For a training pattern this reproduces its row of the training kernel.
Eigen::VectorXd kernel_row(std::span<const double> to_train, const CenteringStats &stats);

Eigen::VectorXd kernel_row(std::string_view pattern, std::span<const std::string> train,
                           const CostScheme &scheme, const CenteringStats &stats);
Eigen::VectorXd kernel_row(std::span<const Vec3> pattern, std::span<const VectorSequence> train,
                           const CostScheme &scheme, const CenteringStats &stats);

// Row i of the result is kernel_row(cross.row(i)).
Eigen::MatrixXd kernel_rows(const Eigen::MatrixXd &cross, const CenteringStats &stats);

// K_ij = exp(-|x_i - x_j|^2 / (2 sigma^2)) over the rows of x.
KernelMatrix gaussian_kernel(const Eigen::MatrixXd &x, double sigma);
Eigen::MatrixXd gaussian_cross_kernel(const Eigen::MatrixXd &rows, const Eigen::MatrixXd &cols,
                                      double sigma);

// Smallest eigenvalue of a symmetric matrix and the PSD verdict above.
std::pair<double, bool> psd_check(const Eigen::MatrixXd &k);

// Binary layout: "PFKM" magic, uint32 n (little endian), n*n float64 row-major.
void write_matrix_binary(std::ostream &out, const Eigen::MatrixXd &m);
Eigen::MatrixXd read_matrix_binary(std::istream &in);
void write_matrix_csv(std::ostream &out, const Eigen::MatrixXd &m);

}  // namespace protfold

#endif  // PROTFOLD_KERNEL_H_
