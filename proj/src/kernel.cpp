//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "protfold/kernel.h"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "protfold/error.h"
#include "protfold/util.h"

namespace protfold {

void validate_distance_matrix(const Eigen::MatrixXd &d) {
  if (d.rows() != d.cols()) {
    throw DataError(fmt::format("distance matrix is {} x {}", d.rows(), d.cols()));
  }
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    if (d(i, i) != 0.0) throw DataError(fmt::format("distance matrix diagonal ({0}, {0}) != 0", i));
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
      if (!std::isfinite(d(i, j)) || d(i, j) < 0.0) {
        throw DataError(fmt::format("distance ({}, {}) is negative or not finite", i, j));
      }
      if (d(i, j) != d(j, i)) {
        throw DataError(fmt::format("distance matrix is not symmetric at ({}, {})", i, j));
      }
    }
  }
}

std::pair<double, bool> psd_check(const Eigen::MatrixXd &k) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericError("kernel eigenvalue check failed");
  const auto &values = eig.eigenvalues();
  const double lo = values.minCoeff();
  const double scale = values.cwiseAbs().maxCoeff();
  return {lo, lo >= -1e-8 * scale};
}

CenteredKernel center_to_kernel(const Eigen::MatrixXd &d, std::string scheme_fingerprint) {
  if (d.rows() < 2) throw DataError("kernel centering needs at least 2 patterns");
  validate_distance_matrix(d);

  const Eigen::MatrixXd d2 = d.cwiseProduct(d);
  CenteredKernel out;
  out.stats.column_means = d2.colwise().mean().transpose();
  out.stats.grand_mean = d2.mean();
  out.stats.scheme_fingerprint = std::move(scheme_fingerprint);

  const auto n = d.rows();
  Eigen::MatrixXd c = Eigen::MatrixXd::Identity(n, n).array() - 1.0 / static_cast<double>(n);
  Eigen::MatrixXd k = -0.5 * c * d2 * c;
  out.kernel.values = 0.5 * (k + k.transpose());
  std::tie(out.kernel.min_eigenvalue, out.kernel.is_psd) = psd_check(out.kernel.values);
  return out;
}

Eigen::VectorXd kernel_row(std::span<const double> to_train, const CenteringStats &stats) {
  const auto m = stats.column_means.size();
  if (m == 0) throw DataError("kernel row requested against an empty training set");
  if (static_cast<Eigen::Index>(to_train.size()) != m) {
    throw DataError(fmt::format("kernel row: {} distances for {} training patterns",
                                to_train.size(), m));
  }
  Eigen::Map<const Eigen::VectorXd> dist(to_train.data(), m);
  Eigen::VectorXd s = dist.cwiseProduct(dist);
  return -0.5 * (s.array() - s.mean() - stats.column_means.array() + stats.grand_mean).matrix();
}

namespace {

void check_scheme(const CostScheme &scheme, const CenteringStats &stats) {
  if (scheme.fingerprint() != stats.scheme_fingerprint) {
    throw ConfigError(fmt::format("kernel row scheme '{}' does not match training scheme '{}'",
                                  scheme.fingerprint(), stats.scheme_fingerprint));
  }
}

}  // namespace

Eigen::VectorXd kernel_row(std::string_view pattern, std::span<const std::string> train,
                           const CostScheme &scheme, const CenteringStats &stats) {
  check_scheme(scheme, stats);
  if (train.empty()) throw DataError("kernel row requested against an empty training set");
  std::vector<double> dist(train.size());
  for (std::size_t j = 0; j < train.size(); ++j) dist[j] = levenshtein(pattern, train[j], scheme);
  return kernel_row(dist, stats);
}

Eigen::VectorXd kernel_row(std::span<const Vec3> pattern, std::span<const VectorSequence> train,
                           const CostScheme &scheme, const CenteringStats &stats) {
  check_scheme(scheme, stats);
  if (train.empty()) throw DataError("kernel row requested against an empty training set");
  std::vector<double> dist(train.size());
  for (std::size_t j = 0; j < train.size(); ++j) dist[j] = levenshtein(pattern, train[j], scheme);
  return kernel_row(dist, stats);
}

Eigen::MatrixXd kernel_rows(const Eigen::MatrixXd &cross, const CenteringStats &stats) {
  Eigen::MatrixXd out(cross.rows(), cross.cols());
  for (Eigen::Index i = 0; i < cross.rows(); ++i) {
    Eigen::VectorXd row = cross.row(i).transpose();
    out.row(i) = kernel_row(std::span<const double>(row.data(), static_cast<std::size_t>(row.size())), stats).transpose();
  }
  return out;
}

Eigen::MatrixXd gaussian_cross_kernel(const Eigen::MatrixXd &rows, const Eigen::MatrixXd &cols,
                                      double sigma) {
  if (!(sigma > 0.0)) throw ConfigError(fmt::format("Gaussian bandwidth must be > 0, got {}", sigma));
  if (rows.cols() != cols.cols()) throw DataError("Gaussian kernel: feature dimensions differ");
  Eigen::MatrixXd k(rows.rows(), cols.rows());
  const double denom = 2.0 * sigma * sigma;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < cols.rows(); ++j) {
      k(i, j) = std::exp(-(rows.row(i) - cols.row(j)).squaredNorm() / denom);
    }
  }
  return k;
}

KernelMatrix gaussian_kernel(const Eigen::MatrixXd &x, double sigma) {
  KernelMatrix out;
  out.values = gaussian_cross_kernel(x, x, sigma);
  out.is_psd = true;
  out.min_eigenvalue = x.rows() > 0 ? psd_check(out.values).first : 0.0;
  return out;
}

namespace {

constexpr std::array<char, 4> kMagic {'P', 'F', 'K', 'M'};

template <class T>
T to_little(T value) {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  }
  return value;
}

}  // namespace

void write_matrix_binary(std::ostream &out, const Eigen::MatrixXd &m) {
  if (m.rows() != m.cols()) throw DataError("binary matrix format stores square matrices");
  auto n = to_little(static_cast<std::uint32_t>(m.rows()));
  out.write(kMagic.data(), kMagic.size());
  out.write(reinterpret_cast<const char *>(&n), sizeof n);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      double v = to_little(m(i, j));
      out.write(reinterpret_cast<const char *>(&v), sizeof v);
    }
  }
}

Eigen::MatrixXd read_matrix_binary(std::istream &in) {
  std::array<char, 4> magic {};
  std::uint32_t n = 0;
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw DataError("binary matrix: bad magic");
  }
  if (!in.read(reinterpret_cast<char *>(&n), sizeof n)) throw DataError("binary matrix: truncated header");
  n = to_little(n);
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      double v = 0.0;
      if (!in.read(reinterpret_cast<char *>(&v), sizeof v)) {
        throw DataError("binary matrix: truncated payload");
      }
      m(i, j) = to_little(v);
    }
  }
  return m;
}

void write_matrix_csv(std::ostream &out, const Eigen::MatrixXd &m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_real(m(i, j));
    }
    out << '\n';
  }
}

}  // namespace protfold
