//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "protfold/seqdist.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "protfold/alphabet.h"
#include "protfold/error.h"
#include "protfold/util.h"

namespace protfold {
namespace {

// Two-row Levenshtein recurrence; sub(i, j) is the cost of replacing a[i]
// with b[j].
template <class SubCost>
double edit_distance(std::size_t na, std::size_t nb, double indel, SubCost &&sub) {
  std::vector<double> prev(nb + 1), curr(nb + 1);
  for (std::size_t j = 0; j <= nb; ++j) prev[j] = indel * static_cast<double>(j);
  for (std::size_t i = 1; i <= na; ++i) {
    curr[0] = indel * static_cast<double>(i);
    for (std::size_t j = 1; j <= nb; ++j) {
      double best = prev[j - 1] + sub(i - 1, j - 1);
      best = std::min(best, prev[j] + indel);
      best = std::min(best, curr[j - 1] + indel);
      curr[j] = best;
    }
    std::swap(prev, curr);
  }
  return prev[nb];
}

std::vector<int> encode(std::string_view seq) {
  std::vector<int> out(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    int idx = residue_index(seq[i]);
    if (idx < 0) {
      throw DataError(fmt::format(
          "symbol '{}' at position {} is not in the cost-matrix alphabet", seq[i], i));
    }
    out[i] = idx;
  }
  return out;
}

template <class Pattern>
Eigen::MatrixXd pairwise_impl(std::span<const Pattern> patterns, const CostScheme &scheme,
                              int threads) {
  const auto n = static_cast<Eigen::Index>(patterns.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  parallel_for(patterns.size(), threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < patterns.size(); ++j) {
      double v = levenshtein(patterns[i], patterns[j], scheme);
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      d(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  });
  return d;
}

template <class Pattern>
Eigen::MatrixXd cross_impl(std::span<const Pattern> rows, std::span<const Pattern> cols,
                           const CostScheme &scheme, int threads) {
  Eigen::MatrixXd d(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(cols.size()));
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          levenshtein(rows[i], cols[j], scheme);
    }
  });
  return d;
}

}  // namespace

CostMatrix::CostMatrix(): costs_(Matrix20d::Zero()) { }

CostMatrix::CostMatrix(const Matrix20d &costs): costs_(costs) {
  for (int i = 0; i < kAlphabetSize; ++i) {
    for (int j = 0; j < kAlphabetSize; ++j) {
      double c = costs_(i, j);
      if (!std::isfinite(c) || c < 0.0 || c > 1.0) {
        throw DataError(fmt::format("cost ({}, {}) = {} outside [0, 1]", kAlphabet[i],
                                    kAlphabet[j], c));
      }
    }
    if (costs_(i, i) != 0.0) {
      throw DataError(fmt::format("cost matrix diagonal entry for '{}' is not zero",
                                  kAlphabet[i]));
    }
  }
}

CostMatrix CostMatrix::unit() {
  Matrix20d m = Matrix20d::Ones();
  m.diagonal().setZero();
  return CostMatrix(m);
}

bool CostMatrix::is_symmetric() const {
  return costs_ == costs_.transpose();
}

CostMatrix read_cost_matrix(std::istream &in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kAlphabet) {
    throw DataError(
        fmt::format("cost matrix header must be the alphabet line '{}'", kAlphabet));
  }
  Matrix20d m;
  for (int i = 0; i < kAlphabetSize; ++i) {
    if (!std::getline(in, line)) {
      throw DataError(fmt::format("cost matrix: missing row {}", i + 1));
    }
    std::istringstream row(line);
    for (int j = 0; j < kAlphabetSize; ++j) {
      if (!(row >> m(i, j))) {
        throw DataError(fmt::format("cost matrix: row {} has fewer than 20 values", i + 1));
      }
    }
    std::string extra;
    if (row >> extra) {
      throw DataError(fmt::format("cost matrix: row {} has more than 20 values", i + 1));
    }
  }
  return CostMatrix(m);
}

void write_cost_matrix(std::ostream &out, const CostMatrix &costs) {
  out << kAlphabet << '\n';
  for (int i = 0; i < kAlphabetSize; ++i) {
    for (int j = 0; j < kAlphabetSize; ++j) {
      if (j > 0) out << ' ';
      out << format_real(costs(i, j));
    }
    out << '\n';
  }
}

CostScheme::CostScheme(Variant variant, double indel_cost)
    : variant_(std::move(variant)), indel_(indel_cost) {
  if (!(indel_cost > 0.0) || !std::isfinite(indel_cost)) {
    throw ConfigError(fmt::format("indel cost must be positive, got {}", indel_cost));
  }
  if (const auto *v = std::get_if<VectorEuclideanCost>(&variant_);
      v != nullptr && !(v->scale > 0.0)) {
    throw ConfigError(fmt::format("vector cost scale must be positive, got {}", v->scale));
  }
}

std::string CostScheme::fingerprint() const {
  std::string indel = format_real(indel_);
  if (std::holds_alternative<UnitCost>(variant_)) return "unit;indel=" + indel;
  if (const auto *v = std::get_if<VectorEuclideanCost>(&variant_)) {
    return fmt::format("vector;scale={};indel={}", format_real(v->scale), indel);
  }
  const auto &m = std::get<MatrixCost>(variant_).costs.matrix();
  std::string_view bytes(reinterpret_cast<const char *>(m.data()),
                         sizeof(double) * static_cast<std::size_t>(m.size()));
  return fmt::format("matrix:{};indel={}", sha256_hex(bytes).substr(0, 16), indel);
}

double levenshtein(std::string_view a, std::string_view b, const CostScheme &scheme) {
  const double indel = scheme.indel_cost();
  if (std::holds_alternative<UnitCost>(scheme.variant())) {
    return edit_distance(a.size(), b.size(), indel, [&](std::size_t i, std::size_t j) {
      return a[i] == b[j] ? 0.0 : 1.0;
    });
  }
  if (const auto *mc = std::get_if<MatrixCost>(&scheme.variant())) {
    auto ea = encode(a), eb = encode(b);
    const auto &costs = mc->costs;
    return edit_distance(ea.size(), eb.size(), indel, [&](std::size_t i, std::size_t j) {
      return costs(ea[i], eb[j]);
    });
  }
  throw ConfigError("vector Euclidean cost scheme applied to symbol sequences");
}

double levenshtein(std::span<const Vec3> a, std::span<const Vec3> b,
                   const CostScheme &scheme) {
  const auto *vc = std::get_if<VectorEuclideanCost>(&scheme.variant());
  if (vc == nullptr) {
    throw ConfigError("symbolic cost scheme applied to vector sequences");
  }
  const double scale = vc->scale;
  return edit_distance(a.size(), b.size(), scheme.indel_cost(),
                       [&](std::size_t i, std::size_t j) {
                         return std::min(1.0, scale * (a[i] - b[j]).norm());
                       });
}

double normalized_levenshtein(std::string_view a, std::string_view b,
                              const CostScheme &scheme) {
  double bound = scheme.indel_cost() * static_cast<double>(a.size() + b.size());
  return bound > 0.0 ? levenshtein(a, b, scheme) / bound : 0.0;
}

double normalized_levenshtein(std::span<const Vec3> a, std::span<const Vec3> b,
                              const CostScheme &scheme) {
  double bound = scheme.indel_cost() * static_cast<double>(a.size() + b.size());
  return bound > 0.0 ? levenshtein(a, b, scheme) / bound : 0.0;
}

Eigen::MatrixXd pairwise_distances(std::span<const std::string> patterns,
                                   const CostScheme &scheme, int threads) {
  return pairwise_impl(patterns, scheme, threads);
}

Eigen::MatrixXd pairwise_distances(std::span<const VectorSequence> patterns,
                                   const CostScheme &scheme, int threads) {
  return pairwise_impl(patterns, scheme, threads);
}

Eigen::MatrixXd cross_distances(std::span<const std::string> rows,
                                std::span<const std::string> cols,
                                const CostScheme &scheme, int threads) {
  return cross_impl(rows, cols, scheme, threads);
}

Eigen::MatrixXd cross_distances(std::span<const VectorSequence> rows,
                                std::span<const VectorSequence> cols,
                                const CostScheme &scheme, int threads) {
  return cross_impl(rows, cols, scheme, threads);
}

CostMatrix pam_to_costs(const Matrix20i &similarity) {
  if (similarity != similarity.transpose()) {
    throw DataError("similarity matrix is not symmetric");
  }
  const int s_max = similarity.maxCoeff();
  const int s_min = similarity.minCoeff();
  if (s_max == s_min) throw DataError("degenerate similarity range");

  const double range = static_cast<double>(s_max - s_min);
  Matrix20d costs;
  for (int i = 0; i < kAlphabetSize; ++i) {
    for (int j = 0; j < kAlphabetSize; ++j) {
      costs(i, j) = i == j ? 0.0 : static_cast<double>(s_max - similarity(i, j)) / range;
    }
  }
  return CostMatrix(costs);
}

const Matrix20i &pam120() {
  static const Matrix20i table = [] {
    // Published in ARNDCQEGHILKMFPSTWYV order; permuted to kAlphabet below.
    constexpr std::string_view kOrder = "ARNDCQEGHILKMFPSTWYV";
    constexpr int kRaw[20][20] = {
        {3, -3, -1, 0, -3, -1, 0, 1, -3, -1, -3, -2, -2, -4, 1, 1, 1, -7, -4, 0},
        {-3, 6, -1, -3, -4, 1, -3, -4, 1, -2, -4, 2, -1, -5, -1, -1, -2, 1, -5, -3},
        {-1, -1, 4, 2, -5, 0, 1, 0, 2, -2, -4, 1, -3, -4, -2, 1, 0, -4, -2, -3},
        {0, -3, 2, 5, -7, 1, 3, 0, 0, -3, -5, -1, -4, -7, -3, 0, -1, -8, -5, -3},
        {-3, -4, -5, -7, 9, -7, -7, -4, -4, -3, -7, -7, -6, -6, -4, 0, -3, -8, -1, -3},
        {-1, 1, 0, 1, -7, 6, 2, -3, 3, -3, -2, 0, -1, -6, 0, -2, -2, -6, -5, -3},
        {0, -3, 1, 3, -7, 2, 5, -1, -1, -3, -4, -1, -3, -7, -2, -1, -2, -8, -5, -3},
        {1, -4, 0, 0, -4, -3, -1, 5, -4, -4, -5, -3, -4, -5, -2, 1, -1, -8, -6, -2},
        {-3, 1, 2, 0, -4, 3, -1, -4, 7, -4, -3, -2, -4, -3, -1, -2, -3, -3, -1, -3},
        {-1, -2, -2, -3, -3, -3, -3, -4, -4, 6, 1, -3, 1, 0, -3, -2, 0, -6, -2, 3},
        {-3, -4, -4, -5, -7, -2, -4, -5, -3, 1, 5, -4, 3, 0, -3, -4, -3, -3, -2, 1},
        {-2, 2, 1, -1, -7, 0, -1, -3, -2, -3, -4, 5, 0, -7, -2, -1, -1, -5, -5, -4},
        {-2, -1, -3, -4, -6, -1, -3, -4, -4, 1, 3, 0, 8, -1, -3, -2, -1, -6, -4, 1},
        {-4, -5, -4, -7, -6, -6, -7, -5, -3, 0, 0, -7, -1, 8, -5, -3, -4, -1, 4, -3},
        {1, -1, -2, -3, -4, 0, -2, -2, -1, -3, -3, -2, -3, -5, 6, 1, -1, -7, -6, -2},
        {1, -1, 1, 0, 0, -2, -1, 1, -2, -2, -4, -1, -2, -3, 1, 3, 2, -2, -3, -2},
        {1, -2, 0, -1, -3, -2, -2, -1, -3, 0, -3, -1, -1, -4, -1, 2, 4, -6, -3, 0},
        {-7, 1, -4, -8, -8, -6, -8, -8, -3, -6, -3, -5, -6, -1, -7, -2, -6, 12, -2, -8},
        {-4, -5, -2, -5, -1, -5, -5, -6, -1, -2, -2, -5, -4, 4, -6, -3, -3, -2, 8, -3},
        {0, -3, -3, -3, -3, -3, -3, -2, -3, 3, 1, -4, 1, -3, -2, -2, 0, -8, -3, 5},
    };
    Matrix20i m;
    for (int i = 0; i < kAlphabetSize; ++i) {
      for (int j = 0; j < kAlphabetSize; ++j) {
        m(residue_index(kOrder[i]), residue_index(kOrder[j])) = kRaw[i][j];
      }
    }
    return m;
  }();
  return table;
}

}  // namespace protfold
