//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROTFOLD_SEQDIST_H_
#define PROTFOLD_SEQDIST_H_

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include <Eigen/Dense>

#include "protfold/types.h"

namespace protfold {

/// 20x20 substitution-cost table over kAlphabet. Entry (i, j) is the cost of
/// replacing residue i with residue j. All entries lie in [0, 1] and the
/// diagonal is exactly zero; the table need not be symmetric.
class CostMatrix {
 public:
  CostMatrix();  // all zeros
  explicit CostMatrix(const Matrix20d &costs);

  static CostMatrix unit();

  double operator()(int from, int to) const { return costs_(from, to); }
  const Matrix20d &matrix() const noexcept { return costs_; }
  bool is_symmetric() const;

  friend bool operator==(const CostMatrix &, const CostMatrix &) = default;

 private:
  Matrix20d costs_;
};

// Text format: first line is the alphabet order, then 20 rows of 20 reals.
CostMatrix read_cost_matrix(std::istream &in);
void write_cost_matrix(std::ostream &out, const CostMatrix &costs);

struct UnitCost {};

struct MatrixCost {
  CostMatrix costs;
};

// Substitution cost min(1, scale * |u - v|) between 3-vectors.
struct VectorEuclideanCost {
  double scale = 1.0;
};

class CostScheme {
 public:
  using Variant = std::variant<UnitCost, MatrixCost, VectorEuclideanCost>;

  CostScheme(Variant variant, double indel_cost = 1.0);

  static CostScheme unit(double indel_cost = 1.0) { return {UnitCost {}, indel_cost}; }
  static CostScheme matrix(CostMatrix costs, double indel_cost = 1.0) {
    return {MatrixCost {std::move(costs)}, indel_cost};
  }
  static CostScheme vector_euclidean(double scale = 1.0, double indel_cost = 1.0) {
    return {VectorEuclideanCost {scale}, indel_cost};
  }

  const Variant &variant() const noexcept { return variant_; }
  double indel_cost() const noexcept { return indel_; }
  bool is_symbolic() const noexcept {
    return !std::holds_alternative<VectorEuclideanCost>(variant_);
  }

  // Stable textual identity of the scheme, used to tie kernels and models to
  // the scheme they were computed with.
  std::string fingerprint() const;

 private:
  Variant variant_;
  double indel_;
};

/// Minimum total cost of insertions, deletions and substitutions turning `a`
/// into `b` (O(|a||b|) dynamic programming). The symbolic overload needs a Unit
/// or Matrix scheme; the vector overload needs a VectorEuclidean scheme.
double levenshtein(std::string_view a, std::string_view b, const CostScheme &scheme);
double levenshtein(std::span<const Vec3> a, std::span<const Vec3> b,
                   const CostScheme &scheme);

// Distance divided by the cost of deleting all of `a` and inserting all of
// `b`, which bounds it from above. In [0, 1]; 0 when both are empty.
double normalized_levenshtein(std::string_view a, std::string_view b,
                              const CostScheme &scheme);
double normalized_levenshtein(std::span<const Vec3> a, std::span<const Vec3> b,
                              const CostScheme &scheme);

// Symmetric matrix with zero diagonal, one alignment per unordered pair.
Eigen::MatrixXd pairwise_distances(std::span<const std::string> patterns,
                                   const CostScheme &scheme, int threads = 0);
Eigen::MatrixXd pairwise_distances(std::span<const VectorSequence> patterns,
                                   const CostScheme &scheme, int threads = 0);

// rows.size() x cols.size() matrix of distances from rows[i] to cols[j].
Eigen::MatrixXd cross_distances(std::span<const std::string> rows,
                                std::span<const std::string> cols,
                                const CostScheme &scheme, int threads = 0);
Eigen::MatrixXd cross_distances(std::span<const VectorSequence> rows,
                                std::span<const VectorSequence> cols,
                                const CostScheme &scheme, int threads = 0);

/// Converts a symmetric similarity matrix to costs:
/// c_ij = (s_max - s_ij) / (s_max - s_min) off the diagonal, c_ii = 0,
/// with s_max and s_min taken over all 400 entries.
CostMatrix pam_to_costs(const Matrix20i &similarity);

// PAM120 log-odds similarities, rows and columns in kAlphabet order.
const Matrix20i &pam120();

}  // namespace protfold

#endif  // PROTFOLD_SEQDIST_H_
