//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROTFOLD_TYPES_H_
#define PROTFOLD_TYPES_H_

#include <vector>

#include <Eigen/Dense>

namespace protfold {

using Vec3 = Eigen::Vector3d;

// Ordered 3-component vertex attributes emitted by graph seriation.
using VectorSequence = std::vector<Vec3>;

using Matrix20d = Eigen::Matrix<double, 20, 20, Eigen::RowMajor>;
using Matrix20i = Eigen::Matrix<int, 20, 20, Eigen::RowMajor>;

}  // namespace protfold

#endif  // PROTFOLD_TYPES_H_
