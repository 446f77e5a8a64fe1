//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROTFOLD_ERROR_H_
#define PROTFOLD_ERROR_H_

#include <stdexcept>
#include <string>

namespace protfold {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user configuration (bad flags, inconsistent options).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data.
class DataError : public Error {
 public:
  using Error::Error;
};

// A numerical routine could not produce a meaningful result.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace protfold

#endif  // PROTFOLD_ERROR_H_
