//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROTFOLD_UTIL_H_
#define PROTFOLD_UTIL_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace protfold {

std::string sha256_hex(std::string_view bytes);
std::string file_sha256(const std::filesystem::path &path);

std::string read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, std::string_view contents);

std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// Seed for one pipeline stage: splitmix64(root ^ fnv1a64(stage)).
/// Every random component of an experiment draws from its own stage seed,
/// so adding a stage never perturbs the others.
std::uint64_t stage_seed(std::uint64_t root, std::string_view stage) noexcept;

// Shortest round-trippable decimal form of a double.
std::string format_real(double value);

std::string_view trim(std::string_view text) noexcept;
std::vector<std::string_view> split_view(std::string_view text, char sep);

// Runs body(i) for i in [0, count) on up to `threads` workers (0 = hardware
// concurrency). Work items must be independent.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)> &body);

}  // namespace protfold

#endif  // PROTFOLD_UTIL_H_
