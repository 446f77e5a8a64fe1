//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROTFOLD_ALPHABET_H_
#define PROTFOLD_ALPHABET_H_

#include <string_view>

namespace protfold {

// Canonical residue order used by every 20-row table in the project.
inline constexpr std::string_view kAlphabet = "ACDEFGHIKLMNPQRSTVWY";
inline constexpr int kAlphabetSize = 20;

// Index of a one-letter code in kAlphabet (case-insensitive), or -1.
int residue_index(char code) noexcept;

inline bool is_canonical_residue(char code) noexcept {
  return residue_index(code) >= 0;
}

// Maps a three-letter residue name (e.g. "ALA") to its one-letter code.
// Returns 'X' for names outside the 20 canonical residues.
char three_to_one(std::string_view name) noexcept;

}  // namespace protfold

#endif  // PROTFOLD_ALPHABET_H_
