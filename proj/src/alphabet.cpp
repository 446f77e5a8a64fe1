//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "protfold/alphabet.h"

#include <array>
#include <utility>

namespace protfold {

int residue_index(char code) noexcept {
  if (code >= 'a' && code <= 'z') code = static_cast<char>(code - 'a' + 'A');
  auto pos = kAlphabet.find(code);
  return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
}

char three_to_one(std::string_view name) noexcept {
  static constexpr std::array<std::pair<std::string_view, char>, 20> kCodes {{
      {"ALA", 'A'}, {"CYS", 'C'}, {"ASP", 'D'}, {"GLU", 'E'}, {"PHE", 'F'},
      {"GLY", 'G'}, {"HIS", 'H'}, {"ILE", 'I'}, {"LYS", 'K'}, {"LEU", 'L'},
      {"MET", 'M'}, {"ASN", 'N'}, {"PRO", 'P'}, {"GLN", 'Q'}, {"ARG", 'R'},
      {"SER", 'S'}, {"THR", 'T'}, {"VAL", 'V'}, {"TRP", 'W'}, {"TYR", 'Y'},
  }};
  for (const auto &[three, one] : kCodes) {
    if (three == name) return one;
  }
  return 'X';
}

}  // namespace protfold
