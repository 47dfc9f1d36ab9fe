#pragma once

#include <optional>
#include <string_view>

namespace protpref {

/// The 20 standard amino acids, one-letter codes in alphabetical order.
inline constexpr std::string_view kAminoLetters = "ACDEFGHIKLMNPQRSTVWY";
inline constexpr int kAminoCount = 20;

/// Index of a one-letter code in kAminoLetters, or -1.
constexpr int amino_index(char letter) {
  for (int i = 0; i < kAminoCount; ++i)
    if (kAminoLetters[i] == letter) return i;
  return -1;
}

constexpr bool is_standard_amino(char letter) { return amino_index(letter) >= 0; }

std::optional<char> one_letter_from_three(std::string_view three_letter);

}  // namespace protpref
