#include "protpref/amino.hpp"

#include <array>
#include <utility>

namespace protpref {

std::optional<char> one_letter_from_three(std::string_view three_letter) {
  static constexpr std::array<std::pair<std::string_view, char>, 20> kCodes{{
      {"ALA", 'A'}, {"CYS", 'C'}, {"ASP", 'D'}, {"GLU", 'E'}, {"PHE", 'F'},
      {"GLY", 'G'}, {"HIS", 'H'}, {"ILE", 'I'}, {"LYS", 'K'}, {"LEU", 'L'},
      {"MET", 'M'}, {"ASN", 'N'}, {"PRO", 'P'}, {"GLN", 'Q'}, {"ARG", 'R'},
      {"SER", 'S'}, {"THR", 'T'}, {"VAL", 'V'}, {"TRP", 'W'}, {"TYR", 'Y'},
  }};
  for (const auto& [code, letter] : kCodes)
    if (code == three_letter) return letter;
  return std::nullopt;
}

}  // namespace protpref
