#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "protpref/ranking.hpp"

namespace protpref {

/// A binary "at least as good as" relation over m alternatives.
class PairwiseRelation {
 public:
  PairwiseRelation() = default;
  explicit PairwiseRelation(std::size_t m) : m_(m), weak_(m * m, 0) {
    for (std::size_t a = 0; a < m; ++a) weak_[a * m + a] = 1;
  }

  static PairwiseRelation from_ranking(const RankingWithTies& ranking);

  std::size_t size() const { return m_; }
  bool at_least(std::size_t a, std::size_t b) const { return weak_[a * m_ + b] != 0; }
  bool strictly(std::size_t a, std::size_t b) const { return at_least(a, b) && !at_least(b, a); }
  void set(std::size_t a, std::size_t b, bool value) { weak_[a * m_ + b] = value ? 1 : 0; }

  /// Incomparable pairs read as ties.
  PairState state(std::size_t a, std::size_t b) const;

  bool is_complete() const;
  bool is_transitive() const;
  /// Transitivity of the strict part only.
  bool is_quasi_transitive() const;

  /// Lexicographically first (a, b, c) with a > b > c > a strictly.
  std::optional<std::array<std::size_t, 3>> find_strict_cycle() const;
  /// A strict 3-cycle when one exists, otherwise the first (a, b, c) with
  /// a >= b, b >= c and not a >= c. Empty iff transitive.
  std::optional<std::array<std::size_t, 3>> find_transitivity_violation() const;

  friend bool operator==(const PairwiseRelation&, const PairwiseRelation&) = default;

 private:
  std::size_t m_ = 0;
  std::vector<std::uint8_t> weak_;
};

/// Kendall-style distance between relations, in half units: 2 per pair with
/// opposite strict states, 1 per pair strict in one and tied in the other.
std::int64_t relation_half_units(const PairwiseRelation& a, const PairwiseRelation& b);

/// Tiers of a complete transitive relation (alternatives ranked by how many
/// others they are at least as good as).
std::vector<int> levels_of_transitive(const PairwiseRelation& relation);

}  // namespace protpref
