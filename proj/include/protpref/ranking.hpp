#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "protpref/universe.hpp"

namespace protpref {

/// How one preference relates alternatives a and b.
enum class PairState : std::uint8_t { b_preferred = 0, tie = 1, a_preferred = 2 };

inline PairState flip(PairState s) {
  return static_cast<PairState>(2 - static_cast<int>(s));
}

/// Total preorder over a universe: an ordered list of non-empty tiers, the
/// first tier most preferred. Stored as the tier index of each alternative.
class RankingWithTies {
 public:
  RankingWithTies() = default;

  /// Tiers must partition the universe (Error{InvalidProfile} otherwise).
  static RankingWithTies from_tiers(std::string owner, UniversePtr universe,
                                    const std::vector<std::vector<std::size_t>>& tiers);
  /// levels[a]: smaller is better; any integers, normalized to 0..k-1.
  static RankingWithTies from_levels(std::string owner, UniversePtr universe,
                                     const std::vector<int>& levels);
  /// Strict order given best-first.
  static RankingWithTies from_order(std::string owner, UniversePtr universe,
                                    const std::vector<std::size_t>& best_first);

  const std::string& owner() const { return owner_; }
  const UniversePtr& universe() const { return universe_; }
  std::size_t size() const { return tier_of_.size(); }
  std::size_t tier_count() const { return tier_count_; }

  int tier_of(std::size_t a) const { return tier_of_[a]; }
  const std::vector<int>& levels() const { return tier_of_; }
  PairState compare(std::size_t a, std::size_t b) const;
  bool is_strict() const { return tier_count_ == tier_of_.size(); }

  std::vector<std::vector<std::size_t>> tiers() const;

  /// Same ordering, same universe; owner ignored.
  bool same_order(const RankingWithTies& other) const;

  friend bool operator==(const RankingWithTies& a, const RankingWithTies& b) {
    return a.owner_ == b.owner_ && a.same_order(b);
  }

 private:
  RankingWithTies(std::string owner, UniversePtr universe, std::vector<int> levels);

  std::string owner_;
  UniversePtr universe_;
  std::vector<int> tier_of_;
  std::size_t tier_count_ = 0;
};

struct UtilityVector {
  std::string owner;
  UniversePtr universe;
  std::vector<double> values;  // indexed by universe position

  PairState compare(std::size_t a, std::size_t b) const {
    if (values[a] > values[b]) return PairState::a_preferred;
    if (values[a] < values[b]) return PairState::b_preferred;
    return PairState::tie;
  }
};

}  // namespace protpref
