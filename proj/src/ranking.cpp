#include "protpref/ranking.hpp"

#include <algorithm>

#include "protpref/error.hpp"

namespace protpref {

RankingWithTies::RankingWithTies(std::string owner, UniversePtr universe, std::vector<int> levels)
    : owner_(std::move(owner)), universe_(std::move(universe)) {
  if (!universe_) throw Error(ErrorKind::InvalidProfile, "ranking without universe");
  if (levels.size() != universe_->size())
    throw Error(ErrorKind::InvalidProfile, "ranking size differs from universe size");
  std::vector<int> distinct(levels);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  tier_of_.resize(levels.size());
  for (std::size_t a = 0; a < levels.size(); ++a)
    tier_of_[a] = static_cast<int>(
        std::lower_bound(distinct.begin(), distinct.end(), levels[a]) - distinct.begin());
  tier_count_ = distinct.size();
}

RankingWithTies RankingWithTies::from_levels(std::string owner, UniversePtr universe,
                                             const std::vector<int>& levels) {
  return RankingWithTies(std::move(owner), std::move(universe), levels);
}

RankingWithTies RankingWithTies::from_tiers(std::string owner, UniversePtr universe,
                                            const std::vector<std::vector<std::size_t>>& tiers) {
  if (!universe) throw Error(ErrorKind::InvalidProfile, "ranking without universe");
  std::vector<int> levels(universe->size(), -1);
  for (std::size_t t = 0; t < tiers.size(); ++t) {
    if (tiers[t].empty()) throw Error(ErrorKind::InvalidProfile, "empty tier");
    for (auto a : tiers[t]) {
      if (a >= levels.size()) throw Error(ErrorKind::InvalidProfile, "tier member out of range");
      if (levels[a] != -1)
        throw Error(ErrorKind::InvalidProfile, "class '" + universe->labels[a] + "' in two tiers");
      levels[a] = static_cast<int>(t);
    }
  }
  for (std::size_t a = 0; a < levels.size(); ++a)
    if (levels[a] == -1)
      throw Error(ErrorKind::InvalidProfile, "class '" + universe->labels[a] + "' in no tier");
  return RankingWithTies(std::move(owner), std::move(universe), levels);
}

RankingWithTies RankingWithTies::from_order(std::string owner, UniversePtr universe,
                                            const std::vector<std::size_t>& best_first) {
  std::vector<std::vector<std::size_t>> tiers;
  tiers.reserve(best_first.size());
  for (auto a : best_first) tiers.push_back({a});
  return from_tiers(std::move(owner), std::move(universe), tiers);
}

PairState RankingWithTies::compare(std::size_t a, std::size_t b) const {
  if (tier_of_[a] < tier_of_[b]) return PairState::a_preferred;
  if (tier_of_[a] > tier_of_[b]) return PairState::b_preferred;
  return PairState::tie;
}

std::vector<std::vector<std::size_t>> RankingWithTies::tiers() const {
  std::vector<std::vector<std::size_t>> out(tier_count_);
  for (std::size_t a = 0; a < tier_of_.size(); ++a) out[tier_of_[a]].push_back(a);
  return out;
}

bool RankingWithTies::same_order(const RankingWithTies& other) const {
  return tier_of_ == other.tier_of_ && same_universe(universe_, other.universe_);
}

}  // namespace protpref
