#include "protpref/relation.hpp"

namespace protpref {

PairwiseRelation PairwiseRelation::from_ranking(const RankingWithTies& ranking) {
  PairwiseRelation r(ranking.size());
  for (std::size_t a = 0; a < ranking.size(); ++a)
    for (std::size_t b = 0; b < ranking.size(); ++b)
      r.set(a, b, ranking.tier_of(a) <= ranking.tier_of(b));
  return r;
}

PairState PairwiseRelation::state(std::size_t a, std::size_t b) const {
  const bool ab = at_least(a, b);
  const bool ba = at_least(b, a);
  if (ab && !ba) return PairState::a_preferred;
  if (ba && !ab) return PairState::b_preferred;
  return PairState::tie;
}

bool PairwiseRelation::is_complete() const {
  for (std::size_t a = 0; a < m_; ++a)
    for (std::size_t b = 0; b < m_; ++b)
      if (!at_least(a, b) && !at_least(b, a)) return false;
  return true;
}

bool PairwiseRelation::is_transitive() const { return !find_transitivity_violation(); }

bool PairwiseRelation::is_quasi_transitive() const {
  for (std::size_t a = 0; a < m_; ++a)
    for (std::size_t b = 0; b < m_; ++b) {
      if (!strictly(a, b)) continue;
      for (std::size_t c = 0; c < m_; ++c)
        if (strictly(b, c) && !strictly(a, c)) return false;
    }
  return true;
}

std::optional<std::array<std::size_t, 3>> PairwiseRelation::find_strict_cycle() const {
  for (std::size_t a = 0; a < m_; ++a)
    for (std::size_t b = 0; b < m_; ++b) {
      if (!strictly(a, b)) continue;
      for (std::size_t c = 0; c < m_; ++c)
        if (strictly(b, c) && strictly(c, a)) return std::array{a, b, c};
    }
  return std::nullopt;
}

std::optional<std::array<std::size_t, 3>> PairwiseRelation::find_transitivity_violation() const {
  if (auto cycle = find_strict_cycle()) return cycle;
  for (std::size_t a = 0; a < m_; ++a)
    for (std::size_t b = 0; b < m_; ++b) {
      if (a == b || !at_least(a, b)) continue;
      for (std::size_t c = 0; c < m_; ++c)
        if (c != a && c != b && at_least(b, c) && !at_least(a, c)) return std::array{a, b, c};
    }
  return std::nullopt;
}

std::int64_t relation_half_units(const PairwiseRelation& a, const PairwiseRelation& b) {
  std::int64_t total = 0;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = x + 1; y < a.size(); ++y) {
      const int diff = static_cast<int>(a.state(x, y)) - static_cast<int>(b.state(x, y));
      total += diff < 0 ? -diff : diff;
    }
  return total;
}

std::vector<int> levels_of_transitive(const PairwiseRelation& relation) {
  std::vector<int> levels(relation.size(), 0);
  for (std::size_t a = 0; a < relation.size(); ++a)
    for (std::size_t b = 0; b < relation.size(); ++b)
      if (relation.at_least(a, b)) --levels[a];
  return levels;
}

}  // namespace protpref
