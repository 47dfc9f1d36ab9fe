#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "protpref/profile.hpp"
#include "protpref/relation.hpp"

namespace protpref {

/// counts[a][b] = number of individuals strictly preferring a to b.
struct Tournament {
  UniversePtr universe;
  std::size_t n = 0;
  std::vector<int> counts;  // row-major m x m

  std::size_t m() const { return universe->size(); }
  int count(std::size_t a, std::size_t b) const { return counts[a * m() + b]; }

  friend bool operator==(const Tournament& x, const Tournament& y) {
    return x.n == y.n && x.counts == y.counts && same_universe(x.universe, y.universe);
  }
};

/// Error{WrongMode} on utility profiles. Parallel over alternatives.
Tournament majority_tournament(const Profile& p);
Tournament majority_tournament_serial(const Profile& p);

/// The global preference produced by a rule.
struct AggregationOutcome {
  std::string rule_name;
  UniversePtr universe;
  PairwiseRelation relation;
  bool transitive = false;
  std::optional<RankingWithTies> ranking;                     // when transitive
  std::optional<std::array<std::size_t, 3>> cycle_witness;  // when not

  /// Same relation over the same universe.
  bool same_relation(const AggregationOutcome& other) const {
    return relation == other.relation && same_universe(universe, other.universe);
  }
};

/// Fills transitivity, ranking and witness from a complete relation.
AggregationOutcome make_outcome(std::string rule_name, UniversePtr universe,
                                PairwiseRelation relation);

/// Pairwise simple majority: a >= b iff N(a>b) >= N(b>a).
AggregationOutcome may_rule(const Profile& p);

/// Each alternative scores the number of alternatives strictly below it in
/// each ranking; tied alternatives share the midpoint score.
AggregationOutcome borda(const Profile& p);
/// Borda totals in half points (integers), indexed by alternative.
std::vector<long> borda_half_scores(const Profile& p);

inline constexpr std::size_t kKemenyMaxAlternatives = 8;

/// Strict order with minimum total Kendall distance to the profile; ties
/// broken by the lexicographically smallest best-first sequence.
/// Error{TooLarge} for m > 8.
AggregationOutcome kemeny(const Profile& p);

/// Individual k's ranking, 1-based. Error{BadIndex}.
AggregationOutcome dictator(const Profile& p, std::size_t k);

/// a >= b iff the utilities of a sum to at least those of b.
AggregationOutcome utilitarian(const Profile& p);

/// Per-protein affine map u -> alpha * u + beta[protein].
struct UtilityTransform {
  double scale_alpha = 1.0;
  std::map<std::string, double> offsets_beta;

  UtilityVector apply(const UtilityVector& u) const;
  Profile apply(const Profile& p) const;
};

/// Aggregation rule treated as a black box by the auditor.
struct Rule {
  std::string name;
  ProfileMode mode = ProfileMode::ordinal;
  std::function<AggregationOutcome(const Profile&)> apply;

  AggregationOutcome operator()(const Profile& p) const { return apply(p); }
};

/// "may", "borda", "kemeny", "utilitarian", "dictator" (k = 1) or
/// "dictator:<k>". Error{BadSpec} for unknown names.
Rule make_rule(std::string_view name);
std::vector<std::string> available_rules();

}  // namespace protpref
