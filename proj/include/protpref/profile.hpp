#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "protpref/ranking.hpp"
#include "protpref/rng.hpp"

namespace protpref {

enum class ProfileMode { ordinal, utility };

std::string_view to_string(ProfileMode mode);

/// The ordered list of individual preferences fed to an aggregation rule.
/// At least two individuals, all over the profile's universe.
class Profile {
 public:
  static Profile ordinal(UniversePtr universe, std::vector<RankingWithTies> individuals);
  static Profile utility(UniversePtr universe, std::vector<UtilityVector> individuals);

  const UniversePtr& universe() const { return universe_; }
  ProfileMode mode() const { return mode_; }
  std::size_t m() const { return universe_->size(); }
  std::size_t n() const {
    return mode_ == ProfileMode::ordinal ? rankings_.size() : utilities_.size();
  }

  const std::vector<RankingWithTies>& rankings() const { return rankings_; }
  const std::vector<UtilityVector>& utilities() const { return utilities_; }
  const std::string& owner(std::size_t i) const;

  /// Individual i's preference between alternatives a and b.
  PairState state(std::size_t i, std::size_t a, std::size_t b) const {
    return mode_ == ProfileMode::ordinal ? rankings_[i].compare(a, b) : utilities_[i].compare(a, b);
  }

  /// Rankings in either mode (utility mode converts with tie_epsilon 0).
  std::vector<RankingWithTies> as_rankings() const;

  /// Individuals reordered: result[i] = this[order[i]].
  Profile permuted(const std::vector<std::size_t>& order) const;
  /// Alternatives renamed: alternative a becomes relabel[a].
  Profile relabeled(const std::vector<std::size_t>& relabel) const;

  /// Same mode, universe and individual orderings (owners ignored).
  bool same_preferences(const Profile& other) const;

 private:
  Profile(UniversePtr universe, ProfileMode mode, std::vector<RankingWithTies> rankings,
          std::vector<UtilityVector> utilities);

  UniversePtr universe_;
  ProfileMode mode_;
  std::vector<RankingWithTies> rankings_;
  std::vector<UtilityVector> utilities_;
};

/// Kendall distance in half units: 2 per pair ordered oppositely, 1 per pair
/// tied in exactly one ranking. Integer so metric checks are exact.
std::int64_t kendall_half_units(const RankingWithTies& a, const RankingWithTies& b);

/// kendall_half_units / 2. Error{UniverseMismatch} for different universes.
double kendall_distance(const RankingWithTies& a, const RankingWithTies& b);

/// Sum of Kendall distances over aligned individuals (ordinal profiles, or
/// the induced rankings of utility profiles). Error{Incompatible} when n or
/// the universe differ.
double profile_distance(const Profile& p, const Profile& q);
std::int64_t profile_half_units(const Profile& p, const Profile& q);

enum class SynthKind { impartial_culture, single_peaked, condorcet_cycle, custom };

std::string_view to_string(SynthKind kind);
SynthKind synth_kind_from_string(std::string_view name);

struct SynthSpec {
  SynthKind kind = SynthKind::impartial_culture;
  std::size_t m = 3;
  std::size_t n = 3;
  std::uint64_t seed = 0;
  /// For custom: strict orders (best first) cycled over the n individuals.
  std::vector<std::vector<std::size_t>> custom_orders;

  void validate() const;
};

/// Profile over synthetic_universe(m). Pure function of its SynthSpec.
Profile generate(const SynthSpec& spec);

/// Axis drawn by generate() for a single-peaked spec.
std::vector<std::size_t> single_peaked_axis(const SynthSpec& spec);

/// Random strict single-peaked order on `axis`, best first.
std::vector<std::size_t> random_single_peaked_order(const std::vector<std::size_t>& axis,
                                                    Rng& rng);

}  // namespace protpref
